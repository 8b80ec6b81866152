#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "taxicab/model.hpp"

namespace taxicab {

struct LogTable {
  Eigen::MatrixXd g;          // log of the positive table entries
  Eigen::VectorXd row_means;  // means over columns
  Eigen::VectorXd col_means;  // means over rows
  double grand_mean = 0.0;
};

// Multiplicative residuals: x_ij = p_ij - p_i* p_*j. Double-centered by
// construction because the masses are the marginals of p.
inline ResidualMatrix center_tca(const CorrespondenceMatrix& p) {
  Eigen::MatrixXd x = p.p - p.row_masses * p.col_masses.transpose();
  return make_residual(std::move(x), ResidualOrigin::tca());
}

namespace detail {

// Logs are taken on the original-scale values (p * total) rather than on the
// tiny proportions; double centering cancels the log(total) shift, so the
// result equals the log-proportion residuals up to roundoff.
inline LogTable log_table(const CorrespondenceMatrix& p,
                          const std::vector<std::string>* row_labels = nullptr,
                          const std::vector<std::string>* col_labels = nullptr) {
  LogTable t;
  const Index nr = p.p.rows(), nc = p.p.cols();
  t.g.resize(nr, nc);
  for (Index i = 0; i < nr; ++i) {
    for (Index j = 0; j < nc; ++j) {
      const double v = p.p(i, j) * p.total;
      if (!(v > 0.0)) {
        std::string cell =
            row_labels && col_labels
                ? "(" + (*row_labels)[i] + ", " + (*col_labels)[j] + ")"
                : "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
        throw Error(ErrorCode::ZeroCell,
                    "cell " + cell +
                        " is zero; log centering needs strictly positive "
                        "entries (consider a +1 pseudocount)");
      }
      t.g(i, j) = std::log(v);
    }
  }
  t.row_means = t.g.rowwise().mean();
  t.col_means = t.g.colwise().mean().transpose();
  t.grand_mean = t.g.mean();
  return t;
}

inline ResidualMatrix center_log(const LogTable& t) {
  Eigen::MatrixXd x = t.g;
  x.colwise() -= t.row_means;
  x.rowwise() -= t.col_means.transpose();
  x.array() += t.grand_mean;
  return make_residual(std::move(x), ResidualOrigin::tlra());
}

}  // namespace detail

// Log bi-additive residuals: x_ij = G_ij - G_i* - G_*j + G_**.
inline ResidualMatrix center_tlra(const CorrespondenceMatrix& p) {
  return detail::center_log(detail::log_table(p));
}

// Same, but zero-cell errors name cells by label.
inline ResidualMatrix center_tlra(const CorrespondenceMatrix& p,
                                  const ContingencyTable& table) {
  return detail::center_log(
      detail::log_table(p, &table.row_labels, &table.col_labels));
}

inline ContingencyTable add_pseudocount(const ContingencyTable& table,
                                        double c = 1.0) {
  if (!(c > 0.0)) {
    throw Error(ErrorCode::NonPositiveConstant,
                "pseudocount must be positive, got " + std::to_string(c));
  }
  ContingencyTable out = table;
  out.values.array() += c;
  return out;
}

}  // namespace taxicab
