#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "taxicab/error.hpp"

namespace taxicab {

using Index = Eigen::Index;

enum class Method { Tca, Tlra };

inline const char* to_string(Method m) {
  return m == Method::Tca ? "tca" : "tlra";
}

inline const char* display_name(Method m) {
  return m == Method::Tca ? "TCA" : "TLRA";
}

enum class SearchStrategy { Exhaustive, CrissCross, Genetic };

inline const char* to_string(SearchStrategy s) {
  switch (s) {
    case SearchStrategy::Exhaustive: return "exhaustive";
    case SearchStrategy::CrissCross: return "crisscross";
    case SearchStrategy::Genetic:    return "genetic";
  }
  return "?";
}

// Hybrid tolerance used for centering/balance checks throughout.
inline double centering_tolerance(const Eigen::MatrixXd& x) {
  double peak = x.size() > 0 ? x.array().abs().maxCoeff() : 0.0;
  return 1e-10 * (peak > 1.0 ? peak : 1.0);
}

// -------- ContingencyTable --------

struct ContingencyTable {
  Eigen::MatrixXd values;               // nonnegative counts or parts
  std::vector<std::string> row_labels;  // unique
  std::vector<std::string> col_labels;  // unique

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }
};

namespace detail {

inline void require_unique(const std::vector<std::string>& labels,
                           const char* side) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw Error(ErrorCode::DuplicateLabel,
                  std::string(side) + " label \"" + l + "\" appears twice");
    }
  }
}

}  // namespace detail

inline ContingencyTable validate_table(Eigen::MatrixXd values,
                                       std::vector<std::string> row_labels,
                                       std::vector<std::string> col_labels) {
  const Index nr = values.rows(), nc = values.cols();
  if (nr < 2 || nc < 2) {
    throw Error(ErrorCode::TooSmall,
                "need at least 2 rows and 2 columns, got " +
                    std::to_string(nr) + "x" + std::to_string(nc));
  }
  if (static_cast<Index>(row_labels.size()) != nr ||
      static_cast<Index>(col_labels.size()) != nc) {
    throw Error(ErrorCode::DimensionMismatch, "label count does not match shape");
  }
  bool any_positive = false;
  for (Index i = 0; i < nr; ++i) {
    for (Index j = 0; j < nc; ++j) {
      const double v = values(i, j);
      if (!(v >= 0.0)) {  // catches negatives and NaN
        throw Error(ErrorCode::NegativeEntry,
                    "entry (" + row_labels[i] + ", " + col_labels[j] +
                        ") = " + std::to_string(v));
      }
      if (v > 0.0) any_positive = true;
    }
  }
  if (!any_positive) {
    throw Error(ErrorCode::AllZero, "table has no positive entry");
  }
  detail::require_unique(row_labels, "row");
  detail::require_unique(col_labels, "column");
  return ContingencyTable{std::move(values), std::move(row_labels),
                          std::move(col_labels)};
}

// -------- CorrespondenceMatrix --------

struct CorrespondenceMatrix {
  Eigen::MatrixXd p;          // values / total, sums to 1
  Eigen::VectorXd row_masses; // p_i*
  Eigen::VectorXd col_masses; // p_*j
  double total = 0.0;         // grand total of the source table
};

inline CorrespondenceMatrix correspondence(const ContingencyTable& table) {
  CorrespondenceMatrix m;
  m.total = table.values.sum();
  m.p = table.values / m.total;
  m.row_masses = m.p.rowwise().sum();
  m.col_masses = m.p.colwise().sum().transpose();
  return m;
}

// -------- SignVector --------

// Entries are exactly -1.0 or +1.0; sign(x) = -1 for x <= 0.
struct SignVector {
  Eigen::VectorXd s;

  SignVector() = default;
  explicit SignVector(Eigen::VectorXd v) : s(std::move(v)) {
    for (Index i = 0; i < s.size(); ++i) {
      if (s[i] != 1.0 && s[i] != -1.0) {
        throw Error(ErrorCode::DimensionMismatch,
                    "sign vector entry " + std::to_string(i) + " is not +-1");
      }
    }
  }

  static SignVector sign_of(const Eigen::VectorXd& x) {
    SignVector out;
    out.s = Eigen::VectorXd::Constant(x.size(), -1.0);
    for (Index i = 0; i < x.size(); ++i) {
      if (x[i] > 0.0) out.s[i] = 1.0;
    }
    return out;
  }

  Index size() const { return s.size(); }
  double operator[](Index i) const { return s[i]; }
  bool operator==(const SignVector& o) const { return s == o.s; }
};

// -------- ResidualMatrix --------

struct ResidualOrigin {
  enum Kind { TcaCentered, TlraCentered, Deflated } kind = TcaCentered;
  int step = 1;  // the alpha of X_alpha; 1 for freshly centered matrices

  static ResidualOrigin tca() { return {TcaCentered, 1}; }
  static ResidualOrigin tlra() { return {TlraCentered, 1}; }
  static ResidualOrigin deflated(int step) { return {Deflated, step}; }
};

struct ResidualMatrix {
  Eigen::MatrixXd x;
  ResidualOrigin origin;
  // l1 mass of the matrix that opened the deflation chain; a degenerate
  // axis is judged against this scale, not the shrinking residual's own
  double reference_mass = 0.0;

  Index rows() const { return x.rows(); }
  Index cols() const { return x.cols(); }
  double abs_sum() const { return x.array().abs().sum(); }
  double chain_mass() const {
    return reference_mass > 0.0 ? reference_mass : abs_sum();
  }
};

// Every row and column of a residual matrix must sum to zero.
inline ResidualMatrix make_residual(Eigen::MatrixXd x, ResidualOrigin origin) {
  const double tol = centering_tolerance(x);
  const Eigen::VectorXd rs = x.rowwise().sum();
  const Eigen::VectorXd cs = x.colwise().sum().transpose();
  if (rs.array().abs().maxCoeff() > tol || cs.array().abs().maxCoeff() > tol) {
    throw Error(ErrorCode::NotCentered,
                "matrix is not double-centered (worst row sum " +
                    std::to_string(rs.array().abs().maxCoeff()) +
                    ", worst column sum " +
                    std::to_string(cs.array().abs().maxCoeff()) + ")");
  }
  ResidualMatrix r{std::move(x), origin};
  r.reference_mass = r.abs_sum();
  return r;
}

// -------- AxisResult --------

struct AxisResult {
  SignVector u;       // length J
  SignVector v;       // length I
  Eigen::VectorXd a;  // row contribution scores, a = X u
  Eigen::VectorXd b;  // column contribution scores, b = X' v
  double delta = 0.0; // taxicab dispersion, = |a|_1 = |b|_1
  int axis_index = 1;
  bool converged = true;  // false only when an iterative search hit max_iter
};

// -------- Decomposition --------

struct Decomposition {
  Method method = Method::Tca;
  std::vector<AxisResult> axes;
  // residuals[m] is X_{m+1}, the matrix axis m+1 was computed from;
  // residuals.front() is the centered X_1.
  std::vector<ResidualMatrix> residuals;
  ResidualMatrix remainder;  // what deflation left after the last axis
  int rank_bound = 0;        // min(I-1, J-1)
  SearchStrategy search = SearchStrategy::Exhaustive;
  std::string table_ref;

  const ResidualMatrix& centered() const { return residuals.front(); }
  int axis_count() const { return static_cast<int>(axes.size()); }
};

// -------- QsrRecord --------

// Signed quadrant quality values for one axis. S = {i: a_i > 0},
// T = {j: b_j > 0}; q_st and q_sbar_tbar are positive, the mixed
// quadrants negative. "empty_*" marks quadrants with no cells, which are
// reported as exact +-1.
struct QsrRecord {
  int axis_index = 1;
  double q_st = 0.0;
  double q_sbar_tbar = 0.0;
  double q_s_tbar = 0.0;
  double q_sbar_t = 0.0;
  double overall = 0.0;
  double delta = 0.0;
  bool empty_st = false;
  bool empty_sbar_tbar = false;
  bool empty_s_tbar = false;
  bool empty_sbar_t = false;
};

}  // namespace taxicab
