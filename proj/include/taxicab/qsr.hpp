#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "taxicab/model.hpp"

namespace taxicab {

// Overall quality of the signs: delta over the total absolute residual mass.
inline double qsr_overall(const ResidualMatrix& x, const AxisResult& axis) {
  const double total = x.abs_sum();
  if (total == 0.0) {
    throw Error(ErrorCode::ZeroResidual, "residual matrix is zero");
  }
  return axis.delta / total;
}

namespace detail {

struct QuadrantSums {
  double signed_sum = 0.0;
  double abs_sum = 0.0;
  long cells = 0;
};

inline QuadrantSums quadrant_sums(const Eigen::MatrixXd& x,
                                  const std::vector<bool>& row_in,
                                  const std::vector<bool>& col_in,
                                  bool rows_positive, bool cols_positive) {
  QuadrantSums q;
  for (Index i = 0; i < x.rows(); ++i) {
    if (row_in[static_cast<std::size_t>(i)] != rows_positive) continue;
    for (Index j = 0; j < x.cols(); ++j) {
      if (col_in[static_cast<std::size_t>(j)] != cols_positive) continue;
      q.signed_sum += x(i, j);
      q.abs_sum += std::abs(x(i, j));
      ++q.cells;
    }
  }
  return q;
}

}  // namespace detail

// Per-quadrant signed QSR values for one axis. Quadrants are induced by
// S = {i: a_i > 0} and T = {j: b_j > 0}. An empty quadrant (possible only
// for hand-made axes, since centered nonzero a and b always carry both
// signs) is reported as exact +-1 with an annotation. For genuine axes the
// direct ratio is cross-checked against the balance identity
// sum over a quadrant = +-delta/4.
inline QsrRecord qsr_quadrants(const ResidualMatrix& x, const AxisResult& axis) {
  std::vector<bool> in_s(static_cast<std::size_t>(x.rows()));
  std::vector<bool> in_t(static_cast<std::size_t>(x.cols()));
  for (Index i = 0; i < x.rows(); ++i) in_s[static_cast<std::size_t>(i)] = axis.a[i] > 0.0;
  for (Index j = 0; j < x.cols(); ++j) in_t[static_cast<std::size_t>(j)] = axis.b[j] > 0.0;

  const detail::QuadrantSums st = detail::quadrant_sums(x.x, in_s, in_t, true, true);
  const detail::QuadrantSums sbtb = detail::quadrant_sums(x.x, in_s, in_t, false, false);
  const detail::QuadrantSums stb = detail::quadrant_sums(x.x, in_s, in_t, true, false);
  const detail::QuadrantSums sbt = detail::quadrant_sums(x.x, in_s, in_t, false, true);

  QsrRecord rec;
  rec.axis_index = axis.axis_index;
  rec.delta = axis.delta;
  rec.overall = qsr_overall(x, axis);

  auto fill = [](const detail::QuadrantSums& q, double expected_sign,
                 double& value, bool& empty) {
    if (q.cells == 0 || q.abs_sum == 0.0) {
      value = expected_sign;
      empty = true;
      return;
    }
    value = q.signed_sum / q.abs_sum;
    empty = false;
  };
  fill(st, +1.0, rec.q_st, rec.empty_st);
  fill(sbtb, +1.0, rec.q_sbar_tbar, rec.empty_sbar_tbar);
  fill(stb, -1.0, rec.q_s_tbar, rec.empty_s_tbar);
  fill(sbt, -1.0, rec.q_sbar_t, rec.empty_sbar_t);

  // balance cross-check, meaningful only when all quadrants are populated
  if (!rec.empty_st && !rec.empty_sbar_tbar && !rec.empty_s_tbar &&
      !rec.empty_sbar_t) {
    const double quarter = axis.delta / 4.0;
    const double direct[4] = {rec.q_st, rec.q_sbar_tbar, rec.q_s_tbar,
                              rec.q_sbar_t};
    const double via_delta[4] = {quarter / st.abs_sum, quarter / sbtb.abs_sum,
                                 -quarter / stb.abs_sum, -quarter / sbt.abs_sum};
    for (int k = 0; k < 4; ++k) {
      if (std::abs(direct[k] - via_delta[k]) > 1e-8) {
        throw Error(ErrorCode::InternalCheck,
                    "quadrant ratio disagrees with the delta/4 identity");
      }
    }
  }
  return rec;
}

// One record per axis, computed from the stored residual snapshots.
inline std::vector<QsrRecord> qsr_report(const Decomposition& dec) {
  std::vector<QsrRecord> out;
  out.reserve(dec.axes.size());
  for (std::size_t m = 0; m < dec.axes.size(); ++m) {
    out.push_back(qsr_quadrants(dec.residuals[m], dec.axes[m]));
  }
  return out;
}

enum class Preference { PreferTCA, PreferTLRA, Inconclusive };

inline const char* to_string(Preference p) {
  switch (p) {
    case Preference::PreferTCA:    return "PreferTCA";
    case Preference::PreferTLRA:   return "PreferTLRA";
    case Preference::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct Recommendation {
  Preference verdict = Preference::Inconclusive;
  double margin_pp = 0.0;  // mean absolute per-axis difference, percent points
  int axes_considered = 0;
};

// Chooses the centering whose overall QSR is higher on every compared axis.
// Dispersions are never compared across methods; they live on different
// scales.
inline Recommendation recommend_method(const std::vector<QsrRecord>& qsr_tca,
                                       const std::vector<QsrRecord>& qsr_tlra,
                                       int axes_considered = 2) {
  if (axes_considered < 1 ||
      static_cast<int>(qsr_tca.size()) < axes_considered ||
      static_cast<int>(qsr_tlra.size()) < axes_considered) {
    throw Error(ErrorCode::MismatchedAxes,
                "both methods must provide " + std::to_string(axes_considered) +
                    " axes (have " + std::to_string(qsr_tca.size()) + " and " +
                    std::to_string(qsr_tlra.size()) + ")");
  }
  bool tca_all = true, tlra_all = true;
  double margin = 0.0;
  for (int m = 0; m < axes_considered; ++m) {
    const double t = qsr_tca[static_cast<std::size_t>(m)].overall;
    const double l = qsr_tlra[static_cast<std::size_t>(m)].overall;
    tca_all = tca_all && t > l;
    tlra_all = tlra_all && l > t;
    margin += std::abs(t - l);
  }
  Recommendation rec;
  rec.axes_considered = axes_considered;
  rec.margin_pp = 100.0 * margin / axes_considered;
  rec.verdict = tca_all   ? Preference::PreferTCA
                : tlra_all ? Preference::PreferTLRA
                           : Preference::Inconclusive;
  return rec;
}

}  // namespace taxicab
