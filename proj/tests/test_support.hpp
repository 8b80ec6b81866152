#pragma once

#include <cstdint>

#include <catch2/catch_amalgamated.hpp>

#include "taxicab/taxicab.hpp"

namespace support {

inline taxicab::ContingencyTable demo_table() {
  Eigen::MatrixXd counts(7, 4);
  counts << 69, 49, 48, 41,
           148, 45, 14, 22,
           170, 65, 12, 29,
           159, 57, 12, 28,
           122, 26,  6, 18,
           106, 21,  5, 23,
            40,  7,  1, 14;
  return taxicab::validate_table(
      counts,
      {"16-24", "25-34", "35-44", "45-54", "55-64", "65-74", "75+"},
      {"Bad", "Average", "Good", "VeryGood"});
}

// Numerically double-centered copy. Removing row means first makes the grand
// sum zero, so the later column-mean pass cannot disturb the row sums.
inline Eigen::MatrixXd centered_copy(Eigen::MatrixXd m) {
  m.colwise() -= m.rowwise().mean().eval();
  m.rowwise() -= m.colwise().mean().eval();
  return m;
}

inline taxicab::ResidualMatrix residual_from(const Eigen::MatrixXd& m) {
  return taxicab::make_residual(centered_copy(m),
                                taxicab::ResidualOrigin::tca());
}

// Deterministic 64-bit LCG so random-table tests are identical everywhere.
struct Lcg {
  std::uint64_t state;
  explicit Lcg(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_bits() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state;
  }
  double real() { return static_cast<double>(next_bits() >> 11) * 0x1.0p-53; }
  int range(int lo, int hi) {
    return lo + static_cast<int>(next_bits() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

inline Eigen::MatrixXd random_matrix(Lcg& rng, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = 2.0 * rng.real() - 1.0;
  }
  return m;
}

inline taxicab::Decomposition decompose_full(
    const taxicab::ResidualMatrix& x,
    taxicab::SearchStrategy strategy = taxicab::SearchStrategy::Exhaustive) {
  taxicab::SearchConfig cfg;
  cfg.strategy = strategy;
  cfg.max_axes = 64;  // clamped to the rank bound
  return taxicab::decompose(x, cfg);
}

inline void require_centered(const Eigen::MatrixXd& x) {
  const double tol = taxicab::centering_tolerance(x);
  REQUIRE(x.rowwise().sum().cwiseAbs().maxCoeff() <= tol);
  REQUIRE(x.colwise().sum().cwiseAbs().maxCoeff() <= tol);
}

// The identity bundle every decomposition must satisfy: double-centered
// residuals, the four equivalent expressions for delta, half/quarter sign
// balance, and conjugacy with all later axes.
inline void require_axis_identities(const taxicab::Decomposition& dec) {
  using Catch::Matchers::WithinAbs;
  using Catch::Matchers::WithinRel;

  REQUIRE(dec.residuals.size() >= dec.axes.size());
  for (const taxicab::ResidualMatrix& r : dec.residuals) require_centered(r.x);
  require_centered(dec.remainder.x);

  for (std::size_t m = 0; m < dec.axes.size(); ++m) {
    const taxicab::AxisResult& axis = dec.axes[m];
    const Eigen::MatrixXd& x = dec.residuals[m].x;
    INFO("axis " << axis.axis_index);
    REQUIRE(axis.a.size() == x.rows());
    REQUIRE(axis.b.size() == x.cols());
    REQUIRE(axis.delta > 0.0);

    REQUIRE_THAT(axis.a.cwiseAbs().sum(), WithinRel(axis.delta, 1e-10));
    REQUIRE_THAT(axis.b.cwiseAbs().sum(), WithinRel(axis.delta, 1e-10));
    REQUIRE_THAT(axis.a.dot(axis.v.s), WithinRel(axis.delta, 1e-10));
    REQUIRE_THAT(axis.b.dot(axis.u.s), WithinRel(axis.delta, 1e-10));

    REQUIRE_THAT(axis.a.cwiseMax(0.0).sum(),
                 WithinRel(axis.delta / 2.0, 1e-10));
    REQUIRE_THAT(axis.b.cwiseMax(0.0).sum(),
                 WithinRel(axis.delta / 2.0, 1e-10));

    double q[2][2] = {{0.0, 0.0}, {0.0, 0.0}};  // [row in S][col in T]
    for (taxicab::Index i = 0; i < x.rows(); ++i) {
      for (taxicab::Index j = 0; j < x.cols(); ++j) {
        q[axis.a[i] > 0.0 ? 1 : 0][axis.b[j] > 0.0 ? 1 : 0] += x(i, j);
      }
    }
    const double quarter_tol = 1e-10 * std::max(1.0, axis.delta);
    REQUIRE_THAT(q[1][1], WithinAbs(axis.delta / 4.0, quarter_tol));
    REQUIRE_THAT(q[0][0], WithinAbs(axis.delta / 4.0, quarter_tol));
    REQUIRE_THAT(q[1][0], WithinAbs(-axis.delta / 4.0, quarter_tol));
    REQUIRE_THAT(q[0][1], WithinAbs(-axis.delta / 4.0, quarter_tol));

    // conjugacy: deflation puts sign(a_m) in the left null space of every
    // later residual, so it is orthogonal to every later interaction vector
    for (std::size_t later = m + 1; later < dec.axes.size(); ++later) {
      const taxicab::AxisResult& next = dec.axes[later];
      const double ctol = 1e-9 * std::max(1.0, axis.delta);
      REQUIRE_THAT(axis.v.s.dot(next.a), WithinAbs(0.0, ctol));
      REQUIRE_THAT(axis.u.s.dot(next.b), WithinAbs(0.0, ctol));
    }
  }
}

// At full rank the rank-1 layers must add back up to the centered matrix,
// and the last axis explains its residual perfectly.
inline void require_full_rank_identities(const taxicab::Decomposition& dec) {
  REQUIRE(dec.axis_count() == dec.rank_bound);
  const Eigen::MatrixXd diff = taxicab::reconstruct(dec) - dec.centered().x;
  const double scale =
      std::max(1.0, dec.centered().x.cwiseAbs().maxCoeff());
  REQUIRE(diff.cwiseAbs().maxCoeff() <= 1e-8 * scale);

  const std::vector<taxicab::QsrRecord> qsr = taxicab::qsr_report(dec);
  REQUIRE_THAT(qsr.back().overall,
               Catch::Matchers::WithinAbs(1.0, 1e-10));
}

}  // namespace support
