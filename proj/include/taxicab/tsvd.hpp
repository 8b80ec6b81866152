#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "taxicab/model.hpp"

namespace taxicab {

enum class CrissCrossStarts { EnumeratedSide, AllColumns, AllRows, Both };

struct GeneticConfig {
  int population = 50;
  int generations = 200;
  double mutation_rate = 0.05;
  int elitism = 2;
  std::uint64_t rng_seed = 0;
};

struct SearchConfig {
  SearchStrategy strategy = SearchStrategy::Exhaustive;
  int max_axes = 2;
  CrissCrossStarts crisscross_starts = CrissCrossStarts::EnumeratedSide;
  int crisscross_max_iter = 100;
  GeneticConfig genetic{};
  int exhaustive_cap = 25;  // largest enumerable side, 2^(cap-1) candidates
};

inline void validate(const SearchConfig& cfg) {
  if (cfg.max_axes < 1)
    throw Error(ErrorCode::BadConfig, "max_axes must be >= 1");
  if (cfg.crisscross_max_iter < 1)
    throw Error(ErrorCode::BadConfig, "crisscross_max_iter must be >= 1");
  if (cfg.exhaustive_cap < 2 || cfg.exhaustive_cap > 62)
    throw Error(ErrorCode::BadConfig, "exhaustive_cap must be in [2, 62]");
  const GeneticConfig& g = cfg.genetic;
  if (g.population < 4)
    throw Error(ErrorCode::BadConfig, "genetic population must be >= 4");
  if (g.generations < 0)
    throw Error(ErrorCode::BadConfig, "genetic generations must be >= 0");
  if (!(g.mutation_rate >= 0.0 && g.mutation_rate < 1.0))
    throw Error(ErrorCode::BadConfig, "mutation_rate must be in [0, 1)");
  if (g.elitism < 0 || g.elitism >= g.population)
    throw Error(ErrorCode::BadConfig, "elitism must be in [0, population)");
}

// L1 dispersion of the sign combination u of x's columns.
inline double dispersion_for(const SignVector& u, const ResidualMatrix& x) {
  if (u.size() != x.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "sign vector length " + std::to_string(u.size()) +
                    " vs " + std::to_string(x.cols()) + " columns");
  }
  return (x.x * u.s).cwiseAbs().sum();
}

namespace detail {

// +1 sorts before -1; gives searches a total order for exact ties.
inline bool sign_lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Index i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

inline bool axis_better(const AxisResult& cand, const AxisResult& best) {
  if (cand.delta != best.delta) return cand.delta > best.delta;
  return sign_lex_less(cand.u.s, best.u.s);
}

// Iterate the transition formulas from u0 until u is a fixed point, then
// orient so that v[0] = +1 (sign flips are only safe when a and b have no
// exact zeros, because sign(0) = -1 does not negate).
inline AxisResult finalize_axis(const ResidualMatrix& x, SignVector u,
                                int max_iter) {
  AxisResult r;
  double prev_delta = -1.0;
  bool fixed = false;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd a = x.x * u.s;
    const double delta = a.cwiseAbs().sum();
    if (delta < prev_delta - 1e-12 * std::max(1.0, prev_delta)) {
      throw Error(ErrorCode::InternalCheck,
                  "dispersion decreased along transition iteration");
    }
    prev_delta = delta;
    SignVector v = SignVector::sign_of(a);
    Eigen::VectorXd b = x.x.transpose() * v.s;
    SignVector u_next = SignVector::sign_of(b);
    if (u_next == u) {
      fixed = true;
      r.u = std::move(u);
      r.v = std::move(v);
      r.a = std::move(a);
      r.b = std::move(b);
      r.delta = delta;
      break;
    }
    u = std::move(u_next);
  }
  if (!fixed) {
    // max_iter exhausted; report the current candidate with a warning flag
    Eigen::VectorXd a = x.x * u.s;
    r.u = u;
    r.v = SignVector::sign_of(a);
    r.b = x.x.transpose() * r.v.s;
    r.a = std::move(a);
    r.delta = r.a.cwiseAbs().sum();
  }
  r.converged = fixed;
  if (r.v.size() > 0 && r.v[0] < 0.0 && (r.a.array() != 0.0).all() &&
      (r.b.array() != 0.0).all()) {
    r.u.s = -r.u.s;
    r.v.s = -r.v.s;
    r.a = -r.a;
    r.b = -r.b;
  }
  return r;
}

struct EnumCandidate {
  double delta = -1.0;
  std::uint64_t gray = 0;
};

inline bool candidate_better(const EnumCandidate& a, const EnumCandidate& b) {
  if (a.delta != b.delta) return a.delta > b.delta;
  return a.gray < b.gray;
}

// Evaluate candidates [t0, t1) of the Gray-code walk over m's columns with
// coordinate 0 pinned to +1 (u and -u tie). Each chunk starts from a fresh
// matrix-vector product, so a candidate's delta never depends on thread
// scheduling: the chunk grid is fixed, not derived from the thread count.
inline EnumCandidate enumerate_chunk(const Eigen::MatrixXd& m,
                                     std::uint64_t t0, std::uint64_t t1) {
  const Index d = m.cols();
  std::uint64_t gray = t0 ^ (t0 >> 1);
  Eigen::VectorXd u = Eigen::VectorXd::Ones(d);
  for (Index j = 1; j < d; ++j) {
    if ((gray >> (j - 1)) & 1ull) u[j] = -1.0;
  }
  Eigen::VectorXd s = m * u;
  EnumCandidate best{s.cwiseAbs().sum(), gray};
  for (std::uint64_t t = t0 + 1; t < t1; ++t) {
    const int bit = std::countr_zero(t);
    gray ^= (1ull << bit);
    const double now = (gray >> bit) & 1ull ? -1.0 : 1.0;
    s += (2.0 * now) * m.col(bit + 1);
    EnumCandidate cand{s.cwiseAbs().sum(), gray};
    if (candidate_better(cand, best)) best = cand;
  }
  return best;
}

inline SignVector sign_from_gray(std::uint64_t gray, Index d) {
  Eigen::VectorXd u = Eigen::VectorXd::Ones(d);
  for (Index j = 1; j < d; ++j) {
    if ((gray >> (j - 1)) & 1ull) u[j] = -1.0;
  }
  return SignVector(std::move(u));
}

// Smaller-side view: returns the matrix whose columns are enumerated and
// whether that is the transpose of x.
inline std::pair<const Eigen::MatrixXd*, bool> enumerated_side(
    const ResidualMatrix& x, Eigen::MatrixXd& scratch) {
  if (x.cols() <= x.rows()) return {&x.x, false};
  scratch = x.x.transpose();
  return {&scratch, true};
}

// Lift a sign vector found on the enumerated side back to a u-side start
// for the original matrix.
inline SignVector lift_to_columns(const ResidualMatrix& x, SignVector found,
                                  bool transposed) {
  if (!transposed) return found;
  return SignVector::sign_of(x.x.transpose() * found.s);
}

}  // namespace detail

// Global maximum of |X u|_1 over sign vectors on the smaller side.
inline AxisResult search_exhaustive(const ResidualMatrix& x,
                                    const SearchConfig& cfg = {}) {
  Eigen::MatrixXd scratch;
  auto [m, transposed] = detail::enumerated_side(x, scratch);
  const Index d = m->cols();
  if (d > cfg.exhaustive_cap) {
    throw Error(ErrorCode::DimensionTooLarge,
                "enumerated side " + std::to_string(d) + " exceeds cap " +
                    std::to_string(cfg.exhaustive_cap) +
                    "; use crisscross or genetic search");
  }
  const std::uint64_t total = 1ull << (d - 1);
  constexpr std::uint64_t kChunk = 1ull << 14;
  detail::EnumCandidate best;
  if (total <= kChunk) {
    best = detail::enumerate_chunk(*m, 0, total);
  } else {
    // Fixed chunk grid: every candidate's delta is computed by one fixed
    // expression order, whatever the thread count, so results are
    // bit-identical across machines and runs.
    const std::uint64_t nchunks = (total + kChunk - 1) / kChunk;
    const unsigned workers = std::min<std::uint64_t>(
        std::max(1u, std::thread::hardware_concurrency()), nchunks);
    std::vector<detail::EnumCandidate> results(nchunks);
    std::atomic<std::uint64_t> cursor{0};
    auto drain = [&] {
      for (std::uint64_t c = cursor.fetch_add(1); c < nchunks;
           c = cursor.fetch_add(1)) {
        const std::uint64_t t0 = c * kChunk;
        results[c] = detail::enumerate_chunk(*m, t0, std::min(total, t0 + kChunk));
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(drain);
    drain();
    for (std::thread& th : pool) th.join();
    // merged in chunk order; the (delta, pattern) order is total, so any
    // merge order would give the same answer
    best = results.front();
    for (std::uint64_t c = 1; c < nchunks; ++c) {
      if (detail::candidate_better(results[c], best)) best = results[c];
    }
  }
  SignVector found = detail::sign_from_gray(best.gray, d);
  SignVector u0 = detail::lift_to_columns(x, std::move(found), transposed);
  return detail::finalize_axis(x, std::move(u0), 1000);
}

// Fixed-point iteration of the transition formulas from a set of starts.
inline AxisResult search_crisscross(const ResidualMatrix& x,
                                    const SearchConfig& cfg = {}) {
  CrissCrossStarts mode = cfg.crisscross_starts;
  if (mode == CrissCrossStarts::EnumeratedSide) {
    mode = x.cols() <= x.rows() ? CrissCrossStarts::AllColumns
                                : CrissCrossStarts::AllRows;
  }
  std::vector<SignVector> starts;
  if (mode == CrissCrossStarts::AllColumns || mode == CrissCrossStarts::Both) {
    for (Index j = 0; j < x.cols(); ++j) {
      SignVector v0 = SignVector::sign_of(x.x.col(j));
      starts.push_back(SignVector::sign_of(x.x.transpose() * v0.s));
    }
  }
  if (mode == CrissCrossStarts::AllRows || mode == CrissCrossStarts::Both) {
    for (Index i = 0; i < x.rows(); ++i) {
      starts.push_back(SignVector::sign_of(x.x.row(i).transpose()));
    }
  }
  std::optional<AxisResult> best;
  for (SignVector& u0 : starts) {
    AxisResult r =
        detail::finalize_axis(x, std::move(u0), cfg.crisscross_max_iter);
    if (!best || detail::axis_better(r, *best) ||
        (r.delta == best->delta && r.u.s == best->u.s && r.converged &&
         !best->converged)) {
      best = std::move(r);
    }
  }
  return std::move(*best);
}

namespace detail {

struct Chromosome {
  std::vector<std::uint8_t> bits;  // bit 0 pinned to 1 (+1)
  double fitness = 0.0;
};

// 1 (=+1) sorts before 0 (=-1), mirroring sign_lex_less.
inline bool chromosome_better(const Chromosome& a, const Chromosome& b) {
  if (a.fitness != b.fitness) return a.fitness > b.fitness;
  return a.bits > b.bits;
}

inline Eigen::VectorXd chromosome_signs(const std::vector<std::uint8_t>& bits) {
  Eigen::VectorXd u(static_cast<Index>(bits.size()));
  for (std::size_t j = 0; j < bits.size(); ++j) {
    u[static_cast<Index>(j)] = bits[j] ? 1.0 : -1.0;
  }
  return u;
}

// All randomness comes straight from the mt19937_64 stream (standardized
// output), never from std distributions, so runs are reproducible across
// standard libraries.
class GaRng {
 public:
  explicit GaRng(std::uint64_t seed) : eng_(seed) {}
  bool coin() { return (eng_() >> 32) & 1ull; }
  double real() { return (eng_() >> 11) * 0x1.0p-53; }
  std::size_t index(std::size_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

// Core GA loop over sign patterns of m's columns. An explicit initial
// population can be supplied (degenerate configurations are testable);
// otherwise the population is drawn from the seed.
inline std::vector<std::uint8_t> ga_evolve(
    const Eigen::MatrixXd& m, const GeneticConfig& cfg,
    const std::vector<std::vector<std::uint8_t>>* initial = nullptr) {
  const Index d = m.cols();
  GaRng rng(cfg.rng_seed);
  auto fitness = [&m](const std::vector<std::uint8_t>& bits) {
    return (m * chromosome_signs(bits)).cwiseAbs().sum();
  };

  std::vector<Chromosome> pop;
  pop.reserve(static_cast<std::size_t>(cfg.population));
  for (int i = 0; i < cfg.population; ++i) {
    Chromosome c;
    if (initial) {
      c.bits = (*initial)[static_cast<std::size_t>(i) % initial->size()];
      if (c.bits.size() != static_cast<std::size_t>(d)) {
        throw Error(ErrorCode::DimensionMismatch,
                    "seed chromosome length does not match matrix side");
      }
      c.bits[0] = 1;
    } else {
      c.bits.assign(static_cast<std::size_t>(d), 1);
      for (Index j = 1; j < d; ++j) {
        c.bits[static_cast<std::size_t>(j)] = rng.coin() ? 1 : 0;
      }
    }
    c.fitness = fitness(c.bits);
    pop.push_back(std::move(c));
  }

  auto tournament = [&]() -> const Chromosome& {
    const Chromosome* pick = &pop[rng.index(pop.size())];
    for (int k = 1; k < 3; ++k) {
      const Chromosome& other = pop[rng.index(pop.size())];
      if (chromosome_better(other, *pick)) pick = &other;
    }
    return *pick;
  };

  for (int gen = 0; gen < cfg.generations; ++gen) {
    std::sort(pop.begin(), pop.end(), chromosome_better);
    std::vector<Chromosome> next(pop.begin(), pop.begin() + cfg.elitism);
    next.reserve(pop.size());
    while (next.size() < pop.size()) {
      const Chromosome& p1 = tournament();
      const Chromosome& p2 = tournament();
      Chromosome child;
      child.bits.assign(static_cast<std::size_t>(d), 1);
      for (Index j = 1; j < d; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        child.bits[jj] = rng.coin() ? p1.bits[jj] : p2.bits[jj];
        if (cfg.mutation_rate > 0.0 && rng.real() < cfg.mutation_rate) {
          child.bits[jj] ^= 1;
        }
      }
      child.fitness = fitness(child.bits);
      next.push_back(std::move(child));
    }
    pop = std::move(next);
  }
  std::sort(pop.begin(), pop.end(), chromosome_better);
  return pop.front().bits;
}

}  // namespace detail

// Heuristic search; deterministic for a given seed, polished by one
// criss-cross pass so the answer is always a transition fixed point.
inline AxisResult search_genetic(const ResidualMatrix& x,
                                 const SearchConfig& cfg) {
  validate(cfg);
  Eigen::MatrixXd scratch;
  auto [m, transposed] = detail::enumerated_side(x, scratch);
  std::vector<std::uint8_t> best = detail::ga_evolve(*m, cfg.genetic);
  SignVector found(detail::chromosome_signs(best));
  SignVector u0 = detail::lift_to_columns(x, std::move(found), transposed);
  return detail::finalize_axis(x, std::move(u0), cfg.crisscross_max_iter);
}

inline AxisResult search_axis(const ResidualMatrix& x,
                              const SearchConfig& cfg) {
  switch (cfg.strategy) {
    case SearchStrategy::Exhaustive: return search_exhaustive(x, cfg);
    case SearchStrategy::CrissCross: return search_crisscross(x, cfg);
    case SearchStrategy::Genetic:    return search_genetic(x, cfg);
  }
  throw Error(ErrorCode::BadConfig, "unknown search strategy");
}

// Rank-1 deflation X_{m+1} = X_m - a b' / delta.
inline ResidualMatrix deflate(const ResidualMatrix& x, const AxisResult& axis) {
  if (axis.a.size() != x.rows() || axis.b.size() != x.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "axis does not match matrix");
  }
  if (x.abs_sum() == 0.0 || axis.delta < 1e-12 * x.chain_mass()) {
    throw Error(ErrorCode::ZeroDispersion,
                "dispersion is negligible relative to the decomposed mass; "
                "the decomposition is complete");
  }
  ResidualMatrix next =
      make_residual(x.x - (axis.a * axis.b.transpose()) / axis.delta,
                    ResidualOrigin::deflated(x.origin.step + 1));
  next.reference_mass = x.chain_mass();
  return next;
}

// Full stepwise decomposition: search, snapshot, deflate, repeat.
inline Decomposition decompose(const ResidualMatrix& x, const SearchConfig& cfg,
                               std::string table_ref = "") {
  validate(cfg);
  Decomposition dec;
  dec.method =
      x.origin.kind == ResidualOrigin::TlraCentered ? Method::Tlra : Method::Tca;
  dec.search = cfg.strategy;
  dec.table_ref = std::move(table_ref);
  dec.rank_bound =
      static_cast<int>(std::min(x.rows(), x.cols())) - 1;
  const int target = std::min(cfg.max_axes, dec.rank_bound);

  ResidualMatrix cur = x;
  for (int alpha = 1; alpha <= target; ++alpha) {
    if (cur.abs_sum() == 0.0) break;
    AxisResult axis = search_axis(cur, cfg);
    axis.axis_index = alpha;
    if (axis.delta < 1e-12 * cur.chain_mass()) break;  // nothing left to explain
    ResidualMatrix next = deflate(cur, axis);
    dec.residuals.push_back(std::move(cur));
    dec.axes.push_back(std::move(axis));
    cur = std::move(next);
  }
  dec.remainder = std::move(cur);
  if (dec.residuals.empty()) dec.residuals.push_back(dec.remainder);
  return dec;
}

// Sum of a_m b_m' / delta_m; equals the centered matrix at full rank.
inline Eigen::MatrixXd reconstruct(const Decomposition& dec) {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dec.centered().rows(),
                                              dec.centered().cols());
  for (const AxisResult& axis : dec.axes) {
    sum += (axis.a * axis.b.transpose()) / axis.delta;
  }
  return sum;
}

}  // namespace taxicab
