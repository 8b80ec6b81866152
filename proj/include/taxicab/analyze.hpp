#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "taxicab/centering.hpp"
#include "taxicab/csv.hpp"
#include "taxicab/qsr.hpp"
#include "taxicab/report.hpp"
#include "taxicab/scores.hpp"
#include "taxicab/tsvd.hpp"

namespace taxicab {

// One full method run: table -> proportions -> centering -> stepwise
// decomposition -> QSR -> principal scores.
struct AnalysisRun {
  ContingencyTable table;  // the table actually analyzed (post pseudocount)
  CorrespondenceMatrix corr;
  Decomposition dec;
  std::vector<QsrRecord> qsr;
  PrincipalScores scores;
};

inline AnalysisRun run_analysis(const ContingencyTable& input, Method method,
                                const SearchConfig& cfg, bool add_one = false,
                                const std::string& dataset = "") {
  AnalysisRun run;
  run.table = add_one ? add_pseudocount(input) : input;
  run.corr = correspondence(run.table);
  ResidualMatrix x = method == Method::Tca ? center_tca(run.corr)
                                           : center_tlra(run.corr, run.table);
  run.dec = decompose(x, cfg, dataset);
  run.qsr = qsr_report(run.dec);
  run.scores = principal_scores(run.dec, run.corr);
  return run;
}

inline AnalysisReport report_for(const AnalysisRun& run,
                                 std::optional<Recommendation> recommendation,
                                 std::uint64_t rng_seed,
                                 const std::string& dataset) {
  return make_report(run.table, run.dec, run.qsr, run.scores,
                     std::move(recommendation), rng_seed, dataset);
}

// Exhaustive search is feasible while the enumerated (smaller) side stays
// modest; beyond that, fall back to criss-cross.
inline SearchStrategy auto_strategy(const ContingencyTable& table,
                                    Index threshold = 21) {
  return std::min(table.rows(), table.cols()) <= threshold
             ? SearchStrategy::Exhaustive
             : SearchStrategy::CrissCross;
}

}  // namespace taxicab
