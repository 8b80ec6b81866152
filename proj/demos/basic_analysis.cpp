// Minimal library walkthrough: build a table in code, decompose it under
// both centerings, and compare the sign quality of the leading axes.

#include <cstdio>

#include "taxicab/taxicab.hpp"

int main() {
  Eigen::MatrixXd counts(7, 4);
  counts << 69, 49, 48, 41,
           148, 45, 14, 22,
           170, 65, 12, 29,
           159, 57, 12, 28,
           122, 26,  6, 18,
           106, 21,  5, 23,
            40,  7,  1, 14;
  const taxicab::ContingencyTable table = taxicab::validate_table(
      counts,
      {"16-24", "25-34", "35-44", "45-54", "55-64", "65-74", "75+"},
      {"Bad", "Average", "Good", "VeryGood"});

  taxicab::SearchConfig cfg;  // exhaustive, two axes
  const taxicab::AnalysisRun tca =
      taxicab::run_analysis(table, taxicab::Method::Tca, cfg);
  const taxicab::AnalysisRun tlra =
      taxicab::run_analysis(table, taxicab::Method::Tlra, cfg);

  for (const taxicab::AnalysisRun* run : {&tca, &tlra}) {
    std::printf("%s:\n", taxicab::display_name(run->dec.method));
    for (const taxicab::QsrRecord& q : run->qsr) {
      std::printf("  axis %d: delta = %.6f, overall QSR = %.2f%%\n",
                  q.axis_index, q.delta, 100.0 * q.overall);
    }
  }

  const taxicab::Recommendation rec =
      taxicab::recommend_method(tca.qsr, tlra.qsr);
  std::printf("verdict: %s (margin %.2f pp)\n", taxicab::to_string(rec.verdict),
              rec.margin_pp);

  const taxicab::MapCoordinates coords =
      taxicab::map_coordinates(tlra.scores, 1, 2);
  const std::string svg = taxicab::render_map(
      coords, table.row_labels, table.col_labels, {}, "demo (TLRA)");
  std::printf("rendered map: %zu bytes of SVG\n", svg.size());
  return 0;
}
