// Command line front end: ingest a CSV table, decompose it under one or
// both centerings, print dispersion/QSR tables, and emit reports or maps.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "taxicab/taxicab.hpp"

namespace {

bool verbose_enabled() {
  const char* v = std::getenv("TAXICAB_VERBOSE");
  return v != nullptr && std::string(v) != "" && std::string(v) != "0";
}

void vlog(const std::string& msg) {
  if (verbose_enabled()) std::cerr << "[taxicab] " << msg << "\n";
}

std::string dataset_name(const std::string& input_path) {
  return std::filesystem::path(input_path).stem().string();
}

taxicab::SearchStrategy pick_strategy(const std::string& flag,
                                      const taxicab::ContingencyTable& table) {
  if (flag == "auto") return taxicab::auto_strategy(table);
  return taxicab::parse_search(flag);
}

// r.json -> r.tca.json; r -> r.tca
std::string with_method_suffix(const std::string& path, taxicab::Method m) {
  const std::string suffix = std::string(".") + taxicab::to_string(m);
  const std::size_t dot = path.find_last_of('.');
  const std::size_t slash = path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + suffix;
  }
  return path.substr(0, dot) + suffix + path.substr(dot);
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Human table: QSR as signed percentages, two decimals, five value columns.
void print_qsr_table(const taxicab::AnalysisRun& run) {
  std::printf("%s dispersion and quality of signs (QSR, %%)\n",
              taxicab::display_name(run.dec.method));
  std::printf("%4s %12s %10s %10s %10s %10s %10s\n", "axis", "delta",
              "quadrant1", "quadrant3", "quadrant2", "quadrant4", "all");
  for (const taxicab::QsrRecord& q : run.qsr) {
    std::printf("%4d %12s %10s %10s %10s %10s %10s\n", q.axis_index,
                fmt("%.6f", q.delta).c_str(), fmt("%.2f", 100.0 * q.q_st).c_str(),
                fmt("%.2f", 100.0 * q.q_sbar_tbar).c_str(),
                fmt("%.2f", 100.0 * q.q_sbar_t).c_str(),
                fmt("%.2f", 100.0 * q.q_s_tbar).c_str(),
                fmt("%.2f", 100.0 * q.overall).c_str());
    if (q.empty_st || q.empty_sbar_tbar || q.empty_s_tbar || q.empty_sbar_t) {
      std::printf("     note: axis %d has empty quadrants reported as +-100\n",
                  q.axis_index);
    }
  }
}

struct CommonFlags {
  std::string input;
  std::string method = "tca";
  int axes = 2;
  std::string search = "auto";
  bool add_one = false;
  std::uint64_t seed = 0;
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags, bool allow_both) {
  cmd->add_option("--input", flags->input, "CSV table (header row + label column)")
      ->required();
  std::string methods = allow_both ? "tca, tlra, or both" : "tca or tlra";
  cmd->add_option("--method", flags->method, "centering: " + methods)
      ->check(allow_both ? CLI::IsMember({"tca", "tlra", "both"})
                         : CLI::IsMember({"tca", "tlra"}));
  cmd->add_option("--axes", flags->axes, "number of axes to extract")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--search", flags->search,
                  "axis search: auto, exhaustive, crisscross, or genetic")
      ->check(CLI::IsMember({"auto", "exhaustive", "crisscross", "genetic"}));
  cmd->add_flag("--add-one", flags->add_one, "add 1 to every cell first");
  cmd->add_option("--seed", flags->seed, "genetic search seed");
}

taxicab::AnalysisRun run_one(const taxicab::ContingencyTable& table,
                             taxicab::Method method, const CommonFlags& flags,
                             int axes) {
  taxicab::SearchConfig cfg;
  cfg.strategy = pick_strategy(flags.search, table);
  cfg.max_axes = axes;
  cfg.genetic.rng_seed = flags.seed;
  vlog(std::string("decomposing (") + taxicab::display_name(method) + ", " +
       taxicab::to_string(cfg.strategy) + ")");
  return taxicab::run_analysis(table, method, cfg, flags.add_one,
                               dataset_name(flags.input));
}

int cmd_analyze(const CommonFlags& flags, const std::string& out,
                const std::string& format) {
  const taxicab::ReportFormat fmt_kind = format == "csv"
                                             ? taxicab::ReportFormat::Csv
                                             : taxicab::ReportFormat::Json;
  vlog("reading " + flags.input);
  const taxicab::ContingencyTable table = taxicab::read_table_csv(flags.input);
  const std::string dataset = dataset_name(flags.input);
  std::printf("dataset: %s  (%ld x %ld)\n", dataset.c_str(),
              static_cast<long>(table.rows()), static_cast<long>(table.cols()));

  if (flags.method != "both") {
    const taxicab::Method m = taxicab::parse_method(flags.method);
    const taxicab::AnalysisRun run = run_one(table, m, flags, flags.axes);
    std::printf("search: %s  axes: %d\n\n", taxicab::to_string(run.dec.search),
                run.dec.axis_count());
    print_qsr_table(run);
    if (!out.empty()) {
      taxicab::write_report(
          taxicab::report_for(run, std::nullopt, flags.seed, dataset),
          fmt_kind, out);
      std::printf("\nreport written to %s\n", out.c_str());
    }
    return 0;
  }

  const taxicab::AnalysisRun tca =
      run_one(table, taxicab::Method::Tca, flags, flags.axes);
  const taxicab::AnalysisRun tlra =
      run_one(table, taxicab::Method::Tlra, flags, flags.axes);
  std::printf("search: %s  axes: %d\n\n", taxicab::to_string(tca.dec.search),
              tca.dec.axis_count());
  print_qsr_table(tca);
  std::printf("\n");
  print_qsr_table(tlra);

  const int compared = std::min(tca.dec.axis_count(), tlra.dec.axis_count());
  const taxicab::Recommendation rec =
      taxicab::recommend_method(tca.qsr, tlra.qsr, compared);
  std::printf("\nrecommendation: %s (mean overall-QSR margin %s pp over %d axes)\n",
              taxicab::to_string(rec.verdict), fmt("%.2f", rec.margin_pp).c_str(),
              rec.axes_considered);
  std::printf("note: dispersions are not comparable across centerings; "
              "the recommendation uses QSR only.\n");

  if (!out.empty()) {
    const std::string out_tca = with_method_suffix(out, taxicab::Method::Tca);
    const std::string out_tlra = with_method_suffix(out, taxicab::Method::Tlra);
    taxicab::write_report(taxicab::report_for(tca, rec, flags.seed, dataset),
                          fmt_kind, out_tca);
    taxicab::write_report(taxicab::report_for(tlra, rec, flags.seed, dataset),
                          fmt_kind, out_tlra);
    std::printf("\nreports written to %s and %s\n", out_tca.c_str(),
                out_tlra.c_str());
  }
  return 0;
}

int cmd_map(const CommonFlags& flags, const std::string& axes_pair,
            const std::string& out, taxicab::MapStyle style,
            std::string title) {
  int axis_a = 0, axis_b = 0;
  if (std::sscanf(axes_pair.c_str(), "%d,%d", &axis_a, &axis_b) != 2 ||
      axis_a < 1 || axis_b < 1) {
    throw taxicab::Error(taxicab::ErrorCode::BadConfig,
                         "--axes-pair expects \"a,b\" with positive integers");
  }
  vlog("reading " + flags.input);
  const taxicab::ContingencyTable table = taxicab::read_table_csv(flags.input);
  const taxicab::Method m = taxicab::parse_method(flags.method);
  const int axes_needed = std::max({flags.axes, axis_a, axis_b});
  const taxicab::AnalysisRun run = run_one(table, m, flags, axes_needed);
  const taxicab::MapCoordinates coords =
      taxicab::map_coordinates(run.scores, axis_a, axis_b);
  if (title.empty()) {
    title = dataset_name(flags.input) + " (" +
            taxicab::display_name(m) + ")";
  }
  const std::string svg = taxicab::render_map(
      coords, run.table.row_labels, run.table.col_labels, style, title);
  taxicab::detail::write_text_file(out, svg);
  std::printf("map written to %s\n", out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"taxicab decomposition of contingency tables"};
  app.set_version_flag("--version", taxicab::kVersion);
  app.require_subcommand(1);

  CommonFlags analyze_flags;
  std::string analyze_out;
  std::string analyze_format = "json";
  CLI::App* analyze = app.add_subcommand(
      "analyze", "decompose a table and report dispersion, QSR, and scores");
  add_common_flags(analyze, &analyze_flags, /*allow_both=*/true);
  analyze->add_option("--out", analyze_out, "report path (.json or .csv bundle)");
  analyze->add_option("--format", analyze_format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));

  CommonFlags map_flags;
  std::string axes_pair = "1,2";
  std::string map_out;
  std::string map_title;
  taxicab::MapStyle style;
  bool hide_row_labels = false, hide_col_labels = false;
  CLI::App* map_cmd =
      app.add_subcommand("map", "render a symmetric map as an SVG file");
  add_common_flags(map_cmd, &map_flags, /*allow_both=*/false);
  map_cmd->add_option("--axes-pair", axes_pair, "axis pair to plot, e.g. 1,2");
  map_cmd->add_option("--out", map_out, "output SVG path")->required();
  map_cmd->add_option("--width", style.width, "viewport width in px");
  map_cmd->add_option("--height", style.height, "viewport height in px");
  map_cmd->add_option("--row-color", style.row_color, "row point color");
  map_cmd->add_option("--col-color", style.col_color, "column point color");
  map_cmd->add_option("--point-size", style.point_size, "marker radius in px");
  map_cmd->add_option("--map-margin", style.margin, "blank margin fraction");
  map_cmd->add_flag("--no-row-labels", hide_row_labels, "hide row labels");
  map_cmd->add_flag("--no-col-labels", hide_col_labels, "hide column labels");
  map_cmd->add_option("--title", map_title, "map title text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) {
      return cmd_analyze(analyze_flags, analyze_out, analyze_format);
    }
    style.show_row_labels = !hide_row_labels;
    style.show_col_labels = !hide_col_labels;
    return cmd_map(map_flags, axes_pair, map_out, style, map_title);
  } catch (const taxicab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (taxicab::is_usage_error(e.code())) return 1;
    if (taxicab::is_data_error(e.code())) return 2;
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
