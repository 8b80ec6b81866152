#include <filesystem>
#include <fstream>

#include "test_support.hpp"

using namespace taxicab;
using Catch::Matchers::WithinRel;

namespace {

namespace fs = std::filesystem;

fs::path tmp_dir() {
  const fs::path dir = fs::temp_directory_path() / "taxicab_report_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_tmp(const std::string& name, const std::string& text) {
  const fs::path p = tmp_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p.string();
}

AnalysisReport sample_report(bool with_recommendation) {
  const ContingencyTable table = support::demo_table();
  SearchConfig cfg;  // exhaustive, 2 axes
  const AnalysisRun tca = run_analysis(table, Method::Tca, cfg);
  std::optional<Recommendation> rec;
  if (with_recommendation) {
    const AnalysisRun tlra = run_analysis(table, Method::Tlra, cfg);
    rec = recommend_method(tca.qsr, tlra.qsr);
  }
  return report_for(tca, rec, 42, "survey");
}

}  // namespace

TEST_CASE("labeled CSV ingestion matches the bundled fixture") {
  const ContingencyTable t =
      read_table_csv(std::string(TAXICAB_DATA_DIR) + "/demoCA.csv");
  const ContingencyTable ref = support::demo_table();
  REQUIRE(t.row_labels == ref.row_labels);
  REQUIRE(t.col_labels == ref.col_labels);
  REQUIRE((t.values.array() == ref.values.array()).all());
}

TEST_CASE("unlabeled CSV ingestion synthesizes labels") {
  const std::string path = write_tmp("plain.csv", "1,2.5\n3,4\n0,7\n");
  CsvOptions opt;
  opt.has_row_labels = false;
  const ContingencyTable t = read_table_csv(path, opt);
  REQUIRE(t.rows() == 3);
  REQUIRE(t.cols() == 2);
  REQUIRE(t.row_labels == std::vector<std::string>{"R1", "R2", "R3"});
  REQUIRE(t.col_labels == std::vector<std::string>{"C1", "C2"});
  REQUIRE(t.values(0, 1) == 2.5);
}

TEST_CASE("quoted labels survive delimiters and doubled quotes") {
  const std::string path =
      write_tmp("quoted.csv",
                "name,\"a,b\",\"say \"\"hi\"\"\"\n\"row,1\",3,4\nrow2,5,6\n");
  const ContingencyTable t = read_table_csv(path);
  REQUIRE(t.col_labels[0] == "a,b");
  REQUIRE(t.col_labels[1] == "say \"hi\"");
  REQUIRE(t.row_labels[0] == "row,1");
  REQUIRE(t.values(1, 1) == 6.0);
}

TEST_CASE("CSV ingestion reports precise failure positions") {
  const std::string ragged = write_tmp("ragged.csv", "h,a,b\nr1,1,2\nr2,3\n");
  try {
    read_table_csv(ragged);
    FAIL("expected RaggedRows");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::RaggedRows);
    REQUIRE(std::string(e.what()).find("line 3") != std::string::npos);
  }

  const std::string bad_cell =
      write_tmp("badcell.csv", "h,a,b\nr1,1,2\nr2,3,oops\n");
  try {
    read_table_csv(bad_cell);
    FAIL("expected NonNumericCell");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::NonNumericCell);
    REQUIRE(std::string(e.what()).find("line 3") != std::string::npos);
    REQUIRE(std::string(e.what()).find("oops") != std::string::npos);
  }

  const std::string empty = write_tmp("empty.csv", "");
  REQUIRE_THROWS_AS(read_table_csv(empty), Error);

  const std::string unterminated =
      write_tmp("unterminated.csv", "h,a,b\n\"r1,1,2\n");
  try {
    read_table_csv(unterminated);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::ParseError);
  }

  try {
    read_table_csv((tmp_dir() / "does_not_exist.csv").string());
    FAIL("expected IoError");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("cells accept scientific notation and windows line endings") {
  const std::string path =
      write_tmp("sci.csv", "h,a,b\r\nr1,1e2,2.5e-1\r\nr2,+3,0\r\n");
  const ContingencyTable t = read_table_csv(path);
  REQUIRE(t.values(0, 0) == 100.0);
  REQUIRE(t.values(0, 1) == 0.25);
  REQUIRE(t.values(1, 0) == 3.0);
}

TEST_CASE("JSON reports round-trip exactly") {
  for (bool with_rec : {false, true}) {
    const AnalysisReport r = sample_report(with_rec);
    const AnalysisReport back = report_from_json(to_json(r));
    REQUIRE(back == r);

    const std::string path =
        (tmp_dir() / (with_rec ? "rt_rec.json" : "rt.json")).string();
    write_report(r, ReportFormat::Json, path);
    REQUIRE(read_report(path, ReportFormat::Json) == r);
  }
}

TEST_CASE("JSON reports expose raw fractions and method names") {
  const AnalysisReport r = sample_report(true);
  const nlohmann::json j = to_json(r);
  REQUIRE(j.at("method") == "tca");
  REQUIRE(j.at("search") == "exhaustive");
  REQUIRE(j.at("dataset") == "survey");
  REQUIRE(j.at("rng_seed") == 42);
  REQUIRE(j.at("software_version") == kVersion);
  const double overall = j.at("axes")[0].at("qsr").at("overall").get<double>();
  REQUIRE(overall < 1.0);  // a fraction, not a percentage
  REQUIRE(overall > 0.5);
  REQUIRE(j.at("axes")[0].at("row_scores").size() == 7);
  REQUIRE(j.at("recommendation").at("verdict") == "PreferTLRA");

  const AnalysisReport bare = sample_report(false);
  REQUIRE(to_json(bare).at("recommendation").is_null());
}

TEST_CASE("CSV report bundles round-trip exactly") {
  for (bool with_rec : {false, true}) {
    const AnalysisReport r = sample_report(with_rec);
    const std::string base =
        (tmp_dir() / (with_rec ? "bundle_rec" : "bundle")).string();
    write_report(r, ReportFormat::Csv, base + ".csv");
    REQUIRE(fs::exists(base + ".manifest.json"));
    REQUIRE(fs::exists(base + ".deltas.csv"));
    REQUIRE(fs::exists(base + ".qsr.csv"));
    REQUIRE(fs::exists(base + ".row_scores.csv"));
    REQUIRE(fs::exists(base + ".col_scores.csv"));
    REQUIRE(read_report(base + ".csv", ReportFormat::Csv) == r);
  }
}

TEST_CASE("the QSR csv lays out the five value columns in report order") {
  const AnalysisReport r = sample_report(false);
  const std::string base = (tmp_dir() / "layout").string();
  write_report(r, ReportFormat::Csv, base + ".csv");

  std::ifstream in(base + ".qsr.csv");
  std::string header;
  std::getline(in, header);
  REQUIRE(header ==
          "axis,quadrant1,quadrant3,quadrant2,quadrant4,all,delta,empty");

  std::string first;
  std::getline(in, first);
  // quadrant1 holds q_st: +1 for the leading survey axis
  REQUIRE(first.substr(0, 4) == "1,1,");
}

TEST_CASE("report emission fails loudly on unwritable paths") {
  const AnalysisReport r = sample_report(false);
  try {
    write_report(r, ReportFormat::Json, "/nonexistent_dir_zz/x.json");
    FAIL("expected IoError");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("string parsers reject unknown tokens") {
  REQUIRE(parse_method("tca") == Method::Tca);
  REQUIRE(parse_search("genetic") == SearchStrategy::Genetic);
  REQUIRE(parse_preference("Inconclusive") == Preference::Inconclusive);
  REQUIRE_THROWS_AS(parse_method("pca"), Error);
  REQUIRE_THROWS_AS(parse_search("bruteforce"), Error);
  REQUIRE_THROWS_AS(parse_preference("maybe"), Error);
}

TEST_CASE("deltas accessor mirrors the per-axis records") {
  const AnalysisReport r = sample_report(false);
  const std::vector<double> d = r.deltas();
  REQUIRE(d.size() == r.qsr.size());
  REQUIRE_THAT(d[0], WithinRel(0.1626219352260095, 1e-12));
  REQUIRE(d[0] > d[1]);
}
