#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "taxicab/csv.hpp"
#include "taxicab/model.hpp"
#include "taxicab/qsr.hpp"
#include "taxicab/scores.hpp"
#include "taxicab/version.hpp"

namespace taxicab {

enum class ReportFormat { Json, Csv };

inline Method parse_method(const std::string& s) {
  if (s == "tca") return Method::Tca;
  if (s == "tlra") return Method::Tlra;
  throw Error(ErrorCode::ParseError, "unknown method \"" + s + "\"");
}

inline SearchStrategy parse_search(const std::string& s) {
  if (s == "exhaustive") return SearchStrategy::Exhaustive;
  if (s == "crisscross") return SearchStrategy::CrissCross;
  if (s == "genetic") return SearchStrategy::Genetic;
  throw Error(ErrorCode::ParseError, "unknown search strategy \"" + s + "\"");
}

inline Preference parse_preference(const std::string& s) {
  if (s == "PreferTCA") return Preference::PreferTCA;
  if (s == "PreferTLRA") return Preference::PreferTLRA;
  if (s == "Inconclusive") return Preference::Inconclusive;
  throw Error(ErrorCode::ParseError, "unknown verdict \"" + s + "\"");
}

// Machine-readable result of one method run. QSR values are raw fractions
// here; only human-facing output uses percent.
struct AnalysisReport {
  std::string dataset;
  Method method = Method::Tca;
  SearchStrategy search = SearchStrategy::Exhaustive;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<QsrRecord> qsr;   // one per axis, carries delta and overall
  Eigen::MatrixXd row_scores;   // principal f, I x A
  Eigen::MatrixXd col_scores;   // principal g, J x A
  std::optional<Recommendation> recommendation;
  std::string software_version = kVersion;
  std::uint64_t rng_seed = 0;

  std::vector<double> deltas() const {
    std::vector<double> d;
    d.reserve(qsr.size());
    for (const QsrRecord& r : qsr) d.push_back(r.delta);
    return d;
  }
};

inline AnalysisReport make_report(const ContingencyTable& table,
                                  const Decomposition& dec,
                                  const std::vector<QsrRecord>& qsr,
                                  const PrincipalScores& scores,
                                  std::optional<Recommendation> recommendation,
                                  std::uint64_t rng_seed,
                                  std::string dataset_name) {
  AnalysisReport r;
  r.dataset = std::move(dataset_name);
  r.method = dec.method;
  r.search = dec.search;
  r.row_labels = table.row_labels;
  r.col_labels = table.col_labels;
  r.qsr = qsr;
  r.row_scores = scores.f;
  r.col_scores = scores.g;
  r.recommendation = recommendation;
  r.rng_seed = rng_seed;
  return r;
}

namespace detail {

inline std::vector<std::string> empty_quadrant_names(const QsrRecord& q) {
  std::vector<std::string> names;
  if (q.empty_st) names.push_back("st");
  if (q.empty_sbar_tbar) names.push_back("sbar_tbar");
  if (q.empty_s_tbar) names.push_back("s_tbar");
  if (q.empty_sbar_t) names.push_back("sbar_t");
  return names;
}

inline void apply_empty_quadrant_names(const std::vector<std::string>& names,
                                       QsrRecord& q) {
  for (const std::string& n : names) {
    if (n == "st") q.empty_st = true;
    else if (n == "sbar_tbar") q.empty_sbar_tbar = true;
    else if (n == "s_tbar") q.empty_s_tbar = true;
    else if (n == "sbar_t") q.empty_sbar_t = true;
    else throw Error(ErrorCode::ParseError, "unknown quadrant \"" + n + "\"");
  }
}

}  // namespace detail

inline nlohmann::json to_json(const AnalysisReport& r) {
  nlohmann::json axes = nlohmann::json::array();
  for (std::size_t m = 0; m < r.qsr.size(); ++m) {
    const QsrRecord& q = r.qsr[m];
    nlohmann::json row_scores = nlohmann::json::array();
    nlohmann::json col_scores = nlohmann::json::array();
    for (Index i = 0; i < r.row_scores.rows(); ++i) {
      row_scores.push_back(r.row_scores(i, static_cast<Index>(m)));
    }
    for (Index j = 0; j < r.col_scores.rows(); ++j) {
      col_scores.push_back(r.col_scores(j, static_cast<Index>(m)));
    }
    axes.push_back({
        {"axis", q.axis_index},
        {"delta", q.delta},
        {"qsr",
         {{"q_st", q.q_st},
          {"q_sbar_tbar", q.q_sbar_tbar},
          {"q_s_tbar", q.q_s_tbar},
          {"q_sbar_t", q.q_sbar_t},
          {"overall", q.overall},
          {"empty_quadrants", detail::empty_quadrant_names(q)}}},
        {"row_scores", row_scores},
        {"col_scores", col_scores},
    });
  }
  nlohmann::json recommendation;
  if (r.recommendation) {
    recommendation = {{"verdict", to_string(r.recommendation->verdict)},
                      {"margin_pp", r.recommendation->margin_pp},
                      {"axes_considered", r.recommendation->axes_considered}};
  }
  return nlohmann::json{
      {"dataset", r.dataset},
      {"method", to_string(r.method)},
      {"search", to_string(r.search)},
      {"row_labels", r.row_labels},
      {"col_labels", r.col_labels},
      {"axes", axes},
      {"recommendation", recommendation},
      {"software_version", r.software_version},
      {"rng_seed", r.rng_seed},
  };
}

inline AnalysisReport report_from_json(const nlohmann::json& j) {
  AnalysisReport r;
  r.dataset = j.at("dataset").get<std::string>();
  r.method = parse_method(j.at("method").get<std::string>());
  r.search = parse_search(j.at("search").get<std::string>());
  r.row_labels = j.at("row_labels").get<std::vector<std::string>>();
  r.col_labels = j.at("col_labels").get<std::vector<std::string>>();
  const nlohmann::json& axes = j.at("axes");
  const Index nr = static_cast<Index>(r.row_labels.size());
  const Index nc = static_cast<Index>(r.col_labels.size());
  const Index naxes = static_cast<Index>(axes.size());
  r.row_scores.resize(nr, naxes);
  r.col_scores.resize(nc, naxes);
  for (Index m = 0; m < naxes; ++m) {
    const nlohmann::json& ax = axes[static_cast<std::size_t>(m)];
    QsrRecord q;
    q.axis_index = ax.at("axis").get<int>();
    q.delta = ax.at("delta").get<double>();
    const nlohmann::json& qq = ax.at("qsr");
    q.q_st = qq.at("q_st").get<double>();
    q.q_sbar_tbar = qq.at("q_sbar_tbar").get<double>();
    q.q_s_tbar = qq.at("q_s_tbar").get<double>();
    q.q_sbar_t = qq.at("q_sbar_t").get<double>();
    q.overall = qq.at("overall").get<double>();
    detail::apply_empty_quadrant_names(
        qq.at("empty_quadrants").get<std::vector<std::string>>(), q);
    r.qsr.push_back(q);
    for (Index i = 0; i < nr; ++i) {
      r.row_scores(i, m) = ax.at("row_scores")[static_cast<std::size_t>(i)].get<double>();
    }
    for (Index jj = 0; jj < nc; ++jj) {
      r.col_scores(jj, m) = ax.at("col_scores")[static_cast<std::size_t>(jj)].get<double>();
    }
  }
  if (!j.at("recommendation").is_null()) {
    const nlohmann::json& rec = j.at("recommendation");
    Recommendation v;
    v.verdict = parse_preference(rec.at("verdict").get<std::string>());
    v.margin_pp = rec.at("margin_pp").get<double>();
    v.axes_considered = rec.at("axes_considered").get<int>();
    r.recommendation = v;
  }
  r.software_version = j.at("software_version").get<std::string>();
  r.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  return r;
}

namespace detail {

// 17 significant digits: distinct doubles map to distinct strings and
// parse back to the same bits.
inline std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_escape(const std::string& s, char delimiter) {
  bool needs_quotes = false;
  for (char c : s) {
    if (c == delimiter || c == '"' || c == '\n' || c == '\r') {
      needs_quotes = true;
      break;
    }
  }
  if (!needs_quotes) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write \"" + path + "\"");
  }
  out << text;
  if (!out) {
    throw Error(ErrorCode::IoError, "write failed for \"" + path + "\"");
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open \"" + path + "\"");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string csv_base(const std::string& path) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
    return path.substr(0, path.size() - 4);
  }
  return path;
}

inline std::string join(const std::vector<std::string>& parts,
                        const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline std::string basename_of(const std::string& path) {
  const std::size_t slash = path.find_last_of("/\\");
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

}  // namespace detail

// CSV emission: one file per table plus a manifest. The five QSR value
// columns follow the report layout quadrant1 = (S,T), quadrant3 = (Sb,Tb),
// quadrant2 = (Sb,T), quadrant4 = (S,Tb), all = overall.
inline void write_report_csv(const AnalysisReport& r, const std::string& path) {
  const std::string base = detail::csv_base(path);

  std::string deltas = "axis,delta\n";
  std::string qsr =
      "axis,quadrant1,quadrant3,quadrant2,quadrant4,all,delta,empty\n";
  for (const QsrRecord& q : r.qsr) {
    deltas += std::to_string(q.axis_index) + "," + detail::fmt_full(q.delta) + "\n";
    qsr += std::to_string(q.axis_index) + "," + detail::fmt_full(q.q_st) + "," +
           detail::fmt_full(q.q_sbar_tbar) + "," + detail::fmt_full(q.q_sbar_t) +
           "," + detail::fmt_full(q.q_s_tbar) + "," + detail::fmt_full(q.overall) +
           "," + detail::fmt_full(q.delta) + "," +
           detail::join(detail::empty_quadrant_names(q), ";") + "\n";
  }

  auto scores_csv = [](const Eigen::MatrixXd& scores,
                       const std::vector<std::string>& labels) {
    std::string text = "label";
    for (Index m = 0; m < scores.cols(); ++m) {
      text += ",axis" + std::to_string(m + 1);
    }
    text += "\n";
    for (Index i = 0; i < scores.rows(); ++i) {
      text += detail::csv_escape(labels[static_cast<std::size_t>(i)], ',');
      for (Index m = 0; m < scores.cols(); ++m) {
        text += "," + detail::fmt_full(scores(i, m));
      }
      text += "\n";
    }
    return text;
  };

  nlohmann::json manifest{
      {"dataset", r.dataset},
      {"method", to_string(r.method)},
      {"search", to_string(r.search)},
      {"software_version", r.software_version},
      {"rng_seed", r.rng_seed},
      // basenames keep the bundle relocatable and its bytes independent of
      // the directory it was written into
      {"files",
       {{"deltas", detail::basename_of(base) + ".deltas.csv"},
        {"qsr", detail::basename_of(base) + ".qsr.csv"},
        {"row_scores", detail::basename_of(base) + ".row_scores.csv"},
        {"col_scores", detail::basename_of(base) + ".col_scores.csv"}}},
  };
  if (r.recommendation) {
    manifest["recommendation"] = {
        {"verdict", to_string(r.recommendation->verdict)},
        {"margin_pp", r.recommendation->margin_pp},
        {"axes_considered", r.recommendation->axes_considered}};
  } else {
    manifest["recommendation"] = nullptr;
  }

  detail::write_text_file(base + ".deltas.csv", deltas);
  detail::write_text_file(base + ".qsr.csv", qsr);
  detail::write_text_file(base + ".row_scores.csv",
                          scores_csv(r.row_scores, r.row_labels));
  detail::write_text_file(base + ".col_scores.csv",
                          scores_csv(r.col_scores, r.col_labels));
  detail::write_text_file(base + ".manifest.json", manifest.dump(2) + "\n");
}

inline void write_report(const AnalysisReport& r, ReportFormat format,
                         const std::string& path) {
  if (format == ReportFormat::Json) {
    detail::write_text_file(path, to_json(r).dump(2) + "\n");
  } else {
    write_report_csv(r, path);
  }
}

namespace detail {

struct ScoreTable {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;
};

inline ScoreTable read_scores_csv(const std::string& path) {
  const std::vector<CsvRecord> records = split_csv(read_text_file(path), ',');
  if (records.size() < 2) {
    throw Error(ErrorCode::ParseError, "\"" + path + "\" has no score rows");
  }
  const std::size_t naxes = records[0].fields.size() - 1;
  ScoreTable t;
  t.values.resize(static_cast<Index>(records.size() - 1),
                  static_cast<Index>(naxes));
  for (std::size_t i = 1; i < records.size(); ++i) {
    const CsvRecord& rec = records[i];
    if (rec.fields.size() != naxes + 1) {
      throw Error(ErrorCode::RaggedRows,
                  "line " + std::to_string(rec.line) + " in \"" + path + "\"");
    }
    t.labels.push_back(rec.fields[0]);
    for (std::size_t m = 0; m < naxes; ++m) {
      t.values(static_cast<Index>(i - 1), static_cast<Index>(m)) =
          parse_cell(rec.fields[m + 1], rec.line, m + 2);
    }
  }
  return t;
}

}  // namespace detail

inline AnalysisReport read_report(const std::string& path, ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(detail::read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("bad JSON: ") + e.what());
    }
    return report_from_json(j);
  }

  const std::string base = detail::csv_base(path);
  nlohmann::json manifest;
  try {
    manifest =
        nlohmann::json::parse(detail::read_text_file(base + ".manifest.json"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad manifest: ") + e.what());
  }
  AnalysisReport r;
  r.dataset = manifest.at("dataset").get<std::string>();
  r.method = parse_method(manifest.at("method").get<std::string>());
  r.search = parse_search(manifest.at("search").get<std::string>());
  r.software_version = manifest.at("software_version").get<std::string>();
  r.rng_seed = manifest.at("rng_seed").get<std::uint64_t>();
  if (!manifest.at("recommendation").is_null()) {
    const nlohmann::json& rec = manifest.at("recommendation");
    Recommendation v;
    v.verdict = parse_preference(rec.at("verdict").get<std::string>());
    v.margin_pp = rec.at("margin_pp").get<double>();
    v.axes_considered = rec.at("axes_considered").get<int>();
    r.recommendation = v;
  }

  const std::vector<detail::CsvRecord> qsr_rows =
      detail::split_csv(detail::read_text_file(base + ".qsr.csv"), ',');
  for (std::size_t i = 1; i < qsr_rows.size(); ++i) {
    const detail::CsvRecord& rec = qsr_rows[i];
    if (rec.fields.size() != 8) {
      throw Error(ErrorCode::RaggedRows,
                  "line " + std::to_string(rec.line) + " in qsr csv");
    }
    QsrRecord q;
    q.axis_index = static_cast<int>(detail::parse_cell(rec.fields[0], rec.line, 1));
    q.q_st = detail::parse_cell(rec.fields[1], rec.line, 2);
    q.q_sbar_tbar = detail::parse_cell(rec.fields[2], rec.line, 3);
    q.q_sbar_t = detail::parse_cell(rec.fields[3], rec.line, 4);
    q.q_s_tbar = detail::parse_cell(rec.fields[4], rec.line, 5);
    q.overall = detail::parse_cell(rec.fields[5], rec.line, 6);
    q.delta = detail::parse_cell(rec.fields[6], rec.line, 7);
    std::vector<std::string> names;
    std::istringstream names_in(rec.fields[7]);
    std::string piece;
    while (std::getline(names_in, piece, ';')) names.push_back(piece);
    detail::apply_empty_quadrant_names(names, q);
    r.qsr.push_back(q);
  }

  detail::ScoreTable rows = detail::read_scores_csv(base + ".row_scores.csv");
  detail::ScoreTable cols = detail::read_scores_csv(base + ".col_scores.csv");
  r.row_labels = std::move(rows.labels);
  r.col_labels = std::move(cols.labels);
  r.row_scores = std::move(rows.values);
  r.col_scores = std::move(cols.values);
  return r;
}

inline bool operator==(const QsrRecord& a, const QsrRecord& b) {
  return a.axis_index == b.axis_index && a.q_st == b.q_st &&
         a.q_sbar_tbar == b.q_sbar_tbar && a.q_s_tbar == b.q_s_tbar &&
         a.q_sbar_t == b.q_sbar_t && a.overall == b.overall &&
         a.delta == b.delta && a.empty_st == b.empty_st &&
         a.empty_sbar_tbar == b.empty_sbar_tbar &&
         a.empty_s_tbar == b.empty_s_tbar && a.empty_sbar_t == b.empty_sbar_t;
}

inline bool operator==(const Recommendation& a, const Recommendation& b) {
  return a.verdict == b.verdict && a.margin_pp == b.margin_pp &&
         a.axes_considered == b.axes_considered;
}

namespace detail {

inline bool same_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.size() == 0) return true;
  return (a.array() == b.array()).all();
}

}  // namespace detail

inline bool operator==(const AnalysisReport& a, const AnalysisReport& b) {
  return a.dataset == b.dataset && a.method == b.method &&
         a.search == b.search && a.row_labels == b.row_labels &&
         a.col_labels == b.col_labels && a.qsr == b.qsr &&
         detail::same_matrix(a.row_scores, b.row_scores) &&
         detail::same_matrix(a.col_scores, b.col_scores) &&
         a.recommendation == b.recommendation &&
         a.software_version == b.software_version && a.rng_seed == b.rng_seed;
}

}  // namespace taxicab
