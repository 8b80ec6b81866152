#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "taxicab/model.hpp"

namespace taxicab {

struct CsvOptions {
  bool has_row_labels = true;  // first row = headers, first column = labels
  char delimiter = ',';
};

namespace detail {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line where the record starts
};

// Splits the whole text into records; quoted fields may contain the
// delimiter, doubled quotes, and newlines.
inline std::vector<CsvRecord> split_csv(const std::string& text,
                                        char delimiter) {
  std::vector<CsvRecord> records;
  CsvRecord cur;
  cur.line = 1;
  std::string field;
  bool quoted = false;
  bool any_field_content = false;
  std::size_t line = 1;

  auto end_field = [&] {
    cur.fields.push_back(field);
    field.clear();
    any_field_content = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(cur));
    cur = CsvRecord{};
    cur.line = line;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') ++line;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !any_field_content && field.empty()) {
      quoted = true;
      any_field_content = true;
    } else if (c == delimiter) {
      end_field();
    } else if (c == '\n') {
      if (!field.empty() || !cur.fields.empty()) {
        end_record();
      } else {
        cur.line = line;
      }
    } else if (c == '\r') {
      // swallowed; \r\n and \n are both record ends
    } else {
      field.push_back(c);
      any_field_content = true;
    }
  }
  if (quoted) {
    throw Error(ErrorCode::ParseError,
                "unterminated quote in record starting at line " +
                    std::to_string(cur.line));
  }
  if (!field.empty() || !cur.fields.empty()) end_record();
  return records;
}

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return s.substr(b, e - b);
}

inline double parse_cell(const std::string& raw, std::size_t line,
                         std::size_t col) {
  std::string t = trim(raw);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  double value = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || t.empty()) {
    throw Error(ErrorCode::NonNumericCell,
                "line " + std::to_string(line) + ", column " +
                    std::to_string(col) + ": \"" + raw + "\" is not a number");
  }
  return value;
}

}  // namespace detail

inline ContingencyTable read_table_csv(const std::string& path,
                                       const CsvOptions& options = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open \"" + path + "\"");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::vector<detail::CsvRecord> records =
      detail::split_csv(buf.str(), options.delimiter);
  if (records.empty()) {
    throw Error(ErrorCode::ParseError, "\"" + path + "\" has no records");
  }

  std::vector<std::string> col_labels;
  std::vector<std::string> row_labels;
  std::size_t first_data = 0;
  std::size_t label_offset = 0;
  if (options.has_row_labels) {
    const detail::CsvRecord& header = records[0];
    if (header.fields.size() < 2) {
      throw Error(ErrorCode::ParseError,
                  "header at line " + std::to_string(header.line) +
                      " has fewer than 2 fields");
    }
    // first header field is the corner cell (dataset name slot), skipped
    for (std::size_t j = 1; j < header.fields.size(); ++j) {
      col_labels.push_back(detail::trim(header.fields[j]));
    }
    first_data = 1;
    label_offset = 1;
  }

  const std::size_t width =
      records.size() > first_data ? records[first_data].fields.size() : 0;
  std::vector<std::vector<double>> rows;
  for (std::size_t r = first_data; r < records.size(); ++r) {
    const detail::CsvRecord& rec = records[r];
    if (rec.fields.size() != width) {
      throw Error(ErrorCode::RaggedRows,
                  "line " + std::to_string(rec.line) + " has " +
                      std::to_string(rec.fields.size()) + " fields, expected " +
                      std::to_string(width));
    }
    if (options.has_row_labels) {
      row_labels.push_back(detail::trim(rec.fields[0]));
    }
    std::vector<double> row;
    for (std::size_t j = label_offset; j < rec.fields.size(); ++j) {
      row.push_back(detail::parse_cell(rec.fields[j], rec.line, j + 1));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw Error(ErrorCode::ParseError, "\"" + path + "\" has no data rows");
  }
  const std::size_t ncols = rows[0].size();
  if (options.has_row_labels &&
      col_labels.size() != ncols) {
    throw Error(ErrorCode::RaggedRows,
                "header has " + std::to_string(col_labels.size()) +
                    " column labels but rows have " + std::to_string(ncols) +
                    " data fields");
  }
  Eigen::MatrixXd values(static_cast<Index>(rows.size()),
                         static_cast<Index>(ncols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < ncols; ++j) {
      values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  if (!options.has_row_labels) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      row_labels.push_back("R" + std::to_string(i + 1));
    }
    for (std::size_t j = 0; j < ncols; ++j) {
      col_labels.push_back("C" + std::to_string(j + 1));
    }
  }
  return validate_table(std::move(values), std::move(row_labels),
                        std::move(col_labels));
}

}  // namespace taxicab
