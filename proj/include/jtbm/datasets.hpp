// Copyright 2026 The jtbm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// CSV ingestion: header row, comma separated, '.' decimal point.

#pragma once

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "jtbm/errors.hpp"
#include "jtbm/sample.hpp"

namespace jtbm {

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  std::string out(s.substr(b, e - b + 1));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
      cur += ch;
    } else if (ch == ',' && !quoted) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline bool is_missing(const std::string& s) {
  std::string l;
  for (char c : s) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return l.empty() || l == "na" || l == "nan" || l == "null" || l == "inf" || l == "-inf" || l == "+inf";
}

inline double parse_number(const std::string& s, const std::string& where) {
  if (is_missing(s)) return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw InvalidArgument("non-numeric value '" + s + "' at " + where);
  return v;
}

}  // namespace detail

/// Raw table: header names and rows of strings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline CsvTable read_csv_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty() || line[0] == '#') continue;
    if (t.header.empty()) {
      t.header = detail::split_csv_line(line);
      continue;
    }
    auto cells = detail::split_csv_line(line);
    if (cells.size() != t.header.size())
      throw InvalidArgument("'" + path + "': row " + std::to_string(t.rows.size() + 1) + " has " +
                            std::to_string(cells.size()) + " fields, header has " + std::to_string(t.header.size()));
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty()) throw InvalidArgument("'" + path + "' has no header row");
  return t;
}

/// Loads the named columns (all columns when `columns` is empty). Rows with a
/// missing or non-finite entry are dropped and counted in the provenance.
inline Sample load_csv(const std::string& path, const std::vector<std::string>& columns = {}) {
  const CsvTable t = read_csv_table(path);
  std::vector<std::size_t> idx;
  std::vector<std::string> names = columns.empty() ? t.header : columns;
  for (const auto& name : names) {
    auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end()) throw InvalidArgument("'" + path + "' has no column '" + name + "'");
    idx.push_back(static_cast<std::size_t>(it - t.header.begin()));
  }
  std::vector<Eigen::VectorXd> kept;
  std::size_t dropped = 0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    Eigen::VectorXd row(static_cast<Eigen::Index>(idx.size()));
    bool ok = true;
    for (std::size_t c = 0; c < idx.size(); ++c) {
      const double v =
          detail::parse_number(t.rows[r][idx[c]], path + " row " + std::to_string(r + 1) + " column '" + names[c] + "'");
      row(static_cast<Eigen::Index>(c)) = v;
      ok = ok && std::isfinite(v);
    }
    if (ok)
      kept.push_back(std::move(row));
    else
      ++dropped;
  }
  if (kept.empty()) throw InvalidArgument("'" + path + "' has no usable rows");
  Eigen::MatrixXd data(static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t r = 0; r < kept.size(); ++r) data.row(static_cast<Eigen::Index>(r)) = kept[r].transpose();
  std::string src = path + " [";
  for (std::size_t c = 0; c < names.size(); ++c) src += (c ? "," : "") + names[c];
  src += "] dropped=" + std::to_string(dropped);
  return Sample(std::move(data), std::move(src));
}

/// First `k` column names of a CSV file.
inline std::vector<std::string> leading_columns(const std::string& path, std::size_t k) {
  const CsvTable t = read_csv_table(path);
  if (t.header.size() < k)
    throw InvalidArgument("'" + path + "' has only " + std::to_string(t.header.size()) + " columns");
  return {t.header.begin(), t.header.begin() + static_cast<std::ptrdiff_t>(k)};
}

/// Writes with 17 significant digits so that load_csv reproduces the values
/// bit for bit.
inline void write_csv(const Sample& s, const std::string& path, const std::vector<std::string>& header = {}) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  for (Eigen::Index j = 0; j < s.dim(); ++j) {
    if (j) out << ',';
    out << (header.empty() ? "x" + std::to_string(j) : header[static_cast<std::size_t>(j)]);
  }
  out << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    for (Eigen::Index j = 0; j < s.dim(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", s.data(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------- prices

struct PriceSeries {
  std::string name;
  std::vector<std::string> dates;  // ISO-8601, strictly increasing
  std::vector<double> close;       // > 0
};

inline void validate(const PriceSeries& p) {
  if (p.dates.size() != p.close.size()) throw InvalidArgument("price series '" + p.name + "': dates/close length differ");
  for (std::size_t i = 0; i < p.close.size(); ++i) {
    if (!(p.close[i] > 0.0) || !std::isfinite(p.close[i]))
      throw InvalidArgument("price series '" + p.name + "': non-positive price on " + p.dates[i]);
    if (i > 0 && !(p.dates[i - 1] < p.dates[i]))
      throw InvalidArgument("price series '" + p.name + "': dates not strictly increasing at " + p.dates[i]);
  }
}

/// Reads a (date, close) CSV.
inline PriceSeries load_prices(const std::string& path, const std::string& name = {}) {
  const CsvTable t = read_csv_table(path);
  auto col = [&](const std::string& n) {
    auto it = std::find(t.header.begin(), t.header.end(), n);
    if (it == t.header.end()) throw InvalidArgument("'" + path + "' has no column '" + n + "'");
    return static_cast<std::size_t>(it - t.header.begin());
  };
  const std::size_t di = col("date");
  const std::size_t ci = col("close");
  PriceSeries p;
  p.name = name.empty() ? path : name;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    p.dates.push_back(t.rows[r][di]);
    p.close.push_back(detail::parse_number(t.rows[r][ci], path + " row " + std::to_string(r + 1)));
  }
  validate(p);
  return p;
}

/// Joint daily log returns on the dates shared by every series: row t is
/// ln(close_t / close_{t−1}) taken over consecutive shared dates.
inline Sample log_returns(const std::vector<PriceSeries>& series) {
  if (series.empty()) throw InvalidArgument("log_returns: no series");
  std::vector<std::map<std::string, double>> lookup;
  for (const auto& s : series) {
    validate(s);
    if (s.close.size() < 2) throw InvalidArgument("log_returns: series '" + s.name + "' has fewer than 2 prices");
    std::map<std::string, double> m;
    for (std::size_t i = 0; i < s.dates.size(); ++i) m.emplace(s.dates[i], s.close[i]);
    lookup.push_back(std::move(m));
  }
  std::vector<std::string> shared;
  for (const auto& [date, _] : lookup[0]) {
    bool all = true;
    for (std::size_t k = 1; k < lookup.size() && all; ++k) all = lookup[k].count(date) > 0;
    if (all) shared.push_back(date);
  }
  if (shared.empty()) throw InvalidArgument("log_returns: the series share no dates");
  if (shared.size() < 2) throw InvalidArgument("log_returns: fewer than 2 shared dates");
  Eigen::MatrixXd data(static_cast<Eigen::Index>(shared.size() - 1), static_cast<Eigen::Index>(series.size()));
  for (std::size_t t = 1; t < shared.size(); ++t)
    for (std::size_t k = 0; k < series.size(); ++k)
      data(Eigen::Index(t - 1), Eigen::Index(k)) = std::log(lookup[k].at(shared[t]) / lookup[k].at(shared[t - 1]));
  std::string src = "log-returns(";
  for (std::size_t k = 0; k < series.size(); ++k) src += (k ? "," : "") + series[k].name;
  return Sample(std::move(data), src + ")");
}

}  // namespace jtbm
