// Copyright 2026 The gqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Tabular results and their CSV / SVG renderings. Metadata (which may carry
// a timestamp) goes to a sidecar JSON file so CSV bodies stay reproducible.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "gqc/core.hpp"

namespace gqc {

using Cell = std::variant<double, std::string>;

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string format_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

class ReportTable {
 public:
  ReportTable() = default;
  ReportTable(std::string kind, std::vector<std::string> columns, std::uint64_t seed = 0)
      : kind_(std::move(kind)), columns_(std::move(columns)), seed_(seed) {}

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
      throw ValidationError("report.row", "has " + std::to_string(row.size()) + " cells, expected " +
                                              std::to_string(columns_.size()));
    for (std::size_t k = 0; k < row.size(); ++k)
      if (const double* d = std::get_if<double>(&row[k]); d && !std::isfinite(*d))
        throw ValidationError("report.row[" + std::to_string(rows_.size()) + "]." + columns_[k],
                              "non-finite value");
    rows_.push_back(std::move(row));
  }

  const std::string& kind() const noexcept { return kind_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  std::map<std::string, std::string>& metadata() noexcept { return meta_; }
  const std::map<std::string, std::string>& metadata() const noexcept { return meta_; }

  int column_index(const std::string& name) const {
    const auto it = std::find(columns_.begin(), columns_.end(), name);
    return it == columns_.end() ? -1 : static_cast<int>(it - columns_.begin());
  }

  double number(std::size_t row, const std::string& col) const {
    const int c = column_index(col);
    if (c < 0) throw ValidationError("report.column", "no column '" + col + "'");
    return std::get<double>(rows_[row][static_cast<std::size_t>(c)]);
  }

  std::string to_csv() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < columns_.size(); ++k) os << (k ? "," : "") << columns_[k];
    os << "\n";
    for (const auto& r : rows_) {
      for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << format_cell(r[k]);
      os << "\n";
    }
    return os.str();
  }

  /// Rows whose `col` equals `value`, same columns and metadata.
  ReportTable filter(const std::string& col, const std::string& value, std::string kind) const {
    const int c = column_index(col);
    if (c < 0) throw ValidationError("report.column", "no column '" + col + "'");
    ReportTable out(std::move(kind), columns_, seed_);
    out.meta_ = meta_;
    for (const auto& r : rows_)
      if (const auto* s = std::get_if<std::string>(&r[static_cast<std::size_t>(c)]); s && *s == value)
        out.rows_.push_back(r);
    return out;
  }

  /// Distinct string values of `col`, in first-appearance order.
  std::vector<std::string> distinct(const std::string& col) const {
    const int c = column_index(col);
    std::vector<std::string> out;
    if (c < 0) return out;
    for (const auto& r : rows_)
      if (const auto* s = std::get_if<std::string>(&r[static_cast<std::size_t>(c)]);
          s && std::find(out.begin(), out.end(), *s) == out.end())
        out.push_back(*s);
    return out;
  }

 private:
  std::string kind_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::map<std::string, std::string> meta_;
  std::uint64_t seed_ = 0;
};

// ---------------------------------------------------------------------------
// SVG

struct PlotOptions {
  std::string x_column = "t";
  std::vector<std::string> y_columns;  // empty: every numeric column except x
  std::vector<std::string> group_columns;  // string columns that split series
  int width = 720;
  int height = 440;
};

inline std::string to_svg(const ReportTable& table, const PlotOptions& opt = {}) {
  const int xc = table.column_index(opt.x_column);
  if (xc < 0) throw ValidationError("plot.x_column", "no column '" + opt.x_column + "'");
  std::vector<int> ycols;
  if (opt.y_columns.empty()) {
    for (std::size_t k = 0; k < table.columns().size(); ++k)
      if (static_cast<int>(k) != xc && !table.rows().empty() &&
          std::holds_alternative<double>(table.rows().front()[k]))
        ycols.push_back(static_cast<int>(k));
  } else {
    for (const auto& y : opt.y_columns) {
      const int c = table.column_index(y);
      if (c < 0) throw ValidationError("plot.y_columns", "no column '" + y + "'");
      ycols.push_back(c);
    }
  }

  struct Series {
    std::string label;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Series> series;
  auto find_series = [&](const std::string& label) -> Series& {
    for (auto& s : series)
      if (s.label == label) return s;
    series.push_back({label, {}});
    return series.back();
  };
  for (const auto& r : table.rows()) {
    std::string group;
    for (const auto& g : opt.group_columns) {
      const int c = table.column_index(g);
      if (c >= 0) group += format_cell(r[static_cast<std::size_t>(c)]) + " ";
    }
    const double x = std::get<double>(r[static_cast<std::size_t>(xc)]);
    for (int yc : ycols) {
      const auto* y = std::get_if<double>(&r[static_cast<std::size_t>(yc)]);
      if (!y) continue;
      find_series(group + table.columns()[static_cast<std::size_t>(yc)]).pts.emplace_back(x, *y);
    }
  }

  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool first = true;
  for (const auto& s : series)
    for (const auto& [x, y] : s.pts) {
      if (first) {
        x0 = x1 = x;
        y0 = y1 = y;
        first = false;
      }
      x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
  if (x1 - x0 <= 0) x1 = x0 + 1;
  if (y1 - y0 <= 0) y1 = y0 + 1;

  const double ml = 70, mr = 220, mt = 20, mb = 50;
  const double pw = opt.width - ml - mr, ph = opt.height - mt - mb;
  auto sx = [&](double x) { return ml + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return mt + ph - (y - y0) / (y1 - y0) * ph; };
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
     << opt.height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"#333\"/>\n";
  os << "<text x=\"" << ml << "\" y=\"" << opt.height - 15 << "\">" << format_number(x0) << "</text>\n";
  os << "<text x=\"" << ml + pw << "\" y=\"" << opt.height - 15 << "\" text-anchor=\"end\">"
     << format_number(x1) << "</text>\n";
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << opt.height - 15 << "\" text-anchor=\"middle\">"
     << opt.x_column << "</text>\n";
  os << "<text x=\"" << ml - 5 << "\" y=\"" << mt + ph << "\" text-anchor=\"end\">"
     << format_number(y0) << "</text>\n";
  os << "<text x=\"" << ml - 5 << "\" y=\"" << mt + 10 << "\" text-anchor=\"end\">"
     << format_number(y1) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* col = palette[k % 10];
    os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t p = 0; p < series[k].pts.size(); ++p)
      os << (p ? " " : "") << format_number(sx(series[k].pts[p].first)) << ","
         << format_number(sy(series[k].pts[p].second));
    os << "\"/>\n";
    const double ly = mt + 12 + 14 * static_cast<double>(k);
    os << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << ml + pw + 28
       << "\" y2=\"" << ly - 4 << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << ml + pw + 32 << "\" y=\"" << ly << "\">" << series[k].label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// files

struct ReportFormats {
  bool csv = true;
  bool svg = false;
};

inline ReportFormats parse_formats(const std::string& spec) {
  ReportFormats f{false, false};
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "csv") f.csv = true;
    else if (item == "svg") f.svg = true;
    else throw ValidationError("--format", "unknown format '" + item + "'");
  }
  return f;
}

inline std::string report_stem(const ReportTable& t) {
  return t.kind() + "_seed" + std::to_string(t.seed());
}

inline void write_text(const std::filesystem::path& p, const std::string& body) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error("cannot open '" + p.string() + "' for writing");
  os << body;
  if (!os) throw Error("write to '" + p.string() + "' failed");
}

inline std::string metadata_json(const ReportTable& t) {
  std::ostringstream os;
  os << "{\n";
  std::size_t k = 0;
  for (const auto& [key, value] : t.metadata()) {
    os << "  \"" << key << "\": \"";
    for (char ch : value) {
      if (ch == '"' || ch == '\\') os << '\\';
      os << ch;
    }
    os << "\"" << (++k < t.metadata().size() ? "," : "") << "\n";
  }
  os << "}\n";
  return os.str();
}

/// Writes <kind>_seed<N>.csv (+ .meta.json) and, for non-empty tables,
/// <kind>_seed<N>.svg. Returns the files written.
inline std::vector<std::filesystem::path> emit_report(const ReportTable& table,
                                                      const std::filesystem::path& out_dir,
                                                      const ReportFormats& formats = {},
                                                      const PlotOptions& plot = {}) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create '" + out_dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> files;
  const std::string stem = report_stem(table);
  if (formats.csv) {
    files.push_back(out_dir / (stem + ".csv"));
    write_text(files.back(), table.to_csv());
    files.push_back(out_dir / (stem + ".meta.json"));
    write_text(files.back(), metadata_json(table));
  }
  if (formats.svg && !table.rows().empty()) {
    files.push_back(out_dir / (stem + ".svg"));
    write_text(files.back(), to_svg(table, plot));
  }
  return files;
}

}  // namespace gqc
