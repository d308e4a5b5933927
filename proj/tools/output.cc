// Copyright 2026 The dpcomm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "output.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dpcomm::cli {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string CellText(const Cell& cell) {
  return std::visit(
      Overloaded{[](std::monostate) { return std::string(); },
                 [](bool b) { return std::string(b ? "true" : "false"); },
                 [](int64_t v) { return std::to_string(v); },
                 [](uint64_t v) { return std::to_string(v); },
                 [](double v) { return FormatNumber(v); },
                 [](const std::string& s) { return s; }},
      cell);
}

// RFC 4180: quote fields holding separators, quotes or line breaks.
std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

nlohmann::ordered_json CellJson(const Cell& cell) {
  return std::visit(
      Overloaded{[](std::monostate) { return nlohmann::ordered_json(); },
                 [](bool b) { return nlohmann::ordered_json(b); },
                 [](int64_t v) { return nlohmann::ordered_json(v); },
                 [](uint64_t v) { return nlohmann::ordered_json(v); },
                 [](double v) {
                   // JSON has no non-finite numbers; keep them readable.
                   return std::isfinite(v) ? nlohmann::ordered_json(v)
                                           : nlohmann::ordered_json(FormatNumber(v));
                 },
                 [](const std::string& s) { return nlohmann::ordered_json(s); }},
      cell);
}

std::string XmlEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Short tick label, e.g. 0.001 or 1e+06.
std::string Tick(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::general, 3);
  return ec == std::errc() ? std::string(buf, end) : "?";
}

}  // namespace

void Table::Add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("row arity " + std::to_string(row.size()) +
                           " does not match the " + std::to_string(columns.size()) +
                           " columns of table " + name);
  }
  rows.push_back(std::move(row));
}

std::string FormatNumber(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // folds -0
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string RenderCsv(const Table& table, const Provenance& prov) {
  std::string out;
  out += "# dpcomm " + prov.version + "\n";
  out += "# command: " + prov.command + "\n";
  out += "# config_fnv1a64: " + prov.config_hash + "\n";
  out += "# seed: " + std::to_string(prov.seed) + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out += (i ? "," : "") + CsvField(table.columns[i]);
  }
  out += "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += (i ? "," : "") + CsvField(CellText(row[i]));
    }
    out += "\r\n";
  }
  return out;
}

std::string RenderJson(const Table& table, const Provenance& prov) {
  nlohmann::ordered_json doc;
  doc["provenance"] = {{"version", prov.version},
                       {"command", prov.command},
                       {"config_fnv1a64", prov.config_hash},
                       {"seed", prov.seed}};
  doc["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& c : row) r.push_back(CellJson(c));
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string RenderSvg(const PlotSpec& spec, const std::vector<Series>& series,
                      const Provenance& prov) {
  constexpr double kW = 640, kH = 420, kLeft = 80, kRight = 170, kTop = 40,
                   kBottom = 60;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  auto tx = [&](double v) { return spec.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return spec.log_y ? std::log10(v) : v; };
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!spec.log_x || x > 0) &&
           (!spec.log_y || y > 0);
  };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  }
  if (!(x0 <= x1)) x0 = 0, x1 = 1;
  if (!(y0 <= y1)) y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (tx(v) - x0) / (x1 - x0) * pw; };
  auto py = [&](double v) { return kTop + ph - (ty(v) - y0) / (y1 - y0) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\""
    << kH << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<!-- dpcomm " << XmlEscape(prov.version) << " command=" << XmlEscape(prov.command)
    << " config_fnv1a64=" << prov.config_hash << " seed=" << prov.seed << " -->\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
    << XmlEscape(spec.title) << "</text>\n";
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw
    << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = x0 + (x1 - x0) * k / 4, fy = y0 + (y1 - y0) * k / 4;
    const double sx = kLeft + pw * k / 4, sy = kTop + ph - ph * k / 4;
    o << "<text x=\"" << sx << "\" y=\"" << kTop + ph + 16
      << "\" text-anchor=\"middle\">" << Tick(spec.log_x ? std::pow(10, fx) : fx)
      << "</text>\n";
    o << "<text x=\"" << kLeft - 6 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\">"
      << Tick(spec.log_y ? std::pow(10, fy) : fy) << "</text>\n";
  }
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 18
    << "\" text-anchor=\"middle\">" << XmlEscape(spec.x_label) << "</text>\n";
  o << "<text transform=\"translate(18," << kTop + ph / 2
    << ") rotate(-90)\" text-anchor=\"middle\">" << XmlEscape(spec.y_label)
    << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % 8];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (usable(s.x[i], s.y[i])) o << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    o << "\"/>\n";
    const double ly = kTop + 12 + 16.0 * static_cast<double>(k);
    o << "<line x1=\"" << kW - kRight + 10 << "\" y1=\"" << ly << "\" x2=\""
      << kW - kRight + 30 << "\" y2=\"" << ly << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << kW - kRight + 35 << "\" y=\"" << ly + 4 << "\">"
      << XmlEscape(s.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace dpcomm::cli
