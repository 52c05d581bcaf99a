#include "eohom/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "eohom/units.hpp"

namespace eohom {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw Error("csv row has " + std::to_string(cells.size()) + " cells, header has " +
                std::to_string(header_.size()));
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out.str();
}

std::string aligned_table(const CsvTable& table) {
  std::vector<size_t> width(table.header().size());
  auto measure = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) width[i] = std::max(width[i], cells[i].size());
  };
  measure(table.header());
  for (const auto& r : table.rows()) measure(r);

  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      out << cells[i];
      if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size() + 2, ' ');
    }
    out << '\n';
  };
  line(table.header());
  size_t total = 0;
  for (size_t w : width) total += w + 2;
  out << std::string(total - 2, '-') << '\n';
  for (const auto& r : table.rows()) line(r);
  return out.str();
}

namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  std::vector<double> t;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step)
    t.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
  return t;
}

void pad_range(double& lo, double& hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
}

}  // namespace

std::string render_svg(const Plot& plot) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : plot.series) {
    for (double v : s.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
    for (double v : s.y)
      if (std::isfinite(v)) y0 = std::min(y0, v), y1 = std::max(y1, v);
  }
  for (double h : plot.h_lines) y0 = std::min(y0, h), y1 = std::max(y1, h);
  pad_range(x0, x1);
  pad_range(y0, y1);
  const double margin = 0.05 * (y1 - y0);
  y0 = plot.y_min.value_or(y0 - margin);
  y1 = plot.y_max.value_or(y1 + margin);

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << px(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(plot.title) << "</text>\n";
  o << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\"" << px(pw) << "\" height=\"" << px(ph)
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ticks(x0, x1)) {
    o << "<line x1=\"" << px(sx(t)) << "\" y1=\"" << px(kTop + ph) << "\" x2=\"" << px(sx(t)) << "\" y2=\""
      << px(kTop + ph + 5) << "\" stroke=\"black\"/>";
    o << "<text x=\"" << px(sx(t)) << "\" y=\"" << px(kTop + ph + 18) << "\" text-anchor=\"middle\">"
      << format_number(t) << "</text>\n";
  }
  for (double t : ticks(y0, y1)) {
    o << "<line x1=\"" << px(kLeft - 5) << "\" y1=\"" << px(sy(t)) << "\" x2=\"" << px(kLeft) << "\" y2=\""
      << px(sy(t)) << "\" stroke=\"black\"/>";
    o << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(sy(t) + 4) << "\" text-anchor=\"end\">"
      << format_number(t) << "</text>\n";
  }
  o << "<text x=\"" << px(kLeft + pw / 2) << "\" y=\"" << px(kHeight - 15) << "\" text-anchor=\"middle\">"
    << escape(plot.x_label) << "</text>\n";
  o << "<text x=\"18\" y=\"" << px(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << px(kTop + ph / 2) << ")\">" << escape(plot.y_label) << "</text>\n";

  for (double h : plot.h_lines)
    if (h >= y0 && h <= y1)
      o << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(sy(h)) << "\" x2=\"" << px(kLeft + pw) << "\" y2=\""
        << px(sy(h)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  for (double v : plot.v_lines)
    if (v >= x0 && v <= x1)
      o << "<line x1=\"" << px(sx(v)) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(sx(v)) << "\" y2=\""
        << px(kTop + ph) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";

  for (size_t i = 0; i < plot.series.size(); ++i) {
    const auto& s = plot.series[i];
    const char* color = kColors[i % std::size(kColors)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t j = 0; j < s.x.size() && j < s.y.size(); ++j) {
      if (!std::isfinite(s.y[j])) continue;
      const double y = std::clamp(s.y[j], y0, y1);
      o << (j ? " " : "") << px(sx(s.x[j])) << ',' << px(sy(y));
    }
    o << "\"/>\n";
    if (s.markers)
      for (size_t j = 0; j < s.x.size() && j < s.y.size(); ++j)
        if (std::isfinite(s.y[j]) && s.y[j] >= y0 && s.y[j] <= y1)
          o << "<circle cx=\"" << px(sx(s.x[j])) << "\" cy=\"" << px(sy(s.y[j])) << "\" r=\"3\" fill=\"" << color
            << "\"/>\n";
    const double ly = kTop + 12 + 18 * static_cast<double>(i);
    o << "<line x1=\"" << px(kLeft + pw + 12) << "\" y1=\"" << px(ly) << "\" x2=\"" << px(kLeft + pw + 32)
      << "\" y2=\"" << px(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
    o << "<text x=\"" << px(kLeft + pw + 36) << "\" y=\"" << px(ly + 4) << "\">" << escape(s.name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace eohom
