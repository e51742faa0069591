#include "stlab/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace stlab {

namespace {

constexpr double kPanelW = 480.0;
constexpr double kPanelH = 360.0;
constexpr double kMarginL = 60.0;
constexpr double kMarginR = 20.0;
constexpr double kMarginT = 30.0;
constexpr double kMarginB = 45.0;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fixed(double v, int digits) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  if (ec != std::errc()) return "0";
  std::string s(buf, ptr);
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

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

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  void settle() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

void render_panel(std::ostringstream& out, const PlotPanel& p, double ox) {
  Range xr;
  Range yr;
  for (const auto& s : p.series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.settle();
  yr.settle();
  const double pad = 0.05 * (yr.hi - yr.lo);
  yr.lo -= pad;
  yr.hi += pad;

  const double w = kPanelW - kMarginL - kMarginR;
  const double h = kPanelH - kMarginT - kMarginB;
  auto px = [&](double x) { return ox + kMarginL + (x - xr.lo) / (xr.hi - xr.lo) * w; };
  auto py = [&](double y) { return kMarginT + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * h; };

  out << "<rect x=\"" << fixed(ox + kMarginL, 2) << "\" y=\"" << fixed(kMarginT, 2) << "\" width=\""
      << fixed(w, 2) << "\" height=\"" << fixed(h, 2) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    out << "<text x=\"" << fixed(px(xv), 2) << "\" y=\"" << fixed(kMarginT + h + 16, 2)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fixed(xv, 3) << "</text>\n";
    out << "<text x=\"" << fixed(ox + kMarginL - 6, 2) << "\" y=\"" << fixed(py(yv) + 4, 2)
        << "\" font-size=\"11\" text-anchor=\"end\">" << fixed(yv, 3) << "</text>\n";
  }
  out << "<text x=\"" << fixed(ox + kMarginL + w / 2, 2) << "\" y=\"" << fixed(kPanelH - 8, 2)
      << "\" font-size=\"13\" text-anchor=\"middle\">" << escape(p.x_label) << "</text>\n";
  out << "<text x=\"" << fixed(ox + 14, 2) << "\" y=\"" << fixed(kMarginT + h / 2, 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 " << fixed(ox + 14, 2) << ' '
      << fixed(kMarginT + h / 2, 2) << ")\">" << escape(p.y_label) << "</text>\n";
  out << "<text x=\"" << fixed(ox + kMarginL + w / 2, 2) << "\" y=\"18\" font-size=\"14\" text-anchor=\"middle\">"
      << escape(p.title) << "</text>\n";

  for (std::size_t si = 0; si < p.series.size(); ++si) {
    const auto& s = p.series[si];
    const char* color = s.dashed ? "black" : kPalette[si % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    bool first = true;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!first) out << ' ';
      out << fixed(px(s.x[i]), 2) << ',' << fixed(py(s.y[i]), 2);
      first = false;
    }
    out << "\"/>\n";
    const double ly = kMarginT + 14 + 14 * static_cast<double>(si);
    out << "<line x1=\"" << fixed(ox + kMarginL + 8, 2) << "\" y1=\"" << fixed(ly - 4, 2) << "\" x2=\""
        << fixed(ox + kMarginL + 28, 2) << "\" y2=\"" << fixed(ly - 4, 2) << "\" stroke=\"" << color << '"'
        << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    out << "<text x=\"" << fixed(ox + kMarginL + 32, 2) << "\" y=\"" << fixed(ly, 2) << "\" font-size=\"11\">"
        << escape(s.label) << "</text>\n";
  }
}

}  // namespace

std::string render_svg(const std::vector<PlotPanel>& panels) {
  std::ostringstream out;
  const double width = kPanelW * static_cast<double>(std::max<std::size_t>(1, panels.size()));
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\""
      << fixed(kPanelH, 0) << "\" viewBox=\"0 0 " << fixed(width, 0) << ' ' << fixed(kPanelH, 0) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) render_panel(out, panels[i], kPanelW * static_cast<double>(i));
  out << "</svg>\n";
  return out.str();
}

}  // namespace stlab
