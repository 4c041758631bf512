#include "gmdkp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace gmdkp::svg {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 55;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::fabs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

struct Axis {
  double lo, hi;
  bool log;
  double pixel_lo, pixel_hi;

  double map(double v) const {
    const double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
    return pixel_lo + t * (pixel_hi - pixel_lo);
  }
};

// Data range (log10 when requested), padded, never empty.
std::pair<double, double> range(const Plot& plot, bool x_axis, bool log) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : plot.series) {
    const auto& vals = x_axis ? s.x : s.y;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      double a = vals[k], b = vals[k];
      if (!x_axis && k < s.err.size()) {
        a -= s.err[k];
        b += s.err[k];
      }
      for (double v : {a, b}) {
        if (!std::isfinite(v) || (log && v <= 0.0)) continue;
        const double t = log ? std::log10(v) : v;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
    }
  }
  if (!std::isfinite(lo)) return {0.0, 1.0};
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

std::vector<double> linear_ticks(double lo, double hi) {
  const double raw = (hi - lo) / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) ticks.push_back(t);
  return ticks;
}

}  // namespace

std::string render(const Plot& plot) {
  const auto [x_lo, x_hi] = range(plot, true, plot.log_x);
  const auto [y_lo, y_hi] = range(plot, false, plot.log_y);
  const Axis ax{x_lo, x_hi, plot.log_x, kLeft, kWidth - kRight};
  const Axis ay{y_lo, y_hi, plot.log_y, kHeight - kBottom, kTop};

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(plot.title) << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight << "\" height=\""
      << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Ticks. On log axes, ticks sit at integer powers of ten when there are
  // at least two of them, otherwise at the linear ticks of the exponent.
  auto draw_ticks = [&](const Axis& a, bool is_x) {
    std::vector<double> ticks;
    if (a.log) {
      for (double e = std::ceil(a.lo); e <= a.hi; e += 1.0) ticks.push_back(e);
      if (ticks.size() < 2) ticks = linear_ticks(a.lo, a.hi);
    } else {
      ticks = linear_ticks(a.lo, a.hi);
    }
    for (double t : ticks) {
      const double value = a.log ? std::pow(10.0, t) : t;
      const double p = a.log ? a.pixel_lo + (t - a.lo) / (a.hi - a.lo) * (a.pixel_hi - a.pixel_lo) : a.map(t);
      if (is_x) {
        out << "<line x1=\"" << num(p) << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << num(p) << "\" y2=\""
            << kHeight - kBottom + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(p) << "\" y=\"" << kHeight - kBottom + 18 << "\" text-anchor=\"middle\">"
            << tick_label(value) << "</text>\n";
      } else {
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(p) << "\" x2=\"" << kLeft << "\" y2=\"" << num(p)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(p + 4) << "\" text-anchor=\"end\">" << tick_label(value)
            << "</text>\n";
      }
    }
  };
  draw_ticks(ax, true);
  draw_ticks(ay, false);
  out << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
  out << "<text transform=\"translate(18," << num((kTop + kHeight - kBottom) / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(plot.y_label) << "</text>\n";

  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!plot.log_x || x > 0) && (!plot.log_y || y > 0);
  };

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* color = kColors[k % std::size(kColors)];
    std::string points;
    for (std::size_t j = 0; j < s.x.size() && j < s.y.size(); ++j) {
      if (!usable(s.x[j], s.y[j])) continue;
      points += num(ax.map(s.x[j])) + "," + num(ay.map(s.y[j])) + " ";
    }
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
        << (s.line_only ? " stroke-dasharray=\"6,3\"" : "") << " points=\"" << points << "\"/>\n";
    if (!s.line_only) {
      for (std::size_t j = 0; j < s.x.size() && j < s.y.size(); ++j) {
        if (!usable(s.x[j], s.y[j])) continue;
        const double px = ax.map(s.x[j]), py = ay.map(s.y[j]);
        if (j < s.err.size() && s.err[j] > 0.0) {
          const double lo = s.y[j] - s.err[j], hi = s.y[j] + s.err[j];
          if (usable(s.x[j], lo) && usable(s.x[j], hi))
            out << "<line x1=\"" << num(px) << "\" y1=\"" << num(ay.map(lo)) << "\" x2=\"" << num(px) << "\" y2=\""
                << num(ay.map(hi)) << "\" stroke=\"" << color << "\"/>\n";
        }
        out << "<circle cx=\"" << num(px) << "\" cy=\"" << num(py) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
    const double ly = kTop + 12 + 18.0 * static_cast<double>(k);
    const double lx = kWidth - kRight + 12;
    out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 20) << "\" y2=\""
        << num(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\""
        << (s.line_only ? " stroke-dasharray=\"6,3\"" : "") << "/>\n";
    out << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly) << "\">" << escape(s.label) << "</text>\n";
  }
  for (std::size_t k = 0; k < plot.notes.size(); ++k) {
    const double ly = kTop + 12 + 18.0 * static_cast<double>(plot.series.size() + k) + 8;
    out << "<text x=\"" << num(kWidth - kRight + 12) << "\" y=\"" << num(ly) << "\" font-size=\"11\">"
        << escape(plot.notes[k]) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace gmdkp::svg
