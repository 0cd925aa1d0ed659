#include "pareto/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "pareto/errors.hpp"
#include "pareto/io.hpp"

namespace pareto::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

void header(std::ostringstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << escape(title) << "</text>\n";
}

}  // namespace

std::string scatter(const std::vector<Series>& series, const std::string& title, const std::string& x_label,
                    const std::string& y_label) {
  Range xr;
  Range yr;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      xr.add(x);
      yr.add(y);
    }
  }
  xr.pad();
  yr.pad();
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::ostringstream out;
  header(out, title);
  out << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(kLeft + pw)
      << "\" y2=\"" << num(kTop + ph) << "\"/>\n"
      << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\""
      << num(kTop + ph) << "\"/>\n</g>\n";

  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  constexpr int kTicks = 5;
  for (int t = 0; t <= kTicks; ++t) {
    const double xv = xr.lo + (xr.hi - xr.lo) * t / kTicks;
    const double yv = yr.lo + (yr.hi - yr.lo) * t / kTicks;
    out << "<line x1=\"" << num(sx(xv)) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(sx(xv))
        << "\" y2=\"" << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(kTop + ph + 18) << "\" text-anchor=\"middle\">"
        << tick(xv) << "</text>\n"
        << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(sy(yv)) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(sy(yv)) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(sy(yv) + 4) << "\" text-anchor=\"end\">"
        << tick(yv) << "</text>\n";
  }
  out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 16)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(x_label) << "</text>\n"
      << "<text x=\"18\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << num(kTop + ph / 2) << ")\">" << escape(y_label) << "</text>\n</g>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : series[s].points) out << num(sx(x)) << ',' << num(sy(y)) << ' ';
    out << "\"/>\n<g fill=\"" << color << "\">\n";
    // Markers thin out on dense fronts.
    const std::size_t stride = std::max<std::size_t>(1, series[s].points.size() / 60);
    for (std::size_t k = 0; k < series[s].points.size(); k += stride) {
      const auto& [x, y] = series[s].points[k];
      out << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y)) << "\" r=\"" << (s == 0 ? 3 : 2)
          << "\"/>\n";
    }
    out << "</g>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(s);
    out << "<rect x=\"" << num(kLeft + pw + 15) << "\" y=\"" << num(ly - 8) << "\" width=\"12\" height=\"12\" fill=\""
        << color << "\"/>\n"
        << "<text x=\"" << num(kLeft + pw + 32) << "\" y=\"" << num(ly + 2)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(series[s].label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string bar_chart(const std::vector<Bar>& bars, const std::string& title, const std::string& y_label) {
  double top = 0.0;
  for (const Bar& b : bars) top = std::max(top, b.value);
  if (top <= 0.0) top = 1.0;
  top *= 1.1;
  const double pw = kWidth - kLeft - 40.0;
  const double ph = kHeight - kTop - kBottom - 40.0;
  const double slot = bars.empty() ? pw : pw / static_cast<double>(bars.size());

  std::ostringstream out;
  header(out, title);
  out << "<g stroke=\"black\"><line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + ph) << "\" x2=\""
      << num(kLeft + pw) << "\" y2=\"" << num(kTop + ph) << "\"/><line x1=\"" << num(kLeft) << "\" y1=\""
      << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\"" << num(kTop + ph) << "\"/></g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = top * t / 4.0;
    const double y = kTop + ph - ph * t / 4.0;
    out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << tick(v)
        << "</text>\n";
  }
  for (std::size_t k = 0; k < bars.size(); ++k) {
    const double h = ph * bars[k].value / top;
    const double x = kLeft + slot * static_cast<double>(k) + 0.15 * slot;
    out << "<rect x=\"" << num(x) << "\" y=\"" << num(kTop + ph - h) << "\" width=\"" << num(0.7 * slot)
        << "\" height=\"" << num(h) << "\" fill=\"" << kPalette[k % std::size(kPalette)] << "\"/>\n"
        << "<text x=\"" << num(x + 0.35 * slot) << "\" y=\"" << num(kTop + ph + 16)
        << "\" text-anchor=\"middle\">" << escape(bars[k].label) << "</text>\n"
        << "<text x=\"" << num(x + 0.35 * slot) << "\" y=\"" << num(kTop + ph - h - 4)
        << "\" text-anchor=\"middle\">" << tick(bars[k].value) << "</text>\n";
  }
  out << "<text x=\"18\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << num(kTop + ph / 2) << ")\">" << escape(y_label) << "</text>\n</g>\n";
  out << "</svg>\n";
  return out.str();
}

Series objective_series(const ParetoFront& front, const std::string& label) {
  Series s{label, {}};
  for (const FrontPoint& p : front.points) {
    if (p.objective_values.size() != 2) throw InvalidArgument("objective-space plot needs m = 2");
    s.points.emplace_back(p.objective_values(0), p.objective_values(1));
  }
  return s;
}

std::string counters_chart(const BenchReport& report) {
  std::vector<Bar> bars;
  for (const BenchRow& row : report.rows) {
    bars.push_back({to_string(row.method) + " d=" + format_double(row.d), row.gradient_equivalents});
  }
  return bar_chart(bars, report.problem + ": cost per method", "gradient evaluations (equivalent)");
}

}  // namespace pareto::svg
