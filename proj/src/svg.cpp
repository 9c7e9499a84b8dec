#include "prot/svg.hpp"

#include "prot/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>

namespace prot {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 60.0, kRight = 20.0, kTop = 40.0, kBottom = 40.0;
constexpr std::size_t kMaxPointsPerSeries = 4000;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::vector<SvgSeries>& series) {
  if (series.empty()) throw InputError("SVG chart needs at least one series");
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    if (s.xs.size() != s.ys.size() || s.xs.empty()) {
      throw InputError("SVG series '" + s.label + "' needs matching non-empty x/y data");
    }
    for (double v : s.xs) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
    for (double v : s.ys) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  const auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open SVG output file: " + path);
  f << "<svg xmlns='http://www.w3.org/2000/svg' width='800' height='600' "
       "viewBox='0 0 800 600'>\n"
    << "<rect x='0' y='0' width='800' height='600' fill='white'/>\n"
    << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' font-size='16'>"
    << title << "</text>\n"
    << "<line x1='" << kLeft << "' y1='" << kTop << "' x2='" << kLeft << "' y2='"
    << kHeight - kBottom << "' stroke='black'/>\n"
    << "<line x1='" << kLeft << "' y1='" << kHeight - kBottom << "' x2='"
    << kWidth - kRight << "' y2='" << kHeight - kBottom << "' stroke='black'/>\n"
    << "<text x='" << kLeft << "' y='" << kHeight - kBottom + 16
    << "' font-size='11'>" << num(xmin) << "</text>\n"
    << "<text x='" << kWidth - kRight << "' y='" << kHeight - kBottom + 16
    << "' text-anchor='end' font-size='11'>" << num(xmax) << "</text>\n"
    << "<text x='" << kLeft - 6 << "' y='" << kHeight - kBottom
    << "' text-anchor='end' font-size='11'>" << num(ymin) << "</text>\n"
    << "<text x='" << kLeft - 6 << "' y='" << kTop + 10
    << "' text-anchor='end' font-size='11'>" << num(ymax) << "</text>\n";

  double legend_y = kTop + 8.0;
  for (const auto& s : series) {
    const std::size_t n = s.xs.size();
    const std::size_t step = std::max<std::size_t>(1, n / kMaxPointsPerSeries);
    f << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1' points='";
    for (std::size_t i = 0; i < n; i += step) {
      f << num(px(s.xs[i])) << ',' << num(py(s.ys[i])) << ' ';
    }
    if ((n - 1) % step != 0) f << num(px(s.xs[n - 1])) << ',' << num(py(s.ys[n - 1]));
    f << "'/>\n";
    f << "<text x='" << kWidth - kRight - 4 << "' y='" << legend_y
      << "' text-anchor='end' font-size='12' fill='" << s.color << "'>" << s.label
      << "</text>\n";
    legend_y += 16.0;
  }
  f << "</svg>\n";
  if (!f) throw ConfigError("failed writing SVG output file: " + path);
}

}  // namespace prot
