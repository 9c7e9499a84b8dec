#pragma once

#include <string>
#include <vector>

namespace prot {

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<double> xs;
  std::vector<double> ys;
};

// Static polyline chart, fixed 800x600 viewbox with plain axes. Enough to eyeball
// a run without pulling in a plotting dependency.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::vector<SvgSeries>& series);

}  // namespace prot
