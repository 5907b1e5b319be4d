#pragma once

#include <string>
#include <vector>

namespace rdstab {

struct SvgSeries {
  std::string label;
  std::string color;           // e.g. "#1f77b4"
  std::vector<double> y;
};

// Standalone SVG line plot of the series against a shared x vector, with
// axes, tick labels and a legend. Throws LoadError on I/O failure.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label,
                    const std::vector<double>& x,
                    const std::vector<SvgSeries>& series);

}  // namespace rdstab
