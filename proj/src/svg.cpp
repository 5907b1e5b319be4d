#include "rdstab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "rdstab/errors.hpp"

namespace rdstab {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kMarginL = 70.0;
constexpr double kMarginR = 140.0;
constexpr double kMarginT = 40.0;
constexpr double kMarginB = 50.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::vector<double>& x,
                    const std::vector<SvgSeries>& series) {
  if (x.size() < 2) throw LoadError("SVG plot needs at least two x values");
  double y_min = std::numeric_limits<double>::infinity();
  double y_max = -y_min;
  for (const auto& s : series) {
    if (s.y.size() != x.size()) {
      throw LoadError("SVG series length does not match x");
    }
    for (double v : s.y) {
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
  }
  if (y_min == y_max) {
    y_min -= 1.0;
    y_max += 1.0;
  }
  const double x_min = x.front();
  const double x_max = x.back();
  const double plot_w = kWidth - kMarginL - kMarginR;
  const double plot_h = kHeight - kMarginT - kMarginB;
  auto px = [&](double v) {
    return kMarginL + (v - x_min) / (x_max - x_min) * plot_w;
  };
  auto py = [&](double v) {
    return kMarginT + (y_max - v) / (y_max - y_min) * plot_h;
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot open '" + path + "' for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title
      << "</text>\n";

  // Frame and ticks (5 per axis).
  out << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\""
      << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = x_min + (x_max - x_min) * t / 4.0;
    const double fy = y_min + (y_max - y_min) * t / 4.0;
    out << "<line x1=\"" << px(fx) << "\" y1=\"" << kMarginT + plot_h
        << "\" x2=\"" << px(fx) << "\" y2=\"" << kMarginT + plot_h + 5
        << "\" stroke=\"#444\"/>\n";
    out << "<text x=\"" << px(fx) << "\" y=\"" << kMarginT + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << fmt(fx) << "</text>\n";
    out << "<line x1=\"" << kMarginL - 5 << "\" y1=\"" << py(fy) << "\" x2=\""
        << kMarginL << "\" y2=\"" << py(fy) << "\" stroke=\"#444\"/>\n";
    out << "<text x=\"" << kMarginL - 9 << "\" y=\"" << py(fy) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << fmt(fy) << "</text>\n";
  }
  out << "<text x=\"" << kMarginL + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"12\">" << x_label << "</text>\n";

  for (size_t s = 0; s < series.size(); ++s) {
    out << "<polyline fill=\"none\" stroke=\"" << series[s].color
        << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < x.size(); ++i) {
      out << fmt(px(x[i])) << ',' << fmt(py(series[s].y[i])) << ' ';
    }
    out << "\"/>\n";
    const double ly = kMarginT + 16.0 + 18.0 * s;
    out << "<line x1=\"" << kWidth - kMarginR + 12 << "\" y1=\"" << ly
        << "\" x2=\"" << kWidth - kMarginR + 34 << "\" y2=\"" << ly
        << "\" stroke=\"" << series[s].color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kWidth - kMarginR + 40 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << series[s].label << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw LoadError("write failed for '" + path + "'");
}

}  // namespace rdstab
