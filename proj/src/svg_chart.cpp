#include "slacer/svg_chart.hpp"

#include <algorithm>
#include <ostream>

#include "slacer/config.hpp"

namespace slacer {

void write_svg_line_chart(std::ostream& out, const std::string& title, const std::vector<double>& xs,
                          const std::vector<std::optional<double>>& ys) {
  constexpr double width = 640, height = 360, margin = 48;
  double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  bool have_y = false;
  if (!xs.empty()) {
    x_lo = *std::min_element(xs.begin(), xs.end());
    x_hi = *std::max_element(xs.begin(), xs.end());
  }
  for (const auto& y : ys) {
    if (!y) continue;
    if (!have_y) y_lo = y_hi = *y;
    y_lo = std::min(y_lo, *y);
    y_hi = std::max(y_hi, *y);
    have_y = true;
  }
  if (x_hi == x_lo) x_hi = x_lo + 1;
  if (y_hi == y_lo) y_hi = y_lo + 1;
  auto px = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin); };
  auto py = [&](double y) { return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\">" << title
      << "</text>\n"
      << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
      << height - margin << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << margin - 4 << "\" y=\"" << margin << "\" text-anchor=\"end\" font-size=\"10\">"
      << format_double(y_hi) << "</text>\n"
      << "<text x=\"" << margin - 4 << "\" y=\"" << height - margin << "\" text-anchor=\"end\" font-size=\"10\">"
      << format_double(y_lo) << "</text>\n"
      << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 14
      << "\" text-anchor=\"end\" font-size=\"10\">" << format_double(x_hi) << "</text>\n";

  bool open = false;
  for (std::size_t k = 0; k < xs.size() && k < ys.size(); ++k) {
    if (!ys[k]) {
      if (open) out << "\"/>\n";
      open = false;
      continue;
    }
    if (!open) out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    out << px(xs[k]) << ',' << py(*ys[k]) << ' ';
    open = true;
  }
  if (open) out << "\"/>\n";
  out << "</svg>\n";
}

}  // namespace slacer
