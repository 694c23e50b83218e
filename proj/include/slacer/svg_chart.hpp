#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace slacer {

// Minimal standalone SVG line chart. Missing y values break the line.
void write_svg_line_chart(std::ostream& out, const std::string& title, const std::vector<double>& xs,
                          const std::vector<std::optional<double>>& ys);

}  // namespace slacer
