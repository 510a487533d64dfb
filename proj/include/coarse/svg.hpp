#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coarse/cover.hpp"

namespace coarse::svg {

/// Line chart of (x, y) samples. Infinite y values are drawn at the top edge.
std::string line_chart(const std::vector<std::pair<double, double>>& points, const std::string& title,
                       const std::string& x_label, const std::string& y_label);

/// Members of a cover of a one- or two-dimensional coordinate space, one
/// color per member: stacked interval rows in 1-D, translucent cells in 2-D.
/// Spaces with integer point ids are plotted on the line. Throws
/// InvalidArgument for anything else.
std::string cover_diagram(const Cover& cover, const std::string& title);

}  // namespace coarse::svg
