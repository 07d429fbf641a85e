#pragma once

#include <string>

#include "hynav/csv.hpp"

namespace hynav {

/// Renders the run trace as a self-contained SVG: a 3x3 grid of subplots
/// (attitude / velocity / position rows; one component per column) with the
/// truth curve solid and the estimate dashed. att_n is 3 (Euler) or 4
/// (quaternion; the scalar component is dropped so the grid stays 3x3).
void write_plot_svg(const std::string& path, const CsvTable& trace, int att_n);

}  // namespace hynav
