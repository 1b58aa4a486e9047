#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace ultrafit::cli {

/// Self-contained SVG line chart of a cost trace.
void write_trace_svg(std::ostream& out, std::span<const double> trace,
                     const std::string& title);

}  // namespace ultrafit::cli
