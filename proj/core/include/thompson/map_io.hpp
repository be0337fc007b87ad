#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "thompson/pl_map.hpp"

namespace thompson {

/// Map file format: a header line "n r", then one "x y" breakpoint per line.
/// Blank lines and '#' comments are ignored.
PLMap read_map(std::istream& in);
PLMap read_map_file(const std::filesystem::path& path);
void write_map(std::ostream& out, const PLMap& x);
void write_map_file(const std::filesystem::path& path, const PLMap& x);

/// "x,y" rows (exact values) preceded by an "x,y" header.
void write_csv(std::ostream& out, const PLMap& x);

/// Graph of each map as one polyline in the unit square scaled to
/// size x size pixels, with ticks on the x axis at the breakpoints.
void write_svg(std::ostream& out, const std::vector<PLMap>& maps, int size = 400);

}  // namespace thompson
