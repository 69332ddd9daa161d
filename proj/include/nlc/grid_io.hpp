#pragma once

#include <iosfwd>
#include <string>

#include "nlc/grid.hpp"

namespace nlc {

enum class GridEncoding { raw, rle };

/// NLGRID v1 text format:
///   NLGRID v1
///   d <dim>
///   dims <n1 ... nd>
///   origin <x1 ... xd>
///   spacing <h>
///   encoding raw|rle
/// followed by the payload in linear cell order: `raw` writes one row of 0/1
/// characters per line along the last axis, `rle` writes `<bit> <count>` runs.
void save_grid(std::ostream& out, const IndicatorGrid& grid, GridEncoding encoding = GridEncoding::rle);
void save_grid(const std::string& path, const IndicatorGrid& grid, GridEncoding encoding = GridEncoding::rle);

/// Throws std::runtime_error (with the line number) on malformed input,
/// count mismatches or trailing data.
IndicatorGrid load_grid(std::istream& in);
IndicatorGrid load_grid(const std::string& path);

}  // namespace nlc
