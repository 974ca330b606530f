#pragma once

#include "pyroseason/hexgrid.hpp"

#include <array>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace pyroseason {

using LonLat = std::array<double, 2>;
using Ring = std::vector<LonLat>; // closed: first == last

// Exterior rings of a cell in lon-lat order, counterclockwise. Cells
// crossing the antimeridian come back as two rings cut at +-180; a cell
// holding a pole is closed along the pole's latitude.
std::vector<Ring> cell_rings(const HexGrid &grid, CellId cell);

// RFC 7946 FeatureCollection, one feature per cell with properties
// {"cell": "R:INDEX", field: value}. Non-finite values are written as null.
// An empty field name writes only the cell id.
void write_geojson(std::ostream &out, const HexGrid &grid, std::span<const CellId> cells, const std::string &field,
                   std::span<const double> values);

// Empirical density of the finite values on `bins` equal-width bins:
// bin,lower,upper,count,density (density integrates to 1).
void write_histogram(std::ostream &out, std::span<const double> values, int bins = 256);

} // namespace pyroseason
