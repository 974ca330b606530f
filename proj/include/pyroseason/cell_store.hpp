#pragma once

#include "pyroseason/ingest.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace pyroseason {

// cells.bin, little-endian:
//   char[8]  magic "PYROCELL"
//   u32      format version (1)
//   i32      resolution
//   i32      start date (days since 1970-01-01)
//   u32      days per series
//   u64      number of cells
//   per cell: u64 cell index, u32 run count, then (u32 length, u32 value) runs
//             covering exactly `days` entries
inline constexpr std::uint32_t kCellStoreVersion = 1;

void write_cells(std::ostream &out, const std::vector<DailySeries> &series);
std::vector<DailySeries> read_cells(std::istream &in);

void save_cells(const std::string &path, const std::vector<DailySeries> &series);
std::vector<DailySeries> load_cells(const std::string &path);

} // namespace pyroseason
