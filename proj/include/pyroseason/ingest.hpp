#pragma once

#include "pyroseason/date.hpp"
#include "pyroseason/hexgrid.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace pyroseason {

struct FireRecord {
	GeoPoint location;
	Date date;
	int confidence = 0; // percent
};

// Header names of the required columns. Defaults follow the MCD14ML text
// layout; every other column (brightness, frp, type, ...) is ignored.
struct ColumnMap {
	std::string latitude = "latitude";
	std::string longitude = "longitude";
	std::string date = "acq_date";
	std::string confidence = "confidence";
};

struct ParseResult {
	std::vector<FireRecord> records;
	std::size_t rejected = 0;
};

// Throws SchemaError when a required column is missing. Malformed rows are
// counted and skipped, or abort with ParseError in strict mode.
ParseResult parse_records(std::istream &in, const ColumnMap &columns = {}, bool strict = false);

// Keeps confidence > min_confidence (strict) and date inside the range.
std::vector<FireRecord> filter_records(std::span<const FireRecord> records, int min_confidence, DateRange range);

struct DailySeries {
	CellId cell;
	Date start;
	std::vector<std::uint32_t> counts; // one per day of the study range

	std::uint64_t total() const;
};

// Single-pass binning with one dense day vector per touched cell. Partial
// accumulators over disjoint chunks merge associatively, so the result does
// not depend on how the input was split.
class CellAccumulator {
public:
	CellAccumulator(int resolution, DateRange range);

	// Returns false (and counts the record as out of range) when the date
	// lies outside the study range.
	bool add(const FireRecord &r);
	void merge(const CellAccumulator &other);

	std::size_t out_of_range() const { return out_of_range_; }
	std::uint64_t added() const { return added_; }

	// Series sorted by cell index; only cells with at least one detection.
	std::vector<DailySeries> series() const;

private:
	HexGrid grid_;
	DateRange range_;
	std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells_;
	std::size_t out_of_range_ = 0;
	std::uint64_t added_ = 0;
};

std::vector<DailySeries> bin_to_cells(std::span<const FireRecord> records, int resolution, DateRange range);

} // namespace pyroseason
