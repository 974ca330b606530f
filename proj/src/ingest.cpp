#include "pyroseason/ingest.hpp"

#include "pyroseason/csv.hpp"
#include "pyroseason/error.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>

namespace pyroseason {

namespace {

std::string_view trim(std::string_view s) {
	while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
		s.remove_prefix(1);
	}
	while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
		s.remove_suffix(1);
	}
	return s;
}

template <typename T>
bool parse_number(std::string_view s, T &out) {
	s = trim(s);
	if (s.empty()) {
		return false;
	}
	if (s.front() == '+') {
		s.remove_prefix(1);
	}
	auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
	return ec == std::errc() && ptr == s.data() + s.size();
}

std::size_t column_index(const std::vector<std::string> &header, const std::string &name) {
	for (std::size_t i = 0; i < header.size(); ++i) {
		if (trim(header[i]) == name) {
			return i;
		}
	}
	throw SchemaError("missing required column '" + name + "'");
}

} // namespace

ParseResult parse_records(std::istream &in, const ColumnMap &columns, bool strict) {
	ParseResult result;
	std::string line;
	if (!csv::read_line(in, line)) {
		throw SchemaError("input has no header row");
	}
	if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
		line.erase(0, 3);
	}
	const auto header = csv::split(line);
	const std::size_t ilat = column_index(header, columns.latitude);
	const std::size_t ilon = column_index(header, columns.longitude);
	const std::size_t idate = column_index(header, columns.date);
	const std::size_t iconf = column_index(header, columns.confidence);
	const std::size_t need = std::max({ilat, ilon, idate, iconf}) + 1;

	std::size_t row = 1;
	while (csv::read_line(in, line)) {
		++row;
		FireRecord r;
		bool ok = false;
		try {
			const auto f = csv::split(line);
			double lat = 0.0, lon = 0.0;
			int conf = 0;
			if (f.size() >= need && parse_number(f[ilat], lat) && parse_number(f[ilon], lon) &&
			    parse_number(f[iconf], conf) && conf >= 0 && conf <= 100) {
				r.location = GeoPoint::normalized(lat, lon);
				r.date = Date::parse(trim(f[idate]));
				r.confidence = conf;
				ok = true;
			}
		} catch (const Error &) {
			ok = false;
		}
		if (ok) {
			result.records.push_back(r);
		} else if (strict) {
			throw ParseError("malformed record at line " + std::to_string(row));
		} else {
			++result.rejected;
		}
	}
	return result;
}

std::vector<FireRecord> filter_records(std::span<const FireRecord> records, int min_confidence, DateRange range) {
	if (range.last < range.first) {
		throw ParameterError("date range start after end");
	}
	std::vector<FireRecord> kept;
	std::copy_if(records.begin(), records.end(), std::back_inserter(kept),
	             [&](const FireRecord &r) { return r.confidence > min_confidence && range.contains(r.date); });
	return kept;
}

std::uint64_t DailySeries::total() const {
	return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

CellAccumulator::CellAccumulator(int resolution, DateRange range) : grid_(resolution), range_(range) {
	if (range.last < range.first) {
		throw ParameterError("date range start after end");
	}
}

bool CellAccumulator::add(const FireRecord &r) {
	if (!range_.contains(r.date)) {
		++out_of_range_;
		return false;
	}
	const CellId c = grid_.locate(r.location);
	auto &v = cells_[c.index];
	if (v.empty()) {
		v.assign(static_cast<std::size_t>(range_.days()), 0);
	}
	++v[static_cast<std::size_t>(r.date - range_.first)];
	++added_;
	return true;
}

void CellAccumulator::merge(const CellAccumulator &other) {
	if (other.grid_.resolution() != grid_.resolution() || other.range_.first != range_.first ||
	    other.range_.last != range_.last) {
		throw ParameterError("cannot merge accumulators with different grids or ranges");
	}
	for (const auto &[idx, counts] : other.cells_) {
		auto &v = cells_[idx];
		if (v.empty()) {
			v = counts;
			continue;
		}
		for (std::size_t d = 0; d < v.size(); ++d) {
			v[d] += counts[d];
		}
	}
	out_of_range_ += other.out_of_range_;
	added_ += other.added_;
}

std::vector<DailySeries> CellAccumulator::series() const {
	std::vector<DailySeries> out;
	out.reserve(cells_.size());
	for (const auto &[idx, counts] : cells_) {
		out.push_back({{grid_.resolution(), idx}, range_.first, counts});
	}
	std::sort(out.begin(), out.end(), [](const DailySeries &a, const DailySeries &b) { return a.cell < b.cell; });
	return out;
}

std::vector<DailySeries> bin_to_cells(std::span<const FireRecord> records, int resolution, DateRange range) {
	CellAccumulator acc(resolution, range);
	for (const auto &r : records) {
		acc.add(r);
	}
	return acc.series();
}

} // namespace pyroseason
