#include "pyroseason/cell_store.hpp"

#include "pyroseason/error.hpp"

#include <array>
#include <cstring>
#include <fstream>

namespace pyroseason {

namespace {

constexpr char kMagic[8] = {'P', 'Y', 'R', 'O', 'C', 'E', 'L', 'L'};

template <typename T>
void put(std::ostream &out, T value) {
	std::array<char, sizeof(T)> b{};
	using U = std::make_unsigned_t<T>;
	auto u = static_cast<U>(value);
	for (std::size_t i = 0; i < sizeof(T); ++i) {
		b[i] = static_cast<char>(u & 0xFF);
		u = static_cast<U>(u >> 8);
	}
	out.write(b.data(), b.size());
}

template <typename T>
T get(std::istream &in) {
	std::array<unsigned char, sizeof(T)> b{};
	in.read(reinterpret_cast<char *>(b.data()), b.size());
	if (!in) {
		throw FormatError("cells file truncated");
	}
	using U = std::make_unsigned_t<T>;
	U u = 0;
	for (std::size_t i = sizeof(T); i-- > 0;) {
		u = static_cast<U>((u << 8) | b[i]);
	}
	return static_cast<T>(u);
}

} // namespace

void write_cells(std::ostream &out, const std::vector<DailySeries> &series) {
	int resolution = 0;
	Date start;
	std::size_t days = 0;
	if (!series.empty()) {
		resolution = series.front().cell.resolution;
		start = series.front().start;
		days = series.front().counts.size();
	}
	for (const auto &s : series) {
		if (s.cell.resolution != resolution || s.start != start || s.counts.size() != days) {
			throw ParameterError("all series in a cells file must share resolution, start and length");
		}
	}
	out.write(kMagic, sizeof kMagic);
	put<std::uint32_t>(out, kCellStoreVersion);
	put<std::int32_t>(out, resolution);
	put<std::int32_t>(out, start.serial());
	put<std::uint32_t>(out, static_cast<std::uint32_t>(days));
	put<std::uint64_t>(out, series.size());
	std::vector<std::pair<std::uint32_t, std::uint32_t>> runs;
	for (const auto &s : series) {
		runs.clear();
		for (std::uint32_t v : s.counts) {
			if (!runs.empty() && runs.back().second == v) {
				++runs.back().first;
			} else {
				runs.emplace_back(1, v);
			}
		}
		put<std::uint64_t>(out, s.cell.index);
		put<std::uint32_t>(out, static_cast<std::uint32_t>(runs.size()));
		for (const auto &[len, v] : runs) {
			put<std::uint32_t>(out, len);
			put<std::uint32_t>(out, v);
		}
	}
	if (!out) {
		throw FormatError("failed writing cells file");
	}
}

std::vector<DailySeries> read_cells(std::istream &in) {
	char magic[8];
	in.read(magic, sizeof magic);
	if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) {
		throw FormatError("not a cells file (bad magic)");
	}
	const auto version = get<std::uint32_t>(in);
	if (version != kCellStoreVersion) {
		throw FormatError("unsupported cells file version " + std::to_string(version));
	}
	const auto resolution = get<std::int32_t>(in);
	const Date start = Date::from_serial(get<std::int32_t>(in));
	const auto days = get<std::uint32_t>(in);
	const auto n = get<std::uint64_t>(in);
	const auto count = cell_count(resolution);
	std::vector<DailySeries> out;
	out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, count)));
	for (std::uint64_t i = 0; i < n; ++i) {
		DailySeries s;
		s.cell = {resolution, get<std::uint64_t>(in)};
		if (s.cell.index >= count) {
			throw FormatError("cell index out of range in cells file");
		}
		s.start = start;
		s.counts.reserve(days);
		const auto nruns = get<std::uint32_t>(in);
		for (std::uint32_t r = 0; r < nruns; ++r) {
			const auto len = get<std::uint32_t>(in);
			const auto v = get<std::uint32_t>(in);
			if (s.counts.size() + len > days) {
				throw FormatError("run lengths exceed series length");
			}
			s.counts.insert(s.counts.end(), len, v);
		}
		if (s.counts.size() != days) {
			throw FormatError("run lengths do not cover the series");
		}
		out.push_back(std::move(s));
	}
	return out;
}

void save_cells(const std::string &path, const std::vector<DailySeries> &series) {
	std::ofstream out(path, std::ios::binary);
	if (!out) {
		throw FormatError("cannot open " + path + " for writing");
	}
	write_cells(out, series);
}

std::vector<DailySeries> load_cells(const std::string &path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw FormatError("cannot open " + path);
	}
	return read_cells(in);
}

} // namespace pyroseason
