#include "pyroseason/season.hpp"

#include "pyroseason/error.hpp"
#include "pyroseason/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace pyroseason {

std::vector<double> smooth_moving_average(std::span<const double> x, int window) {
	if (window < 1 || window % 2 == 0) {
		throw ParameterError("moving-average window must be odd and >= 1");
	}
	if (x.empty()) {
		throw InsufficientData("moving average of empty sequence");
	}
	const auto n = static_cast<std::ptrdiff_t>(x.size());
	const std::ptrdiff_t h = window / 2;
	// Prefix sums keep this O(n) for year-long daily series.
	std::vector<double> prefix(x.size() + 1, 0.0);
	for (std::ptrdiff_t i = 0; i < n; ++i) {
		prefix[i + 1] = prefix[i] + x[i];
	}
	std::vector<double> out(x.size());
	for (std::ptrdiff_t i = 0; i < n; ++i) {
		const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - h);
		const std::ptrdiff_t hi = std::min(n - 1, i + h);
		out[i] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
	}
	return out;
}

std::vector<DateRange> year_cycles(const DailySeries &s) {
	std::vector<DateRange> cycles;
	if (s.counts.empty()) {
		return cycles;
	}
	const Date end = s.start.add_days(static_cast<std::int32_t>(s.counts.size()) - 1);
	int y = s.start.year();
	if (s.start != Date::from_ymd(y, 1, 1)) {
		++y;
	}
	for (; Date::from_ymd(y, 12, 31) <= end; ++y) {
		cycles.push_back({Date::from_ymd(y, 1, 1), Date::from_ymd(y, 12, 31)});
	}
	return cycles;
}

std::vector<int> estimate_season_lengths(const DailySeries &s) {
	const auto cycles = year_cycles(s);
	if (cycles.empty()) {
		throw InsufficientData("series does not cover a full calendar year");
	}
	std::vector<double> x(s.counts.begin(), s.counts.end());
	const auto sm = smooth_moving_average(x, kSmoothingWindow);
	// Exact zero weeks average to 0; a single detection gives exactly 1/7.
	const double threshold = (1.0 / kSmoothingWindow) * (1.0 - 1e-9);

	std::vector<int> lengths;
	lengths.reserve(cycles.size());
	for (const auto &c : cycles) {
		const auto off = static_cast<std::size_t>(c.first - s.start);
		const auto len = static_cast<std::size_t>(c.days());
		std::size_t zeros = 0;
		for (std::size_t i = 0; i < len; ++i) {
			zeros += sm[off + i] < threshold;
		}
		if (zeros == len) {
			lengths.push_back(0);
			continue;
		}
		if (zeros == 0) {
			lengths.push_back(static_cast<int>(len));
			continue;
		}
		// Longest circular run: start scanning just after a fire day.
		std::size_t start = 0;
		while (sm[off + start] < threshold) {
			++start;
		}
		std::size_t best = 0, run = 0;
		for (std::size_t k = 1; k <= len; ++k) {
			const std::size_t i = (start + k) % len;
			if (sm[off + i] < threshold) {
				best = std::max(best, ++run);
			} else {
				run = 0;
			}
		}
		lengths.push_back(static_cast<int>(len - best));
	}
	return lengths;
}

bool active_every_cycle(const DailySeries &s) {
	const auto cycles = year_cycles(s);
	if (cycles.empty()) {
		return false;
	}
	for (const auto &c : cycles) {
		const auto off = static_cast<std::size_t>(c.first - s.start);
		const auto first = s.counts.begin() + static_cast<std::ptrdiff_t>(off);
		if (std::all_of(first, first + c.days(), [](std::uint32_t v) { return v == 0; })) {
			return false;
		}
	}
	return true;
}

std::vector<double> remove_outlier_lengths(std::span<const double> lengths) {
	return stats::remove_upper_outliers(lengths);
}

int global_season_length(std::span<const double> mean_lengths, double percentile) {
	if (!(percentile > 0.0 && percentile <= 100.0)) {
		throw ParameterError("percentile must be in (0, 100]");
	}
	if (mean_lengths.empty()) {
		throw InsufficientData("no season lengths to summarize");
	}
	const double days = stats::quantile(mean_lengths, percentile / 100.0);
	return std::max(1, static_cast<int>(std::ceil(days / kDaysPerMonth - 1e-12)));
}

int peak_month(const DailySeries &s) {
	std::array<std::uint64_t, 12> totals{};
	Date d = s.start;
	// Walk month by month instead of converting every day.
	std::size_t i = 0;
	while (i < s.counts.size()) {
		const int m = d.month();
		const std::size_t span = std::min<std::size_t>(
		    s.counts.size() - i, static_cast<std::size_t>(days_in_month(d.year(), m) - d.day() + 1));
		for (std::size_t k = 0; k < span; ++k) {
			totals[m - 1] += s.counts[i + k];
		}
		i += span;
		d = d.add_days(static_cast<std::int32_t>(span));
	}
	const auto best = std::max_element(totals.begin(), totals.end());
	if (*best == 0) {
		throw InsufficientData("peak month undefined for an all-zero series");
	}
	return static_cast<int>(best - totals.begin()) + 1;
}

double linear_trend(std::span<const double> values) {
	return stats::ols_line(values).slope;
}

SeasonProfile build_profile(const DailySeries &s, int months) {
	if (months < 1 || months % 2 == 0) {
		throw ParameterError("season window length must be an odd number of months");
	}
	if (s.counts.empty()) {
		throw InsufficientData("empty series");
	}
	SeasonProfile p;
	p.cell = s.cell;
	p.peak_month = peak_month(s);
	p.yearly_lengths = estimate_season_lengths(s);
	std::vector<double> lengths(p.yearly_lengths.begin(), p.yearly_lengths.end());
	p.mean_length_days = stats::mean(lengths);
	p.length_trend = lengths.size() >= 2 ? linear_trend(lengths) : 0.0;

	const DateRange range{s.start, s.start.add_days(static_cast<std::int32_t>(s.counts.size()) - 1)};
	const int half = months / 2;
	const int y0 = range.first.year();
	const int y1 = range.last.year();
	if (y1 - y0 + 1 - 2 < 3) {
		throw InsufficientData("fewer than 3 season windows after discarding the first and last");
	}
	for (int y = y0 + 1; y <= y1 - 1; ++y) {
		const Date first = month_start(y, p.peak_month, -half);
		const Date last = month_start(y, p.peak_month, half + 1).add_days(-1);
		if (!range.contains(first) || !range.contains(last)) {
			throw InsufficientData("season window " + first.to_string() + ".." + last.to_string() +
			                       " falls outside the series");
		}
		std::uint64_t total = 0;
		const auto off = static_cast<std::size_t>(first - range.first);
		for (std::int32_t d = 0; d < last - first + 1; ++d) {
			total += s.counts[off + static_cast<std::size_t>(d)];
		}
		p.windows.push_back({first, last});
		p.fss.push_back(total);
	}
	std::vector<double> fss(p.fss.begin(), p.fss.end());
	p.fss_mean = stats::mean(fss);
	p.fss_trend = linear_trend(fss);
	return p;
}

SeasonAnalysis analyze_seasons(std::span<const DailySeries> series, double percentile) {
	SeasonAnalysis out;
	std::vector<const DailySeries *> active;
	std::vector<double> means;
	for (const auto &s : series) {
		if (!active_every_cycle(s)) {
			++out.inactive_cells;
			continue;
		}
		const auto lengths = estimate_season_lengths(s);
		std::vector<double> l(lengths.begin(), lengths.end());
		means.push_back(stats::mean(l));
		active.push_back(&s);
	}
	if (active.empty()) {
		throw InsufficientData("no cell has detections in every year");
	}
	const auto kept = remove_outlier_lengths(means);
	out.outlier_cells = means.size() - kept.size();
	out.percentile_months = global_season_length(kept, percentile);
	out.global_months = out.percentile_months % 2 == 1 ? out.percentile_months : out.percentile_months + 1;
	for (const auto *s : active) {
		out.profiles.push_back(build_profile(*s, out.global_months));
	}
	std::sort(out.profiles.begin(), out.profiles.end(),
	          [](const SeasonProfile &a, const SeasonProfile &b) { return a.cell < b.cell; });
	return out;
}

} // namespace pyroseason
