#pragma once

#include "pyroseason/date.hpp"
#include "pyroseason/ingest.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace pyroseason {

struct SeasonProfile {
	CellId cell;
	std::vector<int> yearly_lengths; // days, one per calendar-year cycle
	double mean_length_days = 0.0;
	double length_trend = 0.0; // days per year
	int peak_month = 1;
	std::vector<DateRange> windows; // retained season windows
	std::vector<std::uint64_t> fss; // raw counts per window
	double fss_mean = 0.0;
	double fss_trend = 0.0; // counts per season
};

inline constexpr int kSmoothingWindow = 7;
inline constexpr double kDaysPerMonth = 30.44;

// Centered moving average; the ends average over the neighbours available.
std::vector<double> smooth_moving_average(std::span<const double> x, int window);

// Calendar years fully covered by the series, as day offsets into it.
std::vector<DateRange> year_cycles(const DailySeries &s);

// Per calendar year: smooth the whole series, treat smoothed values below
// 1/7 (an empty week) as fire-free, drop the longest fire-free run of the
// year (wrapping from December into January) and return the remaining days.
std::vector<int> estimate_season_lengths(const DailySeries &s);

// True when every calendar-year cycle has at least one detection.
bool active_every_cycle(const DailySeries &s);

std::vector<double> remove_outlier_lengths(std::span<const double> lengths);

// Percentile (0, 100] of the per-cell mean lengths, in whole months
// (ceiling of days / 30.44, at least 1).
int global_season_length(std::span<const double> mean_lengths, double percentile);

// Calendar month with the largest total count; ties go to the earlier month.
int peak_month(const DailySeries &s);

// `months` must be odd. One window per study year centered on the peak
// month; the first and last windows are discarded.
SeasonProfile build_profile(const DailySeries &s, int months);

double linear_trend(std::span<const double> values);

struct SeasonAnalysis {
	int global_months = 0;   // window length used for every cell (odd)
	int percentile_months = 0; // raw percentile result before forcing odd
	std::vector<SeasonProfile> profiles; // retained cells, sorted by cell
	std::size_t inactive_cells = 0;      // dropped by the every-cycle rule
	std::size_t outlier_cells = 0;       // excluded from the percentile only
};

// Two-phase reduction over all cells: season lengths and outlier removal,
// global window length, then per-cell profiles.
SeasonAnalysis analyze_seasons(std::span<const DailySeries> series, double percentile);

} // namespace pyroseason
