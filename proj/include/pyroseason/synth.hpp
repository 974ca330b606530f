#pragma once

#include "pyroseason/hexgrid.hpp"
#include "pyroseason/ingest.hpp"

#include <cstdint>
#include <ostream>
#include <vector>

namespace pyroseason {

// Seeded Poisson seasonal cells.
//
// Each cell gets one fire season per calendar year: `length_days` active days
// centered on day 15 of `peak_month` (the same days every year). The daily
// rate on active day t is
//   amplitude * g_y * (1 + trend * (y - first_year)) * (0.3 + 0.7 cos^2(pi (t - mid) / length_days))
// with g_y lognormal interannual noise (log-sd `noise_sd`, mean 1), and zero
// outside the season. A fraction of extra detections with confidence at or
// below 75 are scattered over the whole year; the default confidence filter
// must drop them. After the 7-day moving average the fire-free gap shrinks by
// 6 days, so the expected estimated season length is length_days + 6.
struct SynthConfig {
	std::size_t cells = 200;
	int first_year = 2003;
	int last_year = 2017;
	int resolution = 8;
	std::uint64_t seed = 42;
	int min_length = 90;
	int max_length = 200;
	double min_amplitude = 4.0;
	double max_amplitude = 12.0;
	double noise_sd = 0.25;
	double max_trend = 0.03; // relative change per year, drawn from +-max_trend
	double low_confidence_rate = 0.02; // per cell-day
};

struct SynthTruth {
	CellId cell;
	int length_days = 0;
	int peak_month = 1;
	double amplitude = 0.0;
	double trend = 0.0;
	int expected_length() const; // length_days + smoothing window - 1
};

struct SynthCell {
	SynthTruth truth;
	DailySeries series;              // confident detections only
	std::vector<std::uint32_t> low;  // extra low-confidence detections per day
};

// Cells are distinct, sorted by index.
std::vector<SynthCell> generate_synthetic(const SynthConfig &config);

// MCD14ML-style detections: latitude,longitude,acq_date,confidence, one row
// per detection at the cell center.
void write_synthetic_fires(std::ostream &out, const std::vector<SynthCell> &cells, const SynthConfig &config);

void write_synthetic_truth(std::ostream &out, const std::vector<SynthCell> &cells);

} // namespace pyroseason
