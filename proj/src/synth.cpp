#include "pyroseason/synth.hpp"

#include "pyroseason/csv.hpp"
#include "pyroseason/error.hpp"
#include "pyroseason/season.hpp"
#include "pyroseason/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace pyroseason {

int SynthTruth::expected_length() const {
	return length_days + kSmoothingWindow - 1;
}

std::vector<SynthCell> generate_synthetic(const SynthConfig &config) {
	if (config.last_year < config.first_year + 2) {
		throw ParameterError("synthetic data needs at least three years");
	}
	if (config.min_length < 1 || config.max_length < config.min_length || config.max_length > 330) {
		throw ParameterError("season length range must lie in [1, 330]");
	}
	if (!(config.min_amplitude > 0.0) || config.max_amplitude < config.min_amplitude) {
		throw ParameterError("invalid amplitude range");
	}
	const HexGrid grid(config.resolution);
	if (config.cells > grid.size()) {
		throw ParameterError("more synthetic cells than grid cells");
	}
	stats::Rng rng(config.seed);

	std::set<std::uint64_t> picked;
	while (picked.size() < config.cells) {
		const std::uint64_t index = rng.next() % grid.size();
		const CellId id{config.resolution, index};
		// Skip cells whose center does not map back to itself (never expected).
		if (grid.locate(geo::to_geo(grid.center_vector(id))) != id) {
			continue;
		}
		picked.insert(index);
	}

	const Date first = Date::from_ymd(config.first_year, 1, 1);
	const Date last = Date::from_ymd(config.last_year, 12, 31);
	const auto days = static_cast<std::size_t>(last - first + 1);

	std::vector<SynthCell> out;
	out.reserve(picked.size());
	for (std::uint64_t index : picked) {
		SynthCell c;
		c.truth.cell = {config.resolution, index};
		c.truth.length_days =
		    config.min_length + static_cast<int>(rng.next() % static_cast<std::uint64_t>(config.max_length - config.min_length + 1));
		c.truth.peak_month = 1 + static_cast<int>(rng.next() % 12);
		c.truth.amplitude = rng.uniform(config.min_amplitude, config.max_amplitude);
		c.truth.trend = rng.uniform(-config.max_trend, config.max_trend);
		c.series.cell = c.truth.cell;
		c.series.start = first;
		c.series.counts.assign(days, 0);
		c.low.assign(days, 0);

		const int half = c.truth.length_days / 2;
		const double len = c.truth.length_days;
		// Seasons of the year before the study range can spill into January.
		for (int y = config.first_year - 1; y <= config.last_year; ++y) {
			const double g = std::exp(config.noise_sd * rng.normal() - 0.5 * config.noise_sd * config.noise_sd);
			const double level = c.truth.amplitude * g * std::max(0.0, 1.0 + c.truth.trend * (y - config.first_year));
			const Date mid = Date::from_ymd(y, c.truth.peak_month, 15);
			for (int k = 0; k < c.truth.length_days; ++k) {
				const Date d = mid.add_days(k - half);
				if (d < first || d > last) {
					continue;
				}
				const double phase = std::numbers::pi * (d - mid) / len;
				const double cosine = std::cos(phase);
				const double rate = level * (0.3 + 0.7 * cosine * cosine);
				c.series.counts[static_cast<std::size_t>(d - first)] += static_cast<std::uint32_t>(rng.poisson(rate));
			}
		}
		for (std::size_t t = 0; t < days; ++t) {
			if (rng.uniform() < config.low_confidence_rate) {
				c.low[t] = 1;
			}
		}
		out.push_back(std::move(c));
	}
	return out;
}

void write_synthetic_fires(std::ostream &out, const std::vector<SynthCell> &cells, const SynthConfig &config) {
	const HexGrid grid(config.resolution);
	stats::Rng rng(stats::mix_seed(config.seed, 0x5a17));
	csv::Writer w(out);
	w.field("latitude").field("longitude").field("acq_date").field("confidence");
	w.end_row();
	for (const auto &c : cells) {
		const GeoPoint p = geo::to_geo(grid.center_vector(c.truth.cell));
		const std::string lat = csv::format(p.latitude);
		const std::string lon = csv::format(p.longitude);
		for (std::size_t t = 0; t < c.series.counts.size(); ++t) {
			const std::string date = c.series.start.add_days(static_cast<std::int32_t>(t)).to_string();
			for (std::uint32_t k = 0; k < c.series.counts[t]; ++k) {
				w.field(lat).field(lon).field(date).field(76 + static_cast<int>(rng.next() % 25));
				w.end_row();
			}
			for (std::uint32_t k = 0; k < c.low[t]; ++k) {
				w.field(lat).field(lon).field(date).field(static_cast<int>(rng.next() % 76));
				w.end_row();
			}
		}
	}
}

void write_synthetic_truth(std::ostream &out, const std::vector<SynthCell> &cells) {
	csv::Writer w(out);
	w.field("cell").field("length_days").field("expected_length").field("peak_month").field("amplitude").field("trend");
	w.end_row();
	for (const auto &c : cells) {
		w.field(c.truth.cell.to_string())
		    .field(c.truth.length_days)
		    .field(c.truth.expected_length())
		    .field(c.truth.peak_month)
		    .field(c.truth.amplitude)
		    .field(c.truth.trend);
		w.end_row();
	}
}

} // namespace pyroseason
