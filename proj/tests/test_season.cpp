#include "pyroseason/error.hpp"
#include "pyroseason/season.hpp"
#include "pyroseason/stats.hpp"
#include "pyroseason/synth.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace pyroseason;
using Catch::Matchers::WithinAbs;

namespace {

DailySeries daily(int first_year, int last_year) {
	DailySeries s;
	s.cell = CellId{8, 1};
	s.start = Date::from_ymd(first_year, 1, 1);
	s.counts.assign(static_cast<std::size_t>(Date::from_ymd(last_year, 12, 31) - s.start + 1), 0);
	return s;
}

std::uint32_t &at(DailySeries &s, Date d) { return s.counts.at(static_cast<std::size_t>(d - s.start)); }

// Direct truncated-window average.
std::vector<double> smooth_oracle(const std::vector<double> &x, int w) {
	const int n = static_cast<int>(x.size());
	std::vector<double> out(x.size());
	for (int i = 0; i < n; ++i) {
		double s = 0;
		int k = 0;
		for (int j = i - w / 2; j <= i + w / 2; ++j) {
			if (j >= 0 && j < n) {
				s += x[j];
				++k;
			}
		}
		out[i] = s / k;
	}
	return out;
}

// Complement of the longest circular run of empty smoothed days in each
// calendar year, found by trying every start position.
std::vector<int> length_oracle(const DailySeries &s) {
	std::vector<double> x(s.counts.begin(), s.counts.end());
	const auto sm = smooth_oracle(x, 7);
	std::vector<int> out;
	for (int y = s.start.year(); Date::from_ymd(y, 12, 31) < s.start.add_days(static_cast<int>(x.size())); ++y) {
		const int off = Date::from_ymd(y, 1, 1) - s.start;
		const int len = Date::from_ymd(y, 12, 31) - Date::from_ymd(y, 1, 1) + 1;
		int best = 0;
		for (int a = 0; a < len; ++a) {
			int run = 0;
			while (run < len && sm[off + (a + run) % len] * 7 < 0.5) ++run;
			best = std::max(best, run);
		}
		out.push_back(len - best);
	}
	return out;
}

} // namespace

TEST_CASE("Moving average", "[season]") {
	const std::vector<double> c(20, 3.5);
	for (double v : smooth_moving_average(c, 7)) CHECK_THAT(v, WithinAbs(3.5, 1e-15));

	std::vector<double> impulse(41, 0.0);
	impulse[20] = 1.0;
	const auto s = smooth_moving_average(impulse, 7);
	for (int i = 0; i < 41; ++i) CHECK_THAT(s[i], WithinAbs(i >= 17 && i <= 23 ? 1.0 / 7 : 0.0, 1e-15));

	const std::vector<double> x{0, 7, 0, 0, 0, 0, 0, 0, 0};
	const auto got = smooth_moving_average(x, 7);
	const auto want = smooth_oracle(x, 7);
	for (std::size_t i = 0; i < x.size(); ++i) CHECK_THAT(got[i], WithinAbs(want[i], 1e-15));
	CHECK_THAT(got[1], WithinAbs(7.0 / 5.0, 1e-15));

	CHECK_THROWS_AS(smooth_moving_average(x, 6), ParameterError);
}

TEST_CASE("Season length of a single block", "[season]") {
	auto s = daily(2005, 2005);
	for (int d = 100; d <= 199; ++d) s.counts[d] = 2;
	const auto l = estimate_season_lengths(s);
	REQUIRE(l.size() == 1);
	CHECK(l[0] == length_oracle(s)[0]);
	CHECK(std::abs(l[0] - 100) <= 6);
}

TEST_CASE("Season length edge cases", "[season]") {
	auto empty = daily(2005, 2005);
	CHECK(estimate_season_lengths(empty) == std::vector<int>{0});
	auto full = daily(2005, 2005);
	std::fill(full.counts.begin(), full.counts.end(), 1u);
	CHECK(estimate_season_lengths(full) == std::vector<int>{365});
	auto leap = daily(2004, 2004);
	std::fill(leap.counts.begin(), leap.counts.end(), 1u);
	CHECK(estimate_season_lengths(leap) == std::vector<int>{366});
	DailySeries shortest = daily(2005, 2005);
	shortest.counts.resize(200);
	CHECK_THROWS_AS(estimate_season_lengths(shortest), InsufficientData);
}

TEST_CASE("Season wrapping across new year matches the oracle", "[season]") {
	stats::Rng rng(12);
	for (int trial = 0; trial < 40; ++trial) {
		auto s = daily(2003, 2007);
		for (auto &v : s.counts) v = 0;
		const int mid = static_cast<int>(rng.next() % 365);
		const int len = 30 + static_cast<int>(rng.next() % 250);
		for (int y = 2003; y <= 2007; ++y) {
			const Date c = Date::from_ymd(y, 1, 1).add_days(mid);
			for (int k = -len / 2; k < len - len / 2; ++k) {
				const Date d = c.add_days(k);
				if (d >= s.start && d - s.start < static_cast<int>(s.counts.size()) && rng.uniform() < 0.6) {
					at(s, d) += 1 + static_cast<std::uint32_t>(rng.next() % 3);
				}
			}
		}
		CHECK(estimate_season_lengths(s) == length_oracle(s));
	}
}

TEST_CASE("Outlier removal on lengths", "[season]") {
	const std::vector<double> a{5, 5, 5, 5, 100};
	CHECK(remove_outlier_lengths(a) == std::vector<double>{5, 5, 5, 5});
	const std::vector<double> b{7, 7, 7};
	CHECK(remove_outlier_lengths(b) == b);
	const std::vector<double> c{1, 2, 3, 4};
	CHECK(remove_outlier_lengths(c) == c);
}

TEST_CASE("Global season length", "[season]") {
	const std::vector<double> ninety(50, 90.0);
	CHECK(global_season_length(ninety, 99) == 3);

	std::vector<double> mixed(30, 99.0);
	mixed.push_back(300.0);
	// type 7 by hand: h = 30 * 0.99, between the 30th and 31st order statistics
	const double h = 30 * 0.99;
	const double q = 99.0 + (h - 29) * (300.0 - 99.0);
	CHECK(global_season_length(mixed, 99) == static_cast<int>(std::ceil(q / 30.44)));
	CHECK_THROWS(global_season_length(std::vector<double>{}, 99));
	CHECK_THROWS(global_season_length(ninety, 0));
}

TEST_CASE("Peak month", "[season]") {
	auto s = daily(2003, 2005);
	for (int y = 2003; y <= 2005; ++y) at(s, Date::from_ymd(y, 8, 10)) = 5;
	CHECK(peak_month(s) == 8);

	auto tie = daily(2003, 2003);
	at(tie, Date::from_ymd(2003, 3, 3)) = 4;
	at(tie, Date::from_ymd(2003, 5, 3)) = 4;
	CHECK(peak_month(tie) == 3);

	stats::Rng rng(3);
	auto bimodal = daily(2003, 2006);
	for (std::size_t i = 0; i < bimodal.counts.size(); ++i) {
		const Date d = bimodal.start.add_days(static_cast<int>(i));
		const double rate = d.month() == 9 ? 20.0 : (d.month() == 3 ? 4.0 : 0.2);
		bimodal.counts[i] = static_cast<std::uint32_t>(rng.poisson(rate));
	}
	std::vector<std::uint64_t> totals(12, 0);
	for (std::size_t i = 0; i < bimodal.counts.size(); ++i) {
		totals[bimodal.start.add_days(static_cast<int>(i)).month() - 1] += bimodal.counts[i];
	}
	const int oracle = static_cast<int>(std::max_element(totals.begin(), totals.end()) - totals.begin()) + 1;
	CHECK(oracle == 9);
	CHECK(peak_month(bimodal) == oracle);

	CHECK_THROWS_AS(peak_month(daily(2003, 2003)), InsufficientData);
}

TEST_CASE("Linear trend", "[season]") {
	CHECK_THAT(linear_trend(std::vector<double>{1, 2, 3}), WithinAbs(1.0, 1e-15));
	CHECK_THAT(linear_trend(std::vector<double>{4, 4, 4, 4}), WithinAbs(0.0, 1e-15));
	CHECK_THAT(linear_trend(std::vector<double>{3, 1, 2}), WithinAbs(-0.5, 1e-15));
	CHECK_THROWS(linear_trend(std::vector<double>{1}));
}

TEST_CASE("Profile windows and severity", "[season]") {
	auto s = daily(2003, 2017);
	// One fire every day of every year: uniform severity.
	std::fill(s.counts.begin(), s.counts.end(), 1u);
	at(s, Date::from_ymd(2010, 7, 4)) = 50; // make July the peak
	const auto p = build_profile(s, 7);
	CHECK(p.peak_month == 7);
	REQUIRE(p.windows.size() == 13);
	REQUIRE(p.fss.size() == 13);
	CHECK(p.windows.front().first == Date::from_ymd(2004, 4, 1));
	CHECK(p.windows.front().last == Date::from_ymd(2004, 10, 31));
	CHECK(p.windows.back().first == Date::from_ymd(2016, 4, 1));
	for (std::size_t i = 0; i < p.fss.size(); ++i) {
		const int y = 2004 + static_cast<int>(i);
		CHECK(p.fss[i] == (y == 2010 ? 214u + 49u : 214u));
	}

	auto flat = daily(2003, 2017);
	for (int y = 2003; y <= 2017; ++y) {
		for (Date d = Date::from_ymd(y, 1, 1); d <= Date::from_ymd(y, 12, 31); d = d.add_days(1)) {
			if (d.month() >= 4 && d.month() <= 10) at(flat, d) = 3;
		}
	}
	const auto q = build_profile(flat, 7);
	CHECK(q.peak_month == 5);
	CHECK_THAT(q.fss_trend, WithinAbs(0.0, 1e-9));
	for (auto v : q.fss) CHECK(v == q.fss.front());
}

TEST_CASE("Profile trends on a planted severity ramp", "[season]") {
	auto s = daily(2003, 2017);
	// Window of 1 month centered on June; season k (2004 + k) has 10 (k + 1) fires.
	for (int y = 2003; y <= 2017; ++y) {
		at(s, Date::from_ymd(y, 6, 1)) = static_cast<std::uint32_t>(10 * (y - 2003));
	}
	const auto p = build_profile(s, 1);
	REQUIRE(p.fss.size() == 13);
	CHECK(p.fss.front() == 10);
	CHECK_THAT(p.fss_trend, WithinAbs(10.0, 1e-9));
}

TEST_CASE("Profile errors", "[season]") {
	auto s = daily(2003, 2017);
	s.counts[100] = 1;
	CHECK_THROWS_AS(build_profile(s, 6), ParameterError);
	auto short_series = daily(2003, 2006);
	short_series.counts[100] = 1;
	CHECK_THROWS_AS(build_profile(short_series, 7), InsufficientData);
}

TEST_CASE("Analysis drops cells inactive in some year", "[season]") {
	std::vector<DailySeries> cells;
	for (int c = 0; c < 12; ++c) {
		auto s = daily(2003, 2017);
		s.cell = CellId{8, static_cast<std::uint64_t>(100 - c)};
		for (int y = 2003; y <= 2017; ++y) {
			for (int k = 0; k < 60; ++k) at(s, Date::from_ymd(y, 3, 1).add_days(k)) = 2;
		}
		if (c == 5) {
			for (int k = 0; k < 60; ++k) at(s, Date::from_ymd(2009, 3, 1).add_days(k)) = 0;
		}
		cells.push_back(s);
	}
	const auto a = analyze_seasons(cells, 99);
	CHECK(a.inactive_cells == 1);
	REQUIRE(a.profiles.size() == 11);
	CHECK(std::is_sorted(a.profiles.begin(), a.profiles.end(),
	                     [](const SeasonProfile &x, const SeasonProfile &y) { return x.cell < y.cell; }));
	// 66-day smoothed seasons need 3 months; windows are odd.
	CHECK(a.percentile_months == 3);
	CHECK(a.global_months == 3);
	CHECK(a.global_months % 2 == 1);
}

TEST_CASE("Even percentile results widen to the next odd window", "[season]") {
	std::vector<DailySeries> cells;
	for (int c = 0; c < 5; ++c) {
		auto s = daily(2003, 2017);
		s.cell = CellId{8, static_cast<std::uint64_t>(c)};
		for (int y = 2003; y <= 2017; ++y) {
			for (int k = 0; k < 100; ++k) at(s, Date::from_ymd(y, 3, 1).add_days(k)) = 1;
		}
		cells.push_back(s);
	}
	const auto a = analyze_seasons(cells, 99);
	CHECK(a.percentile_months == 4);
	CHECK(a.global_months == 5);
	for (const auto &p : a.profiles) CHECK(p.windows.front().last - p.windows.front().first + 1 > 4 * 28);
}

TEST_CASE("Synthetic season recovery", "[season][synth]") {
	SynthConfig cfg;
	cfg.cells = 120;
	cfg.seed = 77;
	const auto cells = generate_synthetic(cfg);
	REQUIRE(cells.size() == 120);
	int length_ok = 0, peak_ok = 0;
	for (const auto &c : cells) {
		const auto l = estimate_season_lengths(c.series);
		std::vector<double> d(l.begin(), l.end());
		const double mean = stats::mean(d);
		length_ok += std::abs(mean - c.truth.expected_length()) <= 6.0;
		peak_ok += peak_month(c.series) == c.truth.peak_month;
	}
	CHECK(length_ok >= 118);
	CHECK(peak_ok >= 118);
}
