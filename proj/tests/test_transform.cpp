#include "pyroseason/error.hpp"
#include "pyroseason/season.hpp"
#include "pyroseason/stats.hpp"
#include "pyroseason/transform.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

using namespace pyroseason;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

DailySeries ones(int first_year, int last_year) {
	DailySeries s;
	s.cell = CellId{8, 3};
	s.start = Date::from_ymd(first_year, 1, 1);
	s.counts.assign(static_cast<std::size_t>(Date::from_ymd(last_year, 12, 31) - s.start + 1), 1);
	return s;
}

// Coefficient of variation of s_i / m_i^(1 - lambda) over complete blocks,
// written out directly.
double cv_oracle(const std::vector<double> &x, int period, double lambda) {
	const std::size_t nb = x.size() / static_cast<std::size_t>(period);
	std::vector<double> r;
	for (std::size_t b = 0; b < nb; ++b) {
		double m = 0;
		for (int k = 0; k < period; ++k) m += x[b * period + k];
		m /= period;
		double ss = 0;
		for (int k = 0; k < period; ++k) ss += (x[b * period + k] - m) * (x[b * period + k] - m);
		r.push_back(std::sqrt(ss / (period - 1)) / std::pow(m, 1 - lambda));
	}
	double mr = 0;
	for (double v : r) mr += v;
	mr /= static_cast<double>(r.size());
	double ss = 0;
	for (double v : r) ss += (v - mr) * (v - mr);
	return std::sqrt(ss / static_cast<double>(r.size() - 1)) / mr;
}

double grid_oracle(const std::vector<double> &x, int period) {
	double best = 1e300, arg = 1.0;
	for (int i = 0; i <= 300; ++i) {
		const double l = -1.0 + 0.01 * i;
		const double cv = cv_oracle(x, period, l);
		if (cv < best) {
			best = cv;
			arg = l;
		}
	}
	return arg;
}

std::vector<double> seasonal_series(bool multiplicative, std::uint64_t seed) {
	stats::Rng rng(seed);
	std::vector<double> x;
	for (int b = 0; b < 12; ++b) {
		const double level = 10.0 * std::pow(1.45, b);
		for (int k = 0; k < 7; ++k) {
			const double season = 1.0 + 0.5 * std::sin(2 * std::numbers::pi * k / 7);
			if (multiplicative) {
				x.push_back(level * season * std::exp(0.1 * rng.normal()));
			} else {
				x.push_back(level + 4.0 * season + 2.0 * rng.normal());
			}
		}
	}
	return x;
}

} // namespace

TEST_CASE("Monthly accumulation", "[transform]") {
	const auto s = ones(2003, 2017);
	const auto p = build_profile(s, 7);
	const auto m = monthly_accumulate(s, p);
	CHECK(m.period == 7);
	CHECK(m.values.size() == 91);
	CHECK(m.seasons() == 13);
	// Peak is January (first 31-day month); windows run October to April.
	CHECK(p.peak_month == 1);
	CHECK(m.values[0] == 31.0); // October
	CHECK(m.values[1] == 30.0); // November
	for (std::size_t i = 0; i < p.fss.size(); ++i) {
		double sum = 0;
		for (int k = 0; k < 7; ++k) sum += m.values[i * 7 + k];
		CHECK(sum == static_cast<double>(p.fss[i]));
	}
	SeasonProfile bad = p;
	bad.windows.push_back({Date::from_ymd(2030, 1, 1), Date::from_ymd(2030, 7, 31)});
	CHECK_THROWS(monthly_accumulate(s, bad));
}

TEST_CASE("Regrouping equals season severity on random data", "[transform]") {
	stats::Rng rng(21);
	auto s = ones(2003, 2017);
	for (auto &v : s.counts) v = static_cast<std::uint32_t>(rng.poisson(rng.uniform() < 0.3 ? 4.0 : 0.1));
	const auto p = build_profile(s, 5);
	const auto m = monthly_accumulate(s, p);
	REQUIRE(m.values.size() == 65);
	for (std::size_t i = 0; i < p.fss.size(); ++i) {
		double sum = 0;
		for (int k = 0; k < 5; ++k) sum += m.values[i * 5 + k];
		CHECK(sum == static_cast<double>(p.fss[i]));
	}
}

TEST_CASE("Train and test split", "[transform]") {
	MonthlySeries m{CellId{8, 1}, 7, std::vector<double>(91)};
	std::iota(m.values.begin(), m.values.end(), 0.0);
	const auto [train, test] = split_train_test(m, 10);
	CHECK(train.values.size() == 70);
	CHECK(test.values.size() == 21);
	CHECK(test.values.front() == 70.0);
	MonthlySeries two{CellId{8, 1}, 7, std::vector<double>(14, 1.0)};
	const auto [a, b] = split_train_test(two, 1);
	CHECK(a.values.size() == 7);
	CHECK(b.values.size() == 7);
	CHECK_THROWS_AS(split_train_test(two, 2), ParameterError);
}

TEST_CASE("Guerrero lambda against the brute-force grid", "[transform]") {
	for (std::uint64_t seed : {1u, 2u, 3u}) {
		const auto mult = seasonal_series(true, seed);
		const double lm = guerrero_lambda(mult, 7);
		CHECK_THAT(lm, WithinAbs(grid_oracle(mult, 7), 1e-12));
		CHECK(std::abs(lm) <= 0.2);
		const auto add = seasonal_series(false, seed);
		const double la = guerrero_lambda(add, 7);
		CHECK_THAT(la, WithinAbs(grid_oracle(add, 7), 1e-12));
		CHECK(std::abs(la - 1.0) <= 0.2);
	}
}

TEST_CASE("Guerrero objective is minimal at the returned lambda", "[transform]") {
	stats::Rng rng(8);
	for (int trial = 0; trial < 20; ++trial) {
		std::vector<double> x;
		for (int i = 0; i < 70; ++i) x.push_back(1.0 + rng.uniform() * (1 + i));
		const double l = guerrero_lambda(x, 7);
		CHECK(l >= kLambdaMin);
		CHECK(l <= kLambdaMax);
		const double at = guerrero_objective(x, 7, l);
		CHECK_THAT(at, WithinRel(cv_oracle(x, 7, l), 1e-12));
		for (int i = 0; i <= 300; ++i) CHECK(at <= guerrero_objective(x, 7, -1.0 + 0.01 * i));
	}
}

TEST_CASE("Guerrero input checks", "[transform]") {
	CHECK_THROWS_AS(guerrero_lambda(std::vector<double>{1, 2, 0, 4, 5, 6, 7, 8}, 4), DomainError);
	CHECK_THROWS_AS(guerrero_lambda(std::vector<double>{1, 2, 3, 4, 5}, 4), InsufficientData);
	CHECK(guerrero_lambda(std::vector<double>(21, 5.0), 7) == 1.0);
}

TEST_CASE("Box-Cox closed forms", "[transform]") {
	CHECK_THAT(boxcox(5.0, {1.0, 0.0}), WithinAbs(4.0, 1e-15));
	CHECK_THAT(boxcox(std::exp(1.0), {0.0, 0.0}), WithinAbs(1.0, 1e-15));
	CHECK_THAT(inv_boxcox(boxcox(7.0, {0.3, 1.0}), {0.3, 1.0}), WithinRel(7.0, 1e-12));
	CHECK_THAT(inv_boxcox(2.0, {0.0, 1.0}), WithinRel(std::exp(2.0) - 1.0, 1e-15));
	CHECK_THROWS_AS(boxcox(-1.0, {0.5, 1.0}), DomainError);
	CHECK_THROWS_AS(inv_boxcox(-3.0, {0.5, 1.0}), DomainError);
	// Raw inverse gives 0.6 - 1 = -0.4, clamped at zero.
	const BoxCoxParams p{1.0, 1.0};
	CHECK(inv_boxcox(0.6 - 1.0, p) == 0.0);
}

TEST_CASE("Box-Cox roundtrip and monotonicity", "[transform]") {
	stats::Rng rng(31);
	for (int i = 0; i < 20000; ++i) {
		const BoxCoxParams p{std::round(rng.uniform(kLambdaMin, kLambdaMax) * 100) / 100, 1.0};
		const double x = rng.uniform() < 0.5 ? rng.uniform(0, 10) : rng.uniform(0, 5000);
		const double y = boxcox(x, p);
		REQUIRE(std::abs(inv_boxcox(y, p) - x) <= 1e-9 * std::max(1.0, x));
		REQUIRE(boxcox(x + 0.5, p) > y);
	}
}

TEST_CASE("Bounded inverse", "[transform]") {
	CHECK(inv_boxcox_bounded(-5.0, {0.5, 1.0}, 100.0) == 0.0);
	CHECK(inv_boxcox_bounded(5.0, {-0.5, 1.0}, 100.0) == 100.0);
	CHECK(inv_boxcox_bounded(50.0, {0.0, 1.0}, 100.0) == 100.0);
	CHECK_THAT(inv_boxcox_bounded(2.0, {1.0, 1.0}, 100.0), WithinAbs(2.0, 1e-15));
	CHECK_THROWS_AS(inv_boxcox_bounded(std::nan(""), {1.0, 1.0}, 100.0), DomainError);
	const std::vector<double> xs{0, 1, 2};
	const auto ys = boxcox(xs, {0.0, 1.0});
	CHECK_THAT(ys[2], WithinAbs(std::log(3.0), 1e-15));
}
