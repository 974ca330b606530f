#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pyroseason::stats {

double mean(std::span<const double> x);

// Sample standard deviation (n - 1 denominator). Requires n >= 2.
double sample_sd(std::span<const double> x);

// Quantile with linear interpolation between order statistics ("type 7").
// p in [0, 1].
double quantile(std::span<const double> x, double p);

struct Quartiles {
	double q1;
	double median;
	double q3;
	double iqr() const { return q3 - q1; }
};

Quartiles quartiles(std::span<const double> x);

// Drops values strictly above Q3 + 1.5 * IQR, preserving input order.
std::vector<double> remove_upper_outliers(std::span<const double> x);

struct LineFit {
	double intercept;
	double slope;
	double at(double t) const { return intercept + slope * t; }
};

// OLS line of x against 0..n-1. Requires n >= 2.
LineFit ols_line(std::span<const double> x);

// Average ranks (1-based) with ties sharing the mean rank.
std::vector<double> average_ranks(std::span<const double> x);

double normal_cdf(double z);

// Upper tail of the chi-squared distribution.
double chi_squared_sf(double x, double dof);

// splitmix64 step; also used to derive per-cell seeds.
std::uint64_t splitmix64(std::uint64_t &state);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Small deterministic generator whose output does not depend on the
// standard library's distribution implementations.
class Rng {
public:
	explicit Rng(std::uint64_t seed) : state_(seed) {}
	std::uint64_t next() { return splitmix64(state_); }
	// Uniform in [0, 1).
	double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
	double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
	double normal();
	std::uint64_t poisson(double lambda);

private:
	std::uint64_t state_;
	bool has_spare_ = false;
	double spare_ = 0.0;
};

} // namespace pyroseason::stats
