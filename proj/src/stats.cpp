#include "pyroseason/stats.hpp"

#include "pyroseason/error.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>

namespace pyroseason::stats {

double mean(std::span<const double> x) {
	if (x.empty()) {
		throw InsufficientData("mean of empty sequence");
	}
	return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
	if (x.size() < 2) {
		throw InsufficientData("standard deviation needs at least 2 values");
	}
	const double m = mean(x);
	double ss = 0.0;
	for (double v : x) {
		ss += (v - m) * (v - m);
	}
	return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double quantile(std::span<const double> x, double p) {
	if (x.empty()) {
		throw InsufficientData("quantile of empty sequence");
	}
	if (!(p >= 0.0 && p <= 1.0)) {
		throw ParameterError("quantile probability outside [0, 1]");
	}
	std::vector<double> s(x.begin(), x.end());
	std::sort(s.begin(), s.end());
	const double h = (static_cast<double>(s.size()) - 1.0) * p;
	const auto lo = static_cast<std::size_t>(std::floor(h));
	const auto hi = std::min(lo + 1, s.size() - 1);
	return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

Quartiles quartiles(std::span<const double> x) {
	return {quantile(x, 0.25), quantile(x, 0.5), quantile(x, 0.75)};
}

std::vector<double> remove_upper_outliers(std::span<const double> x) {
	if (x.empty()) {
		return {};
	}
	const auto q = quartiles(x);
	const double limit = q.q3 + 1.5 * q.iqr();
	std::vector<double> kept;
	kept.reserve(x.size());
	std::copy_if(x.begin(), x.end(), std::back_inserter(kept), [&](double v) { return v <= limit; });
	return kept;
}

LineFit ols_line(std::span<const double> x) {
	if (x.size() < 2) {
		throw InsufficientData("linear trend needs at least 2 values");
	}
	const double n = static_cast<double>(x.size());
	const double tbar = (n - 1.0) / 2.0;
	const double ybar = mean(x);
	double sxy = 0.0, sxx = 0.0;
	for (std::size_t i = 0; i < x.size(); ++i) {
		const double dt = static_cast<double>(i) - tbar;
		sxy += dt * (x[i] - ybar);
		sxx += dt * dt;
	}
	const double slope = sxy / sxx;
	return {ybar - slope * tbar, slope};
}

std::vector<double> average_ranks(std::span<const double> x) {
	std::vector<std::size_t> order(x.size());
	std::iota(order.begin(), order.end(), 0);
	std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
	std::vector<double> ranks(x.size());
	std::size_t i = 0;
	while (i < order.size()) {
		std::size_t j = i;
		while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) {
			++j;
		}
		const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
		for (std::size_t k = i; k <= j; ++k) {
			ranks[order[k]] = r;
		}
		i = j + 1;
	}
	return ranks;
}

double normal_cdf(double z) {
	return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double chi_squared_sf(double x, double dof) {
	if (x <= 0.0) {
		return 1.0;
	}
	boost::math::chi_squared dist(dof);
	return boost::math::cdf(boost::math::complement(dist, x));
}

std::uint64_t splitmix64(std::uint64_t &state) {
	std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
	return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
	std::uint64_t s = seed ^ (stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
	splitmix64(s);
	return splitmix64(s);
}

double Rng::normal() {
	if (has_spare_) {
		has_spare_ = false;
		return spare_;
	}
	double u, v, s;
	do {
		u = uniform(-1.0, 1.0);
		v = uniform(-1.0, 1.0);
		s = u * u + v * v;
	} while (s >= 1.0 || s == 0.0);
	const double f = std::sqrt(-2.0 * std::log(s) / s);
	spare_ = v * f;
	has_spare_ = true;
	return u * f;
}

std::uint64_t Rng::poisson(double lambda) {
	if (lambda <= 0.0) {
		return 0;
	}
	if (lambda < 30.0) {
		// Knuth multiplication.
		const double limit = std::exp(-lambda);
		std::uint64_t k = 0;
		double p = uniform();
		while (p > limit) {
			++k;
			p *= uniform();
		}
		return k;
	}
	// Normal approximation with continuity correction; adequate for synthetic data.
	const double v = std::floor(lambda + std::sqrt(lambda) * normal() + 0.5);
	return v < 0.0 ? 0 : static_cast<std::uint64_t>(v);
}

} // namespace pyroseason::stats
