#include "pyroseason/error.hpp"
#include "pyroseason/mlp.hpp"
#include "pyroseason/stats.hpp"
#include "pyroseason/tsglm.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace pyroseason;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> poisson_ar(double b0, double a1, double as, int period, int n, std::uint64_t seed) {
	stats::Rng rng(seed);
	std::vector<double> y(static_cast<std::size_t>(period), 5.0);
	while (static_cast<int>(y.size()) < n + 50) {
		const std::size_t t = y.size();
		const double eta = b0 + a1 * std::log(y[t - 1] + 1) + as * std::log(y[t - period] + 1);
		y.push_back(static_cast<double>(rng.poisson(std::exp(eta))));
	}
	return {y.end() - n, y.end()};
}

double sigmoid(double x) { return 1 / (1 + std::exp(-x)); }

} // namespace

TEST_CASE("TSGLM on a constant series", "[tsglm]") {
	const std::vector<double> c(70, 12.0);
	for (double v : fit_tsglm(c, 7, FitConfig{})->predict(21)) CHECK_THAT(v, WithinRel(12.0, 0.02));
}

TEST_CASE("TSGLM degenerate and invalid input", "[tsglm]") {
	const std::vector<double> zero(70, 0.0);
	const auto m = fit_tsglm(zero, 7, FitConfig{});
	CHECK(m->all_zero());
	for (double v : m->predict(7)) CHECK(v <= 0.1);
	std::vector<double> neg(70, 3.0);
	neg[10] = -1;
	CHECK_THROWS_AS(fit_tsglm(neg, 7, FitConfig{}), DomainError);
	CHECK_THROWS_AS(fit_tsglm(std::vector<double>(10, 1.0), 7, FitConfig{}), InsufficientData);
}

TEST_CASE("TSGLM maximizes the Poisson likelihood", "[tsglm]") {
	const auto y = poisson_ar(0.8, 0.3, 0.4, 7, 400, 3);
	const auto m = fit_tsglm(y, 7, FitConfig{});
	const auto b = m->coefficients();
	CHECK_THAT(m->log_likelihood(), WithinRel(m->log_likelihood_at(b), 1e-12));
	// Direct evaluation of the log-likelihood without the log y! term.
	double ll = 0;
	for (std::size_t t = 7; t < y.size(); ++t) {
		const double eta = b[0] + b[1] * std::log(y[t - 1] + 1) + b[2] * std::log(y[t - 7] + 1);
		ll += y[t] * eta - std::exp(eta);
	}
	CHECK_THAT(m->log_likelihood(), WithinRel(ll, 1e-10));
	for (int j = 0; j < 3; ++j) {
		for (double d : {-1e-3, 1e-3, -1e-2, 1e-2}) {
			auto p = b;
			p[static_cast<std::size_t>(j)] += d;
			CHECK(m->log_likelihood_at(p) < m->log_likelihood());
		}
	}
	CHECK(std::abs(b[1] - 0.3) < 0.15);
	CHECK(std::abs(b[2] - 0.4) < 0.15);
	// First forecast is the fitted conditional mean one step ahead.
	const std::size_t n = y.size();
	const double eta = b[0] + b[1] * std::log(y[n - 1] + 1) + b[2] * std::log(y[n - 7] + 1);
	CHECK_THAT(m->predict(1)[0], WithinRel(std::exp(eta), 1e-12));
}

TEST_CASE("MLP dataset and forward pass", "[mlp]") {
	std::vector<double> z;
	for (int i = 0; i < 20; ++i) z.push_back(i * 0.1);
	const auto d = mlp::make_dataset(z);
	REQUIRE(d.rows() == 13);
	CHECK(d.targets[0] == z[7]);
	for (int k = 0; k < 7; ++k) CHECK(d.inputs[static_cast<std::size_t>(k)] == z[static_cast<std::size_t>(6 - k)]);

	stats::Rng rng(5);
	std::vector<double> w(mlp::kWeights);
	for (auto &v : w) v = rng.uniform(-1, 1);
	const double *x = &d.inputs[7 * 3];
	double out = w[mlp::kWeights - 1];
	for (int j = 0; j < mlp::kHidden; ++j) {
		double a = w[static_cast<std::size_t>(mlp::kHidden * mlp::kInputs + j)];
		for (int i = 0; i < mlp::kInputs; ++i) a += w[static_cast<std::size_t>(j * mlp::kInputs + i)] * x[i];
		out += w[static_cast<std::size_t>(mlp::kHidden * mlp::kInputs + mlp::kHidden + j)] * sigmoid(a);
	}
	CHECK_THAT(mlp::forward(w, x), WithinAbs(out, 1e-14));
}

TEST_CASE("MLP gradient matches central differences", "[mlp]") {
	stats::Rng rng(13);
	std::vector<double> z;
	for (int i = 0; i < 70; ++i) z.push_back(std::sin(i * 0.9) + 0.3 * rng.normal());
	const auto d = mlp::make_dataset(z);
	for (int trial = 0; trial < 10; ++trial) {
		std::vector<double> w(mlp::kWeights);
		for (auto &v : w) v = rng.uniform(-1, 1);
		std::vector<double> g(mlp::kWeights);
		const double s = mlp::gradient(w, d, g);
		CHECK_THAT(s, WithinRel(mlp::sse(w, d), 1e-12));
		double worst = 0;
		for (int k = 0; k < mlp::kWeights; ++k) {
			auto wp = w, wm = w;
			wp[static_cast<std::size_t>(k)] += 1e-5;
			wm[static_cast<std::size_t>(k)] -= 1e-5;
			const double fd = (mlp::sse(wp, d) - mlp::sse(wm, d)) / 2e-5;
			const double gk = g[static_cast<std::size_t>(k)];
			worst = std::max(worst, std::abs(gk - fd) / std::max({std::abs(gk), std::abs(fd), 1e-6}));
		}
		CHECK(worst <= 1e-4);
	}
}

TEST_CASE("MLP training decreases the error monotonically", "[mlp]") {
	stats::Rng rng(2);
	std::vector<double> z{0.9};
	for (int i = 1; i < 80; ++i) z.push_back(0.5 * z.back() + 0.5 * rng.normal());
	const auto d = mlp::make_dataset(z);
	std::vector<double> w(mlp::kWeights);
	for (auto &v : w) v = rng.uniform(-0.01, 0.01);
	double prev = mlp::sse(w, d);
	for (int step = 0; step < 100; ++step) {
		mlp::train(w, d, 1, 1e-3, 0.0);
		const double now = mlp::sse(w, d);
		REQUIRE(now <= prev);
		prev = now;
	}
	const auto history = mlp::train(w, d, 100, 1e-3, 0.0);
	for (std::size_t i = 1; i < history.size(); ++i) CHECK(history[i] < history[i - 1]);
}

TEST_CASE("MLP fits are reproducible from the seed", "[mlp]") {
	stats::Rng rng(1);
	std::vector<double> y;
	for (int i = 0; i < 70; ++i) y.push_back(2 + std::sin(i * 2 * 3.14159 / 7) + 0.2 * rng.normal());
	FitConfig cfg;
	cfg.mlp_restarts = 5;
	const auto a = fit_mlp(y, 7, cfg);
	const auto b = fit_mlp(y, 7, cfg);
	CHECK(a->weights() == b->weights());
	CHECK(a->predict(21) == b->predict(21));
	cfg.seed = 43;
	const auto c = fit_mlp(y, 7, cfg);
	CHECK(c->weights() != a->weights());
	// More restarts can only lower the kept training error.
	cfg.seed = 42;
	cfg.mlp_restarts = 10;
	CHECK(fit_mlp(y, 7, cfg)->training_sse() <= a->training_sse());
	CHECK_THROWS(fit_mlp(std::vector<double>(5, 1.0), 7, cfg));
}
