#include "pyroseason/error.hpp"
#include "pyroseason/evaluate.hpp"
#include "pyroseason/forecast.hpp"
#include "pyroseason/stats.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace pyroseason;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const std::vector<double> kPattern{3, 9, 14, 20, 12, 6, 2};

std::vector<double> periodic(int seasons) {
	std::vector<double> x;
	for (int s = 0; s < seasons; ++s) {
		for (double v : kPattern) x.push_back(10.0 + v);
	}
	return x;
}

} // namespace

TEST_CASE("Method names", "[forecast]") {
	for (Method m : {Method::snaive, Method::arima, Method::ets, Method::stlf, Method::tsglm, Method::mlp,
	                 Method::linreg}) {
		CHECK(parse_method(method_name(m)) == m);
	}
	CHECK(parse_methods("ets,snaive,ets") == std::vector<Method>{Method::ets, Method::snaive});
	CHECK_THROWS_AS(parse_method("tbats"), ParameterError);
	CHECK_THROWS_AS(parse_methods(""), ParameterError);
	CHECK(method_scale(Method::tsglm) == Scale::counts);
	CHECK(method_scale(Method::linreg) == Scale::fss);
	CHECK(method_scale(Method::ets) == Scale::transformed);
}

TEST_CASE("Seasonal naive", "[forecast]") {
	const std::vector<double> train{0, 0, 0, 0, 0, 0, 0, 1, 2, 3, 4, 5, 6, 7};
	const auto m = SnaiveModel::fit(train, 7);
	CHECK(m->predict(7) == std::vector<double>{1, 2, 3, 4, 5, 6, 7});
	CHECK(m->predict(14) == std::vector<double>{1, 2, 3, 4, 5, 6, 7, 1, 2, 3, 4, 5, 6, 7});
	const std::vector<double> short_train{9, 8, 7};
	CHECK(SnaiveModel::fit(short_train, 3)->predict(3) == short_train);
	CHECK_THROWS_AS(SnaiveModel::fit(short_train, 7), InsufficientData);
	CHECK(m->predict(0).empty());
	CHECK_THROWS_AS(m->predict(-1), ParameterError);
}

TEST_CASE("Linear regression on severity", "[forecast]") {
	const std::vector<double> ten{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
	const auto a = LinregModel::fit(ten)->predict(3);
	CHECK_THAT(a[0], WithinAbs(110, 1e-9));
	CHECK_THAT(a[1], WithinAbs(120, 1e-9));
	CHECK_THAT(a[2], WithinAbs(130, 1e-9));
	const std::vector<double> flat(6, 42.0);
	for (double v : LinregModel::fit(flat)->predict(4)) CHECK_THAT(v, WithinAbs(42.0, 1e-12));
	// Closed-form OLS on t = 0, 1, 2 evaluated at t = 3.
	const std::vector<double> y{3, 1, 2};
	const double tbar = 1.0, ybar = 2.0;
	double sxy = 0, sxx = 0;
	for (int t = 0; t < 3; ++t) {
		sxy += (t - tbar) * (y[t] - ybar);
		sxx += (t - tbar) * (t - tbar);
	}
	const double oracle = ybar + sxy / sxx * (3 - tbar);
	const auto m = LinregModel::fit(y);
	CHECK_THAT(m->slope(), WithinAbs(-0.5, 1e-15));
	CHECK_THAT(m->intercept(), WithinAbs(2.5, 1e-15));
	CHECK_THAT(m->predict(1)[0], WithinAbs(oracle, 1e-15));
	CHECK_THROWS(LinregModel::fit(std::vector<double>{1.0}));
}

TEST_CASE("Season sums of monthly forecasts", "[forecast]") {
	const std::vector<double> tens(7, 10.0);
	const auto m = SnaiveModel::fit(tens, 7);
	const auto f = forecast_fss(*m, 3, 7, {1.0, 0.0}, 1e9);
	// Identity transform: lambda 1, shift 0 gives y = x - 1, inverse x = y + 1.
	CHECK(f.fss == std::vector<double>{77, 77, 77});
	const auto g = forecast_fss(*m, 3, 7, {1.0, 1.0}, 1e9);
	CHECK(g.fss == std::vector<double>{70, 70, 70});

	const auto train = periodic(10);
	const BoxCoxParams p{0.0, 1.0};
	const auto transformed = boxcox(train, p);
	const auto s = SnaiveModel::fit(transformed, 7);
	const auto h = forecast_fss(*s, 3, 7, p, 1e9);
	double season = 0;
	for (double v : kPattern) season += 10.0 + v;
	for (double v : h.fss) CHECK_THAT(v, WithinRel(season, 1e-12));
	CHECK(h.monthly.size() == 21);

	const std::vector<double> falling{100, 80, 60, 40, 20};
	const auto lin = LinregModel::fit(falling);
	const auto lf = forecast_fss(*lin, 3, 7, p, 1e9);
	CHECK(lf.monthly.empty());
	CHECK(lf.fss == std::vector<double>{0, 0, 0});

	// Values beyond the cap are capped.
	const std::vector<double> big(7, 50.0);
	const auto c = forecast_fss(*SnaiveModel::fit(big, 7), 1, 7, p, 3.0);
	CHECK(c.fss == std::vector<double>{21});
}

TEST_CASE("Every method forecasts finite non-negative severities", "[forecast]") {
	stats::Rng rng(17);
	std::vector<double> counts;
	for (int s = 0; s < 10; ++s) {
		for (double v : kPattern) counts.push_back(static_cast<double>(rng.poisson(v * 3)));
	}
	const BoxCoxParams p{0.3, 1.0};
	const auto y = boxcox(counts, p);
	FitConfig cfg;
	cfg.mlp_restarts = 3;
	for (Method m : {Method::snaive, Method::arima, Method::ets, Method::stlf, Method::tsglm, Method::mlp}) {
		const auto &train = method_scale(m) == Scale::counts ? counts : y;
		std::unique_ptr<ForecastModel> model;
		try {
			model = fit_model(m, train, 7, cfg);
		} catch (const FitError &) {
			FAIL("fit failed for " << method_name(m));
		}
		const auto pred = model->predict(21);
		REQUIRE(pred.size() == 21);
		for (double v : pred) CHECK(std::isfinite(v));
		const auto f = forecast_fss(*model, 3, 7, p, 1000.0);
		for (double v : f.fss) CHECK(v >= 0.0);
		CHECK_FALSE(model->describe().empty());
	}
}

TEST_CASE("Identical input and seed give identical forecasts", "[forecast]") {
	stats::Rng rng(23);
	std::vector<double> y;
	for (int s = 0; s < 10; ++s) {
		for (double v : kPattern) y.push_back(std::log(1 + v + rng.uniform(0, 3)));
	}
	FitConfig cfg;
	cfg.mlp_restarts = 4;
	for (Method m : {Method::snaive, Method::arima, Method::ets, Method::stlf, Method::tsglm, Method::mlp}) {
		const auto a = fit_model(m, y, 7, cfg)->predict(21);
		const auto b = fit_model(m, y, 7, cfg)->predict(21);
		CHECK(a == b);
	}
}

TEST_CASE("Seasonal methods continue a noiseless periodic series", "[forecast]") {
	const auto all = periodic(13);
	const std::vector<double> train(all.begin(), all.begin() + 70);
	const std::vector<double> test(all.begin() + 70, all.end());
	const double level = stats::mean(all);
	for (Method m : {Method::snaive, Method::arima, Method::ets, Method::stlf}) {
		std::vector<double> pred;
		try {
			pred = fit_model(m, train, 7, FitConfig{})->predict(21);
		} catch (const FitError &e) {
			FAIL(method_name(m) << ": " << e.what());
		}
		INFO(method_name(m));
		CHECK(mae(test, pred) <= 1e-3 * level);
	}
}
