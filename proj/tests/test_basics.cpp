#include "pyroseason/csv.hpp"
#include "pyroseason/date.hpp"
#include "pyroseason/error.hpp"
#include "pyroseason/optimize.hpp"
#include "pyroseason/stats.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

using namespace pyroseason;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Date serials and fields", "[date]") {
	CHECK(Date::from_ymd(1970, 1, 1).serial() == 0);
	CHECK(Date::from_ymd(2000, 3, 1).serial() == 11017);
	const Date d = Date::parse("2005-08-14");
	CHECK(d.year() == 2005);
	CHECK(d.month() == 8);
	CHECK(d.day() == 14);
	CHECK(d.to_string() == "2005-08-14");
	CHECK(Date::from_ymd(2004, 3, 1) - Date::from_ymd(2004, 2, 1) == 29);
	CHECK(Date::from_ymd(1900, 3, 1) - Date::from_ymd(1900, 2, 1) == 28);
}

TEST_CASE("Date roundtrip over many days", "[date]") {
	for (std::int32_t s = -800000; s <= 800000; s += 997) {
		const Date d = Date::from_serial(s);
		CHECK(Date::from_ymd(d.year(), d.month(), d.day()) == d);
		CHECK(Date::parse(d.to_string()) == d);
	}
}

TEST_CASE("Date parsing is strict", "[date]") {
	CHECK_THROWS_AS(Date::parse("2005-8-14"), ParseError);
	CHECK_THROWS_AS(Date::parse("2005-02-30"), ParseError);
	CHECK_THROWS_AS(Date::parse("2005/08/14"), ParseError);
	CHECK_THROWS_AS(Date::parse(""), ParseError);
	CHECK_THROWS_AS(Date::parse("2005-08-14x"), ParseError);
}

TEST_CASE("Calendar helpers", "[date]") {
	CHECK(is_leap_year(2000));
	CHECK_FALSE(is_leap_year(1900));
	CHECK(is_leap_year(2004));
	CHECK(days_in_month(2004, 2) == 29);
	CHECK(days_in_month(2005, 2) == 28);
	CHECK(month_start(2005, 11, 3) == Date::from_ymd(2006, 2, 1));
	CHECK(month_start(2005, 2, -3) == Date::from_ymd(2004, 11, 1));
	const DateRange r{Date::from_ymd(2003, 1, 1), Date::from_ymd(2003, 12, 31)};
	CHECK(r.days() == 365);
	CHECK(r.contains(Date::from_ymd(2003, 6, 1)));
	CHECK_FALSE(r.contains(Date::from_ymd(2002, 12, 31)));
}

TEST_CASE("CSV split and escape", "[csv]") {
	CHECK(csv::split("a,b,,c") == std::vector<std::string>{"a", "b", "", "c"});
	CHECK(csv::split("\"x,y\",\"he said \"\"hi\"\"\",z") == std::vector<std::string>{"x,y", "he said \"hi\"", "z"});
	CHECK(csv::escape("plain") == "plain");
	CHECK(csv::escape("a,b") == "\"a,b\"");
	CHECK(csv::escape("q\"") == "\"q\"\"\"");
	for (const std::string s : {"a,b", "q\"", "", "x y"}) CHECK(csv::split(csv::escape(s)).at(0) == s);
}

TEST_CASE("CSV number formatting roundtrips", "[csv]") {
	for (const double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, 1e-300}) {
		CHECK(std::stod(csv::format(v)) == v);
	}
	CHECK(csv::format(0.1) == "0.1");
	std::ostringstream out;
	csv::Writer w(out);
	w.field("a").field(1).field(2.5).end_row();
	CHECK(out.str() == "a,1,2.5\n");
	std::istringstream in("x\r\n\n\ny\n");
	std::string line;
	REQUIRE(csv::read_line(in, line));
	CHECK(line == "x");
	REQUIRE(csv::read_line(in, line));
	CHECK(line == "y");
	CHECK_FALSE(csv::read_line(in, line));
}

TEST_CASE("Quantiles use linear interpolation", "[stats]") {
	const std::vector<double> x{1, 2, 3, 4};
	// type 7: h = (n - 1) p
	CHECK_THAT(stats::quantile(x, 0.25), WithinAbs(1.75, 1e-15));
	CHECK_THAT(stats::quantile(x, 0.75), WithinAbs(3.25, 1e-15));
	CHECK_THAT(stats::quantile(x, 0.5), WithinAbs(2.5, 1e-15));
	CHECK(stats::quantile(x, 1.0) == 4.0);
	CHECK(stats::quantile(x, 0.0) == 1.0);
}

TEST_CASE("Upper outliers", "[stats]") {
	const std::vector<double> a{5, 5, 5, 5, 100};
	CHECK(stats::remove_upper_outliers(a) == std::vector<double>{5, 5, 5, 5});
	const std::vector<double> b{1, 2, 3, 4};
	CHECK(stats::remove_upper_outliers(b) == b);
}

TEST_CASE("OLS line and ranks", "[stats]") {
	const std::vector<double> x{3, 1, 2};
	const auto fit = stats::ols_line(x);
	CHECK_THAT(fit.slope, WithinAbs(-0.5, 1e-15));
	CHECK_THAT(fit.intercept, WithinAbs(2.5, 1e-15));
	const std::vector<double> v{10, 20, 10, 5};
	CHECK(stats::average_ranks(v) == std::vector<double>{2.5, 4, 2.5, 1});
	const std::vector<double> s{2, 4, 4, 4, 5, 5, 7, 9};
	CHECK_THAT(stats::mean(s), WithinAbs(5.0, 1e-15));
	CHECK_THAT(stats::sample_sd(s), WithinRel(std::sqrt(32.0 / 7.0), 1e-14));
}

TEST_CASE("Distribution tails", "[stats]") {
	CHECK_THAT(stats::normal_cdf(0.0), WithinAbs(0.5, 1e-15));
	CHECK_THAT(stats::normal_cdf(-1.959963984540054), WithinAbs(0.025, 1e-12));
	// chi-squared with 2 dof has survival exp(-x/2)
	CHECK_THAT(stats::chi_squared_sf(3.0, 2.0), WithinRel(std::exp(-1.5), 1e-12));
}

TEST_CASE("Generator moments", "[stats]") {
	stats::Rng rng(7);
	const int n = 200000;
	double su = 0, sn = 0, sn2 = 0, sp = 0;
	for (int i = 0; i < n; ++i) {
		const double u = rng.uniform();
		REQUIRE(u >= 0.0);
		REQUIRE(u < 1.0);
		su += u;
		const double z = rng.normal();
		sn += z;
		sn2 += z * z;
		sp += static_cast<double>(rng.poisson(3.5));
	}
	CHECK_THAT(su / n, WithinAbs(0.5, 0.005));
	CHECK_THAT(sn / n, WithinAbs(0.0, 0.01));
	CHECK_THAT(sn2 / n, WithinAbs(1.0, 0.01));
	CHECK_THAT(sp / n, WithinAbs(3.5, 0.02));
	stats::Rng a(99), b(99);
	for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
	CHECK(stats::mix_seed(42, 1) != stats::mix_seed(42, 2));
}

TEST_CASE("Optimizers find the Rosenbrock minimum", "[optimize]") {
	const opt::Objective rosen = [](const Eigen::VectorXd &x) {
		return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
	};
	Eigen::VectorXd x0(2);
	x0 << -1.2, 1.0;
	opt::Options o;
	o.max_iterations = 5000;
	o.tolerance = 1e-14;
	const auto nm = opt::nelder_mead(rosen, x0, 0.5, o);
	CHECK_THAT(nm.x[0], WithinAbs(1.0, 1e-3));
	const auto bf = opt::bfgs(rosen, x0, o);
	CHECK_THAT(bf.x[0], WithinAbs(1.0, 1e-4));
	CHECK_THAT(bf.x[1], WithinAbs(1.0, 1e-4));
	const opt::Residuals res = [](const Eigen::VectorXd &x) {
		Eigen::VectorXd r(2);
		r << 10 * (x[1] - x[0] * x[0]), 1 - x[0];
		return r;
	};
	const auto lm = opt::levenberg_marquardt(res, x0, o);
	CHECK_THAT(lm.x[0], WithinAbs(1.0, 1e-6));
	CHECK(lm.value < 1e-12);
}

TEST_CASE("Numeric gradient of a quadratic", "[optimize]") {
	const opt::Objective f = [](const Eigen::VectorXd &x) { return x.squaredNorm() + 3 * x[0]; };
	Eigen::VectorXd x(3);
	x << 1, -2, 0.5;
	const auto g = opt::numeric_gradient(f, x);
	CHECK_THAT(g[0], WithinAbs(5.0, 1e-6));
	CHECK_THAT(g[1], WithinAbs(-4.0, 1e-6));
	CHECK_THAT(g[2], WithinAbs(1.0, 1e-6));
}
