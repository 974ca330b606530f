#include "pyroseason/transform.hpp"

#include "pyroseason/error.hpp"
#include "pyroseason/stats.hpp"

#include <cmath>
#include <limits>

namespace pyroseason {

MonthlySeries monthly_accumulate(const DailySeries &s, const SeasonProfile &profile) {
	if (profile.windows.empty()) {
		throw InsufficientData("profile has no season windows");
	}
	const DateRange range{s.start, s.start.add_days(static_cast<std::int32_t>(s.counts.size()) - 1)};
	MonthlySeries out;
	out.cell = s.cell;
	out.period = -1;
	for (const auto &w : profile.windows) {
		if (!range.contains(w.first) || !range.contains(w.last)) {
			throw InsufficientData("season window outside the daily series");
		}
		int months = 0;
		Date d = w.first;
		while (d <= w.last) {
			const Date next = month_start(d.year(), d.month(), 1);
			const Date end = std::min(next.add_days(-1), w.last);
			double total = 0.0;
			for (Date k = d; k <= end; k = k.add_days(1)) {
				total += s.counts[static_cast<std::size_t>(k - range.first)];
			}
			out.values.push_back(total);
			++months;
			d = next;
		}
		if (out.period >= 0 && months != out.period) {
			throw ParameterError("season windows differ in month count");
		}
		out.period = months;
	}
	return out;
}

std::pair<MonthlySeries, MonthlySeries> split_train_test(const MonthlySeries &m, int train_seasons) {
	const auto seasons = static_cast<int>(m.seasons());
	if (train_seasons < 1 || train_seasons >= seasons) {
		throw ParameterError("train seasons must be in [1, " + std::to_string(seasons) + ")");
	}
	const auto cut = static_cast<std::ptrdiff_t>(train_seasons) * m.period;
	MonthlySeries train{m.cell, m.period, {m.values.begin(), m.values.begin() + cut}};
	MonthlySeries test{m.cell, m.period, {m.values.begin() + cut, m.values.end()}};
	return {std::move(train), std::move(test)};
}

namespace {

struct Blocks {
	std::vector<double> mean;
	std::vector<double> sd;
};

Blocks guerrero_blocks(std::span<const double> x, int period) {
	if (period < 2) {
		throw ParameterError("Guerrero blocks need period >= 2");
	}
	const std::size_t nb = x.size() / static_cast<std::size_t>(period);
	if (nb < 2) {
		throw InsufficientData("Guerrero lambda needs at least two complete periods");
	}
	Blocks b;
	for (double v : x) {
		if (!(v > 0.0)) {
			throw DomainError("Guerrero lambda requires positive values");
		}
	}
	for (std::size_t i = 0; i < nb; ++i) {
		const auto block = x.subspan(i * static_cast<std::size_t>(period), static_cast<std::size_t>(period));
		b.mean.push_back(stats::mean(block));
		b.sd.push_back(stats::sample_sd(block));
	}
	return b;
}

double objective(const Blocks &b, double lambda) {
	std::vector<double> r(b.mean.size());
	for (std::size_t i = 0; i < r.size(); ++i) {
		r[i] = b.sd[i] / std::pow(b.mean[i], 1.0 - lambda);
	}
	const double m = stats::mean(r);
	if (m == 0.0) {
		return std::numeric_limits<double>::quiet_NaN();
	}
	return stats::sample_sd(r) / m;
}

} // namespace

double guerrero_objective(std::span<const double> x, int period, double lambda) {
	return objective(guerrero_blocks(x, period), lambda);
}

double guerrero_lambda(std::span<const double> x, int period) {
	const Blocks b = guerrero_blocks(x, period);
	double best_lambda = 1.0;
	double best = std::numeric_limits<double>::infinity();
	const int steps = static_cast<int>(std::lround((kLambdaMax - kLambdaMin) / 0.01));
	for (int i = 0; i <= steps; ++i) {
		const double lambda = kLambdaMin + 0.01 * i;
		const double cv = objective(b, lambda);
		if (cv < best) {
			best = cv;
			best_lambda = lambda;
		}
	}
	return best_lambda;
}

double boxcox(double x, const BoxCoxParams &p) {
	const double v = x + p.shift;
	if (!(v > 0.0)) {
		throw DomainError("Box-Cox input must satisfy x + shift > 0");
	}
	if (p.lambda == 0.0) {
		return std::log(v);
	}
	return (std::pow(v, p.lambda) - 1.0) / p.lambda;
}

std::vector<double> boxcox(std::span<const double> x, const BoxCoxParams &p) {
	std::vector<double> out;
	out.reserve(x.size());
	for (double v : x) {
		out.push_back(boxcox(v, p));
	}
	return out;
}

double inv_boxcox(double y, const BoxCoxParams &p) {
	double v;
	if (p.lambda == 0.0) {
		v = std::exp(y);
	} else {
		const double t = p.lambda * y + 1.0;
		if (!(t > 0.0)) {
			throw DomainError("inverse Box-Cox undefined: lambda * y + 1 <= 0");
		}
		v = std::pow(t, 1.0 / p.lambda);
	}
	return std::max(0.0, v - p.shift);
}

double inv_boxcox_bounded(double y, const BoxCoxParams &p, double cap) {
	if (std::isnan(y)) {
		throw DomainError("inverse Box-Cox of NaN");
	}
	if (p.lambda != 0.0 && !(p.lambda * y + 1.0 > 0.0)) {
		return p.lambda > 0.0 ? 0.0 : cap;
	}
	const double v = inv_boxcox(y, p);
	return std::isfinite(v) ? std::min(v, cap) : cap;
}

} // namespace pyroseason
