#include "pyroseason/stl.hpp"

#include "pyroseason/error.hpp"

#include <algorithm>
#include <cmath>

namespace pyroseason {

namespace {

int next_odd(double v) {
	int n = static_cast<int>(std::ceil(v - 1e-9));
	return n % 2 == 0 ? n + 1 : n;
}

std::vector<double> moving_average(std::span<const double> x, int len) {
	std::vector<double> out;
	if (static_cast<int>(x.size()) < len) {
		return out;
	}
	double sum = 0.0;
	for (int i = 0; i < len; ++i) {
		sum += x[static_cast<std::size_t>(i)];
	}
	out.push_back(sum / len);
	for (std::size_t i = static_cast<std::size_t>(len); i < x.size(); ++i) {
		sum += x[i] - x[i - static_cast<std::size_t>(len)];
		out.push_back(sum / len);
	}
	return out;
}

std::vector<double> loess_series(std::span<const double> y, int q, int degree) {
	std::vector<double> out(y.size());
	for (std::size_t i = 0; i < y.size(); ++i) {
		out[i] = loess_at(y, static_cast<double>(i), q, degree);
	}
	return out;
}

} // namespace

double loess_at(std::span<const double> y, double x, int q, int degree) {
	const auto n = static_cast<int>(y.size());
	if (n == 0) {
		throw InsufficientData("loess on empty series");
	}
	const int w = std::min(q, n);
	// Window of w consecutive points nearest to x.
	int lo = static_cast<int>(std::floor(x)) - (w - 1) / 2;
	lo = std::clamp(lo, 0, n - w);
	while (lo > 0 && x - (lo - 1) < (lo + w - 1) - x) {
		--lo;
	}
	while (lo + w < n && (lo + w) - x < x - lo) {
		++lo;
	}
	double h = std::max(x - lo, (lo + w - 1) - x);
	if (q > n) {
		h += static_cast<double>(q - n) / 2.0;
	}
	h = std::max(h, 0.5);
	double sw = 0.0, sx = 0.0, sy = 0.0;
	std::vector<double> wt(static_cast<std::size_t>(w));
	for (int i = 0; i < w; ++i) {
		const double r = std::abs(static_cast<double>(lo + i) - x) / h;
		const double t = r < 1.0 ? 1.0 - r * r * r : 0.0;
		wt[static_cast<std::size_t>(i)] = t * t * t;
		sw += wt[static_cast<std::size_t>(i)];
	}
	if (sw <= 0.0) {
		throw Error("loess: all weights vanished");
	}
	for (int i = 0; i < w; ++i) {
		const double wi = wt[static_cast<std::size_t>(i)] / sw;
		sx += wi * (lo + i);
		sy += wi * y[static_cast<std::size_t>(lo + i)];
	}
	if (degree == 0) {
		return sy;
	}
	double sxx = 0.0, sxy = 0.0;
	for (int i = 0; i < w; ++i) {
		const double wi = wt[static_cast<std::size_t>(i)] / sw;
		const double dx = (lo + i) - sx;
		sxx += wi * dx * dx;
		sxy += wi * dx * y[static_cast<std::size_t>(lo + i)];
	}
	// Degenerate spread falls back to the local mean.
	if (sxx <= 1e-12 * h * h) {
		return sy;
	}
	return sy + (sxy / sxx) * (x - sx);
}

StlDecomposition stl_decompose(std::span<const double> y, const StlOptions &o) {
	const int np = o.period;
	const auto n = static_cast<int>(y.size());
	if (np < 2 || n < 2 * np) {
		throw InsufficientData("STL needs at least two full periods");
	}
	if (o.seasonal_window < 3 || o.seasonal_window % 2 == 0) {
		throw ParameterError("STL seasonal window must be odd and >= 3");
	}
	if (o.seasonal_degree != 0 && o.seasonal_degree != 1) {
		throw ParameterError("STL seasonal degree must be 0 or 1");
	}
	const int ns = o.seasonal_window;
	const int nt = o.trend_window > 0 ? o.trend_window : next_odd(1.5 * np / (1.0 - 1.5 / ns));
	const int nl = o.lowpass_window > 0 ? o.lowpass_window : next_odd(np);

	StlDecomposition d;
	d.trend.assign(static_cast<std::size_t>(n), 0.0);
	d.seasonal.assign(static_cast<std::size_t>(n), 0.0);
	std::vector<double> cycle(static_cast<std::size_t>(n + 2 * np));
	for (int pass = 0; pass < std::max(1, o.inner_iterations); ++pass) {
		// Cycle-subseries smoothing, extended one period on each side.
		for (int j = 0; j < np; ++j) {
			std::vector<double> sub;
			for (int t = j; t < n; t += np) {
				sub.push_back(y[static_cast<std::size_t>(t)] - d.trend[static_cast<std::size_t>(t)]);
			}
			const auto k = static_cast<int>(sub.size());
			for (int i = -1; i <= k; ++i) {
				cycle[static_cast<std::size_t>(j + (i + 1) * np)] = loess_at(sub, i, ns, o.seasonal_degree);
			}
		}
		// Low-pass filter of the cycle-subseries result.
		auto lp = moving_average(cycle, np);
		lp = moving_average(lp, np);
		lp = moving_average(lp, 3);
		const auto low = loess_series(lp, nl, 1);
		for (int t = 0; t < n; ++t) {
			d.seasonal[static_cast<std::size_t>(t)] = cycle[static_cast<std::size_t>(t + np)] - low[static_cast<std::size_t>(t)];
		}
		std::vector<double> adjusted(static_cast<std::size_t>(n));
		for (int t = 0; t < n; ++t) {
			adjusted[static_cast<std::size_t>(t)] = y[static_cast<std::size_t>(t)] - d.seasonal[static_cast<std::size_t>(t)];
		}
		d.trend = loess_series(adjusted, nt, 1);
	}
	d.remainder.resize(static_cast<std::size_t>(n));
	for (int t = 0; t < n; ++t) {
		const auto i = static_cast<std::size_t>(t);
		d.remainder[i] = y[i] - d.seasonal[i] - d.trend[i];
	}
	return d;
}

std::unique_ptr<StlfModel> StlfModel::fit(std::span<const double> y, int period, const FitConfig &config) {
	StlOptions o;
	o.period = period;
	o.seasonal_window = config.stl_seasonal_window;
	auto m = std::make_unique<StlfModel>();
	m->decomposition_ = stl_decompose(y, o);
	std::vector<double> adjusted(y.size());
	for (std::size_t t = 0; t < y.size(); ++t) {
		adjusted[t] = y[t] - m->decomposition_.seasonal[t];
	}
	try {
		m->adjusted_ = fit_ets_nonseasonal(adjusted, config);
	} catch (const ConvergenceError &e) {
		m->adjusted_ = e.best_so_far();
		m->converged_ = false;
	}
	m->last_season_.assign(m->decomposition_.seasonal.end() - period, m->decomposition_.seasonal.end());
	return m;
}

std::vector<double> StlfModel::predict(int h) const {
	auto out = adjusted_->predict(h);
	for (std::size_t k = 0; k < out.size(); ++k) {
		out[k] += last_season_[k % last_season_.size()];
	}
	return out;
}

std::string StlfModel::describe() const {
	return "STL + " + adjusted_->describe();
}

std::unique_ptr<StlfModel> fit_stlf(std::span<const double> y, int period, const FitConfig &config) {
	auto m = StlfModel::fit(y, period, config);
	if (!m->converged()) {
		std::shared_ptr<ForecastModel> keep(std::move(m));
		throw ConvergenceError("STLF adjusted-series optimizer reached its iteration limit", keep);
	}
	return m;
}

} // namespace pyroseason
