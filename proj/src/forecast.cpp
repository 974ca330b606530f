#include "pyroseason/forecast.hpp"

#include "pyroseason/arima.hpp"
#include "pyroseason/error.hpp"
#include "pyroseason/ets.hpp"
#include "pyroseason/mlp.hpp"
#include "pyroseason/stats.hpp"
#include "pyroseason/stl.hpp"
#include "pyroseason/tsglm.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace pyroseason {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 7> kNames{{
    {Method::snaive, "snaive"},
    {Method::arima, "arima"},
    {Method::ets, "ets"},
    {Method::stlf, "stlf"},
    {Method::tsglm, "tsglm"},
    {Method::mlp, "mlp"},
    {Method::linreg, "linreg"},
}};

void check_horizon(int h) {
	if (h < 0) {
		throw ParameterError("forecast horizon must be non-negative");
	}
}

} // namespace

std::string_view method_name(Method m) {
	for (const auto &[id, name] : kNames) {
		if (id == m) {
			return name;
		}
	}
	return "unknown";
}

Method parse_method(std::string_view name) {
	for (const auto &[id, n] : kNames) {
		if (n == name) {
			return id;
		}
	}
	throw ParameterError("unknown method '" + std::string(name) +
	                     "' (valid: snaive, arima, ets, stlf, tsglm, mlp, linreg)");
}

std::vector<Method> parse_methods(std::string_view list) {
	std::vector<Method> out;
	std::size_t pos = 0;
	while (pos <= list.size()) {
		const auto comma = list.find(',', pos);
		const auto item = list.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
		if (!item.empty()) {
			const Method m = parse_method(item);
			if (std::find(out.begin(), out.end(), m) == out.end()) {
				out.push_back(m);
			}
		}
		if (comma == std::string_view::npos) {
			break;
		}
		pos = comma + 1;
	}
	if (out.empty()) {
		throw ParameterError("empty method list");
	}
	return out;
}

Scale method_scale(Method m) {
	switch (m) {
	case Method::tsglm:
		return Scale::counts;
	case Method::linreg:
		return Scale::fss;
	default:
		return Scale::transformed;
	}
}

std::unique_ptr<SnaiveModel> SnaiveModel::fit(std::span<const double> train, int period) {
	if (period < 1 || train.size() < static_cast<std::size_t>(period)) {
		throw InsufficientData("snaive needs at least one full period");
	}
	auto m = std::make_unique<SnaiveModel>();
	m->last_.assign(train.end() - period, train.end());
	return m;
}

std::vector<double> SnaiveModel::predict(int h) const {
	check_horizon(h);
	std::vector<double> out(static_cast<std::size_t>(h));
	for (int t = 0; t < h; ++t) {
		out[static_cast<std::size_t>(t)] = last_[static_cast<std::size_t>(t) % last_.size()];
	}
	return out;
}

std::string SnaiveModel::describe() const {
	return "snaive(period=" + std::to_string(last_.size()) + ")";
}

std::unique_ptr<LinregModel> LinregModel::fit(std::span<const double> fss_train) {
	const auto line = stats::ols_line(fss_train);
	auto m = std::make_unique<LinregModel>();
	m->intercept_ = line.intercept;
	m->slope_ = line.slope;
	m->n_ = fss_train.size();
	return m;
}

std::vector<double> LinregModel::predict(int h) const {
	check_horizon(h);
	std::vector<double> out;
	for (int t = 0; t < h; ++t) {
		out.push_back(intercept_ + slope_ * static_cast<double>(n_ + static_cast<std::size_t>(t)));
	}
	return out;
}

std::string LinregModel::describe() const {
	return "linreg(intercept=" + std::to_string(intercept_) + ", slope=" + std::to_string(slope_) + ")";
}

std::unique_ptr<ForecastModel> fit_model(Method m, std::span<const double> train, int period, const FitConfig &config) {
	switch (m) {
	case Method::snaive:
		return SnaiveModel::fit(train, period);
	case Method::ets:
		return fit_ets(train, period, config);
	case Method::stlf:
		return fit_stlf(train, period, config);
	case Method::arima:
		return fit_arima(train, period, config);
	case Method::tsglm:
		return fit_tsglm(train, period, config);
	case Method::mlp:
		return fit_mlp(train, period, config);
	case Method::linreg:
		return LinregModel::fit(train);
	}
	throw ParameterError("unknown method");
}

FssForecast forecast_fss(const ForecastModel &model, int seasons, int period, const BoxCoxParams &params, double cap) {
	if (seasons < 1 || period < 1) {
		throw ParameterError("forecast horizon must cover at least one season");
	}
	FssForecast out;
	const Scale scale = method_scale(model.method());
	if (scale == Scale::fss) {
		out.fss = model.predict(seasons);
		for (double &v : out.fss) {
			v = std::max(0.0, v);
		}
		return out;
	}
	out.monthly = model.predict(seasons * period);
	for (double &v : out.monthly) {
		if (scale == Scale::transformed) {
			v = inv_boxcox_bounded(v, params, cap);
		} else if (!std::isfinite(v)) {
			v = cap;
		}
		v = std::clamp(v, 0.0, cap);
	}
	for (int s = 0; s < seasons; ++s) {
		double total = 0.0;
		for (int k = 0; k < period; ++k) {
			total += out.monthly[static_cast<std::size_t>(s * period + k)];
		}
		out.fss.push_back(total);
	}
	return out;
}

} // namespace pyroseason
