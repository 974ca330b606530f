#include "pyroseason/evaluate.hpp"

#include "pyroseason/csv.hpp"
#include "pyroseason/error.hpp"
#include "pyroseason/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace pyroseason {

namespace {

void check_pair(std::span<const double> observed, std::span<const double> forecast) {
	if (observed.size() != forecast.size()) {
		throw ParameterError("observed and forecast lengths differ");
	}
	if (observed.empty()) {
		throw ParameterError("error metrics need at least one value");
	}
}

// Studentized range quantiles divided by sqrt(2), k = 2..10.
constexpr std::array<double, 9> kQ05 = {1.959964, 2.343701, 2.569032, 2.727774, 2.849705,
                                        2.948320, 3.030878, 3.101730, 3.163684};
constexpr std::array<double, 9> kQ001 = {3.290527, 3.580402, 3.753891, 3.877599, 3.973468,
                                         4.051548, 4.117291, 4.173985, 4.223766};

} // namespace

double mae(std::span<const double> observed, std::span<const double> forecast) {
	check_pair(observed, forecast);
	double s = 0.0;
	for (std::size_t i = 0; i < observed.size(); ++i) {
		s += std::abs(observed[i] - forecast[i]);
	}
	return s / static_cast<double>(observed.size());
}

std::optional<std::vector<double>> scaled_errors(std::span<const double> observed, std::span<const double> forecast,
                                                 std::span<const double> train, int period) {
	check_pair(observed, forecast);
	if (period < 1 || train.size() <= static_cast<std::size_t>(period)) {
		throw ParameterError("training series must be longer than the period");
	}
	const auto m = static_cast<std::size_t>(period);
	double q = 0.0;
	for (std::size_t t = m; t < train.size(); ++t) {
		q += std::abs(train[t] - train[t - m]);
	}
	q /= static_cast<double>(train.size() - m);
	std::vector<double> out(observed.size());
	if (!(q > 0.0)) {
		// A perfect forecast scores zero even against a flat naive baseline.
		for (std::size_t i = 0; i < observed.size(); ++i) {
			if (observed[i] != forecast[i]) {
				return std::nullopt;
			}
		}
		return out;
	}
	for (std::size_t i = 0; i < observed.size(); ++i) {
		out[i] = (observed[i] - forecast[i]) / q;
	}
	return out;
}

namespace {

std::optional<double> mean_abs(const std::optional<std::vector<double>> &q) {
	if (!q) {
		return std::nullopt;
	}
	double s = 0.0;
	for (double v : *q) {
		s += std::abs(v);
	}
	return s / static_cast<double>(q->size());
}

} // namespace

std::optional<double> mase_nonseasonal(std::span<const double> observed, std::span<const double> forecast,
                                       std::span<const double> train) {
	return mean_abs(scaled_errors(observed, forecast, train, 1));
}

std::optional<double> mase_seasonal(std::span<const double> observed, std::span<const double> forecast,
                                    std::span<const double> train, int period) {
	return mean_abs(scaled_errors(observed, forecast, train, period));
}

SelectBy parse_select_by(std::string_view name) {
	if (name == "mae") {
		return SelectBy::mae;
	}
	if (name == "mase") {
		return SelectBy::mase;
	}
	throw ParameterError("unknown selection metric '" + std::string(name) + "' (expected mae or mase)");
}

Method select_best(std::span<const ErrorReport> reports, SelectBy by) {
	std::vector<const ErrorReport *> eligible;
	for (const auto &r : reports) {
		if (r.mae_monthly && std::isfinite(*r.mae_monthly)) {
			eligible.push_back(&r);
		}
	}
	if (eligible.empty()) {
		throw ParameterError("no report with finite monthly errors");
	}
	if (by == SelectBy::mase) {
		for (const auto *r : eligible) {
			if (!r->mase_monthly || !std::isfinite(*r->mase_monthly)) {
				by = SelectBy::mae;
				break;
			}
		}
	}
	auto key = [by](const ErrorReport *r) { return by == SelectBy::mae ? *r->mae_monthly : *r->mase_monthly; };
	const ErrorReport *best = eligible.front();
	for (const auto *r : eligible) {
		const double a = key(r), b = key(best);
		if (a < b || (a == b && method_name(r->method) < method_name(best->method))) {
			best = r;
		}
	}
	return best->method;
}

ComparisonResult friedman_test(const std::vector<std::vector<double>> &errors) {
	const std::size_t n = errors.size();
	if (n < 10) {
		throw ParameterError("Friedman test needs at least 10 cells");
	}
	const std::size_t k = errors.front().size();
	if (k < 2) {
		throw ParameterError("Friedman test needs at least 2 methods");
	}
	ComparisonResult out;
	out.mean_ranks.assign(k, 0.0);
	for (const auto &row : errors) {
		if (row.size() != k) {
			throw ParameterError("ragged error matrix");
		}
		for (double v : row) {
			if (!std::isfinite(v)) {
				throw ParameterError("error matrix holds non-finite values");
			}
		}
		const auto ranks = stats::average_ranks(row);
		for (std::size_t j = 0; j < k; ++j) {
			out.mean_ranks[j] += ranks[j];
		}
	}
	double sum_sq = 0.0;
	for (double &r : out.mean_ranks) {
		r /= static_cast<double>(n);
		sum_sq += r * r;
	}
	const double kk = static_cast<double>(k);
	const double stat =
	    12.0 * static_cast<double>(n) / (kk * (kk + 1.0)) * (sum_sq - kk * (kk + 1.0) * (kk + 1.0) / 4.0);
	out.statistic = std::max(stat, 0.0);
	out.p_value = std::clamp(stats::chi_squared_sf(out.statistic, kk - 1.0), 0.0, 1.0);
	return out;
}

double nemenyi_cd(int k, int n, double alpha) {
	if (k < 2 || k > 10) {
		throw ParameterError("Nemenyi constants are tabulated for 2 <= k <= 10");
	}
	if (n < 2) {
		throw ParameterError("Nemenyi test needs at least 2 cells");
	}
	double q;
	if (alpha == 0.05) {
		q = kQ05[static_cast<std::size_t>(k - 2)];
	} else if (alpha == 0.001) {
		q = kQ001[static_cast<std::size_t>(k - 2)];
	} else {
		throw ParameterError("Nemenyi alpha must be 0.05 or 0.001");
	}
	const double kk = static_cast<double>(k);
	return q * std::sqrt(kk * (kk + 1.0) / (6.0 * static_cast<double>(n)));
}

ComparisonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
	if (a.size() != b.size()) {
		throw ParameterError("paired samples differ in length");
	}
	std::vector<double> diff, mag;
	for (std::size_t i = 0; i < a.size(); ++i) {
		const double d = a[i] - b[i];
		if (!std::isfinite(d)) {
			throw ParameterError("paired samples hold non-finite values");
		}
		if (d != 0.0) {
			diff.push_back(d);
			mag.push_back(std::abs(d));
		}
	}
	ComparisonResult out;
	if (diff.empty()) {
		out.degenerate = true;
		return out;
	}
	if (diff.size() < 10) {
		throw InsufficientData("signed-rank test needs at least 10 non-zero differences");
	}
	const auto ranks = stats::average_ranks(mag);
	double w = 0.0;
	for (std::size_t i = 0; i < diff.size(); ++i) {
		if (diff[i] > 0.0) {
			w += ranks[i];
		}
	}
	std::map<double, int> ties;
	for (double r : ranks) {
		++ties[r];
	}
	double tie = 0.0;
	for (const auto &[r, t] : ties) {
		tie += static_cast<double>(t) * t * t - t;
	}
	const double n = static_cast<double>(diff.size());
	const double mu = n * (n + 1.0) / 4.0;
	const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie / 48.0;
	out.statistic = w;
	if (!(var > 0.0)) {
		out.degenerate = true;
		return out;
	}
	const double dev = std::max(std::abs(w - mu) - 0.5, 0.0);
	const double z = dev / std::sqrt(var);
	out.p_value = std::clamp(2.0 * stats::normal_cdf(-z), 0.0, 1.0);
	return out;
}

Summary summarize(std::span<const double> values) {
	Summary s;
	if (values.empty()) {
		return s;
	}
	const auto kept = stats::remove_upper_outliers(values);
	s.count = kept.size();
	s.removed = values.size() - kept.size();
	const auto q = stats::quartiles(kept);
	s.q1 = q.q1;
	s.median = q.median;
	s.q3 = q.q3;
	return s;
}

std::map<CellId, std::string> read_continents(std::istream &in) {
	std::map<CellId, std::string> out;
	std::string line;
	bool header = true;
	while (csv::read_line(in, line)) {
		const auto fields = csv::split(line);
		if (header) {
			header = false;
			if (fields.size() >= 2 && fields[0] == "cell") {
				continue;
			}
		}
		if (fields.size() < 2) {
			throw ParseError("continent file rows need cell and continent columns");
		}
		out[CellId::parse(fields[0])] = fields[1];
	}
	return out;
}

} // namespace pyroseason
