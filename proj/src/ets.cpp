#include "pyroseason/ets.hpp"

#include "pyroseason/optimize.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace pyroseason {

namespace {

constexpr double kLo = 1e-4;
constexpr double kHi = 0.9999;
constexpr double kPhiLo = 0.8;
constexpr double kPhiHi = 0.98;

double logistic(double u) {
	return 1.0 / (1.0 + std::exp(-u));
}

double logit(double p) {
	return std::log(p / (1.0 - p));
}

struct Layout {
	EtsSpec spec;
	int period = 1;
	int n_params() const {
		return 1 + (spec.trend != Trend::none) + spec.seasonal + (spec.trend == Trend::damped);
	}
	// Free initial states: level, trend, m-1 seasonal (last one fixed by sum-zero).
	int n_states() const { return 1 + (spec.trend != Trend::none) + (spec.seasonal ? period - 1 : 0); }
};

EtsParams decode(const Layout &lay, const Eigen::VectorXd &u) {
	EtsParams p;
	int i = 0;
	p.alpha = kLo + (kHi - kLo) * logistic(u[i++]);
	if (lay.spec.trend != Trend::none) {
		p.beta = kLo + (p.alpha - kLo) * logistic(u[i++]);
	}
	if (lay.spec.seasonal) {
		p.gamma = kLo + (1.0 - p.alpha - kLo) * logistic(u[i++]);
	}
	p.phi = lay.spec.trend == Trend::damped ? kPhiLo + (kPhiHi - kPhiLo) * logistic(u[i++]) : 1.0;
	return p;
}

struct State {
	double level = 0.0;
	double trend = 0.0;
	std::vector<double> season;
};

// Runs the filter; writes one-step errors into e and returns the final state.
State filter(const Layout &lay, const EtsParams &p, std::span<const double> y, const Eigen::VectorXd &x0,
             double *e, bool with_data) {
	State s;
	const bool has_trend = lay.spec.trend != Trend::none;
	s.level = x0[0];
	s.trend = has_trend ? x0[1] : 0.0;
	const int m = lay.period;
	if (lay.spec.seasonal) {
		s.season.assign(static_cast<std::size_t>(m), 0.0);
		const int off = has_trend ? 2 : 1;
		double sum = 0.0;
		for (int j = 0; j < m - 1; ++j) {
			s.season[static_cast<std::size_t>(j)] = x0[off + j];
			sum += x0[off + j];
		}
		s.season[static_cast<std::size_t>(m - 1)] = -sum;
	}
	for (std::size_t t = 0; t < y.size(); ++t) {
		double *sj = lay.spec.seasonal ? &s.season[t % static_cast<std::size_t>(m)] : nullptr;
		const double damped = p.phi * s.trend;
		const double yhat = s.level + damped + (sj ? *sj : 0.0);
		const double err = (with_data ? y[t] : 0.0) - yhat;
		e[t] = err;
		s.level = s.level + damped + p.alpha * err;
		if (has_trend) {
			s.trend = damped + p.beta * err;
		}
		if (sj) {
			*sj += p.gamma * err;
		}
	}
	return s;
}

// Least-squares initial states for fixed smoothing parameters.
Eigen::VectorXd initial_states(const Layout &lay, const EtsParams &p, std::span<const double> y, double *sse) {
	const int ns = lay.n_states();
	const auto n = static_cast<Eigen::Index>(y.size());
	Eigen::VectorXd base(n);
	const Eigen::VectorXd zero = Eigen::VectorXd::Zero(ns);
	filter(lay, p, y, zero, base.data(), true);
	Eigen::MatrixXd cols(n, ns);
	for (int j = 0; j < ns; ++j) {
		Eigen::VectorXd unit = Eigen::VectorXd::Zero(ns);
		unit[j] = 1.0;
		filter(lay, p, y, unit, cols.col(j).data(), false);
	}
	Eigen::VectorXd x0 = cols.colPivHouseholderQr().solve(-base);
	if (!x0.allFinite()) {
		x0 = cols.completeOrthogonalDecomposition().solve(-base);
	}
	if (sse) {
		*sse = (base + cols * x0).squaredNorm();
	}
	return x0;
}

struct Candidate {
	std::unique_ptr<EtsModel> model;
};

double mean_square(std::span<const double> y) {
	double s = 0.0;
	for (double v : y) {
		s += v * v;
	}
	return y.empty() ? 1.0 : std::max(1.0, s / static_cast<double>(y.size()));
}

} // namespace

std::string EtsSpec::name() const {
	std::string t = trend == Trend::none ? "N" : trend == Trend::additive ? "A" : "Ad";
	return "A," + t + "," + (seasonal ? "A" : "N");
}

double EtsModel::log_likelihood(std::span<const double> residuals, double scale) {
	const double n = static_cast<double>(residuals.size());
	double sse = 0.0;
	for (double r : residuals) {
		sse += r * r;
	}
	// Floor keeps exact fits finite; relative to the data's magnitude.
	sse = std::max(sse, n * 1e-20 * scale);
	return -0.5 * n * (std::log(2.0 * std::numbers::pi * sse / n) + 1.0);
}

double EtsModel::aicc(double loglik, int k, std::size_t n) {
	const double nd = static_cast<double>(n);
	const double kd = static_cast<double>(k);
	if (nd - kd - 1.0 <= 0.0) {
		return std::numeric_limits<double>::infinity();
	}
	return -2.0 * loglik + 2.0 * kd + 2.0 * kd * (kd + 1.0) / (nd - kd - 1.0);
}

std::unique_ptr<EtsModel> EtsModel::fit(std::span<const double> y, int period, EtsSpec spec, const FitConfig &config) {
	if (spec.seasonal && (period < 2 || y.size() < 2 * static_cast<std::size_t>(period))) {
		throw InsufficientData("seasonal ETS needs at least two full periods");
	}
	if (y.size() < 3) {
		throw InsufficientData("ETS needs at least 3 observations");
	}
	const Layout lay{spec, spec.seasonal ? period : 1};
	const double scale = mean_square(y);
	const double floor = static_cast<double>(y.size()) * 1e-20 * scale;
	auto objective = [&](const Eigen::VectorXd &u) {
		double sse = 0.0;
		initial_states(lay, decode(lay, u), y, &sse);
		if (!std::isfinite(sse)) {
			return std::numeric_limits<double>::infinity();
		}
		return static_cast<double>(y.size()) * std::log(std::max(sse, floor));
	};

	Eigen::VectorXd u0(lay.n_params());
	int i = 0;
	u0[i++] = logit(0.2);
	if (spec.trend != Trend::none) {
		u0[i++] = logit(0.1);
	}
	if (spec.seasonal) {
		u0[i++] = logit(0.1);
	}
	if (spec.trend == Trend::damped) {
		u0[i++] = logit((0.95 - kPhiLo) / (kPhiHi - kPhiLo));
	}
	opt::Options o{config.max_iterations, config.tolerance};
	auto res = opt::nelder_mead(objective, u0, 1.0, o);
	// One restart from the optimum guards against a collapsed simplex.
	auto again = opt::nelder_mead(objective, res.x, 0.5, o);
	if (again.value <= res.value) {
		again.iterations += res.iterations;
		res = again;
	}

	auto model = std::make_unique<EtsModel>();
	model->spec_ = spec;
	model->period_ = lay.period;
	model->params_ = decode(lay, res.x);
	model->converged_ = res.converged;
	model->scale_ = scale;
	model->n_ = y.size();
	const Eigen::VectorXd x0 = initial_states(lay, model->params_, y, nullptr);
	model->residuals_.resize(y.size());
	const State st = filter(lay, model->params_, y, x0, model->residuals_.data(), true);
	model->level_ = st.level;
	model->trend_ = st.trend;
	model->season_ = st.season;
	model->k_ = lay.n_params() + lay.n_states() + 1;
	model->loglik_ = log_likelihood(model->residuals_, scale);
	model->aicc_ = aicc(model->loglik_, model->k_, y.size());
	return model;
}

std::vector<double> EtsModel::predict(int h) const {
	if (h < 0) {
		throw ParameterError("forecast horizon must be non-negative");
	}
	std::vector<double> out;
	out.reserve(static_cast<std::size_t>(h));
	double damp = 0.0, pw = 1.0;
	for (int k = 1; k <= h; ++k) {
		pw *= params_.phi;
		damp += pw;
		double v = level_ + (spec_.trend != Trend::none ? damp * trend_ : 0.0);
		if (spec_.seasonal) {
			v += season_[(n_ + static_cast<std::size_t>(k) - 1) % static_cast<std::size_t>(period_)];
		}
		out.push_back(v);
	}
	return out;
}

std::string EtsModel::describe() const {
	std::ostringstream os;
	os << "ETS(" << spec_.name() << ") alpha=" << params_.alpha;
	if (spec_.trend != Trend::none) {
		os << " beta=" << params_.beta;
	}
	if (spec_.seasonal) {
		os << " gamma=" << params_.gamma;
	}
	if (spec_.trend == Trend::damped) {
		os << " phi=" << params_.phi;
	}
	os << " aicc=" << aicc_;
	return os.str();
}

namespace {

std::unique_ptr<EtsModel> select(std::span<const double> y, int period, const std::vector<EtsSpec> &specs,
                                 const FitConfig &config) {
	std::unique_ptr<EtsModel> best;
	for (const auto &spec : specs) {
		std::unique_ptr<EtsModel> m;
		try {
			m = EtsModel::fit(y, period, spec, config);
		} catch (const InsufficientData &) {
			continue;
		}
		if (!std::isfinite(m->aicc())) {
			continue;
		}
		if (!best || m->aicc() < best->aicc()) {
			best = std::move(m);
		}
	}
	if (!best) {
		throw InsufficientData("no ETS candidate could be fitted");
	}
	if (!best->converged()) {
		std::shared_ptr<ForecastModel> keep(std::move(best));
		throw ConvergenceError("ETS optimizer reached its iteration limit", keep);
	}
	return best;
}

} // namespace

std::unique_ptr<EtsModel> fit_ets(std::span<const double> y, int period, const FitConfig &config) {
	return select(y, period,
	              {{Trend::none, false},
	               {Trend::additive, false},
	               {Trend::none, true},
	               {Trend::additive, true},
	               {Trend::damped, true}},
	              config);
}

std::unique_ptr<EtsModel> fit_ets_nonseasonal(std::span<const double> y, const FitConfig &config) {
	return select(y, 1, {{Trend::none, false}, {Trend::additive, false}, {Trend::damped, false}}, config);
}

} // namespace pyroseason
