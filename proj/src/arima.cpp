#include "pyroseason/arima.hpp"

#include "pyroseason/error.hpp"
#include "pyroseason/ets.hpp"
#include "pyroseason/optimize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace pyroseason {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// |tanh| stays below 1 - 1.7e-6, so no coefficient rounds onto the unit circle.
constexpr double kMaxUnconstrained = 7.0;

double bounded_tanh(double u) {
	return std::tanh(std::clamp(u, -kMaxUnconstrained, kMaxUnconstrained));
}

// Durbin-Levinson map from partial autocorrelations to AR coefficients.
std::vector<double> pacf_to_ar(const double *u, int p) {
	std::vector<double> phi(static_cast<std::size_t>(p)), prev;
	for (int k = 0; k < p; ++k) {
		const double r = bounded_tanh(u[k]);
		prev = phi;
		phi[static_cast<std::size_t>(k)] = r;
		for (int j = 0; j < k; ++j) {
			phi[static_cast<std::size_t>(j)] = prev[static_cast<std::size_t>(j)] - r * prev[static_cast<std::size_t>(k - 1 - j)];
		}
	}
	return phi;
}

struct Coefs {
	std::vector<double> ar, ma;
	double sar = 0.0, sma = 0.0, mu = 0.0;
};

int n_coefs(const ArimaOrder &o) {
	return o.p + o.q + o.P + o.Q + (o.mean ? 1 : 0);
}

Coefs decode(const ArimaOrder &o, const Eigen::VectorXd &u) {
	Coefs c;
	int i = 0;
	c.ar = pacf_to_ar(u.data() + i, o.p);
	i += o.p;
	c.ma = pacf_to_ar(u.data() + i, o.q);
	for (double &v : c.ma) {
		v = -v; // 1 + theta(B) invertible iff 1 - (-theta)(B) stationary
	}
	i += o.q;
	if (o.P) {
		c.sar = bounded_tanh(u[i++]);
	}
	if (o.Q) {
		c.sma = bounded_tanh(u[i++]);
	}
	if (o.mean) {
		c.mu = u[i++];
	}
	return c;
}

// Expanded polynomials: w_t = sum a_i w_{t-i} + e_t + sum b_j e_{t-j}.
struct Poly {
	std::vector<double> a, b;
};

Poly expand(const ArimaOrder &o, const Coefs &c) {
	const int s = o.period;
	Poly p;
	p.a.assign(static_cast<std::size_t>(o.p + s * o.P), 0.0);
	for (int i = 0; i < o.p; ++i) {
		p.a[static_cast<std::size_t>(i)] += c.ar[static_cast<std::size_t>(i)];
	}
	if (o.P) {
		p.a[static_cast<std::size_t>(s - 1)] += c.sar;
		for (int i = 0; i < o.p; ++i) {
			p.a[static_cast<std::size_t>(s + i)] -= c.ar[static_cast<std::size_t>(i)] * c.sar;
		}
	}
	p.b.assign(static_cast<std::size_t>(o.q + s * o.Q), 0.0);
	for (int j = 0; j < o.q; ++j) {
		p.b[static_cast<std::size_t>(j)] += c.ma[static_cast<std::size_t>(j)];
	}
	if (o.Q) {
		p.b[static_cast<std::size_t>(s - 1)] += c.sma;
		for (int j = 0; j < o.q; ++j) {
			p.b[static_cast<std::size_t>(s + j)] += c.ma[static_cast<std::size_t>(j)] * c.sma;
		}
	}
	return p;
}

std::vector<double> difference(std::span<const double> y, const ArimaOrder &o) {
	std::vector<double> w(y.begin(), y.end());
	for (int k = 0; k < o.d; ++k) {
		for (std::size_t t = w.size(); t-- > 1;) {
			w[t] -= w[t - 1];
		}
		w.erase(w.begin());
	}
	for (int k = 0; k < o.D; ++k) {
		const auto s = static_cast<std::size_t>(o.period);
		for (std::size_t t = w.size(); t-- > s;) {
			w[t] -= w[t - s];
		}
		w.erase(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(std::min(s, w.size())));
	}
	return w;
}

int lost(const ArimaOrder &o) {
	return o.d + o.period * o.D;
}

// CSS residuals of w; entries before the AR order are zero.
std::vector<double> css_residuals(const std::vector<double> &w, const Poly &p, double mu) {
	const std::size_t pa = p.a.size(), qa = p.b.size();
	std::vector<double> e(w.size(), 0.0);
	for (std::size_t t = pa; t < w.size(); ++t) {
		double v = w[t] - mu;
		for (std::size_t i = 0; i < pa; ++i) {
			v -= p.a[i] * (w[t - 1 - i] - mu);
		}
		for (std::size_t j = 0; j < qa && j < t; ++j) {
			v -= p.b[j] * e[t - 1 - j];
		}
		e[t] = v;
	}
	return e;
}

struct Likelihood {
	double loglik = -kInf;
	double sigma2 = 0.0;
	std::size_t n = 0;
};

// T * M for the companion transition T (first column a, ones above the
// diagonal), in O(r^2).
void companion_times(const Eigen::VectorXd &a, const Eigen::MatrixXd &M, Eigen::MatrixXd &out) {
	const Eigen::Index r = M.rows();
	for (Eigen::Index i = 0; i < r; ++i) {
		out.row(i) = a[i] * M.row(0);
		if (i + 1 < r) {
			out.row(i) += M.row(i + 1);
		}
	}
}

// Exact Gaussian likelihood of w (Harvey state-space form, stationary
// initial covariance by the doubling algorithm), concentrated over sigma^2,
// counting only innovations from index `from` on.
Likelihood exact_likelihood(const std::vector<double> &w, const Poly &p, double mu, std::size_t from) {
	const auto pa = static_cast<int>(p.a.size());
	const auto qa = static_cast<int>(p.b.size());
	const int r = std::max(pa, qa + 1);
	Eigen::VectorXd acol = Eigen::VectorXd::Zero(r);
	for (int i = 0; i < pa; ++i) {
		acol[i] = p.a[static_cast<std::size_t>(i)];
	}
	Eigen::VectorXd R = Eigen::VectorXd::Zero(r);
	R[0] = 1.0;
	for (int j = 0; j < qa; ++j) {
		R[j + 1] = p.b[static_cast<std::size_t>(j)];
	}
	const Eigen::MatrixXd RR = R * R.transpose();

	Eigen::MatrixXd P = RR;
	Eigen::MatrixXd A(r, r), tmp(r, r), next(r, r);
	companion_times(acol, Eigen::MatrixXd::Identity(r, r), A);
	for (int it = 0; it < 64; ++it) {
		tmp = A.lazyProduct(P);
		P += tmp.lazyProduct(A.transpose());
		tmp = A.lazyProduct(A);
		A = tmp;
		if (!A.allFinite()) {
			return {};
		}
		if (A.cwiseAbs().maxCoeff() < 1e-14) {
			break;
		}
	}
	Eigen::VectorXd a = Eigen::VectorXd::Zero(r);
	Eigen::VectorXd k(r);
	double sumlog = 0.0, ssq = 0.0;
	std::size_t used = 0;
	bool steady = false; // covariance recursion has converged
	for (std::size_t t = 0; t < w.size(); ++t) {
		const double v = (w[t] - mu) - a[0];
		const double F = P(0, 0);
		if (!(F > 0.0) || !std::isfinite(F)) {
			return {};
		}
		if (t >= from) {
			sumlog += std::log(F);
			ssq += v * v / F;
			++used;
		}
		if (!steady) {
			k = P.col(0) / F;
		}
		const Eigen::VectorXd upd = a + k * v;
		for (int i = 0; i < r; ++i) {
			a[i] = acol[i] * upd[0] + (i + 1 < r ? upd[i + 1] : 0.0);
		}
		if (!steady) {
			P -= k * P.row(0);
			companion_times(acol, P, tmp);
			companion_times(acol, tmp.transpose(), next);
			next += RR;
			steady = (next - P).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, P.cwiseAbs().maxCoeff());
			P = next;
		}
	}
	if (used == 0) {
		return {};
	}
	Likelihood out;
	out.n = used;
	out.sigma2 = std::max(ssq / static_cast<double>(used), 1e-300);
	out.loglik = -0.5 * (static_cast<double>(used) * (std::log(2.0 * std::numbers::pi * out.sigma2) + 1.0) + sumlog);
	return out;
}

// True when every root of 1 - sum c_i B^i lies outside |z| = margin.
bool roots_outside(const std::vector<double> &c, double margin) {
	const auto n = static_cast<Eigen::Index>(c.size());
	if (n == 0) {
		return true;
	}
	Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
	for (Eigen::Index i = 0; i < n; ++i) {
		C(0, i) = c[static_cast<std::size_t>(i)];
	}
	for (Eigen::Index i = 1; i < n; ++i) {
		C(i, i - 1) = 1.0;
	}
	const Eigen::VectorXcd eig = C.eigenvalues();
	return eig.cwiseAbs().maxCoeff() < 1.0 / margin;
}

bool coefs_conditioned(const ArimaOrder &o, const Coefs &c) {
	const Poly p = expand(o, c);
	std::vector<double> neg_b(p.b.size());
	for (std::size_t j = 0; j < p.b.size(); ++j) {
		neg_b[j] = -p.b[j];
	}
	return roots_outside(p.a, 1.01) && roots_outside(neg_b, 1.01);
}

double aicc_of(double loglik, int k, std::size_t n) {
	return EtsModel::aicc(loglik, k, n);
}

struct CssFit {
	ArimaOrder order;
	Eigen::VectorXd u;
	double aicc = kInf;
};

// CSS fit scored over w indices >= from.
CssFit css_fit(const std::vector<double> &w, const ArimaOrder &o, std::size_t from, const FitConfig &config) {
	CssFit f;
	f.order = o;
	const int nc = n_coefs(o);
	Eigen::VectorXd u0 = Eigen::VectorXd::Zero(nc);
	if (o.mean) {
		double m = 0.0;
		for (double v : w) {
			m += v;
		}
		u0[nc - 1] = m / static_cast<double>(w.size());
	}
	const std::size_t pa = static_cast<std::size_t>(o.p + o.period * o.P);
	const std::size_t start = std::max(from, pa);
	if (start >= w.size()) {
		return f;
	}
	const auto m = static_cast<Eigen::Index>(w.size() - start);
	auto residuals = [&](const Eigen::VectorXd &u) {
		const Coefs c = decode(o, u);
		const auto e = css_residuals(w, expand(o, c), c.mu);
		Eigen::VectorXd r(m);
		for (Eigen::Index i = 0; i < m; ++i) {
			r[i] = e[start + static_cast<std::size_t>(i)];
		}
		return r;
	};
	if (nc == 0) {
		f.u = u0;
	} else {
		f.u = opt::levenberg_marquardt(residuals, u0, {config.max_iterations, config.tolerance}).x;
	}
	const double sse = std::max(residuals(f.u).squaredNorm(), 1e-300);
	const double n = static_cast<double>(m);
	const double loglik = -0.5 * n * (std::log(2.0 * std::numbers::pi * sse / n) + 1.0);
	f.aicc = aicc_of(loglik, nc + 1, static_cast<std::size_t>(m));
	return f;
}

} // namespace

std::string ArimaOrder::name() const {
	std::ostringstream os;
	os << "ARIMA(" << p << "," << d << "," << q << ")(" << P << "," << D << "," << Q << ")[" << period << "]";
	if (mean) {
		os << " with mean";
	}
	return os.str();
}

std::unique_ptr<ArimaModel> ArimaModel::fit_order(std::span<const double> y, const ArimaOrder &order,
                                                  const FitConfig &config, int condition) {
	if (order.p < 0 || order.p > 2 || order.q < 0 || order.q > 2 || order.P < 0 || order.P > 1 || order.Q < 0 ||
	    order.Q > 1 || order.d < 0 || order.d > 1 || order.D < 0 || order.D > 1 || order.period < 1) {
		throw ParameterError("unsupported ARIMA order " + order.name());
	}
	ArimaOrder o = order;
	if (o.d + o.D > 0) {
		o.mean = false;
	}
	const int cond = condition < 0 ? lost(o) : std::max(condition, lost(o));
	const auto w = difference(y, o);
	const auto from = static_cast<std::size_t>(cond - lost(o));
	if (w.size() <= from + static_cast<std::size_t>(n_coefs(o)) + 2) {
		throw InsufficientData("series too short for " + o.name());
	}
	// CSS over the same sample as the exact likelihood gives the start.
	const std::size_t pa = static_cast<std::size_t>(o.p + o.period * o.P);
	const CssFit css = css_fit(w, o, std::min(from + pa, w.size() - 1), config);
	Eigen::VectorXd u = css.u.size() == n_coefs(o) ? css.u : Eigen::VectorXd(Eigen::VectorXd::Zero(n_coefs(o)));

	auto negll = [&](const Eigen::VectorXd &x) {
		const Coefs c = decode(o, x);
		const auto l = exact_likelihood(w, expand(o, c), c.mu, from);
		return std::isfinite(l.loglik) ? -l.loglik : kInf;
	};
	bool converged = true;
	if (n_coefs(o) > 0) {
		const auto res = opt::bfgs(negll, u, {config.max_iterations, config.tolerance});
		if (res.value <= negll(u)) {
			u = res.x;
		}
		converged = res.converged;
	}
	const Coefs c = decode(o, u);
	const auto l = exact_likelihood(w, expand(o, c), c.mu, from);
	if (!std::isfinite(l.loglik)) {
		throw FitError("ARIMA likelihood not finite for " + o.name());
	}
	auto m = std::make_unique<ArimaModel>();
	m->order_ = o;
	m->ar_ = c.ar;
	m->ma_ = c.ma;
	m->sar_ = c.sar;
	m->sma_ = c.sma;
	m->mu_ = c.mu;
	m->sigma2_ = l.sigma2;
	m->loglik_ = l.loglik;
	m->k_ = n_coefs(o) + 1;
	m->n_used_ = l.n;
	m->aicc_ = aicc_of(l.loglik, m->k_, l.n);
	m->condition_ = cond;
	m->y_.assign(y.begin(), y.end());
	m->converged_ = converged;
	return m;
}

bool ArimaModel::well_conditioned() const {
	if (fallback_) {
		return true;
	}
	return coefs_conditioned(order_, Coefs{ar_, ma_, sar_, sma_, mu_});
}

std::vector<double> ArimaModel::psi_weights(int k) const {
	const Poly p = expand(order_, Coefs{ar_, ma_, sar_, sma_, mu_});
	std::vector<double> psi(static_cast<std::size_t>(std::max(k, 0)) + 1, 0.0);
	psi[0] = 1.0;
	for (std::size_t j = 1; j < psi.size(); ++j) {
		double v = j <= p.b.size() ? p.b[j - 1] : 0.0;
		for (std::size_t i = 1; i <= std::min(j, p.a.size()); ++i) {
			v += p.a[i - 1] * psi[j - i];
		}
		psi[j] = v;
	}
	return psi;
}

double ArimaModel::log_likelihood_at(std::span<const double> y) const {
	if (fallback_) {
		return loglik_;
	}
	const auto w = difference(y, order_);
	Coefs c{ar_, ma_, sar_, sma_, mu_};
	const auto from = static_cast<std::size_t>(condition_ - lost(order_));
	return exact_likelihood(w, expand(order_, c), c.mu, from).loglik;
}

std::unique_ptr<ArimaModel> ArimaModel::snaive_fallback(std::span<const double> y, int period) {
	auto m = std::make_unique<ArimaModel>();
	m->order_ = {0, 0, 0, 0, 1, 0, period, false};
	m->fallback_ = true;
	m->y_.assign(y.begin(), y.end());
	return m;
}

std::vector<double> ArimaModel::predict(int h) const {
	if (h < 0) {
		throw ParameterError("forecast horizon must be non-negative");
	}
	const std::size_t n = y_.size();
	std::vector<double> out;
	out.reserve(static_cast<std::size_t>(h));
	if (fallback_) {
		const auto s = static_cast<std::size_t>(order_.period);
		for (int t = 0; t < h; ++t) {
			out.push_back(y_[n - s + static_cast<std::size_t>(t) % s]);
		}
		return out;
	}
	Coefs c{ar_, ma_, sar_, sma_, mu_};
	const Poly p = expand(order_, c);
	const auto w = difference(y_, order_);
	const auto e = css_residuals(w, p, mu_);
	// Full autoregressive polynomial including the differencing operators.
	std::vector<double> full(p.a.size() + 1, 0.0);
	full[0] = 1.0;
	for (std::size_t i = 0; i < p.a.size(); ++i) {
		full[i + 1] = -p.a[i];
	}
	auto multiply = [&](int lag) {
		std::vector<double> next(full.size() + static_cast<std::size_t>(lag), 0.0);
		for (std::size_t i = 0; i < full.size(); ++i) {
			next[i] += full[i];
			next[i + static_cast<std::size_t>(lag)] -= full[i];
		}
		full = std::move(next);
	};
	for (int k = 0; k < order_.d; ++k) {
		multiply(1);
	}
	for (int k = 0; k < order_.D; ++k) {
		multiply(order_.period);
	}
	std::vector<double> hist(y_.begin(), y_.end());
	std::vector<double> err(n, 0.0);
	const std::size_t off = n - w.size();
	for (std::size_t t = 0; t < w.size(); ++t) {
		err[off + t] = e[t];
	}
	for (int k = 0; k < h; ++k) {
		const std::size_t t = hist.size();
		double v = mu_;
		for (std::size_t i = 1; i < full.size(); ++i) {
			if (t >= i) {
				v -= full[i] * (hist[t - i] - mu_);
			}
		}
		for (std::size_t j = 0; j < p.b.size(); ++j) {
			if (t >= j + 1 && t - 1 - j < n) {
				v += p.b[j] * err[t - 1 - j];
			}
		}
		hist.push_back(v);
		out.push_back(v);
	}
	return out;
}

std::string ArimaModel::describe() const {
	if (fallback_) {
		return "ARIMA fallback: seasonal naive";
	}
	std::ostringstream os;
	os << order_.name();
	for (std::size_t i = 0; i < ar_.size(); ++i) {
		os << " ar" << i + 1 << "=" << ar_[i];
	}
	for (std::size_t i = 0; i < ma_.size(); ++i) {
		os << " ma" << i + 1 << "=" << ma_[i];
	}
	if (order_.P) {
		os << " sar1=" << sar_;
	}
	if (order_.Q) {
		os << " sma1=" << sma_;
	}
	if (order_.mean) {
		os << " mean=" << mu_;
	}
	os << " aicc=" << aicc_;
	return os.str();
}

std::unique_ptr<ForecastModel> fit_arima(std::span<const double> y, int period, const FitConfig &config) {
	if (period < 1 || y.size() < 3 * static_cast<std::size_t>(period)) {
		throw InsufficientData("ARIMA needs at least three full periods");
	}
	// Every candidate is scored on observations after `cond`, so models with
	// different differencing orders compete on the same data.
	const int cond = 1 + period;
	const int max_ar = 2 + period;
	std::vector<CssFit> ranked;
	for (int D = 0; D <= 1; ++D) {
		for (int d = 0; d <= 1; ++d) {
			for (int P = 0; P <= 1; ++P) {
				for (int Q = 0; Q <= 1; ++Q) {
					for (int p = 0; p <= 2; ++p) {
						for (int q = 0; q <= 2; ++q) {
							ArimaOrder o{p, d, q, P, D, Q, period, d + D == 0};
							const auto w = difference(y, o);
							const auto from = static_cast<std::size_t>(cond + max_ar - lost(o));
							if (w.size() <= from + static_cast<std::size_t>(n_coefs(o)) + 2) {
								continue;
							}
							auto f = css_fit(w, o, from, config);
							if (std::isfinite(f.aicc) && coefs_conditioned(o, decode(o, f.u))) {
								ranked.push_back(std::move(f));
							}
						}
					}
				}
			}
		}
	}
	std::stable_sort(ranked.begin(), ranked.end(), [](const CssFit &a, const CssFit &b) { return a.aicc < b.aicc; });
	std::unique_ptr<ArimaModel> best;
	constexpr int kMaxAttempts = 1000;
	int refined = 0, attempts = 0;
	for (const auto &f : ranked) {
		if (refined == 3 || attempts == kMaxAttempts) {
			break;
		}
		++attempts;
		std::unique_ptr<ArimaModel> m;
		try {
			m = ArimaModel::fit_order(y, f.order, config, cond);
		} catch (const Error &) {
			continue;
		}
		if (!m->well_conditioned()) {
			continue;
		}
		++refined;
		if (!best || m->aicc() < best->aicc()) {
			best = std::move(m);
		}
	}
	if (!best) {
		return ArimaModel::snaive_fallback(y, period);
	}
	if (!best->converged()) {
		std::shared_ptr<ForecastModel> keep(std::move(best));
		throw ConvergenceError("ARIMA optimizer reached its iteration limit", keep);
	}
	return best;
}

} // namespace pyroseason
