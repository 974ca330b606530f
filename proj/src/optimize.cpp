#include "pyroseason/optimize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace pyroseason::opt {

namespace {

double finite_or_inf(double v) {
	return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

} // namespace

Result nelder_mead(const Objective &f, const Eigen::VectorXd &x0, double step, const Options &options) {
	const auto n = x0.size();
	std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n + 1), x0);
	std::vector<double> val(static_cast<std::size_t>(n + 1));
	for (Eigen::Index i = 0; i < n; ++i) {
		pts[static_cast<std::size_t>(i + 1)][i] += step;
	}
	for (std::size_t i = 0; i < pts.size(); ++i) {
		val[i] = finite_or_inf(f(pts[i]));
	}
	std::vector<std::size_t> order(pts.size());
	Result res;
	for (res.iterations = 0; res.iterations < options.max_iterations; ++res.iterations) {
		std::iota(order.begin(), order.end(), 0);
		std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
		const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];
		if (std::isfinite(val[worst]) &&
		    val[worst] - val[best] <= options.tolerance * (std::abs(val[best]) + options.tolerance)) {
			res.converged = true;
			break;
		}
		Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
		for (std::size_t i = 0; i + 1 < order.size(); ++i) {
			centroid += pts[order[i]];
		}
		centroid /= static_cast<double>(n);
		const Eigen::VectorXd xr = centroid + (centroid - pts[worst]);
		const double fr = finite_or_inf(f(xr));
		if (fr < val[best]) {
			const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[worst]);
			const double fe = finite_or_inf(f(xe));
			if (fe < fr) {
				pts[worst] = xe;
				val[worst] = fe;
			} else {
				pts[worst] = xr;
				val[worst] = fr;
			}
			continue;
		}
		if (fr < val[second]) {
			pts[worst] = xr;
			val[worst] = fr;
			continue;
		}
		const bool outside = fr < val[worst];
		const Eigen::VectorXd xc =
		    outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid)) : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
		const double fc = finite_or_inf(f(xc));
		if (fc < (outside ? fr : val[worst])) {
			pts[worst] = xc;
			val[worst] = fc;
			continue;
		}
		for (std::size_t i = 0; i < pts.size(); ++i) {
			if (i != best) {
				pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
				val[i] = finite_or_inf(f(pts[i]));
			}
		}
	}
	const auto it = std::min_element(val.begin(), val.end());
	res.x = pts[static_cast<std::size_t>(it - val.begin())];
	res.value = *it;
	return res;
}

Eigen::VectorXd numeric_gradient(const Objective &f, const Eigen::VectorXd &x, double h) {
	Eigen::VectorXd g(x.size());
	Eigen::VectorXd xp = x;
	for (Eigen::Index i = 0; i < x.size(); ++i) {
		const double hi = h * std::max(1.0, std::abs(x[i]));
		xp[i] = x[i] + hi;
		const double fp = f(xp);
		xp[i] = x[i] - hi;
		const double fm = f(xp);
		xp[i] = x[i];
		g[i] = (fp - fm) / (2.0 * hi);
	}
	return g;
}

Result bfgs(const Objective &f, const Eigen::VectorXd &x0, const Options &options) {
	const auto n = x0.size();
	Result res;
	res.x = x0;
	res.value = f(x0);
	if (!std::isfinite(res.value)) {
		return res;
	}
	Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
	Eigen::VectorXd g = numeric_gradient(f, res.x);
	for (res.iterations = 0; res.iterations < options.max_iterations; ++res.iterations) {
		if (!g.allFinite()) {
			break;
		}
		Eigen::VectorXd d = -h * g;
		if (g.dot(d) >= 0.0) {
			h.setIdentity();
			d = -g;
		}
		double t = 1.0;
		double fn = 0.0;
		Eigen::VectorXd xn;
		bool moved = false;
		for (int k = 0; k < 40; ++k) {
			xn = res.x + t * d;
			fn = f(xn);
			if (std::isfinite(fn) && fn <= res.value + 1e-4 * t * g.dot(d)) {
				moved = true;
				break;
			}
			t *= 0.5;
		}
		if (!moved) {
			res.converged = true; // no descent possible at this resolution
			break;
		}
		const double prev = res.value;
		const Eigen::VectorXd gn = numeric_gradient(f, xn);
		const Eigen::VectorXd s = xn - res.x;
		const Eigen::VectorXd y = gn - g;
		res.x = xn;
		res.value = fn;
		g = gn;
		if (std::abs(prev - fn) <= options.tolerance * (std::abs(fn) + options.tolerance)) {
			res.converged = true;
			break;
		}
		const double sy = s.dot(y);
		if (sy > 1e-12) {
			const double rho = 1.0 / sy;
			const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
			h = (id - rho * s * y.transpose()) * h * (id - rho * y * s.transpose()) + rho * s * s.transpose();
		}
	}
	return res;
}

Result levenberg_marquardt(const Residuals &r, const Eigen::VectorXd &x0, const Options &options) {
	Result res;
	res.x = x0;
	Eigen::VectorXd e = r(res.x);
	res.value = e.squaredNorm();
	if (!std::isfinite(res.value)) {
		return res;
	}
	const auto n = x0.size();
	double mu = 1e-3;
	for (res.iterations = 0; res.iterations < options.max_iterations; ++res.iterations) {
		Eigen::MatrixXd jac(e.size(), n);
		Eigen::VectorXd xp = res.x;
		for (Eigen::Index i = 0; i < n; ++i) {
			const double h = 1e-7 * std::max(1.0, std::abs(res.x[i]));
			xp[i] = res.x[i] + h;
			jac.col(i) = (r(xp) - e) / h;
			xp[i] = res.x[i];
		}
		const Eigen::MatrixXd jtj = jac.transpose() * jac;
		const Eigen::VectorXd jte = jac.transpose() * e;
		bool improved = false;
		for (int k = 0; k < 20; ++k) {
			Eigen::MatrixXd a = jtj;
			a.diagonal().array() += mu * (jtj.diagonal().array() + 1e-12);
			const Eigen::VectorXd step = a.ldlt().solve(-jte);
			const Eigen::VectorXd xn = res.x + step;
			const Eigen::VectorXd en = r(xn);
			const double sn = en.squaredNorm();
			if (std::isfinite(sn) && sn < res.value) {
				const double prev = res.value;
				res.x = xn;
				e = en;
				res.value = sn;
				mu = std::max(mu / 3.0, 1e-12);
				improved = true;
				if (prev - sn <= options.tolerance * (sn + options.tolerance)) {
					res.converged = true;
				}
				break;
			}
			mu *= 4.0;
		}
		if (!improved) {
			res.converged = true;
			break;
		}
		if (res.converged) {
			break;
		}
	}
	return res;
}

} // namespace pyroseason::opt
