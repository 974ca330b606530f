#include "pyroseason/tsglm.hpp"

#include "pyroseason/error.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace pyroseason {

namespace {

constexpr double kMaxEta = 700.0; // keeps exp() finite

double design(const std::vector<double> &y, std::size_t t, int j, int period) {
	switch (j) {
	case 0:
		return 1.0;
	case 1:
		return std::log(y[t - 1] + 1.0);
	default:
		return std::log(y[t - static_cast<std::size_t>(period)] + 1.0);
	}
}

} // namespace

double TsglmModel::log_likelihood_at(const Coefficients &beta) const {
	double ll = 0.0;
	for (std::size_t t = static_cast<std::size_t>(period_); t < y_.size(); ++t) {
		double eta = 0.0;
		for (int j = 0; j < 3; ++j) {
			eta += beta[static_cast<std::size_t>(j)] * design(y_, t, j, period_);
		}
		eta = std::min(eta, kMaxEta);
		ll += y_[t] * eta - std::exp(eta);
	}
	return ll;
}

std::unique_ptr<TsglmModel> TsglmModel::fit(std::span<const double> y, int period, const FitConfig &config) {
	if (period < 1) {
		throw ParameterError("period must be positive");
	}
	if (y.size() < 2 * static_cast<std::size_t>(period) + 1) {
		throw InsufficientData("TSGLM needs more than two periods of data");
	}
	for (double v : y) {
		if (!std::isfinite(v) || v < 0.0) {
			throw DomainError("TSGLM requires non-negative counts");
		}
	}
	auto m = std::make_unique<TsglmModel>();
	m->period_ = period;
	m->y_.assign(y.begin(), y.end());

	const auto start = static_cast<std::size_t>(period);
	const auto n = static_cast<Eigen::Index>(y.size() - start);
	Eigen::MatrixXd X(n, 3);
	Eigen::VectorXd Y(n);
	for (Eigen::Index i = 0; i < n; ++i) {
		const auto t = start + static_cast<std::size_t>(i);
		for (int j = 0; j < 3; ++j) {
			X(i, j) = design(m->y_, t, j, period);
		}
		Y[i] = m->y_[t];
	}
	const double ybar = Y.mean();
	if (ybar == 0.0) {
		// The likelihood increases without bound as b0 -> -inf.
		m->zero_ = true;
		m->beta_ = {-kMaxEta, 0.0, 0.0};
		m->loglik_ = 0.0;
		return m;
	}
	Eigen::Vector3d beta(std::log(ybar), 0.0, 0.0);
	auto loglik = [&](const Eigen::Vector3d &b) {
		return m->log_likelihood_at({b[0], b[1], b[2]});
	};
	double ll = loglik(beta);
	bool converged = false;
	for (int it = 0; it < config.max_iterations; ++it) {
		Eigen::VectorXd eta = (X * beta).cwiseMin(kMaxEta);
		Eigen::VectorXd lambda = eta.array().exp();
		Eigen::Vector3d grad = X.transpose() * (Y - lambda);
		Eigen::Matrix3d info = X.transpose() * lambda.asDiagonal() * X;
		// Least-norm step: the lag columns are collinear with the intercept
		// on constant series.
		Eigen::Vector3d step = info.completeOrthogonalDecomposition().solve(grad);
		double scale = 1.0;
		double next = ll;
		Eigen::Vector3d candidate = beta;
		for (int half = 0; half < 40; ++half) {
			candidate = beta + scale * step;
			next = loglik(candidate);
			if (next >= ll) {
				break;
			}
			scale *= 0.5;
		}
		if (!(next >= ll)) {
			converged = true; // no ascent direction left
			break;
		}
		const double gain = next - ll;
		beta = candidate;
		ll = next;
		if (gain <= config.tolerance * (std::abs(ll) + config.tolerance)) {
			converged = true;
			break;
		}
	}
	if (!converged) {
		throw FitError("TSGLM Newton iterations did not converge");
	}
	m->beta_ = {beta[0], beta[1], beta[2]};
	m->loglik_ = ll;
	return m;
}

std::vector<double> TsglmModel::predict(int h) const {
	if (h < 0) {
		throw ParameterError("forecast horizon must be non-negative");
	}
	std::vector<double> out;
	out.reserve(static_cast<std::size_t>(h));
	if (zero_) {
		out.assign(static_cast<std::size_t>(h), 0.0);
		return out;
	}
	std::vector<double> hist = y_;
	for (int k = 0; k < h; ++k) {
		const std::size_t t = hist.size();
		double eta = 0.0;
		for (int j = 0; j < 3; ++j) {
			eta += beta_[static_cast<std::size_t>(j)] * design(hist, t, j, period_);
		}
		const double v = std::exp(std::min(eta, kMaxEta));
		hist.push_back(v);
		out.push_back(v);
	}
	return out;
}

std::string TsglmModel::describe() const {
	std::ostringstream os;
	if (zero_) {
		os << "tsglm(all-zero series)";
	} else {
		os << "tsglm(b0=" << beta_[0] << ", a1=" << beta_[1] << ", a" << period_ << "=" << beta_[2] << ")";
	}
	return os.str();
}

std::unique_ptr<TsglmModel> fit_tsglm(std::span<const double> y, int period, const FitConfig &config) {
	return TsglmModel::fit(y, period, config);
}

} // namespace pyroseason
