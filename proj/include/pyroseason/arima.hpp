#pragma once

#include "pyroseason/forecast.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pyroseason {

struct ArimaOrder {
	int p = 0, d = 0, q = 0;
	int P = 0, D = 0, Q = 0;
	int period = 1;
	bool mean = false; // only meaningful when d + D == 0
	std::string name() const;
};

// Seasonal ARIMA
//   (1 - phi(B))(1 - Phi B^s) (1-B)^d (1-B^s)^D (y_t - mu) = (1 + theta(B))(1 + Theta B^s) e_t
// with P, Q <= 1. Coefficients are parametrized through partial
// autocorrelations so every candidate is stationary and invertible.
class ArimaModel final : public ForecastModel {
public:
	// CSS estimate refined by maximizing the exact Gaussian likelihood
	// (Kalman filter). The likelihood conditions on the first `condition`
	// observations; -1 means d + s*D.
	static std::unique_ptr<ArimaModel> fit_order(std::span<const double> y, const ArimaOrder &order,
	                                             const FitConfig &config, int condition = -1);

	Method method() const override { return Method::arima; }
	std::vector<double> predict(int h) const override;
	std::string describe() const override;
	bool converged() const override { return converged_; }

	const ArimaOrder &order() const { return order_; }
	const std::vector<double> &ar() const { return ar_; }
	const std::vector<double> &ma() const { return ma_; }
	double seasonal_ar() const { return sar_; }
	double seasonal_ma() const { return sma_; }
	double mean() const { return mu_; }
	double sigma2() const { return sigma2_; }
	double log_likelihood() const { return loglik_; }
	double aicc() const { return aicc_; }
	int parameter_count() const { return k_; } // coefficients + mean + variance
	std::size_t observations() const { return n_used_; }
	bool is_fallback() const { return fallback_; }
	// AR and MA roots all at least 1.01 outside the unit circle.
	bool well_conditioned() const;

	// Impulse response psi_0..psi_k of the stationary ARMA part.
	std::vector<double> psi_weights(int k) const;

	// Exact log-likelihood of y under the stored coefficients.
	double log_likelihood_at(std::span<const double> y) const;

	static std::unique_ptr<ArimaModel> snaive_fallback(std::span<const double> y, int period);

private:
	ArimaOrder order_;
	std::vector<double> ar_, ma_;
	double sar_ = 0.0, sma_ = 0.0, mu_ = 0.0;
	double sigma2_ = 0.0, loglik_ = 0.0, aicc_ = 0.0;
	int k_ = 0;
	int condition_ = 0;
	std::size_t n_used_ = 0;
	std::vector<double> y_;
	bool converged_ = true;
	bool fallback_ = false;
};

// Grid over p, q in {0,1,2}, d, D, P, Q in {0,1} at the given period; mean
// term only when d + D == 0. Candidates are ranked by CSS AICc on a common
// conditioning sample; going down that ranking, the first three (of at most twelve tried) whose
// refined AR and MA roots stay outside 1.01 are re-ranked by exact AICc.
// Falls back to seasonal naive when no candidate qualifies.
std::unique_ptr<ForecastModel> fit_arima(std::span<const double> y, int period, const FitConfig &config);

} // namespace pyroseason
