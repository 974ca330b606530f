#pragma once

#include "pyroseason/forecast.hpp"

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pyroseason {

// Poisson log-linear autoregression on raw counts:
//   log lambda_t = b0 + a1 * log(y_{t-1} + 1) + a_s * log(y_{t-s} + 1)
// fitted by maximum likelihood (Newton with step halving). Non-integer
// non-negative inputs are accepted as a quasi-likelihood.
class TsglmModel final : public ForecastModel {
public:
	using Coefficients = std::array<double, 3>; // b0, a1, a_s

	static std::unique_ptr<TsglmModel> fit(std::span<const double> y, int period, const FitConfig &config);

	Method method() const override { return Method::tsglm; }
	std::vector<double> predict(int h) const override;
	std::string describe() const override;

	const Coefficients &coefficients() const { return beta_; }
	double log_likelihood() const { return loglik_; }
	// Poisson log-likelihood (without the log y! term) of the fitted sample
	// at arbitrary coefficients.
	double log_likelihood_at(const Coefficients &beta) const;
	bool all_zero() const { return zero_; }

private:
	int period_ = 7;
	std::vector<double> y_;
	Coefficients beta_{};
	double loglik_ = 0.0;
	bool zero_ = false;
};

std::unique_ptr<TsglmModel> fit_tsglm(std::span<const double> y, int period, const FitConfig &config);

} // namespace pyroseason
