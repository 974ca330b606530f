#pragma once

#include "pyroseason/error.hpp"
#include "pyroseason/forecast.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pyroseason {

// Raised when the chosen model's optimizer stopped at its iteration cap.
// The best point found is still a usable model.
class ConvergenceError : public FitError {
public:
	ConvergenceError(const std::string &what, std::shared_ptr<ForecastModel> best)
	    : FitError(what), best_(std::move(best)) {}
	const std::shared_ptr<ForecastModel> &best_so_far() const { return best_; }

private:
	std::shared_ptr<ForecastModel> best_;
};

enum class Trend { none, additive, damped };

struct EtsSpec {
	Trend trend = Trend::none;
	bool seasonal = false;
	std::string name() const; // e.g. "A,Ad,A"
};

struct EtsParams {
	double alpha = 0.0;
	double beta = 0.0;
	double gamma = 0.0;
	double phi = 1.0;
};

// Additive-error exponential smoothing in state-space form:
//   yhat_t = l + phi*b + s_{t-m};  e_t = y_t - yhat_t
//   l' = l + phi*b + alpha*e;  b' = phi*b + beta*e;  s' = s_{t-m} + gamma*e
// Smoothing parameters maximize the Gaussian likelihood (Nelder-Mead);
// for each candidate parameter vector the initial states are the exact
// least-squares solution, since the errors are affine in them.
class EtsModel final : public ForecastModel {
public:
	static std::unique_ptr<EtsModel> fit(std::span<const double> y, int period, EtsSpec spec, const FitConfig &config);

	Method method() const override { return Method::ets; }
	std::vector<double> predict(int h) const override;
	std::string describe() const override;
	bool converged() const override { return converged_; }

	const EtsSpec &spec() const { return spec_; }
	const EtsParams &params() const { return params_; }
	const std::vector<double> &residuals() const { return residuals_; }
	double log_likelihood() const { return loglik_; }
	double aicc() const { return aicc_; }
	int parameter_count() const { return k_; } // smoothing + free initial states + variance

	// Log-likelihood and AICc recomputed from stored residuals.
	static double log_likelihood(std::span<const double> residuals, double scale);
	static double aicc(double loglik, int k, std::size_t n);

private:
	EtsSpec spec_;
	int period_ = 1;
	EtsParams params_;
	double level_ = 0.0; // final states after the training data
	double trend_ = 0.0;
	std::vector<double> season_; // indexed by (t mod period)
	std::size_t n_ = 0;
	std::vector<double> residuals_;
	double scale_ = 1.0; // mean square of the data, for the variance floor
	double loglik_ = 0.0;
	double aicc_ = 0.0;
	int k_ = 0;
	bool converged_ = true;
};

// AICc selection over {ANN, AAN, ANA, AAA, AAdA}.
std::unique_ptr<EtsModel> fit_ets(std::span<const double> y, int period, const FitConfig &config);

// AICc selection over {ANN, AAN, AAdN}.
std::unique_ptr<EtsModel> fit_ets_nonseasonal(std::span<const double> y, const FitConfig &config);

} // namespace pyroseason
