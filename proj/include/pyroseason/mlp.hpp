#pragma once

#include "pyroseason/forecast.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pyroseason {

namespace mlp {

inline constexpr int kInputs = 7;
inline constexpr int kHidden = 5;
// Layout: W1 (hidden x inputs, row-major), b1 (hidden), w2 (hidden), b2.
inline constexpr int kWeights = kHidden * kInputs + kHidden + kHidden + 1;

// Lagged design on a standardized series: row t holds z_{t-1}..z_{t-7}.
struct Dataset {
	std::vector<double> inputs; // rows x kInputs
	std::vector<double> targets;
	std::size_t rows() const { return targets.size(); }
};

Dataset make_dataset(std::span<const double> z);

double forward(std::span<const double> w, const double *x);

// Sum of squared errors over the dataset.
double sse(std::span<const double> w, const Dataset &data);

// Analytic gradient of sse by backpropagation; returns sse.
double gradient(std::span<const double> w, const Dataset &data, std::span<double> grad);

// Full-batch gradient descent with an adaptive ("bold driver") step:
// accepted steps grow the rate by 5%, a step that raises the SSE is undone
// and halves the rate. Stops when the relative SSE gain of an accepted step
// falls below `tolerance`. Returns the SSE after every accepted step.
std::vector<double> train(std::vector<double> &w, const Dataset &data, int epochs, double rate, double tolerance);

} // namespace mlp

// 7-5-1 perceptron on lags 1..7, sigmoid hidden units, linear output,
// standardized inputs and targets. Restarts use uniform(-0.7, 0.7) weights
// drawn from the seed; the restart with the lowest training SSE is kept.
class MlpModel final : public ForecastModel {
public:
	static std::unique_ptr<MlpModel> fit(std::span<const double> y, int period, const FitConfig &config);

	Method method() const override { return Method::mlp; }
	std::vector<double> predict(int h) const override;
	std::string describe() const override;

	const std::vector<double> &weights() const { return weights_; }
	double training_sse() const { return sse_; }

private:
	std::vector<double> weights_;
	std::vector<double> y_;
	double center_ = 0.0;
	double scale_ = 1.0;
	double sse_ = 0.0;
};

std::unique_ptr<MlpModel> fit_mlp(std::span<const double> y, int period, const FitConfig &config);

} // namespace pyroseason
