#pragma once

#include "pyroseason/ets.hpp"
#include "pyroseason/forecast.hpp"

#include <memory>
#include <span>
#include <vector>

namespace pyroseason {

struct StlOptions {
	int period = 7;
	int seasonal_window = 13; // odd, >= 7
	int seasonal_degree = 1;  // 0 or 1
	int trend_window = 0;     // 0: smallest odd >= 1.5 * period / (1 - 1.5 / seasonal_window)
	int lowpass_window = 0;   // 0: smallest odd >= period
	int inner_iterations = 2;
};

struct StlDecomposition {
	std::vector<double> seasonal;
	std::vector<double> trend;
	std::vector<double> remainder;
};

// Inner loop of Cleveland et al. (1990) STL without robustness iterations.
StlDecomposition stl_decompose(std::span<const double> y, const StlOptions &options);

// Local polynomial (degree 0 or 1) tricube fit at position x over the points
// (i, y[i]), using the q nearest points. Exposed for testing.
double loess_at(std::span<const double> y, double x, int q, int degree);

class StlfModel final : public ForecastModel {
public:
	static std::unique_ptr<StlfModel> fit(std::span<const double> y, int period, const FitConfig &config);

	Method method() const override { return Method::stlf; }
	std::vector<double> predict(int h) const override;
	std::string describe() const override;
	bool converged() const override { return converged_; }

	const StlDecomposition &decomposition() const { return decomposition_; }
	const ForecastModel &adjusted_model() const { return *adjusted_; }

private:
	StlDecomposition decomposition_;
	std::shared_ptr<ForecastModel> adjusted_;
	std::vector<double> last_season_;
	bool converged_ = true;
};

std::unique_ptr<StlfModel> fit_stlf(std::span<const double> y, int period, const FitConfig &config);

} // namespace pyroseason
