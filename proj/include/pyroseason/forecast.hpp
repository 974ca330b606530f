#pragma once

#include "pyroseason/transform.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pyroseason {

enum class Method { snaive, arima, ets, stlf, tsglm, mlp, linreg };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);
std::vector<Method> parse_methods(std::string_view comma_list);

// Scale a model is fitted on.
enum class Scale {
	transformed, // Box-Cox transformed MA-FC
	counts,      // raw MA-FC counts (tsglm)
	fss          // per-season FSS (linreg)
};

Scale method_scale(Method m);

struct FitConfig {
	std::uint64_t seed = 42;
	int max_iterations = 500;
	double tolerance = 1e-8;
	int mlp_restarts = 20;
	int mlp_epochs = 2000;
	int stl_seasonal_window = 13;
};

class ForecastModel {
public:
	virtual ~ForecastModel() = default;
	virtual Method method() const = 0;
	// Exactly h finite values.
	virtual std::vector<double> predict(int h) const = 0;
	// One-line summary of the fitted model (order, parameters).
	virtual std::string describe() const = 0;
	// False when the optimizer hit its iteration cap; the model is the best
	// point found.
	virtual bool converged() const { return true; }
};

class SnaiveModel final : public ForecastModel {
public:
	static std::unique_ptr<SnaiveModel> fit(std::span<const double> train, int period);
	Method method() const override { return Method::snaive; }
	std::vector<double> predict(int h) const override;
	std::string describe() const override;

private:
	std::vector<double> last_;
};

class LinregModel final : public ForecastModel {
public:
	static std::unique_ptr<LinregModel> fit(std::span<const double> fss_train);
	Method method() const override { return Method::linreg; }
	std::vector<double> predict(int h) const override;
	std::string describe() const override;
	double intercept() const { return intercept_; }
	double slope() const { return slope_; }

private:
	double intercept_ = 0.0;
	double slope_ = 0.0;
	std::size_t n_ = 0;
};

// Dispatches to the method's fit. `train` must be on the method's scale.
std::unique_ptr<ForecastModel> fit_model(Method m, std::span<const double> train, int period, const FitConfig &config);

// Predicts period * seasons values, maps them back to counts (inverse
// Box-Cox for transformed models, bounded by `cap`), clamps at 0 and sums
// each season. For linreg the model already predicts FSS.
struct FssForecast {
	std::vector<double> monthly; // empty for linreg
	std::vector<double> fss;
};

FssForecast forecast_fss(const ForecastModel &model, int seasons, int period, const BoxCoxParams &params, double cap);

} // namespace pyroseason
