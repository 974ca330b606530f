#pragma once

#include <Eigen/Core>
#include <functional>

namespace pyroseason::opt {

struct Options {
	int max_iterations = 500;
	double tolerance = 1e-8; // on the objective
};

struct Result {
	Eigen::VectorXd x;
	double value = 0.0;
	int iterations = 0;
	bool converged = false;
};

using Objective = std::function<double(const Eigen::VectorXd &)>;
using Residuals = std::function<Eigen::VectorXd(const Eigen::VectorXd &)>;

// Nelder-Mead with standard coefficients (1, 2, 0.5, 0.5). Stops when the
// spread of simplex values falls below tolerance * (|f_best| + tolerance).
Result nelder_mead(const Objective &f, const Eigen::VectorXd &x0, double step, const Options &options = {});

// BFGS with central-difference gradients and backtracking line search.
Result bfgs(const Objective &f, const Eigen::VectorXd &x0, const Options &options = {});

// Levenberg-Marquardt on a sum of squares with forward-difference Jacobian.
// `value` is the final sum of squares.
Result levenberg_marquardt(const Residuals &r, const Eigen::VectorXd &x0, const Options &options = {});

Eigen::VectorXd numeric_gradient(const Objective &f, const Eigen::VectorXd &x, double h = 1e-6);

} // namespace pyroseason::opt
