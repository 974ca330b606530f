#include "pyroseason/mlp.hpp"

#include "pyroseason/error.hpp"
#include "pyroseason/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace pyroseason {

namespace mlp {

namespace {

constexpr int kB1 = kHidden * kInputs;
constexpr int kW2 = kB1 + kHidden;
constexpr int kB2 = kW2 + kHidden;

double sigmoid(double x) {
	return 1.0 / (1.0 + std::exp(-x));
}

} // namespace

Dataset make_dataset(std::span<const double> z) {
	Dataset d;
	for (std::size_t t = kInputs; t < z.size(); ++t) {
		for (int k = 1; k <= kInputs; ++k) {
			d.inputs.push_back(z[t - static_cast<std::size_t>(k)]);
		}
		d.targets.push_back(z[t]);
	}
	return d;
}

double forward(std::span<const double> w, const double *x) {
	double out = w[kB2];
	for (int j = 0; j < kHidden; ++j) {
		double a = w[static_cast<std::size_t>(kB1 + j)];
		for (int i = 0; i < kInputs; ++i) {
			a += w[static_cast<std::size_t>(j * kInputs + i)] * x[i];
		}
		out += w[static_cast<std::size_t>(kW2 + j)] * sigmoid(a);
	}
	return out;
}

double sse(std::span<const double> w, const Dataset &data) {
	double s = 0.0;
	for (std::size_t r = 0; r < data.rows(); ++r) {
		const double e = forward(w, &data.inputs[r * kInputs]) - data.targets[r];
		s += e * e;
	}
	return s;
}

double gradient(std::span<const double> w, const Dataset &data, std::span<double> grad) {
	if (w.size() != kWeights || grad.size() != kWeights) {
		throw ParameterError("weight vector has the wrong size");
	}
	std::fill(grad.begin(), grad.end(), 0.0);
	double s = 0.0;
	std::array<double, kHidden> h{};
	for (std::size_t r = 0; r < data.rows(); ++r) {
		const double *x = &data.inputs[r * kInputs];
		double out = w[kB2];
		for (int j = 0; j < kHidden; ++j) {
			double a = w[static_cast<std::size_t>(kB1 + j)];
			for (int i = 0; i < kInputs; ++i) {
				a += w[static_cast<std::size_t>(j * kInputs + i)] * x[i];
			}
			h[static_cast<std::size_t>(j)] = sigmoid(a);
			out += w[static_cast<std::size_t>(kW2 + j)] * h[static_cast<std::size_t>(j)];
		}
		const double e = out - data.targets[r];
		s += e * e;
		const double dout = 2.0 * e;
		grad[kB2] += dout;
		for (int j = 0; j < kHidden; ++j) {
			const double hj = h[static_cast<std::size_t>(j)];
			grad[static_cast<std::size_t>(kW2 + j)] += dout * hj;
			const double da = dout * w[static_cast<std::size_t>(kW2 + j)] * hj * (1.0 - hj);
			grad[static_cast<std::size_t>(kB1 + j)] += da;
			for (int i = 0; i < kInputs; ++i) {
				grad[static_cast<std::size_t>(j * kInputs + i)] += da * x[i];
			}
		}
	}
	return s;
}

std::vector<double> train(std::vector<double> &w, const Dataset &data, int epochs, double rate, double tolerance) {
	std::vector<double> history;
	std::vector<double> grad(kWeights), trial(kWeights);
	double current = gradient(w, data, grad);
	for (int epoch = 0; epoch < epochs; ++epoch) {
		for (int i = 0; i < kWeights; ++i) {
			trial[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] - rate * grad[static_cast<std::size_t>(i)];
		}
		const double next = sse(trial, data);
		if (!(next <= current)) {
			rate *= 0.5;
			if (rate < 1e-12) {
				break;
			}
			continue;
		}
		const double gain = current - next;
		w.swap(trial);
		current = gradient(w, data, grad);
		history.push_back(current);
		rate *= 1.05;
		if (gain <= tolerance * (current + tolerance)) {
			break;
		}
	}
	return history;
}

} // namespace mlp

std::unique_ptr<MlpModel> MlpModel::fit(std::span<const double> y, int period, const FitConfig &config) {
	if (y.size() < 3 * static_cast<std::size_t>(std::max(period, 1)) || y.size() <= mlp::kInputs + 1) {
		throw InsufficientData("MLP needs at least three full periods");
	}
	auto m = std::make_unique<MlpModel>();
	m->y_.assign(y.begin(), y.end());
	m->center_ = stats::mean(y);
	const double sd = stats::sample_sd(y);
	m->scale_ = sd > 0.0 ? sd : 1.0;
	std::vector<double> z(y.size());
	for (std::size_t t = 0; t < y.size(); ++t) {
		z[t] = (y[t] - m->center_) / m->scale_;
	}
	const auto data = mlp::make_dataset(z);

	stats::Rng rng(config.seed);
	double best = std::numeric_limits<double>::infinity();
	for (int restart = 0; restart < std::max(config.mlp_restarts, 1); ++restart) {
		std::vector<double> w(mlp::kWeights);
		for (double &v : w) {
			v = rng.uniform(-0.7, 0.7);
		}
		mlp::train(w, data, config.mlp_epochs, 1e-3, config.tolerance);
		const double s = mlp::sse(w, data);
		if (s < best) {
			best = s;
			m->weights_ = w;
		}
	}
	m->sse_ = best;
	return m;
}

std::vector<double> MlpModel::predict(int h) const {
	if (h < 0) {
		throw ParameterError("forecast horizon must be non-negative");
	}
	std::vector<double> z(y_.size());
	for (std::size_t t = 0; t < y_.size(); ++t) {
		z[t] = (y_[t] - center_) / scale_;
	}
	std::vector<double> out;
	std::array<double, mlp::kInputs> x{};
	for (int k = 0; k < h; ++k) {
		for (int i = 0; i < mlp::kInputs; ++i) {
			x[static_cast<std::size_t>(i)] = z[z.size() - 1 - static_cast<std::size_t>(i)];
		}
		const double v = mlp::forward(weights_, x.data());
		z.push_back(v);
		out.push_back(center_ + scale_ * v);
	}
	return out;
}

std::string MlpModel::describe() const {
	std::ostringstream os;
	os << "mlp(7-5-1, training sse=" << sse_ << ")";
	return os.str();
}

std::unique_ptr<MlpModel> fit_mlp(std::span<const double> y, int period, const FitConfig &config) {
	return MlpModel::fit(y, period, config);
}

} // namespace pyroseason
