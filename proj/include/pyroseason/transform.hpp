#pragma once

#include "pyroseason/ingest.hpp"
#include "pyroseason/season.hpp"

#include <span>
#include <utility>
#include <vector>

namespace pyroseason {

// Monthly-accumulated counts inside the season windows, season after season.
struct MonthlySeries {
	CellId cell;
	int period = 7; // months per season
	std::vector<double> values;

	std::size_t seasons() const { return period > 0 ? values.size() / static_cast<std::size_t>(period) : 0; }
};

struct BoxCoxParams {
	double lambda = 1.0;
	double shift = 1.0; // added before the transform so zero counts are valid
};

inline constexpr double kLambdaMin = -1.0;
inline constexpr double kLambdaMax = 2.0;

MonthlySeries monthly_accumulate(const DailySeries &s, const SeasonProfile &profile);

std::pair<MonthlySeries, MonthlySeries> split_train_test(const MonthlySeries &m, int train_seasons);

// Guerrero (1993): blocks of `period` consecutive values, r_i = s_i / m_i^(1-l),
// lambda on a 0.01 grid over [-1, 2] minimizing CV(r). Returns 1 when every
// block is constant (the objective is undefined for all lambda).
double guerrero_lambda(std::span<const double> x, int period);

// Coefficient of variation of r_i(lambda); exposed for verification.
double guerrero_objective(std::span<const double> x, int period, double lambda);

double boxcox(double x, const BoxCoxParams &p);

// Exact inverse then minus the shift, clamped at 0. Throws DomainError when
// lambda * y + 1 <= 0 for lambda != 0.
double inv_boxcox(double y, const BoxCoxParams &p);

// Inverse for model output, which may leave the transform's range:
// lambda > 0 and lambda * y + 1 <= 0 maps to 0 (the limit of the inverse);
// lambda < 0 and lambda * y + 1 <= 0 (inverse would be infinite) and any
// result above `cap` are capped at `cap`.
double inv_boxcox_bounded(double y, const BoxCoxParams &p, double cap);

std::vector<double> boxcox(std::span<const double> x, const BoxCoxParams &p);

} // namespace pyroseason
