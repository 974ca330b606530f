#pragma once

#include "pyroseason/forecast.hpp"
#include "pyroseason/hexgrid.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pyroseason {

double mae(std::span<const double> observed, std::span<const double> forecast);

// Scaled errors e_t / q where q is the in-sample MAE of the (seasonal) naive
// method on train. When q is zero the result is all zeros for an exact
// forecast and empty otherwise.
std::optional<std::vector<double>> scaled_errors(std::span<const double> observed, std::span<const double> forecast,
                                                 std::span<const double> train, int period);

// Mean absolute scaled error against the one-step naive method (period 1).
std::optional<double> mase_nonseasonal(std::span<const double> observed, std::span<const double> forecast,
                                       std::span<const double> train);

// Mean absolute scaled error against the seasonal naive method.
std::optional<double> mase_seasonal(std::span<const double> observed, std::span<const double> forecast,
                                    std::span<const double> train, int period);

struct ErrorReport {
	CellId cell;
	Method method = Method::snaive;
	std::optional<double> mae_monthly; // absent for linreg, which forecasts FSS only
	std::optional<double> mase_monthly;
	double mae_fss = 0.0;
	double nmae_fss = 0.0; // mae_fss / fss mean of the cell
	std::optional<double> mase_fss;
	bool converged = true;
};

enum class SelectBy { mae, mase };

SelectBy parse_select_by(std::string_view name);

// Method with the smallest monthly MAE (or MASE) among reports that have
// monthly errors; ties go to the lexicographically smallest method name.
// Selecting by MASE falls back to MAE when any candidate's MASE is undefined.
Method select_best(std::span<const ErrorReport> reports, SelectBy by = SelectBy::mae);

struct ComparisonResult {
	double statistic = 0.0;
	double p_value = 1.0;
	std::vector<double> mean_ranks; // per method (column), Friedman only
	bool degenerate = false;
};

// errors[cell][method]; lower is better (rank 1).
ComparisonResult friedman_test(const std::vector<std::vector<double>> &errors);

// Critical difference q_alpha * sqrt(k (k + 1) / (6 N)); alpha 0.05 or 0.001,
// 2 <= k <= 10.
double nemenyi_cd(int k, int n, double alpha);

inline bool nemenyi_significant(double rank_a, double rank_b, double cd) {
	return std::abs(rank_a - rank_b) > cd;
}

// Two-sided signed-rank test on a - b. The statistic is the sum of ranks of
// positive differences; the p-value uses the normal approximation with tie
// and continuity corrections.
ComparisonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

// Quartiles of a sample after dropping values above Q3 + 1.5 IQR.
struct Summary {
	std::size_t count = 0; // after outlier removal
	std::size_t removed = 0;
	double q1 = 0.0, median = 0.0, q3 = 0.0;
};

Summary summarize(std::span<const double> values);

// Cell -> continent lookup read from a two-column CSV (cell,continent).
std::map<CellId, std::string> read_continents(std::istream &in);

} // namespace pyroseason
