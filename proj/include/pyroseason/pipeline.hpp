#pragma once

#include "pyroseason/error.hpp"
#include "pyroseason/evaluate.hpp"
#include "pyroseason/forecast.hpp"
#include "pyroseason/ingest.hpp"
#include "pyroseason/season.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace pyroseason {

struct PipelineConfig {
	int resolution = 8;
	int min_confidence = 75;
	DateRange range{Date::from_ymd(2003, 1, 1), Date::from_ymd(2017, 12, 31)};
	double length_percentile = 99.0;
	int train_seasons = 10;
	std::vector<Method> methods{Method::snaive, Method::arima, Method::ets,
	                            Method::stlf,   Method::tsglm, Method::mlp};
	std::uint64_t seed = 42;
	FitConfig fit; // the seed field is replaced per cell
	SelectBy select_by = SelectBy::mae;
	unsigned threads = 0; // 0: available parallelism
};

// A stage failure, carrying the stage name and the cell being processed.
class StageError : public Error {
public:
	StageError(std::string stage, const std::string &what, std::optional<CellId> cell = std::nullopt);
	const std::string &stage() const { return stage_; }
	const std::optional<CellId> &cell() const { return cell_; }
	// True when the underlying failure is bad input rather than a bug.
	bool input_error() const { return input_; }

private:
	std::string stage_;
	std::optional<CellId> cell_;
	bool input_ = false;

	friend StageError wrap_stage_error(const std::string &stage, const std::exception &e, std::optional<CellId> cell);
};

StageError wrap_stage_error(const std::string &stage, const std::exception &e, std::optional<CellId> cell = std::nullopt);

// Worker count: `requested` (0 = hardware concurrency), capped by the
// PYROSEASON_THREADS environment variable, at least 1.
unsigned resolve_threads(unsigned requested);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string file_digest(const std::string &path);

// ---- ingest ---------------------------------------------------------------

struct IngestSummary {
	std::size_t rows = 0;      // parsed records
	std::size_t rejected = 0;  // malformed rows
	std::size_t filtered = 0;  // dropped by confidence or date
	std::size_t cells = 0;
};

std::vector<DailySeries> ingest_stream(std::istream &in, const PipelineConfig &config, IngestSummary &summary);
std::vector<DailySeries> ingest_files(const std::vector<std::string> &paths, const PipelineConfig &config,
                                      IngestSummary &summary);

// ---- seasons --------------------------------------------------------------

// cell_id,center_lat,center_lon,mean_length_days,length_trend,peak_month,
// fss_mean,fss_trend,season_months,windows
void write_profiles(std::ostream &out, const SeasonAnalysis &analysis);

struct ProfileKey {
	CellId cell;
	int months = 0;
};

std::vector<ProfileKey> read_profile_keys(std::istream &in);

// Profiles for the listed cells, rebuilt from their daily series.
std::vector<SeasonProfile> rebuild_profiles(std::span<const DailySeries> series, std::span<const ProfileKey> keys);

// MA-FC values: cell_id,season,month_offset,value
void write_mafc(std::ostream &out, std::span<const DailySeries> series, std::span<const SeasonProfile> profiles);

// ---- forecast -------------------------------------------------------------

struct MethodForecast {
	Method method = Method::snaive;
	bool ok = false;
	bool converged = true;
	std::string note;            // model description or failure reason
	std::vector<double> monthly; // test horizon, original scale (empty for linreg)
	std::vector<double> fss;
};

struct CellForecast {
	CellId cell;
	int period = 0;
	double lambda = 1.0;
	double fss_mean = 0.0;
	std::vector<double> train, test;         // monthly values
	std::vector<double> fss_train, fss_test; // per season
	std::vector<MethodForecast> methods;     // configured methods, then linreg
};

CellForecast forecast_cell(const DailySeries &series, const SeasonProfile &profile, const PipelineConfig &config);

// Profiles must refer to cells present in `series`. Output sorted by cell.
std::vector<CellForecast> forecast_cells(std::span<const DailySeries> series, std::span<const SeasonProfile> profiles,
                                         const PipelineConfig &config);

// cell,method,kind,season,month,observed,forecast,note
void write_forecasts(std::ostream &out, std::span<const CellForecast> cells);
std::vector<CellForecast> read_forecasts(std::istream &in);

// ---- evaluate -------------------------------------------------------------

struct CellEvaluation {
	CellId cell;
	std::vector<ErrorReport> reports; // successful methods, in forecast order
	std::optional<Method> best;
};

struct GroupSummary {
	std::string name; // "global" or a continent
	std::size_t cells = 0;
	std::map<Method, Summary> mase_monthly;
	Summary best_nmae_fss;
	Summary best_mase_fss;
	Summary linreg_mase_fss;
	double frac_best_mase_below_one = 0.0; // over cells with defined MASE
	double frac_best_nmae_below_one = 0.0;
	std::map<Method, std::size_t> best_counts;
	std::optional<ComparisonResult> wilcoxon; // best vs linreg on FSS MASE
	std::size_t wilcoxon_cells = 0;
};

struct EvaluationResult {
	std::vector<CellEvaluation> cells;
	std::vector<Method> compared; // Friedman columns
	std::optional<ComparisonResult> friedman;
	std::size_t friedman_cells = 0;
	double cd_05 = 0.0;
	double cd_001 = 0.0;
	std::vector<GroupSummary> groups; // global first, then continents sorted
};

EvaluationResult evaluate_forecasts(std::span<const CellForecast> forecasts, SelectBy by,
                                    const std::map<CellId, std::string> &continents = {});

// cell,method,mae_monthly,mase_monthly,mae_fss,nmae_fss,mase_fss,converged,best
void write_report(std::ostream &out, const EvaluationResult &result);

// Long format: section,group,item,statistic,value
void write_summary(std::ostream &out, const EvaluationResult &result);

} // namespace pyroseason
