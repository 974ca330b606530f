// pyroseason command-line interface.

#include "pyroseason/cell_store.hpp"
#include "pyroseason/csv.hpp"
#include "pyroseason/evaluate.hpp"
#include "pyroseason/geojson.hpp"
#include "pyroseason/hexgrid.hpp"
#include "pyroseason/pipeline.hpp"
#include "pyroseason/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace pyroseason;

namespace {

constexpr const char *kVersion = "1.0.0";

// Every pipeline setting as an optional, so a config file can be applied
// first and explicit flags override it.
struct Settings {
	std::optional<std::string> config_file;
	std::optional<int> resolution;
	std::optional<int> min_confidence;
	std::optional<std::string> from, to;
	std::optional<double> percentile;
	std::optional<int> train_seasons;
	std::optional<std::string> methods;
	std::optional<std::uint64_t> seed;
	std::optional<std::string> select_by;
	std::optional<unsigned> threads;
	std::optional<int> max_iterations;
	std::optional<double> tolerance;
	std::optional<int> mlp_restarts;
	std::optional<int> mlp_epochs;
	std::optional<int> stl_seasonal_window;
};

void apply(PipelineConfig &c, const std::string &key, const std::string &value) {
	auto as_int = [&] {
		std::size_t used = 0;
		const int v = std::stoi(value, &used);
		if (used != value.size()) {
			throw ParameterError("");
		}
		return v;
	};
	auto as_double = [&] {
		std::size_t used = 0;
		const double v = std::stod(value, &used);
		if (used != value.size()) {
			throw ParameterError("");
		}
		return v;
	};
	try {
		if (key == "resolution") {
			c.resolution = as_int();
		} else if (key == "min_confidence") {
			c.min_confidence = as_int();
		} else if (key == "from") {
			c.range.first = Date::parse(value);
		} else if (key == "to") {
			c.range.last = Date::parse(value);
		} else if (key == "percentile") {
			c.length_percentile = as_double();
		} else if (key == "train_seasons") {
			c.train_seasons = as_int();
		} else if (key == "methods") {
			c.methods = parse_methods(value);
		} else if (key == "seed") {
			std::size_t used = 0;
			c.seed = std::stoull(value, &used);
			if (used != value.size()) {
				throw ParameterError("");
			}
		} else if (key == "select_by") {
			c.select_by = parse_select_by(value);
		} else if (key == "threads") {
			c.threads = static_cast<unsigned>(as_int());
		} else if (key == "max_iterations") {
			c.fit.max_iterations = as_int();
		} else if (key == "tolerance") {
			c.fit.tolerance = as_double();
		} else if (key == "mlp_restarts") {
			c.fit.mlp_restarts = as_int();
		} else if (key == "mlp_epochs") {
			c.fit.mlp_epochs = as_int();
		} else if (key == "stl_seasonal_window") {
			c.fit.stl_seasonal_window = as_int();
		} else {
			throw ParameterError("unknown configuration key '" + key + "'");
		}
	} catch (const ParameterError &e) {
		if (*e.what()) {
			throw;
		}
		throw ParameterError("bad value '" + value + "' for " + key);
	} catch (const std::logic_error &) {
		throw ParameterError("bad value '" + value + "' for " + key);
	}
}

void read_config_file(PipelineConfig &c, const std::string &path) {
	std::ifstream in(path);
	if (!in) {
		throw ParameterError("cannot open config file " + path);
	}
	std::string line;
	int number = 0;
	auto trim = [](std::string s) {
		const auto a = s.find_first_not_of(" \t\r");
		const auto b = s.find_last_not_of(" \t\r");
		return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
	};
	while (std::getline(in, line)) {
		++number;
		if (const auto hash = line.find('#'); hash != std::string::npos) {
			line.erase(hash);
		}
		line = trim(line);
		if (line.empty()) {
			continue;
		}
		const auto eq = line.find('=');
		if (eq == std::string::npos) {
			throw ParameterError(path + ":" + std::to_string(number) + ": expected key=value");
		}
		apply(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
	}
}

PipelineConfig resolve(const Settings &s) {
	PipelineConfig c;
	if (s.config_file) {
		read_config_file(c, *s.config_file);
	}
	if (s.resolution) c.resolution = *s.resolution;
	if (s.min_confidence) c.min_confidence = *s.min_confidence;
	if (s.from) c.range.first = Date::parse(*s.from);
	if (s.to) c.range.last = Date::parse(*s.to);
	if (s.percentile) c.length_percentile = *s.percentile;
	if (s.train_seasons) c.train_seasons = *s.train_seasons;
	if (s.methods) c.methods = parse_methods(*s.methods);
	if (s.seed) c.seed = *s.seed;
	if (s.select_by) c.select_by = parse_select_by(*s.select_by);
	if (s.threads) c.threads = *s.threads;
	if (s.max_iterations) c.fit.max_iterations = *s.max_iterations;
	if (s.tolerance) c.fit.tolerance = *s.tolerance;
	if (s.mlp_restarts) c.fit.mlp_restarts = *s.mlp_restarts;
	if (s.mlp_epochs) c.fit.mlp_epochs = *s.mlp_epochs;
	if (s.stl_seasonal_window) c.fit.stl_seasonal_window = *s.stl_seasonal_window;
	if (c.range.last < c.range.first) {
		throw ParameterError("--to precedes --from");
	}
	return c;
}

void add_ingest_flags(CLI::App *app, Settings &s) {
	app->add_option("--resolution", s.resolution, "Grid resolution (default 8)");
	app->add_option("--min-confidence", s.min_confidence, "Keep detections with confidence above this (default 75)");
	app->add_option("--from", s.from, "First day, YYYY-MM-DD (default 2003-01-01)");
	app->add_option("--to", s.to, "Last day, YYYY-MM-DD (default 2017-12-31)");
}

void add_forecast_flags(CLI::App *app, Settings &s) {
	app->add_option("--methods", s.methods, "Comma-separated methods (default snaive,arima,ets,stlf,tsglm,mlp)");
	app->add_option("--train-seasons", s.train_seasons, "Training seasons (default 10)");
	app->add_option("--seed", s.seed, "Random seed (default 42)");
	app->add_option("--threads", s.threads, "Worker threads (default: available parallelism)");
	app->add_option("--max-iterations", s.max_iterations, "Optimizer iteration cap (default 500)");
	app->add_option("--tolerance", s.tolerance, "Optimizer objective tolerance (default 1e-8)");
	app->add_option("--mlp-restarts", s.mlp_restarts, "MLP random restarts (default 20)");
	app->add_option("--mlp-epochs", s.mlp_epochs, "MLP epochs per restart (default 2000)");
	app->add_option("--stl-seasonal-window", s.stl_seasonal_window, "STL seasonal Loess window (default 13)");
}

std::ofstream open_out(const std::string &path) {
	if (const auto dir = fs::path(path).parent_path(); !dir.empty()) {
		fs::create_directories(dir);
	}
	std::ofstream out(path, std::ios::binary);
	if (!out) {
		throw ParameterError("cannot write " + path);
	}
	return out;
}

std::ifstream open_in(const std::string &path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw ParseError("cannot open " + path);
	}
	return in;
}

template <class F>
auto stage(const std::string &name, F &&f) {
	try {
		return f();
	} catch (const StageError &) {
		throw;
	} catch (const std::exception &e) {
		throw wrap_stage_error(name, e);
	}
}

nlohmann::json config_json(const PipelineConfig &c) {
	std::string methods;
	for (Method m : c.methods) {
		methods += (methods.empty() ? "" : ",") + std::string(method_name(m));
	}
	return {{"resolution", c.resolution},
	        {"min_confidence", c.min_confidence},
	        {"from", c.range.first.to_string()},
	        {"to", c.range.last.to_string()},
	        {"percentile", c.length_percentile},
	        {"train_seasons", c.train_seasons},
	        {"methods", methods},
	        {"seed", c.seed},
	        {"select_by", c.select_by == SelectBy::mae ? "mae" : "mase"},
	        {"max_iterations", c.fit.max_iterations},
	        {"tolerance", c.fit.tolerance},
	        {"mlp_restarts", c.fit.mlp_restarts},
	        {"mlp_epochs", c.fit.mlp_epochs},
	        {"stl_seasonal_window", c.fit.stl_seasonal_window}};
}

SeasonAnalysis run_seasons(const std::vector<DailySeries> &series, const PipelineConfig &c) {
	auto a = analyze_seasons(series, c.length_percentile);
	std::cerr << "seasons: " << a.profiles.size() << " retained cells, " << a.inactive_cells
	          << " dropped (inactive in some year), global window " << a.global_months << " months (percentile gives "
	          << a.percentile_months << ")\n";
	return a;
}

EvaluationResult run_evaluate(const std::vector<CellForecast> &forecasts, const PipelineConfig &c,
                              const std::optional<std::string> &continents) {
	std::map<CellId, std::string> groups;
	if (continents) {
		auto in = open_in(*continents);
		groups = read_continents(in);
	}
	return evaluate_forecasts(forecasts, c.select_by, groups);
}

void print_evaluation(const EvaluationResult &r) {
	const auto &g = r.groups.front();
	std::cerr << "evaluate: " << r.cells.size() << " cells; best-method MASE < 1 in "
	          << 100.0 * g.frac_best_mase_below_one << "% ; normalized FSS MAE < 1 in "
	          << 100.0 * g.frac_best_nmae_below_one << "%\n";
}

std::string summary_path(const std::string &report) {
	fs::path p(report);
	return (p.parent_path() / (p.stem().string() + "_summary.csv")).string();
}

// ---- subcommands ----------------------------------------------------------

int cmd_grid(int resolution, const std::optional<std::string> &geojson, const std::optional<std::string> &locate) {
	const HexGrid grid(resolution);
	std::cout << "resolution " << resolution << ": " << grid.size() << " cells\n";
	if (locate) {
		double lat = 0.0, lon = 0.0;
		char comma = 0;
		std::istringstream is(*locate);
		if (!(is >> lat >> comma >> lon) || comma != ',') {
			throw ParameterError("--locate expects LAT,LON");
		}
		const CellId id = grid.locate(GeoPoint::normalized(lat, lon));
		const auto g = grid.geometry(id);
		std::cout << id.to_string() << " center " << g.center.latitude << "," << g.center.longitude << " area_km2 "
		          << g.area_km2 << (grid.is_pentagon(id) ? " pentagon" : "") << "\n";
	}
	if (geojson) {
		std::vector<CellId> cells;
		cells.reserve(grid.size());
		for (std::uint64_t i = 0; i < grid.size(); ++i) {
			cells.push_back({resolution, i});
		}
		auto out = open_out(*geojson);
		write_geojson(out, grid, cells, "", {});
	}
	return 0;
}

const std::vector<std::string> kProfileFields{"mean_length_days", "length_trend", "peak_month", "fss_mean", "fss_trend"};
const std::vector<std::string> kReportFields{"mae_monthly", "mase_monthly", "mae_fss", "nmae_fss", "mase_fss"};

std::string join(const std::vector<std::string> &v) {
	std::string s;
	for (const auto &x : v) {
		s += (s.empty() ? "" : ", ") + x;
	}
	return s;
}

// Reads (cell, value) pairs for `field` from a CSV with a cell column;
// `filter` keeps rows (e.g. best == 1).
std::pair<std::vector<CellId>, std::vector<double>> read_field(const std::string &path, const std::string &cell_col,
                                                               const std::string &field, const std::string &filter) {
	auto in = open_in(path);
	std::string line;
	if (!csv::read_line(in, line)) {
		throw SchemaError(path + " is empty");
	}
	const auto header = csv::split(line);
	auto col = [&](const std::string &name) -> std::size_t {
		const auto it = std::find(header.begin(), header.end(), name);
		if (it == header.end()) {
			throw SchemaError(path + " lacks column " + name);
		}
		return static_cast<std::size_t>(it - header.begin());
	};
	const auto c = col(cell_col), f = col(field);
	const std::optional<std::size_t> keep = filter.empty() ? std::nullopt : std::optional(col(filter));
	std::vector<CellId> cells;
	std::vector<double> values;
	while (csv::read_line(in, line)) {
		const auto row = csv::split(line);
		if (row.size() != header.size()) {
			throw ParseError(path + ": ragged row");
		}
		if (keep && row[*keep] != "1") {
			continue;
		}
		cells.push_back(CellId::parse(row[c]));
		values.push_back(row[f].empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(row[f]));
	}
	return {cells, values};
}

int cmd_export(const std::optional<std::string> &profiles, const std::optional<std::string> &report,
               const std::optional<std::string> &field, bool mafc, const std::optional<std::string> &cells_path,
               const std::string &out_path, const std::optional<std::string> &histogram) {
	if (mafc) {
		if (!cells_path || !profiles) {
			throw ParameterError("--mafc needs --cells and --profiles");
		}
		const auto series = load_cells(*cells_path);
		auto in = open_in(*profiles);
		const auto keys = read_profile_keys(in);
		const auto built = rebuild_profiles(series, keys);
		auto out = open_out(out_path);
		write_mafc(out, series, built);
		return 0;
	}
	if (!field) {
		throw ParameterError("--field is required; profile fields: " + join(kProfileFields) +
		                     "; report fields: " + join(kReportFields));
	}
	std::pair<std::vector<CellId>, std::vector<double>> data;
	if (profiles && !report) {
		if (std::find(kProfileFields.begin(), kProfileFields.end(), *field) == kProfileFields.end()) {
			throw ParameterError("unknown field '" + *field + "'; valid fields: " + join(kProfileFields));
		}
		data = read_field(*profiles, "cell_id", *field, "");
	} else if (report && !profiles) {
		if (std::find(kReportFields.begin(), kReportFields.end(), *field) == kReportFields.end()) {
			throw ParameterError("unknown field '" + *field + "'; valid fields: " + join(kReportFields));
		}
		data = read_field(*report, "cell", *field, "best");
	} else {
		throw ParameterError("give exactly one of --profiles or --report");
	}
	if (data.first.empty()) {
		throw InsufficientData("no cells to export");
	}
	const HexGrid grid(data.first.front().resolution);
	{
		auto out = open_out(out_path);
		write_geojson(out, grid, data.first, *field, data.second);
	}
	const std::string hist = histogram ? *histogram : (fs::path(out_path).replace_extension("").string() + "_hist.csv");
	auto h = open_out(hist);
	write_histogram(h, data.second, 256);
	return 0;
}

} // namespace

int main(int argc, char **argv) {
	CLI::App app{"Fire-season estimation and forecasting on a hexagonal global grid"};
	app.set_version_flag("--version", kVersion);
	app.require_subcommand(1);
	Settings s;

	// grid
	auto *grid = app.add_subcommand("grid", "Grid statistics, point lookup and polygon export");
	int grid_res = 8;
	std::optional<std::string> grid_geojson, grid_locate;
	grid->add_option("--resolution", grid_res, "Grid resolution (default 8)");
	grid->add_option("--geojson", grid_geojson, "Write every cell polygon as GeoJSON");
	grid->add_option("--locate", grid_locate, "Print the cell holding LAT,LON");

	// ingest
	auto *ingest = app.add_subcommand("ingest", "Bin detections into daily per-cell counts");
	std::vector<std::string> inputs;
	std::string cells_out = "cells.bin";
	ingest->add_option("--input", inputs, "Detection CSV files")->required();
	ingest->add_option("--out", cells_out, "Cell store to write (default cells.bin)");
	ingest->add_option("--config", s.config_file, "key=value configuration file");
	add_ingest_flags(ingest, s);

	// seasons
	auto *seasons = app.add_subcommand("seasons", "Season lengths, global window and per-cell profiles");
	std::string cells_in = "cells.bin", profiles_out = "profiles.csv";
	seasons->add_option("--cells", cells_in, "Cell store (default cells.bin)");
	seasons->add_option("--percentile", s.percentile, "Season-length percentile (default 99)");
	seasons->add_option("--out", profiles_out, "Profiles CSV (default profiles.csv)");
	seasons->add_option("--config", s.config_file, "key=value configuration file");

	// forecast
	auto *forecast = app.add_subcommand("forecast", "Fit the forecasting methods per cell");
	std::string profiles_in = "profiles.csv", forecasts_out = "forecasts.csv";
	forecast->add_option("--cells", cells_in, "Cell store (default cells.bin)");
	forecast->add_option("--profiles", profiles_in, "Profiles CSV (default profiles.csv)");
	forecast->add_option("--out", forecasts_out, "Forecasts CSV (default forecasts.csv)");
	forecast->add_option("--config", s.config_file, "key=value configuration file");
	add_forecast_flags(forecast, s);

	// evaluate
	auto *evaluate = app.add_subcommand("evaluate", "Error metrics, best method and method comparison");
	std::string forecasts_in = "forecasts.csv", report_out = "report.csv";
	std::optional<std::string> continents, summary_out;
	evaluate->add_option("--forecasts", forecasts_in, "Forecasts CSV (default forecasts.csv)");
	evaluate->add_option("--out", report_out, "Per-cell report CSV (default report.csv)");
	evaluate->add_option("--summary", summary_out, "Summary CSV (default <out>_summary.csv)");
	evaluate->add_option("--continents", continents, "CSV mapping cell to continent");
	evaluate->add_option("--select-by", s.select_by, "Best-method metric: mae (default) or mase");
	evaluate->add_option("--config", s.config_file, "key=value configuration file");

	// export
	auto *exporter = app.add_subcommand("export", "GeoJSON layers, density histograms and MA-FC series");
	std::optional<std::string> export_profiles, export_report, export_field, export_cells, export_hist;
	std::string export_out = "layer.geojson";
	bool export_mafc = false;
	exporter->add_option("--profiles", export_profiles, "Profiles CSV");
	exporter->add_option("--report", export_report, "Report CSV (best method rows are exported)");
	exporter->add_option("--field", export_field, "Field to attach to each cell");
	exporter->add_option("--out", export_out, "Output file");
	exporter->add_option("--histogram", export_hist, "Histogram CSV (default <out without extension>_hist.csv)");
	exporter->add_flag("--mafc", export_mafc, "Write MA-FC series (needs --cells and --profiles)");
	exporter->add_option("--cells", export_cells, "Cell store, for --mafc");

	// synth
	auto *synth = app.add_subcommand("synth", "Generate seeded synthetic detections");
	SynthConfig sc;
	std::string synth_out = "fires.csv";
	std::optional<std::string> truth_out;
	synth->add_option("--cells", sc.cells, "Number of cells (default 200)");
	synth->add_option("--seed", sc.seed, "Random seed (default 42)");
	synth->add_option("--first-year", sc.first_year, "First year (default 2003)");
	synth->add_option("--last-year", sc.last_year, "Last year (default 2017)");
	synth->add_option("--resolution", sc.resolution, "Grid resolution (default 8)");
	synth->add_option("--min-length", sc.min_length, "Shortest planted season in days (default 90)");
	synth->add_option("--max-length", sc.max_length, "Longest planted season in days (default 200)");
	synth->add_option("--noise-sd", sc.noise_sd, "Interannual log-sd (default 0.25)");
	synth->add_option("--out", synth_out, "Detections CSV (default fires.csv)");
	synth->add_option("--truth", truth_out, "Planted parameters CSV");

	// run
	auto *run = app.add_subcommand("run", "ingest -> seasons -> forecast -> evaluate");
	std::string out_dir = "pyroseason_out";
	run->add_option("--input", inputs, "Detection CSV files")->required();
	run->add_option("--out-dir", out_dir, "Output directory (default pyroseason_out)");
	run->add_option("--config", s.config_file, "key=value configuration file");
	run->add_option("--percentile", s.percentile, "Season-length percentile (default 99)");
	run->add_option("--continents", continents, "CSV mapping cell to continent");
	run->add_option("--select-by", s.select_by, "Best-method metric: mae (default) or mase");
	add_ingest_flags(run, s);
	add_forecast_flags(run, s);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		const int code = app.exit(e);
		return code == 0 ? 0 : 2;
	}

	try {
		if (grid->parsed()) {
			return stage("grid", [&] { return cmd_grid(grid_res, grid_geojson, grid_locate); });
		}
		if (synth->parsed()) {
			return stage("synth", [&] {
				const auto cells = generate_synthetic(sc);
				{
					auto out = open_out(synth_out);
					write_synthetic_fires(out, cells, sc);
				}
				if (truth_out) {
					auto out = open_out(*truth_out);
					write_synthetic_truth(out, cells);
				}
				return 0;
			});
		}
		if (exporter->parsed()) {
			return stage("export", [&] {
				return cmd_export(export_profiles, export_report, export_field, export_mafc, export_cells, export_out,
				                  export_hist);
			});
		}
		const PipelineConfig config = stage("config", [&] { return resolve(s); });
		if (ingest->parsed()) {
			return stage("ingest", [&] {
				IngestSummary sum;
				const auto series = ingest_files(inputs, config, sum);
				save_cells(cells_out, series);
				std::cerr << "ingest: " << sum.rows << " rows, " << sum.rejected << " malformed, " << sum.filtered
				          << " filtered, " << sum.cells << " cells\n";
				return 0;
			});
		}
		if (seasons->parsed()) {
			const auto series = stage("ingest", [&] { return load_cells(cells_in); });
			return stage("seasons", [&] {
				const auto a = run_seasons(series, config);
				auto out = open_out(profiles_out);
				write_profiles(out, a);
				return 0;
			});
		}
		if (forecast->parsed()) {
			const auto series = stage("ingest", [&] { return load_cells(cells_in); });
			const auto profiles = stage("seasons", [&] {
				auto in = open_in(profiles_in);
				return rebuild_profiles(series, read_profile_keys(in));
			});
			const auto result = stage("forecast", [&] { return forecast_cells(series, profiles, config); });
			auto out = open_out(forecasts_out);
			write_forecasts(out, result);
			return 0;
		}
		if (evaluate->parsed()) {
			return stage("evaluate", [&] {
				auto in = open_in(forecasts_in);
				const auto forecasts = read_forecasts(in);
				const auto r = run_evaluate(forecasts, config, continents);
				{
					auto out = open_out(report_out);
					write_report(out, r);
				}
				auto out = open_out(summary_out ? *summary_out : summary_path(report_out));
				write_summary(out, r);
				print_evaluation(r);
				return 0;
			});
		}
		if (run->parsed()) {
			const fs::path dir(out_dir);
			nlohmann::json manifest = {{"tool", "pyroseason"}, {"version", kVersion}, {"config", config_json(config)}};
			const auto series = stage("ingest", [&] {
				nlohmann::json files = nlohmann::json::array();
				for (const auto &path : inputs) {
					files.push_back({{"path", path}, {"fnv1a64", file_digest(path)}});
				}
				manifest["inputs"] = files;
				IngestSummary sum;
				auto out = ingest_files(inputs, config, sum);
				fs::create_directories(dir);
				save_cells((dir / "cells.bin").string(), out);
				manifest["ingest"] = {{"rows", sum.rows}, {"malformed", sum.rejected}, {"filtered", sum.filtered},
				                      {"cells", sum.cells}};
				return out;
			});
			const auto analysis = stage("seasons", [&] {
				auto a = run_seasons(series, config);
				auto out = open_out((dir / "profiles.csv").string());
				write_profiles(out, a);
				manifest["seasons"] = {{"retained_cells", a.profiles.size()},
				                       {"inactive_cells", a.inactive_cells},
				                       {"outlier_cells", a.outlier_cells},
				                       {"percentile_months", a.percentile_months},
				                       {"season_months", a.global_months}};
				return a;
			});
			const auto forecasts = stage("forecast", [&] {
				auto f = forecast_cells(series, analysis.profiles, config);
				auto out = open_out((dir / "forecasts.csv").string());
				write_forecasts(out, f);
				return f;
			});
			stage("evaluate", [&] {
				const auto r = run_evaluate(forecasts, config, continents);
				{
					auto out = open_out((dir / "report.csv").string());
					write_report(out, r);
				}
				auto out = open_out((dir / "summary.csv").string());
				write_summary(out, r);
				print_evaluation(r);
				return 0;
			});
			manifest["outputs"] = {"cells.bin", "profiles.csv", "forecasts.csv", "report.csv", "summary.csv"};
			auto out = open_out((dir / "manifest.json").string());
			out << manifest.dump(2) << '\n';
			return 0;
		}
	} catch (const StageError &e) {
		std::cerr << "error: " << e.what() << "\n";
		return e.input_error() ? 2 : 1;
	} catch (const std::exception &e) {
		std::cerr << "error: " << e.what() << "\n";
		return 1;
	}
	return 0;
}
