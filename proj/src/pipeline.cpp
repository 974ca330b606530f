#include "pyroseason/pipeline.hpp"

#include "pyroseason/csv.hpp"
#include "pyroseason/ets.hpp"
#include "pyroseason/hexgrid.hpp"
#include "pyroseason/stats.hpp"
#include "pyroseason/transform.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

namespace pyroseason {

StageError::StageError(std::string stage, const std::string &what, std::optional<CellId> cell)
    : Error("[" + stage + (cell ? " " + cell->to_string() : std::string()) + "] " + what), stage_(std::move(stage)),
      cell_(cell) {}

StageError wrap_stage_error(const std::string &stage, const std::exception &e, std::optional<CellId> cell) {
	if (const auto *s = dynamic_cast<const StageError *>(&e)) {
		return *s;
	}
	StageError out(stage, e.what(), cell);
	out.input_ = dynamic_cast<const ParseError *>(&e) || dynamic_cast<const SchemaError *>(&e) ||
	             dynamic_cast<const FormatError *>(&e) || dynamic_cast<const ParameterError *>(&e) ||
	             dynamic_cast<const InsufficientData *>(&e) || dynamic_cast<const BoundsError *>(&e);
	return out;
}

unsigned resolve_threads(unsigned requested) {
	unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
	if (const char *env = std::getenv("PYROSEASON_THREADS")) {
		char *end = nullptr;
		const long cap = std::strtol(env, &end, 10);
		if (end != env && cap > 0) {
			n = std::min(n, static_cast<unsigned>(cap));
		}
	}
	return std::max(n, 1u);
}

std::string file_digest(const std::string &path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw ParseError("cannot open " + path);
	}
	std::uint64_t h = 14695981039346656037ull;
	char buf[1 << 16];
	while (in) {
		in.read(buf, sizeof buf);
		for (std::streamsize i = 0; i < in.gcount(); ++i) {
			h ^= static_cast<unsigned char>(buf[i]);
			h *= 1099511628211ull;
		}
	}
	static constexpr char kHex[] = "0123456789abcdef";
	std::string out(16, '0');
	for (int i = 15; i >= 0; --i) {
		out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
		h >>= 4;
	}
	return out;
}

// ---- ingest ---------------------------------------------------------------

namespace {

void ingest_into(std::istream &in, const PipelineConfig &config, CellAccumulator &acc, IngestSummary &summary) {
	const auto parsed = parse_records(in);
	summary.rows += parsed.records.size();
	summary.rejected += parsed.rejected;
	const auto kept = filter_records(parsed.records, config.min_confidence, config.range);
	summary.filtered += parsed.records.size() - kept.size();
	for (const auto &r : kept) {
		acc.add(r);
	}
}

} // namespace

std::vector<DailySeries> ingest_stream(std::istream &in, const PipelineConfig &config, IngestSummary &summary) {
	CellAccumulator acc(config.resolution, config.range);
	ingest_into(in, config, acc, summary);
	auto out = acc.series();
	summary.cells = out.size();
	return out;
}

std::vector<DailySeries> ingest_files(const std::vector<std::string> &paths, const PipelineConfig &config,
                                      IngestSummary &summary) {
	if (paths.empty()) {
		throw ParameterError("no input files");
	}
	CellAccumulator acc(config.resolution, config.range);
	for (const auto &path : paths) {
		std::ifstream in(path);
		if (!in) {
			throw ParseError("cannot open input file " + path);
		}
		ingest_into(in, config, acc, summary);
	}
	auto out = acc.series();
	summary.cells = out.size();
	return out;
}

// ---- seasons --------------------------------------------------------------

void write_profiles(std::ostream &out, const SeasonAnalysis &analysis) {
	csv::Writer w(out);
	for (const char *h : {"cell_id", "center_lat", "center_lon", "mean_length_days", "length_trend", "peak_month",
	                      "fss_mean", "fss_trend", "season_months", "windows"}) {
		w.field(h);
	}
	w.end_row();
	std::optional<HexGrid> grid;
	for (const auto &p : analysis.profiles) {
		if (!grid || grid->resolution() != p.cell.resolution) {
			grid.emplace(p.cell.resolution);
		}
		const GeoPoint c = geo::to_geo(grid->center_vector(p.cell));
		w.field(p.cell.to_string())
		    .field(c.latitude)
		    .field(c.longitude)
		    .field(p.mean_length_days)
		    .field(p.length_trend)
		    .field(p.peak_month)
		    .field(p.fss_mean)
		    .field(p.fss_trend)
		    .field(analysis.global_months)
		    .field(p.windows.size());
		w.end_row();
	}
}

std::vector<ProfileKey> read_profile_keys(std::istream &in) {
	std::string line;
	if (!csv::read_line(in, line)) {
		throw SchemaError("profiles file is empty");
	}
	const auto header = csv::split(line);
	auto column = [&](const std::string &name) {
		const auto it = std::find(header.begin(), header.end(), name);
		if (it == header.end()) {
			throw SchemaError("profiles file lacks column " + name);
		}
		return static_cast<std::size_t>(it - header.begin());
	};
	const auto cell_col = column("cell_id");
	const auto months_col = column("season_months");
	std::vector<ProfileKey> keys;
	while (csv::read_line(in, line)) {
		const auto f = csv::split(line);
		if (f.size() != header.size()) {
			throw ParseError("profiles row has " + std::to_string(f.size()) + " fields");
		}
		ProfileKey k;
		k.cell = CellId::parse(f[cell_col]);
		try {
			k.months = std::stoi(f[months_col]);
		} catch (const std::exception &) {
			throw ParseError("bad season_months value '" + f[months_col] + "'");
		}
		keys.push_back(k);
	}
	return keys;
}

namespace {

const DailySeries &find_series(std::span<const DailySeries> series, CellId cell) {
	const auto it = std::lower_bound(series.begin(), series.end(), cell,
	                                 [](const DailySeries &s, CellId c) { return s.cell < c; });
	if (it == series.end() || it->cell != cell) {
		throw ParameterError("no daily series for cell " + cell.to_string());
	}
	return *it;
}

} // namespace

std::vector<SeasonProfile> rebuild_profiles(std::span<const DailySeries> series, std::span<const ProfileKey> keys) {
	std::vector<SeasonProfile> out;
	out.reserve(keys.size());
	for (const auto &k : keys) {
		out.push_back(build_profile(find_series(series, k.cell), k.months));
	}
	return out;
}

void write_mafc(std::ostream &out, std::span<const DailySeries> series, std::span<const SeasonProfile> profiles) {
	csv::Writer w(out);
	w.field("cell_id").field("season").field("month_offset").field("value");
	w.end_row();
	for (const auto &p : profiles) {
		const auto m = monthly_accumulate(find_series(series, p.cell), p);
		for (std::size_t i = 0; i < m.values.size(); ++i) {
			w.field(p.cell.to_string())
			    .field(static_cast<int>(i / static_cast<std::size_t>(m.period)) + 1)
			    .field(static_cast<int>(i % static_cast<std::size_t>(m.period)))
			    .field(m.values[i]);
			w.end_row();
		}
	}
}

// ---- forecast -------------------------------------------------------------

namespace {

std::vector<double> season_sums(std::span<const double> x, int period) {
	std::vector<double> out;
	for (std::size_t i = 0; i + static_cast<std::size_t>(period) <= x.size(); i += static_cast<std::size_t>(period)) {
		double s = 0.0;
		for (int k = 0; k < period; ++k) {
			s += x[i + static_cast<std::size_t>(k)];
		}
		out.push_back(s);
	}
	return out;
}

MethodForecast run_method(Method m, const CellForecast &cell, std::span<const double> transformed,
                          const BoxCoxParams &params, double cap, int horizon, const FitConfig &fit) {
	MethodForecast f;
	f.method = m;
	std::shared_ptr<ForecastModel> model;
	try {
		switch (method_scale(m)) {
		case Scale::transformed:
			model = fit_model(m, transformed, cell.period, fit);
			break;
		case Scale::counts:
			model = fit_model(m, cell.train, cell.period, fit);
			break;
		case Scale::fss:
			model = fit_model(m, cell.fss_train, cell.period, fit);
			break;
		}
	} catch (const ConvergenceError &e) {
		model = e.best_so_far();
		f.converged = false;
		if (!model) {
			f.note = std::string("failed: ") + e.what();
			return f;
		}
	} catch (const Error &e) {
		f.note = std::string("failed: ") + e.what();
		return f;
	}
	try {
		const auto out = forecast_fss(*model, horizon, cell.period, params, cap);
		f.monthly = out.monthly;
		f.fss = out.fss;
		f.ok = true;
		f.note = model->describe();
	} catch (const Error &e) {
		f.note = std::string("failed: ") + e.what();
	}
	return f;
}

} // namespace

CellForecast forecast_cell(const DailySeries &series, const SeasonProfile &profile, const PipelineConfig &config) {
	CellForecast c;
	c.cell = profile.cell;
	c.fss_mean = profile.fss_mean;
	const auto monthly = monthly_accumulate(series, profile);
	const auto [train, test] = split_train_test(monthly, config.train_seasons);
	c.period = monthly.period;
	c.train = train.values;
	c.test = test.values;
	c.fss_train = season_sums(c.train, c.period);
	c.fss_test = season_sums(c.test, c.period);

	// Lambda is chosen on the shifted series, the one actually transformed.
	BoxCoxParams params;
	std::vector<double> shifted(c.train);
	for (double &v : shifted) {
		v += params.shift;
	}
	params.lambda = guerrero_lambda(shifted, c.period);
	c.lambda = params.lambda;
	const auto transformed = boxcox(c.train, params);
	const double cap = 2.0 * *std::max_element(c.train.begin(), c.train.end());
	const int horizon = static_cast<int>(test.seasons());

	FitConfig fit = config.fit;
	fit.seed = stats::mix_seed(config.seed, profile.cell.index);
	for (Method m : config.methods) {
		if (m == Method::linreg) {
			continue;
		}
		c.methods.push_back(run_method(m, c, transformed, params, cap, horizon, fit));
	}
	c.methods.push_back(run_method(Method::linreg, c, transformed, params, cap, horizon, fit));
	return c;
}

std::vector<CellForecast> forecast_cells(std::span<const DailySeries> series, std::span<const SeasonProfile> profiles,
                                         const PipelineConfig &config) {
	std::vector<const SeasonProfile *> order;
	for (const auto &p : profiles) {
		order.push_back(&p);
	}
	std::sort(order.begin(), order.end(), [](const auto *a, const auto *b) { return a->cell < b->cell; });
	std::vector<CellForecast> out(order.size());
	std::atomic<std::size_t> next{0};
	std::exception_ptr failure;
	std::optional<CellId> failed_cell;
	std::mutex guard;
	auto worker = [&] {
		for (;;) {
			const std::size_t i = next.fetch_add(1);
			if (i >= order.size()) {
				return;
			}
			{
				std::lock_guard lock(guard);
				if (failure) {
					return;
				}
			}
			try {
				out[i] = forecast_cell(find_series(series, order[i]->cell), *order[i], config);
			} catch (...) {
				std::lock_guard lock(guard);
				// Report the lowest failing cell so the message is deterministic.
				if (!failure || order[i]->cell < *failed_cell) {
					failure = std::current_exception();
					failed_cell = order[i]->cell;
				}
			}
		}
	};
	const unsigned n = std::min<unsigned>(resolve_threads(config.threads), static_cast<unsigned>(std::max<std::size_t>(order.size(), 1)));
	std::vector<std::thread> pool;
	for (unsigned t = 1; t < n; ++t) {
		pool.emplace_back(worker);
	}
	worker();
	for (auto &t : pool) {
		t.join();
	}
	if (failure) {
		try {
			std::rethrow_exception(failure);
		} catch (const std::exception &e) {
			throw wrap_stage_error("forecast", e, failed_cell);
		}
	}
	return out;
}

namespace {

struct Row {
	std::string cell, method, kind;
	std::optional<int> season, month;
	std::optional<double> observed, forecast;
	std::string note;
};

void put(csv::Writer &w, const Row &r) {
	w.field(r.cell).field(r.method).field(r.kind);
	r.season ? w.field(*r.season) : w.field("");
	r.month ? w.field(*r.month) : w.field("");
	r.observed ? w.field(*r.observed) : w.field("");
	r.forecast ? w.field(*r.forecast) : w.field("");
	w.field(r.note);
	w.end_row();
}

double to_double(const std::string &s, const char *what) {
	if (s == "NA") {
		return std::numeric_limits<double>::quiet_NaN();
	}
	if (s == "Inf") {
		return std::numeric_limits<double>::infinity();
	}
	if (s == "-Inf") {
		return -std::numeric_limits<double>::infinity();
	}
	try {
		std::size_t used = 0;
		const double v = std::stod(s, &used);
		if (used != s.size()) {
			throw ParseError("");
		}
		return v;
	} catch (const std::exception &) {
		throw ParseError(std::string("bad ") + what + " value '" + s + "'");
	}
}

int to_int(const std::string &s, const char *what) {
	try {
		std::size_t used = 0;
		const int v = std::stoi(s, &used);
		if (used != s.size()) {
			throw ParseError("");
		}
		return v;
	} catch (const std::exception &) {
		throw ParseError(std::string("bad ") + what + " value '" + s + "'");
	}
}

} // namespace

void write_forecasts(std::ostream &out, std::span<const CellForecast> cells) {
	csv::Writer w(out);
	for (const char *h : {"cell", "method", "kind", "season", "month", "observed", "forecast", "note"}) {
		w.field(h);
	}
	w.end_row();
	for (const auto &c : cells) {
		const std::string id = c.cell.to_string();
		const auto p = static_cast<std::size_t>(c.period);
		const int train_seasons = static_cast<int>(c.fss_train.size());
		put(w, {id, "", "profile", std::nullopt, c.period, c.fss_mean, std::nullopt, ""});
		put(w, {id, "", "lambda", std::nullopt, std::nullopt, c.lambda, std::nullopt, ""});
		for (std::size_t i = 0; i < c.train.size(); ++i) {
			put(w, {id, "", "train", static_cast<int>(i / p) + 1, static_cast<int>(i % p) + 1, c.train[i], std::nullopt, ""});
		}
		for (std::size_t i = 0; i < c.test.size(); ++i) {
			put(w, {id, "", "test", train_seasons + static_cast<int>(i / p) + 1, static_cast<int>(i % p) + 1, c.test[i],
			        std::nullopt, ""});
		}
		for (std::size_t s = 0; s < c.fss_train.size(); ++s) {
			put(w, {id, "", "fss_train", static_cast<int>(s) + 1, std::nullopt, c.fss_train[s], std::nullopt, ""});
		}
		for (std::size_t s = 0; s < c.fss_test.size(); ++s) {
			put(w, {id, "", "fss_test", train_seasons + static_cast<int>(s) + 1, std::nullopt, c.fss_test[s], std::nullopt, ""});
		}
		for (const auto &m : c.methods) {
			const std::string name(method_name(m.method));
			put(w, {id, name, "model", std::nullopt, std::nullopt, m.ok ? 1.0 : 0.0, m.converged ? 1.0 : 0.0, m.note});
			if (!m.ok) {
				continue;
			}
			for (std::size_t i = 0; i < m.monthly.size(); ++i) {
				put(w, {id, name, "monthly", train_seasons + static_cast<int>(i / p) + 1, static_cast<int>(i % p) + 1,
				        c.test[i], m.monthly[i], ""});
			}
			for (std::size_t s = 0; s < m.fss.size(); ++s) {
				put(w, {id, name, "fss", train_seasons + static_cast<int>(s) + 1, std::nullopt, c.fss_test[s], m.fss[s], ""});
			}
		}
	}
}

std::vector<CellForecast> read_forecasts(std::istream &in) {
	std::string line;
	if (!csv::read_line(in, line)) {
		throw SchemaError("forecasts file is empty");
	}
	const std::vector<std::string> expected{"cell", "method", "kind", "season", "month", "observed", "forecast", "note"};
	if (csv::split(line) != expected) {
		throw SchemaError("forecasts file has an unexpected header");
	}
	std::vector<CellForecast> out;
	std::map<std::pair<CellId, Method>, std::size_t> where;
	while (csv::read_line(in, line)) {
		const auto f = csv::split(line);
		if (f.size() != expected.size()) {
			throw ParseError("forecasts row has " + std::to_string(f.size()) + " fields");
		}
		const CellId cell = CellId::parse(f[0]);
		if (out.empty() || out.back().cell != cell) {
			if (!out.empty() && cell < out.back().cell) {
				throw ParseError("forecasts rows are not sorted by cell");
			}
			out.emplace_back();
			out.back().cell = cell;
		}
		CellForecast &c = out.back();
		const std::string &kind = f[2];
		if (kind == "profile") {
			c.period = to_int(f[4], "period");
			c.fss_mean = to_double(f[5], "fss_mean");
		} else if (kind == "lambda") {
			c.lambda = to_double(f[5], "lambda");
		} else if (kind == "train") {
			c.train.push_back(to_double(f[5], "observed"));
		} else if (kind == "test") {
			c.test.push_back(to_double(f[5], "observed"));
		} else if (kind == "fss_train") {
			c.fss_train.push_back(to_double(f[5], "observed"));
		} else if (kind == "fss_test") {
			c.fss_test.push_back(to_double(f[5], "observed"));
		} else if (kind == "model") {
			MethodForecast m;
			m.method = parse_method(f[1]);
			m.ok = to_double(f[5], "status") != 0.0;
			m.converged = to_double(f[6], "converged") != 0.0;
			m.note = f[7];
			where[{cell, m.method}] = c.methods.size();
			c.methods.push_back(std::move(m));
		} else if (kind == "monthly" || kind == "fss") {
			const auto it = where.find({cell, parse_method(f[1])});
			if (it == where.end()) {
				throw ParseError("forecast row before its model row for " + f[0] + " " + f[1]);
			}
			auto &m = c.methods[it->second];
			(kind == "monthly" ? m.monthly : m.fss).push_back(to_double(f[6], "forecast"));
		} else {
			throw ParseError("unknown row kind '" + kind + "'");
		}
	}
	for (const auto &c : out) {
		if (c.period < 1 || c.train.size() != c.fss_train.size() * static_cast<std::size_t>(c.period) ||
		    c.test.size() != c.fss_test.size() * static_cast<std::size_t>(c.period)) {
			throw ParseError("inconsistent forecast rows for cell " + c.cell.to_string());
		}
	}
	return out;
}

// ---- evaluate -------------------------------------------------------------

namespace {

std::optional<ErrorReport> report_for(const CellForecast &c, const MethodForecast &m) {
	if (!m.ok || m.fss.size() != c.fss_test.size()) {
		return std::nullopt;
	}
	ErrorReport r;
	r.cell = c.cell;
	r.method = m.method;
	r.converged = m.converged;
	if (!m.monthly.empty()) {
		r.mae_monthly = mae(c.test, m.monthly);
		r.mase_monthly = mase_seasonal(c.test, m.monthly, c.train, c.period);
	}
	r.mae_fss = mae(c.fss_test, m.fss);
	r.nmae_fss = c.fss_mean > 0.0 ? r.mae_fss / c.fss_mean : (r.mae_fss == 0.0 ? 0.0 : HUGE_VAL);
	r.mase_fss = mase_nonseasonal(c.fss_test, m.fss, c.fss_train);
	return r;
}

const ErrorReport *find_report(const CellEvaluation &e, Method m) {
	for (const auto &r : e.reports) {
		if (r.method == m) {
			return &r;
		}
	}
	return nullptr;
}

GroupSummary summarize_group(const std::string &name, const std::vector<const CellEvaluation *> &cells,
                             const std::vector<Method> &methods) {
	GroupSummary g;
	g.name = name;
	g.cells = cells.size();
	std::map<Method, std::vector<double>> mase;
	std::vector<double> nmae, best_fss, linreg_fss, paired_best, paired_linreg;
	std::size_t below = 0, defined = 0, nmae_below = 0;
	for (const auto *e : cells) {
		for (const auto &r : e->reports) {
			if (r.mase_monthly) {
				mase[r.method].push_back(*r.mase_monthly);
			}
		}
		if (!e->best) {
			continue;
		}
		++g.best_counts[*e->best];
		const auto *b = find_report(*e, *e->best);
		if (b->mase_monthly) {
			++defined;
			below += *b->mase_monthly < 1.0 ? 1 : 0;
		}
		nmae.push_back(b->nmae_fss);
		nmae_below += b->nmae_fss < 1.0 ? 1 : 0;
		if (b->mase_fss) {
			best_fss.push_back(*b->mase_fss);
		}
		const auto *l = find_report(*e, Method::linreg);
		if (l && l->mase_fss) {
			linreg_fss.push_back(*l->mase_fss);
		}
		if (l && b->mase_fss && l->mase_fss) {
			paired_best.push_back(*b->mase_fss);
			paired_linreg.push_back(*l->mase_fss);
		}
	}
	for (Method m : methods) {
		g.mase_monthly[m] = summarize(mase[m]);
	}
	g.best_nmae_fss = summarize(nmae);
	g.best_mase_fss = summarize(best_fss);
	g.linreg_mase_fss = summarize(linreg_fss);
	g.frac_best_mase_below_one = defined ? static_cast<double>(below) / static_cast<double>(defined) : 0.0;
	g.frac_best_nmae_below_one = nmae.empty() ? 0.0 : static_cast<double>(nmae_below) / static_cast<double>(nmae.size());
	g.wilcoxon_cells = paired_best.size();
	try {
		g.wilcoxon = wilcoxon_signed_rank(paired_best, paired_linreg);
	} catch (const InsufficientData &) {
		g.wilcoxon.reset();
	}
	return g;
}

} // namespace

EvaluationResult evaluate_forecasts(std::span<const CellForecast> forecasts, SelectBy by,
                                    const std::map<CellId, std::string> &continents) {
	EvaluationResult res;
	std::set<Method> seen;
	for (const auto &c : forecasts) {
		CellEvaluation e;
		e.cell = c.cell;
		for (const auto &m : c.methods) {
			seen.insert(m.method);
			if (auto r = report_for(c, m)) {
				e.reports.push_back(*r);
			}
		}
		if (std::any_of(e.reports.begin(), e.reports.end(), [](const ErrorReport &r) { return r.mae_monthly.has_value(); })) {
			e.best = select_best(e.reports, by);
		}
		res.cells.push_back(std::move(e));
	}
	for (Method m : seen) {
		if (m != Method::linreg) {
			res.compared.push_back(m);
		}
	}
	// Friedman over cells where every compared method succeeded. Ranks of the
	// monthly MAE equal ranks of the monthly MASE within a cell (same scale).
	std::vector<std::vector<double>> matrix;
	for (const auto &e : res.cells) {
		std::vector<double> row;
		for (Method m : res.compared) {
			const auto *r = find_report(e, m);
			if (!r || !r->mae_monthly) {
				break;
			}
			row.push_back(*r->mae_monthly);
		}
		if (row.size() == res.compared.size()) {
			matrix.push_back(std::move(row));
		}
	}
	res.friedman_cells = matrix.size();
	const int k = static_cast<int>(res.compared.size());
	if (k >= 2 && matrix.size() >= 10) {
		res.friedman = friedman_test(matrix);
		if (k <= 10) {
			res.cd_05 = nemenyi_cd(k, static_cast<int>(matrix.size()), 0.05);
			res.cd_001 = nemenyi_cd(k, static_cast<int>(matrix.size()), 0.001);
		}
	}
	std::vector<const CellEvaluation *> all;
	std::map<std::string, std::vector<const CellEvaluation *>> by_continent;
	for (const auto &e : res.cells) {
		all.push_back(&e);
		if (const auto it = continents.find(e.cell); it != continents.end()) {
			by_continent[it->second].push_back(&e);
		}
	}
	res.groups.push_back(summarize_group("global", all, res.compared));
	for (const auto &[name, cells] : by_continent) {
		res.groups.push_back(summarize_group(name, cells, res.compared));
	}
	return res;
}

void write_report(std::ostream &out, const EvaluationResult &result) {
	csv::Writer w(out);
	for (const char *h : {"cell", "method", "mae_monthly", "mase_monthly", "mae_fss", "nmae_fss", "mase_fss", "converged",
	                      "best"}) {
		w.field(h);
	}
	w.end_row();
	auto opt = [&w](const std::optional<double> &v) { v ? w.field(*v) : w.field(""); };
	for (const auto &e : result.cells) {
		for (const auto &r : e.reports) {
			w.field(r.cell.to_string()).field(method_name(r.method));
			opt(r.mae_monthly);
			opt(r.mase_monthly);
			w.field(r.mae_fss).field(r.nmae_fss);
			opt(r.mase_fss);
			w.field(r.converged ? 1 : 0).field(e.best && *e.best == r.method ? 1 : 0);
			w.end_row();
		}
	}
}

void write_summary(std::ostream &out, const EvaluationResult &result) {
	csv::Writer w(out);
	w.field("section").field("group").field("item").field("statistic").field("value");
	w.end_row();
	auto row = [&w](const std::string &section, const std::string &group, const std::string &item,
	                const std::string &stat, auto value) {
		w.field(section).field(group).field(item).field(stat).field(value);
		w.end_row();
	};
	auto quart = [&row](const std::string &section, const std::string &group, const std::string &item, const Summary &s) {
		row(section, group, item, "count", s.count);
		row(section, group, item, "outliers_removed", s.removed);
		row(section, group, item, "q1", s.q1);
		row(section, group, item, "median", s.median);
		row(section, group, item, "q3", s.q3);
	};
	for (const auto &g : result.groups) {
		row("cells", g.name, "all", "count", g.cells);
		for (const auto &[m, s] : g.mase_monthly) {
			quart("mase_monthly", g.name, std::string(method_name(m)), s);
		}
		for (const auto &[m, n] : g.best_counts) {
			row("best_method", g.name, std::string(method_name(m)), "cells", n);
		}
		row("best", g.name, "mase_monthly", "fraction_below_1", g.frac_best_mase_below_one);
		row("best", g.name, "nmae_fss", "fraction_below_1", g.frac_best_nmae_below_one);
		quart("nmae_fss", g.name, "best", g.best_nmae_fss);
		quart("mase_fss", g.name, "best", g.best_mase_fss);
		quart("mase_fss", g.name, "linreg", g.linreg_mase_fss);
		row("wilcoxon", g.name, "best_vs_linreg", "cells", g.wilcoxon_cells);
		if (g.wilcoxon) {
			row("wilcoxon", g.name, "best_vs_linreg", "statistic", g.wilcoxon->statistic);
			row("wilcoxon", g.name, "best_vs_linreg", "p_value", g.wilcoxon->p_value);
			row("wilcoxon", g.name, "best_vs_linreg", "degenerate", g.wilcoxon->degenerate ? 1 : 0);
		}
	}
	row("friedman", "global", "all", "cells", result.friedman_cells);
	if (result.friedman) {
		row("friedman", "global", "all", "statistic", result.friedman->statistic);
		row("friedman", "global", "all", "p_value", result.friedman->p_value);
		for (std::size_t j = 0; j < result.compared.size(); ++j) {
			row("friedman", "global", std::string(method_name(result.compared[j])), "mean_rank",
			    result.friedman->mean_ranks[j]);
		}
		if (result.cd_05 > 0.0) {
			row("nemenyi", "global", "all", "cd_0.05", result.cd_05);
			row("nemenyi", "global", "all", "cd_0.001", result.cd_001);
			for (std::size_t a = 0; a < result.compared.size(); ++a) {
				for (std::size_t b = a + 1; b < result.compared.size(); ++b) {
					const double ra = result.friedman->mean_ranks[a], rb = result.friedman->mean_ranks[b];
					const std::string pair =
					    std::string(method_name(result.compared[a])) + ":" + std::string(method_name(result.compared[b]));
					row("nemenyi", "global", pair, "rank_gap", std::abs(ra - rb));
					row("nemenyi", "global", pair, "significant_0.05", nemenyi_significant(ra, rb, result.cd_05) ? 1 : 0);
					row("nemenyi", "global", pair, "significant_0.001", nemenyi_significant(ra, rb, result.cd_001) ? 1 : 0);
				}
			}
		}
	}
}

} // namespace pyroseason
