#include "pyroseason/geojson.hpp"

#include "pyroseason/csv.hpp"
#include "pyroseason/error.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

namespace pyroseason {

namespace {

double signed_area(const Ring &r) {
	double a = 0.0;
	for (std::size_t i = 0; i + 1 < r.size(); ++i) {
		a += r[i][0] * r[i + 1][1] - r[i + 1][0] * r[i][1];
	}
	return 0.5 * a;
}

void close_ring(Ring &r) {
	if (!r.empty() && r.front() != r.back()) {
		r.push_back(r.front());
	}
}

void orient_ccw(Ring &r) {
	if (signed_area(r) < 0.0) {
		std::reverse(r.begin(), r.end());
	}
}

// Sutherland-Hodgman against the half plane keep(x) on an open ring.
template <class Keep>
Ring clip(const Ring &in, double cut, Keep keep) {
	Ring out;
	for (std::size_t i = 0; i < in.size(); ++i) {
		const LonLat &a = in[i];
		const LonLat &b = in[(i + 1) % in.size()];
		const bool ka = keep(a[0]), kb = keep(b[0]);
		if (ka) {
			out.push_back(a);
		}
		if (ka != kb) {
			const double t = (cut - a[0]) / (b[0] - a[0]);
			out.push_back({cut, a[1] + t * (b[1] - a[1])});
		}
	}
	return out;
}

Ring pole_ring(std::vector<LonLat> pts, bool north) {
	std::sort(pts.begin(), pts.end());
	// Latitude where the boundary meets the antimeridian.
	const LonLat &lo = pts.front();
	const LonLat &hi = pts.back();
	const double span = (lo[0] + 360.0) - hi[0];
	const double t = span > 0.0 ? (180.0 - hi[0]) / span : 0.5;
	const double edge = hi[1] + t * (lo[1] - hi[1]);
	const double pole = north ? 90.0 : -90.0;
	Ring r;
	if (north) {
		r.push_back({-180.0, edge});
		r.insert(r.end(), pts.begin(), pts.end());
		r.push_back({180.0, edge});
		r.push_back({180.0, pole});
		r.push_back({-180.0, pole});
	} else {
		r.push_back({-180.0, pole});
		r.push_back({180.0, pole});
		r.push_back({180.0, edge});
		r.insert(r.end(), pts.rbegin(), pts.rend());
		r.push_back({-180.0, edge});
	}
	close_ring(r);
	return r;
}

nlohmann::json number(double v) {
	return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

} // namespace

std::vector<Ring> cell_rings(const HexGrid &grid, CellId cell) {
	const CellGeometry g = grid.geometry(cell);
	std::vector<LonLat> pts;
	pts.reserve(g.boundary.size());
	for (const auto &p : g.boundary) {
		pts.push_back({p.longitude, p.latitude});
	}
	for (const bool north : {true, false}) {
		if (grid.locate(GeoPoint{north ? 90.0 : -90.0, 0.0}) == cell) {
			return {pole_ring(pts, north)};
		}
	}
	Ring r = pts;
	for (std::size_t i = 1; i < r.size(); ++i) {
		while (r[i][0] - r[i - 1][0] > 180.0) {
			r[i][0] -= 360.0;
		}
		while (r[i][0] - r[i - 1][0] < -180.0) {
			r[i][0] += 360.0;
		}
	}
	double lo = r.front()[0], hi = lo;
	for (const auto &p : r) {
		lo = std::min(lo, p[0]);
		hi = std::max(hi, p[0]);
	}
	std::vector<Ring> out;
	if (hi <= 180.0 && lo >= -180.0) {
		out.push_back(r);
	} else {
		const double cut = hi > 180.0 ? 180.0 : -180.0;
		const double shift = hi > 180.0 ? -360.0 : 360.0;
		Ring west = clip(r, cut, [cut](double x) { return x <= cut; });
		Ring east = clip(r, cut, [cut](double x) { return x >= cut; });
		Ring &outside = hi > 180.0 ? east : west;
		for (auto &p : outside) {
			p[0] += shift;
		}
		for (Ring *piece : {&west, &east}) {
			if (piece->size() >= 3) {
				out.push_back(*piece);
			}
		}
	}
	for (auto &ring : out) {
		for (auto &p : ring) {
			p[0] = std::clamp(p[0], -180.0, 180.0);
		}
		close_ring(ring);
		orient_ccw(ring);
	}
	return out;
}

void write_geojson(std::ostream &out, const HexGrid &grid, std::span<const CellId> cells, const std::string &field,
                   std::span<const double> values) {
	if (!field.empty() && values.size() != cells.size()) {
		throw ParameterError("one value per cell is required");
	}
	nlohmann::json features = nlohmann::json::array();
	for (std::size_t i = 0; i < cells.size(); ++i) {
		const auto rings = cell_rings(grid, cells[i]);
		nlohmann::json geometry;
		auto coords = [](const Ring &r) {
			nlohmann::json c = nlohmann::json::array();
			for (const auto &p : r) {
				c.push_back({p[0], p[1]});
			}
			return c;
		};
		if (rings.size() == 1) {
			geometry = {{"type", "Polygon"}, {"coordinates", {coords(rings[0])}}};
		} else {
			nlohmann::json polys = nlohmann::json::array();
			for (const auto &r : rings) {
				polys.push_back({coords(r)});
			}
			geometry = {{"type", "MultiPolygon"}, {"coordinates", polys}};
		}
		nlohmann::json props = {{"cell", cells[i].to_string()}};
		if (!field.empty()) {
			props[field] = number(values[i]);
		}
		features.push_back({{"type", "Feature"}, {"geometry", geometry}, {"properties", props}});
	}
	const nlohmann::json doc = {{"type", "FeatureCollection"}, {"features", features}};
	out << doc.dump() << '\n';
}

void write_histogram(std::ostream &out, std::span<const double> values, int bins) {
	if (bins < 1) {
		throw ParameterError("histogram needs at least one bin");
	}
	std::vector<double> x;
	for (double v : values) {
		if (std::isfinite(v)) {
			x.push_back(v);
		}
	}
	csv::Writer w(out);
	w.field("bin").field("lower").field("upper").field("count").field("density");
	w.end_row();
	if (x.empty()) {
		return;
	}
	const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
	double lo = *mn, hi = *mx;
	if (hi == lo) {
		lo -= 0.5;
		hi += 0.5;
	}
	const double width = (hi - lo) / bins;
	std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
	for (double v : x) {
		auto b = static_cast<std::size_t>((v - lo) / width);
		counts[std::min(b, counts.size() - 1)] += 1;
	}
	for (int b = 0; b < bins; ++b) {
		const auto c = counts[static_cast<std::size_t>(b)];
		w.field(b)
		    .field(lo + b * width)
		    .field(b + 1 == bins ? hi : lo + (b + 1) * width)
		    .field(c)
		    .field(static_cast<double>(c) / (static_cast<double>(x.size()) * width));
		w.end_row();
	}
}

} // namespace pyroseason
