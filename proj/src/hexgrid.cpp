#include "pyroseason/hexgrid.hpp"

#include "pyroseason/error.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>

namespace pyroseason {

namespace {

using detail::CornerWarp;
using detail::WarpZone;

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;
constexpr double kThird = 2.0 * kPi / 3.0; // 120 degrees
constexpr double kVertexHalfAngle = 36.0 * kDeg; // G: half of the 72 degree face angle
constexpr double kCotTheta = 1.7320508075688772935; // cot(30 deg), planar vertex half angle

struct Face {
	std::array<int, 3> v{};        // vertex ids, clockwise seen from outside
	std::array<int, 3> neighbor{}; // face across the edge opposite slot k
	Vec3 center;
	Vec3 t0; // tangent at center towards v[0]
	Vec3 t1; // tangent rotated 90 degrees clockwise from t0
};

struct Edge {
	int a = 0;
	int b = 0; // a < b
	std::array<int, 2> faces{};
};

struct Icosahedron {
	std::array<Vec3, 12> vertex;
	std::array<Face, 20> face;
	std::array<Edge, 30> edge;
	std::array<std::array<int, 5>, 12> vertex_faces{};
	std::array<std::array<int, 12>, 12> edge_of{};
	std::array<Eigen::Vector2d, 3> planar; // face triangle, circumradius `a`
	double g = 0.0;                        // angular radius face center -> vertex
	double tan_g = 0.0;
	double cos_g = 0.0;
	double a = 0.0;

	int slot(int f, int vertex_id) const {
		for (int k = 0; k < 3; ++k) {
			if (face[f].v[k] == vertex_id) {
				return k;
			}
		}
		return -1;
	}
};

Vec3 from_latlon_rad(double lat, double lon) {
	return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

Icosahedron build_icosahedron() {
	Icosahedron ico;

	// Canonical icosahedron: vertex 0 at the north pole, vertex 1 at 0E.
	std::array<Vec3, 12> canon;
	const double ring = std::atan(0.5);
	canon[0] = {0.0, 0.0, 1.0};
	for (int k = 0; k < 5; ++k) {
		canon[1 + k] = from_latlon_rad(ring, k * 72.0 * kDeg);
		canon[6 + k] = from_latlon_rad(-ring, (36.0 + k * 72.0) * kDeg);
	}
	canon[11] = {0.0, 0.0, -1.0};

	// Rotate vertex 0 onto 58.28252559N 11.25E with vertex 1 due north.
	const double lat0 = 58.28252559 * kDeg;
	const double lon0 = 11.25 * kDeg;
	const Vec3 target = from_latlon_rad(lat0, lon0);
	const Vec3 north(-std::sin(lat0) * std::cos(lon0), -std::sin(lat0) * std::sin(lon0), std::cos(lat0));
	Eigen::Matrix3d src, dst;
	src.col(0) = canon[0];
	src.col(1) = Vec3(1.0, 0.0, 0.0);
	src.col(2) = src.col(0).cross(src.col(1));
	dst.col(0) = target;
	dst.col(1) = north;
	dst.col(2) = target.cross(north);
	const Eigen::Matrix3d rot = dst * src.transpose();
	for (int i = 0; i < 12; ++i) {
		ico.vertex[i] = (rot * canon[i]).normalized();
	}

	// Adjacent vertices are the closest pairs.
	double min_d = 10.0;
	for (int i = 0; i < 12; ++i) {
		for (int j = i + 1; j < 12; ++j) {
			min_d = std::min(min_d, (ico.vertex[i] - ico.vertex[j]).norm());
		}
	}
	auto adjacent = [&](int i, int j) { return (ico.vertex[i] - ico.vertex[j]).norm() < min_d * 1.01; };

	int ne = 0;
	for (int i = 0; i < 12; ++i) {
		for (int j = i + 1; j < 12; ++j) {
			ico.edge_of[i][j] = ico.edge_of[j][i] = -1;
			if (adjacent(i, j)) {
				ico.edge[ne].a = i;
				ico.edge[ne].b = j;
				ico.edge_of[i][j] = ico.edge_of[j][i] = ne;
				++ne;
			}
		}
	}

	int nf = 0;
	for (int i = 0; i < 12; ++i) {
		for (int j = i + 1; j < 12; ++j) {
			for (int k = j + 1; k < 12; ++k) {
				if (adjacent(i, j) && adjacent(j, k) && adjacent(i, k)) {
					ico.face[nf++].v = {i, j, k};
				}
			}
		}
	}

	for (int f = 0; f < 20; ++f) {
		Face &fc = ico.face[f];
		fc.center = (ico.vertex[fc.v[0]] + ico.vertex[fc.v[1]] + ico.vertex[fc.v[2]]).normalized();
		auto tangent = [&](int id) {
			const Vec3 &p = ico.vertex[id];
			return (p - p.dot(fc.center) * fc.center).normalized();
		};
		fc.t0 = tangent(fc.v[0]);
		fc.t1 = fc.t0.cross(fc.center);
		const Vec3 d1 = tangent(fc.v[1]);
		double az1 = std::atan2(d1.dot(fc.t1), d1.dot(fc.t0));
		if (az1 < 0.0) {
			az1 += 2.0 * kPi;
		}
		if (std::abs(az1 - kThird) > 1e-6) {
			std::swap(fc.v[1], fc.v[2]);
		}
	}

	for (int e = 0; e < 30; ++e) {
		int found = 0;
		for (int f = 0; f < 20; ++f) {
			if (ico.slot(f, ico.edge[e].a) >= 0 && ico.slot(f, ico.edge[e].b) >= 0) {
				ico.edge[e].faces[found++] = f;
			}
		}
	}

	for (int f = 0; f < 20; ++f) {
		for (int k = 0; k < 3; ++k) {
			const int a = ico.face[f].v[(k + 1) % 3];
			const int b = ico.face[f].v[(k + 2) % 3];
			const Edge &e = ico.edge[ico.edge_of[a][b]];
			ico.face[f].neighbor[k] = e.faces[0] == f ? e.faces[1] : e.faces[0];
		}
	}

	for (int v = 0; v < 12; ++v) {
		int found = 0;
		for (int f = 0; f < 20; ++f) {
			if (ico.slot(f, v) >= 0) {
				ico.vertex_faces[v][found++] = f;
			}
		}
	}

	const Face &f0 = ico.face[0];
	ico.g = std::acos(std::clamp(f0.center.dot(ico.vertex[f0.v[0]]), -1.0, 1.0));
	ico.tan_g = std::tan(ico.g);
	ico.cos_g = std::cos(ico.g);
	// Planar face area equals the spherical face area, 4*pi/20 on the unit sphere.
	ico.a = std::sqrt(4.0 * kPi / (15.0 * std::sqrt(3.0)));
	for (int k = 0; k < 3; ++k) {
		ico.planar[k] = {ico.a * std::sin(k * kThird), ico.a * std::cos(k * kThird)};
	}
	return ico;
}

const Icosahedron &icosahedron() {
	static const Icosahedron ico = build_icosahedron();
	return ico;
}

// Snyder equal-area forward projection of a unit vector onto face f.
Eigen::Vector2d snyder_forward(const Icosahedron &ico, int f, const Vec3 &p) {
	const Face &fc = ico.face[f];
	const double z = std::acos(std::clamp(p.dot(fc.center), -1.0, 1.0));
	if (z < 1e-15) {
		return {0.0, 0.0};
	}
	double az = std::atan2(p.dot(fc.t1), p.dot(fc.t0));
	if (az < 0.0) {
		az += 2.0 * kPi;
	}
	const int sector = std::min(2, static_cast<int>(az / kThird));
	az -= sector * kThird;

	const double q = std::atan2(ico.tan_g, std::cos(az) + std::sin(az) * kCotTheta);
	const double h = std::acos(std::clamp(std::sin(az) * std::sin(kVertexHalfAngle) * ico.cos_g -
	                                          std::cos(az) * std::cos(kVertexHalfAngle),
	                                      -1.0, 1.0));
	const double area = az + kVertexHalfAngle + h - kPi;
	double azp = std::atan2(2.0 * area, ico.a * ico.a - 2.0 * area * kCotTheta);
	const double dp = ico.a / (std::cos(azp) + std::sin(azp) * kCotTheta);
	const double rho = dp * std::sin(z / 2.0) / std::sin(q / 2.0);
	azp += sector * kThird;
	return {rho * std::sin(azp), rho * std::cos(azp)};
}

Vec3 snyder_inverse(const Icosahedron &ico, int f, const Eigen::Vector2d &xy) {
	const Face &fc = ico.face[f];
	const double rho = xy.norm();
	if (rho < 1e-15) {
		return fc.center;
	}
	double azp = std::atan2(xy.x(), xy.y());
	if (azp < 0.0) {
		azp += 2.0 * kPi;
	}
	const int sector = std::min(2, static_cast<int>(azp / kThird));
	azp -= sector * kThird;

	const double dp = ico.a / (std::cos(azp) + std::sin(azp) * kCotTheta);
	const double area = 0.5 * ico.a * dp * std::sin(azp);
	const double az = std::atan2(std::cos(kVertexHalfAngle - area) - std::cos(kVertexHalfAngle),
	                             std::sin(kVertexHalfAngle - area) - std::sin(kVertexHalfAngle) * ico.cos_g);
	const double q = std::atan2(ico.tan_g, std::cos(az) + std::sin(az) * kCotTheta);
	const double z = 2.0 * std::asin(std::min(1.0, rho * std::sin(q / 2.0) / dp));
	const double full = az + sector * kThird;
	const Vec3 dir = std::cos(full) * fc.t0 + std::sin(full) * fc.t1;
	return (std::cos(z) * fc.center + std::sin(z) * dir).normalized();
}

// Lattice point on a face in integer barycentric coordinates with
// denominator m; at most one coordinate may be negative before unfolding.
struct FacePoint {
	int face = 0;
	std::array<int, 3> c{};

	friend bool operator==(const FacePoint &, const FacePoint &) = default;
};

// Re-expresses a point lying beyond one edge of its face in the coordinates
// of the neighbouring face (the two triangles unfold into a rhombus).
std::optional<FacePoint> unfold(const Icosahedron &ico, FacePoint p) {
	for (int pass = 0; pass < 2; ++pass) {
		int neg = -1, negatives = 0;
		for (int k = 0; k < 3; ++k) {
			if (p.c[k] < 0) {
				neg = k;
				++negatives;
			}
		}
		if (negatives == 0) {
			return p;
		}
		if (negatives > 1) {
			return std::nullopt;
		}
		const Face &fc = ico.face[p.face];
		const int g = fc.neighbor[neg];
		FacePoint q;
		q.face = g;
		const int u = p.c[neg];
		for (int k = 0; k < 3; ++k) {
			const int s = ico.slot(g, fc.v[k]);
			if (k != neg) {
				q.c[s] = p.c[k] + u;
			}
		}
		for (int s = 0; s < 3; ++s) {
			if (ico.slot(p.face, ico.face[g].v[s]) < 0) {
				q.c[s] = -u;
			}
		}
		p = q;
	}
	for (int k = 0; k < 3; ++k) {
		if (p.c[k] < 0) {
			return std::nullopt;
		}
	}
	return p;
}

// Points on edges or vertices are owned by the lowest-numbered face that
// contains them, which makes every lattice point and corner have one
// representation.
FacePoint canonical(const Icosahedron &ico, const FacePoint &p) {
	int zeros = 0;
	for (int k = 0; k < 3; ++k) {
		zeros += p.c[k] == 0;
	}
	if (zeros == 0) {
		return p;
	}
	const Face &fc = ico.face[p.face];
	int owner = p.face;
	if (zeros == 2) {
		for (int k = 0; k < 3; ++k) {
			if (p.c[k] != 0) {
				owner = ico.vertex_faces[fc.v[k]][0];
			}
		}
	} else {
		int a = -1, b = -1;
		for (int k = 0; k < 3; ++k) {
			if (p.c[k] != 0) {
				(a < 0 ? a : b) = fc.v[k];
			}
		}
		const Edge &e = ico.edge[ico.edge_of[a][b]];
		owner = std::min(e.faces[0], e.faces[1]);
	}
	if (owner == p.face) {
		return p;
	}
	FacePoint q;
	q.face = owner;
	for (int k = 0; k < 3; ++k) {
		const int s = ico.slot(owner, fc.v[k]);
		if (s >= 0) {
			q.c[s] = p.c[k];
		}
	}
	return q;
}

Vec3 planar_to_vector(const Icosahedron &ico, int face, const std::array<double, 3> &u) {
	Eigen::Vector2d xy = Eigen::Vector2d::Zero();
	for (int k = 0; k < 3; ++k) {
		xy += u[k] * ico.planar[k];
	}
	return snyder_inverse(ico, face, xy);
}

Vec3 face_point_vector(const Icosahedron &ico, const FacePoint &p, int m) {
	std::array<double, 3> u{};
	for (int k = 0; k < 3; ++k) {
		u[k] = static_cast<double>(p.c[k]) / m;
	}
	return planar_to_vector(ico, p.face, u);
}

// Squared planar distance between barycentric points, in units of the face edge.
double planar_dist2(const std::array<double, 3> &a, const std::array<double, 3> &b) {
	double q = 0.0;
	for (int k = 0; k < 3; ++k) {
		q += (a[k] - b[k]) * (a[k] - b[k]);
	}
	return q / 2.0;
}

// Applies a radial warp about `origin`: rho^2 -> rho^2 + shift * h(rho^2),
// with h = 1 up to `inner` and falling linearly to 0 at `outer`.
bool radial_warp(std::array<double, 3> &u, const std::array<double, 3> &origin, const WarpZone &z) {
	const double r2 = planar_dist2(u, origin);
	if (z.shift == 0.0 || r2 >= z.outer || r2 == 0.0) {
		return false;
	}
	const double h = r2 <= z.inner ? 1.0 : (z.outer - r2) / (z.outer - z.inner);
	const double s = std::sqrt((r2 + z.shift * h) / r2);
	for (int k = 0; k < 3; ++k) {
		u[k] = origin[k] + s * (u[k] - origin[k]);
	}
	return true;
}

// Corner positions. The Snyder projection is not differentiable at face
// centers and icosahedron vertices, so geodesic polygons around those points
// lose or gain a fixed fraction of area at every resolution. Corners near
// them are pushed radially (area-neutrally beyond the innermost ring) so the
// geodesic cells keep equal areas.
Vec3 corner_vector(const Icosahedron &ico, const FacePoint &p, int m, const CornerWarp &w) {
	std::array<double, 3> u{};
	for (int k = 0; k < 3; ++k) {
		u[k] = static_cast<double>(p.c[k]) / m;
	}
	bool moved = false;
	for (int k = 0; k < 3 && !moved; ++k) {
		std::array<double, 3> v{};
		v[k] = 1.0;
		moved = radial_warp(u, v, w.vertex);
	}
	if (!moved) {
		radial_warp(u, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, w.center);
	}
	return planar_to_vector(ico, p.face, u);
}

int nearest_face(const Icosahedron &ico, const Vec3 &p) {
	int best = 0;
	double best_dot = -2.0;
	for (int f = 0; f < 20; ++f) {
		const double d = ico.face[f].center.dot(p);
		if (d > best_dot) {
			best_dot = d;
			best = f;
		}
	}
	return best;
}

std::int64_t tri_start(std::int64_t i, std::int64_t m) {
	return i * (m + 1) - i * (i - 1) / 2;
}

// Position of (i, j) in the row-major enumeration of i, j >= 0, i + j <= m.
std::int64_t tri_index(std::int64_t i, std::int64_t j, std::int64_t m) {
	return tri_start(i, m) + j;
}

std::pair<std::int64_t, std::int64_t> tri_unindex(std::int64_t idx, std::int64_t m) {
	// Largest i with tri_start(i) <= idx; start from the quadratic root.
	const double b = 2.0 * m + 3.0;
	auto i = static_cast<std::int64_t>(std::floor((b - std::sqrt(std::max(0.0, b * b - 8.0 * idx))) / 2.0));
	i = std::clamp<std::int64_t>(i, 0, m);
	while (i > 0 && tri_start(i, m) > idx) {
		--i;
	}
	while (i < m && tri_start(i + 1, m) <= idx) {
		++i;
	}
	return {i, idx - tri_start(i, m)};
}

int mod3(int v) {
	return ((v % 3) + 3) % 3;
}

// Hexagon corner offsets in barycentric units of 1/m, in cyclic order.
const std::array<std::array<int, 3>, 6> &corner_offsets(bool odd) {
	static const std::array<std::array<int, 3>, 6> even_offsets{{
	    {2, -1, -1}, {1, 1, -2}, {-1, 2, -1}, {-2, 1, 1}, {-1, -1, 2}, {1, -2, 1}}};
	static const std::array<std::array<int, 3>, 6> odd_offsets{{
	    {1, -1, 0}, {1, 0, -1}, {0, 1, -1}, {-1, 1, 0}, {-1, 0, 1}, {0, -1, 1}}};
	return odd ? odd_offsets : even_offsets;
}

// Signed angular distance of p from the great circle through a and b.
double signed_edge(const Vec3 &a, const Vec3 &b, const Vec3 &p) {
	const Vec3 n = a.cross(b);
	return n.dot(p) / n.norm();
}

// Points this close to an edge (radians, about 6 micrometres on the ground)
// count as lying on it.
constexpr double kEdgeTolerance = 1e-12;

} // namespace

GeoPoint GeoPoint::normalized(double latitude, double longitude) {
	if (!std::isfinite(latitude) || !std::isfinite(longitude) || latitude < -90.0 || latitude > 90.0) {
		throw BoundsError("latitude outside [-90, 90] or non-finite coordinate");
	}
	double lon = std::fmod(longitude + 180.0, 360.0);
	if (lon < 0.0) {
		lon += 360.0;
	}
	lon -= 180.0;
	if (lon >= 180.0) {
		lon = -180.0;
	}
	if (latitude == 90.0 || latitude == -90.0) {
		lon = 0.0;
	}
	return {latitude, lon};
}

std::string CellId::to_string() const {
	return std::to_string(resolution) + ":" + std::to_string(index);
}

CellId CellId::parse(const std::string &text) {
	const auto colon = text.find(':');
	if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
		throw ParseError("invalid cell id '" + text + "', expected R:INDEX");
	}
	try {
		std::size_t used = 0;
		CellId c;
		c.resolution = std::stoi(text.substr(0, colon), &used);
		if (used != colon) {
			throw ParseError("invalid cell id '" + text + "'");
		}
		const std::string idx = text.substr(colon + 1);
		c.index = std::stoull(idx, &used);
		if (used != idx.size() || idx[0] == '-') {
			throw ParseError("invalid cell id '" + text + "'");
		}
		if (c.resolution < 0 || c.resolution > kMaxResolution || c.index >= cell_count(c.resolution)) {
			throw BoundsError("cell id out of range: " + text);
		}
		return c;
	} catch (const std::logic_error &) {
		throw ParseError("invalid cell id '" + text + "'");
	}
}

std::uint64_t cell_count(int resolution) {
	if (resolution < 0 || resolution > kMaxResolution) {
		throw BoundsError("resolution must be in [0, " + std::to_string(kMaxResolution) + "]");
	}
	std::uint64_t p = 1;
	for (int i = 0; i < resolution; ++i) {
		p *= 3;
	}
	return 10 * p + 2;
}

namespace geo {

Vec3 to_vector(const GeoPoint &p) {
	if (p.latitude >= 90.0) {
		return {0.0, 0.0, 1.0};
	}
	if (p.latitude <= -90.0) {
		return {0.0, 0.0, -1.0};
	}
	return from_latlon_rad(p.latitude * kDeg, p.longitude * kDeg);
}

GeoPoint to_geo(const Vec3 &v) {
	const double lat = std::atan2(v.z(), std::hypot(v.x(), v.y())) / kDeg;
	double lon = std::atan2(v.y(), v.x()) / kDeg;
	if (lon >= 180.0) {
		lon = -180.0;
	}
	if (std::hypot(v.x(), v.y()) == 0.0) {
		lon = 0.0;
	}
	return {lat, lon};
}

double spherical_polygon_area(std::span<const Vec3> ring) {
	if (ring.size() < 3) {
		return 0.0;
	}
	// Fan from the centroid; each triangle by Van Oosterom-Strackee.
	Vec3 c = Vec3::Zero();
	for (const auto &v : ring) {
		c += v;
	}
	c.normalize();
	double total = 0.0;
	for (std::size_t i = 0; i < ring.size(); ++i) {
		const Vec3 &a = ring[i];
		const Vec3 &b = ring[(i + 1) % ring.size()];
		const double num = c.dot(a.cross(b));
		const double den = 1.0 + c.dot(a) + a.dot(b) + b.dot(c);
		total += 2.0 * std::atan2(num, den);
	}
	return std::abs(total);
}

} // namespace geo

void HexGrid::check(CellId c) const {
	if (c.resolution != resolution_ || c.index >= count_) {
		throw BoundsError("cell " + c.to_string() + " not in grid of resolution " + std::to_string(resolution_));
	}
}

namespace {

struct GridShape {
	int n;
	int m;
	bool odd;
};

std::int64_t interior_count(const GridShape &s) {
	const std::int64_t n = s.n;
	const std::int64_t class_one = (n - 1) * (n - 2) / 2;
	return s.odd ? class_one + n * n : class_one;
}

std::uint64_t index_of(const Icosahedron &ico, const GridShape &s, const FacePoint &p) {
	int zeros = 0;
	for (int k = 0; k < 3; ++k) {
		zeros += p.c[k] == 0;
	}
	const Face &fc = ico.face[p.face];
	if (zeros == 2) {
		for (int k = 0; k < 3; ++k) {
			if (p.c[k] != 0) {
				return static_cast<std::uint64_t>(fc.v[k]);
			}
		}
	}
	const std::int64_t per_edge = s.n - 1;
	if (zeros == 1) {
		int a = -1, b = -1, cb = 0;
		for (int k = 0; k < 3; ++k) {
			if (p.c[k] != 0) {
				if (a < 0) {
					a = fc.v[k];
				} else {
					b = fc.v[k];
				}
			}
		}
		const int hi = std::max(a, b);
		cb = p.c[ico.slot(p.face, hi)];
		const int e = ico.edge_of[a][b];
		const std::int64_t t = cb / 3;
		return static_cast<std::uint64_t>(12 + e * per_edge + (t - 1));
	}
	const std::int64_t base = 12 + 30 * per_edge + p.face * interior_count(s);
	const std::int64_t n = s.n;
	const int r = mod3(p.c[0]);
	if (r == 0) {
		const std::int64_t i = p.c[0] / 3 - 1, j = p.c[1] / 3 - 1;
		return static_cast<std::uint64_t>(base + tri_index(i, j, n - 3));
	}
	const std::int64_t class_one = (n - 1) * (n - 2) / 2;
	if (r == 1) {
		const std::int64_t i = (p.c[0] - 1) / 3, j = (p.c[1] - 1) / 3;
		return static_cast<std::uint64_t>(base + class_one + tri_index(i, j, n - 1));
	}
	const std::int64_t ups = n * (n + 1) / 2;
	const std::int64_t i = (p.c[0] - 2) / 3, j = (p.c[1] - 2) / 3;
	return static_cast<std::uint64_t>(base + class_one + ups + tri_index(i, j, n - 2));
}

FacePoint center_of(const Icosahedron &ico, const GridShape &s, std::uint64_t index) {
	const auto idx = static_cast<std::int64_t>(index);
	if (idx < 12) {
		FacePoint p;
		p.face = ico.vertex_faces[idx][0];
		p.c[ico.slot(p.face, static_cast<int>(idx))] = s.m;
		return p;
	}
	const std::int64_t per_edge = s.n - 1;
	if (idx < 12 + 30 * per_edge) {
		const std::int64_t e = (idx - 12) / per_edge;
		const std::int64_t t = (idx - 12) % per_edge + 1;
		const Edge &edge = ico.edge[e];
		FacePoint p;
		p.face = std::min(edge.faces[0], edge.faces[1]);
		p.c[ico.slot(p.face, edge.b)] = static_cast<int>(3 * t);
		p.c[ico.slot(p.face, edge.a)] = static_cast<int>(s.m - 3 * t);
		return p;
	}
	const std::int64_t rest = idx - 12 - 30 * per_edge;
	const std::int64_t per_face = interior_count(s);
	FacePoint p;
	p.face = static_cast<int>(rest / per_face);
	std::int64_t local = rest % per_face;
	const std::int64_t n = s.n;
	const std::int64_t class_one = (n - 1) * (n - 2) / 2;
	if (local < class_one) {
		auto [i, j] = tri_unindex(local, n - 3);
		p.c = {static_cast<int>(3 * (i + 1)), static_cast<int>(3 * (j + 1)), 0};
	} else {
		local -= class_one;
		const std::int64_t ups = n * (n + 1) / 2;
		if (local < ups) {
			auto [i, j] = tri_unindex(local, n - 1);
			p.c = {static_cast<int>(3 * i + 1), static_cast<int>(3 * j + 1), 0};
		} else {
			auto [i, j] = tri_unindex(local - ups, n - 2);
			p.c = {static_cast<int>(3 * i + 2), static_cast<int>(3 * j + 2), 0};
		}
	}
	p.c[2] = s.m - p.c[0] - p.c[1];
	return p;
}

bool is_center(const GridShape &s, const std::array<int, 3> &c) {
	if (s.odd) {
		return mod3(c[0]) == mod3(c[1]) && mod3(c[1]) == mod3(c[2]);
	}
	return mod3(c[0]) == 0 && mod3(c[1]) == 0 && mod3(c[2]) == 0;
}

std::vector<FacePoint> corners_of(const Icosahedron &ico, const GridShape &s, const FacePoint &center) {
	const auto &offsets = corner_offsets(s.odd);
	std::vector<FacePoint> corners;
	int zeros = 0;
	for (int k = 0; k < 3; ++k) {
		zeros += center.c[k] == 0;
	}
	if (zeros == 2) {
		int vid = -1;
		for (int k = 0; k < 3; ++k) {
			if (center.c[k] != 0) {
				vid = ico.face[center.face].v[k];
			}
		}
		for (int f : ico.vertex_faces[vid]) {
			FacePoint base;
			base.face = f;
			base.c[ico.slot(f, vid)] = s.m;
			for (const auto &o : offsets) {
				FacePoint q = base;
				bool inside = true;
				for (int k = 0; k < 3; ++k) {
					q.c[k] += o[k];
					inside = inside && q.c[k] >= 0;
				}
				if (!inside) {
					continue;
				}
				q = canonical(ico, q);
				if (std::find(corners.begin(), corners.end(), q) == corners.end()) {
					corners.push_back(q);
				}
			}
		}
		return corners;
	}
	for (const auto &o : offsets) {
		FacePoint q = center;
		for (int k = 0; k < 3; ++k) {
			q.c[k] += o[k];
		}
		auto u = unfold(ico, q);
		if (!u) {
			throw Error("hexgrid: corner could not be unfolded");
		}
		corners.push_back(canonical(ico, *u));
	}
	return corners;
}

} // namespace

HexGrid::HexGrid(int resolution)
    : resolution_(resolution), count_(cell_count(resolution)), odd_(resolution % 2 == 1) {
	n_ = 1;
	for (int i = 0; i < resolution / 2; ++i) {
		n_ *= 3;
	}
	m_ = 3 * n_;
	calibrate();
}

void HexGrid::calibrate() {
	const auto &ico = icosahedron();
	warp_ = {};
	if (resolution_ == 0) {
		return;
	}
	// Lattice spacing in face-edge units; corners of the cell sitting on a
	// vertex or face center lie at spacing^2 / 3.
	const double spacing = odd_ ? 1.0 / (n_ * std::sqrt(3.0)) : 1.0 / n_;
	const double inner = 0.5 * spacing * spacing;
	// Zones must stay clear of each other (vertex to center is 1/sqrt(3)) and
	// of the lines where the warp could move a corner off its face edge.
	const double rc = std::max(std::min(2.0 * spacing, 0.21), 1.15 * std::sqrt(inner));
	double rv = std::min(2.5 * spacing, 1.0 / std::sqrt(3.0) - rc - 0.01);
	if (rv * rv <= inner) {
		rv = 0.49;
	}
	warp_.vertex = {inner, rv * rv, 0.0};
	warp_.center = {inner, rc * rc, 0.0};

	const double hex = 4.0 * kPi / (10.0 * std::pow(3.0, resolution_));
	auto solve = [&](WarpZone &zone, CellId cell, double target) {
		auto residual = [&](double shift) {
			zone.shift = shift;
			const auto ring = corner_vectors(cell);
			return geo::spherical_polygon_area(ring) / target - 1.0;
		};
		double x0 = 0.0, f0 = residual(x0);
		double x1 = 0.05 * inner, f1 = residual(x1);
		for (int it = 0; it < 30 && std::abs(f1) > 1e-13 && f1 != f0; ++it) {
			const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
			x0 = x1;
			f0 = f1;
			x1 = x2;
			f1 = residual(x1);
		}
		zone.shift = x1;
	};
	solve(warp_.vertex, {resolution_, 0}, hex * 5.0 / 6.0);
	if (inner < warp_.center.outer && (odd_ || n_ % 3 == 0) && resolution_ > 1) {
		const GridShape s{n_, m_, odd_};
		const FacePoint c{0, {n_, n_, n_}};
		solve(warp_.center, {resolution_, index_of(ico, s, c)}, hex);
	}
}

Vec3 HexGrid::center_vector(CellId c) const {
	check(c);
	const auto &ico = icosahedron();
	return face_point_vector(ico, center_of(ico, {n_, m_, odd_}, c.index), m_);
}

bool HexGrid::is_pentagon(CellId c) const {
	check(c);
	return c.index < 12;
}

std::vector<Vec3> HexGrid::corner_vectors(CellId c) const {
	check(c);
	const auto &ico = icosahedron();
	const GridShape s{n_, m_, odd_};
	const FacePoint center = center_of(ico, s, c.index);
	const auto corners = corners_of(ico, s, center);
	if (c.index >= 12) {
		// Offsets are already cyclic; unfolding preserves orientation.
		std::vector<Vec3> ring;
		ring.reserve(corners.size());
		for (const auto &q : corners) {
			ring.push_back(corner_vector(ico, q, m_, warp_));
		}
		if ((ring[1] - ring[0]).cross(ring[2] - ring[1]).dot(ring[0]) < 0.0) {
			std::reverse(ring.begin(), ring.end());
		}
		return ring;
	}
	const Vec3 cv = face_point_vector(ico, center, m_);

	std::vector<std::pair<double, Vec3>> ordered;
	ordered.reserve(corners.size());
	Vec3 e1 = std::abs(cv.z()) < 0.9 ? Vec3(0, 0, 1).cross(cv) : Vec3(1, 0, 0).cross(cv);
	e1.normalize();
	const Vec3 e2 = cv.cross(e1);
	for (const auto &q : corners) {
		const Vec3 v = corner_vector(ico, q, m_, warp_);
		ordered.emplace_back(std::atan2(v.dot(e2), v.dot(e1)), v);
	}
	std::sort(ordered.begin(), ordered.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
	std::vector<Vec3> ring;
	ring.reserve(ordered.size());
	for (auto &[angle, v] : ordered) {
		ring.push_back(v);
	}
	return ring;
}

int HexGrid::classify(CellId c, const Vec3 &p) const {
	const auto ring = corner_vectors(c);
	int result = 1;
	for (std::size_t i = 0; i < ring.size(); ++i) {
		const double s = signed_edge(ring[i], ring[(i + 1) % ring.size()], p);
		if (s < -kEdgeTolerance) {
			return -1;
		}
		if (s <= kEdgeTolerance) {
			result = 0;
		}
	}
	return result;
}

CellGeometry HexGrid::geometry(CellId c) const {
	const auto ring = corner_vectors(c);
	CellGeometry g;
	g.center = geo::to_geo(center_vector(c));
	g.boundary.reserve(ring.size());
	for (const auto &v : ring) {
		g.boundary.push_back(geo::to_geo(v));
	}
	g.area_km2 = geo::spherical_polygon_area(ring) * kEarthRadiusKm * kEarthRadiusKm;
	return g;
}

CellId HexGrid::locate(const GeoPoint &p) const {
	return locate(geo::to_vector(GeoPoint::normalized(p.latitude, p.longitude)));
}

CellId HexGrid::locate(const Vec3 &unit) const {
	const auto &ico = icosahedron();
	const GridShape s{n_, m_, odd_};
	const Vec3 p = unit.normalized();
	const int f = nearest_face(ico, p);
	const Eigen::Vector2d xy = snyder_forward(ico, f, p);

	std::array<double, 3> cont{};
	for (int k = 0; k < 3; ++k) {
		const double u = 1.0 / 3.0 + (2.0 / 3.0) * xy.dot(ico.planar[k]) / (ico.a * ico.a);
		cont[k] = u * m_;
	}

	// Lattice points near the projected point, ordered by planar distance.
	struct Candidate {
		double dist;
		FacePoint point;
	};
	std::vector<Candidate> cands;
	cands.reserve(16);
	const int b1 = static_cast<int>(std::floor(cont[1]));
	const int b2 = static_cast<int>(std::floor(cont[2]));
	for (int c1 = b1 - 4; c1 <= b1 + 5; ++c1) {
		for (int c2 = b2 - 4; c2 <= b2 + 5; ++c2) {
			const std::array<int, 3> c{m_ - c1 - c2, c1, c2};
			if (!is_center(s, c)) {
				continue;
			}
			int negatives = 0;
			for (int k = 0; k < 3; ++k) {
				negatives += c[k] < 0;
			}
			if (negatives > 1) {
				continue;
			}
			double d2 = 0.0;
			for (int k = 0; k < 3; ++k) {
				d2 += (c[k] - cont[k]) * (c[k] - cont[k]);
			}
			cands.push_back({d2, FacePoint{f, c}});
		}
	}
	std::sort(cands.begin(), cands.end(), [](const Candidate &a, const Candidate &b) { return a.dist < b.dist; });

	std::vector<std::uint64_t> seen;
	std::optional<std::uint64_t> best_boundary;
	std::optional<std::uint64_t> first;
	const std::size_t limit = std::min<std::size_t>(cands.size(), 8);
	for (std::size_t i = 0; i < limit; ++i) {
		auto u = unfold(ico, cands[i].point);
		if (!u) {
			continue;
		}
		const std::uint64_t idx = index_of(ico, s, canonical(ico, *u));
		if (std::find(seen.begin(), seen.end(), idx) != seen.end()) {
			continue;
		}
		seen.push_back(idx);
		if (!first) {
			first = idx;
		}
		const int cls = classify({resolution_, idx}, p);
		if (cls > 0) {
			return {resolution_, idx};
		}
		if (cls == 0 && (!best_boundary || idx < *best_boundary)) {
			best_boundary = idx;
		}
	}
	if (best_boundary) {
		return {resolution_, *best_boundary};
	}
	// Unreachable for a valid tiling; keep the planar nearest cell.
	return {resolution_, first.value_or(0)};
}

CellId latlon_to_cell(const GeoPoint &p, int resolution) {
	return HexGrid(resolution).locate(p);
}

CellGeometry cell_geometry(CellId c) {
	return HexGrid(c.resolution).geometry(c);
}

} // namespace pyroseason
