#pragma once

#include <Eigen/Core>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pyroseason {

using Vec3 = Eigen::Vector3d;

inline constexpr int kMaxResolution = 15;
inline constexpr double kEarthRadiusKm = 6371.0072; // authalic sphere

struct GeoPoint {
	double latitude = 0.0;  // degrees, [-90, 90]
	double longitude = 0.0; // degrees, [-180, 180)

	// Validates latitude and wraps longitude into [-180, 180). Longitude is
	// forced to 0 at the poles so that every representation of a pole is the
	// same point.
	static GeoPoint normalized(double latitude, double longitude);
};

struct CellId {
	int resolution = 0;
	std::uint64_t index = 0;

	friend auto operator<=>(const CellId &, const CellId &) = default;
	std::string to_string() const; // "R:INDEX"
	static CellId parse(const std::string &text);
};

struct CellGeometry {
	GeoPoint center;
	std::vector<GeoPoint> boundary; // counterclockwise seen from outside, not repeated
	double area_km2 = 0.0;
};

// 10 * 3^resolution + 2
std::uint64_t cell_count(int resolution);

namespace geo {

Vec3 to_vector(const GeoPoint &p);
GeoPoint to_geo(const Vec3 &v);

// Area of a convex geodesic polygon on the unit sphere (vertices in order).
double spherical_polygon_area(std::span<const Vec3> ring);

} // namespace geo

namespace detail {

struct WarpZone {
	double inner = 0.0; // squared planar radius, face edge = 1
	double outer = 0.0;
	double shift = 0.0;
};

struct CornerWarp {
	WarpZone vertex;
	WarpZone center;
};

} // namespace detail

// Equal-area aperture-3 hexagonal grid on an icosahedron (Snyder equal-area
// projection per face). The icosahedron has a vertex at 58.28252559N 11.25E
// and the adjacent vertex due north of it, which puts the north pole on the
// midpoint of an icosahedron edge.
//
// Cells are the lattice points of a triangular lattice drawn on the unfolded
// faces: the 12 icosahedron vertices (pentagons), points on the 30 edges, and
// face-interior points. A cell's boundary is the geodesic polygon through the
// inverse-projected hexagon corners; adjacent cells share bit-identical
// corner vectors so the polygons tile the sphere exactly.
//
// Index layout: [0, 12) vertices, then edge points edge by edge, then face
// interiors face by face.
class HexGrid {
public:
	explicit HexGrid(int resolution);

	int resolution() const { return resolution_; }
	std::uint64_t size() const { return count_; }

	CellId locate(const GeoPoint &p) const;
	CellId locate(const Vec3 &unit) const;

	CellGeometry geometry(CellId c) const;
	Vec3 center_vector(CellId c) const;
	// Corner unit vectors, counterclockwise seen from outside.
	std::vector<Vec3> corner_vectors(CellId c) const;
	bool is_pentagon(CellId c) const;

	// 1 strictly inside, 0 on the boundary, -1 outside.
	int classify(CellId c, const Vec3 &unit) const;

private:
	void check(CellId c) const;
	void calibrate();

	int resolution_;
	std::uint64_t count_;
	int n_; // class-I subdivisions per icosahedron edge (3^floor(r/2))
	int m_; // barycentric denominator, 3 * n_
	bool odd_;
	detail::CornerWarp warp_;
};

CellId latlon_to_cell(const GeoPoint &p, int resolution);
CellGeometry cell_geometry(CellId c);

} // namespace pyroseason
