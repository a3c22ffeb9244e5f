#pragma once

// Planar primitives and measures. Coordinates are meters in a projected plane;
// nothing here knows about geographic coordinates.

#include <array>
#include <span>
#include <vector>

namespace faceart {

// Absolute tolerance for geometric predicates, in coordinate units.
inline constexpr double kTolerance = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double distance(Point a, Point b);

// Closed sequence of points: front() == back().
using Ring = std::vector<Point>;

struct PolygonGeom {
  Ring exterior;
  std::vector<Ring> holes;
};

struct Box {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool intersects(const Box& o) const {
    return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
  }
};

struct BoundingCircle {
  Point center;
  double radius = 0.0;
};

struct RotatedRect {
  std::array<Point, 4> corners;
  double width = 0.0;   // shorter side
  double length = 0.0;  // longer side
  double angle = 0.0;   // orientation of the supporting hull edge, in [0, pi/2)

  double area() const { return width * length; }
};

// Builds a polygon from an exterior ring, closing it if the last point does not
// repeat the first.
PolygonGeom make_polygon(std::vector<Point> exterior, std::vector<std::vector<Point>> holes = {});

Box bounds(std::span<const Point> points);
Box bounds(const PolygonGeom& p);

// True when the box fits in lon/lat range: a hint that data were not projected.
bool looks_geographic(const Box& b);

// Shoelace area of a closed ring, positive for counterclockwise order.
double signed_area(std::span<const Point> ring);
double ring_length(std::span<const Point> ring);

// Exterior area minus hole areas. Throws DegenerateGeometry for rings with
// fewer than four points or zero area.
double area(const PolygonGeom& p);
double perimeter(const PolygonGeom& p);

// Counterclockwise closed hull ring (Andrew's monotone chain). Throws
// DegenerateGeometry when all points are collinear.
Ring convex_hull(std::span<const Point> points);

// Smallest circle enclosing the exterior vertices.
BoundingCircle min_bounding_circle(const PolygonGeom& p);
BoundingCircle min_bounding_circle(std::span<const Point> points);

// Minimum-area enclosing rectangle over all orientations.
RotatedRect min_rotated_rect(const PolygonGeom& p);

// No two non-adjacent edges touch and adjacent edges share only their vertex.
bool ring_is_simple(std::span<const Point> ring);

// Throws InvalidGeometry on open, short, or self-intersecting rings.
void check_valid(const PolygonGeom& p);

enum class Location { outside, inside, boundary };

Location locate(Point q, const PolygonGeom& p);

// Area of the boolean intersection. Throws InvalidGeometry on a
// self-intersecting ring.
double intersection_area(const PolygonGeom& a, const PolygonGeom& b);

}  // namespace faceart
