#include "faceart/geometry.hpp"

#include "faceart/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace faceart {

namespace {

std::span<const Point> open_view(std::span<const Point> ring) {
  if (ring.size() >= 2 && ring.front() == ring.back()) return ring.first(ring.size() - 1);
  return ring;
}

std::vector<Point> distinct_points(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Consecutive duplicates removed; result is closed.
Ring clean_ring(std::span<const Point> ring) {
  Ring out;
  out.reserve(ring.size());
  for (const Point& p : ring) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  }
  if (out.size() >= 2 && !(out.front() == out.back())) out.push_back(out.front());
  return out;
}

double ring_scale(std::span<const Point> ring) {
  const Box b = bounds(ring);
  return std::hypot(b.max_x - b.min_x, b.max_y - b.min_y);
}

void require_ring(std::span<const Point> ring, const char* what) {
  if (ring.size() < 4 || !(ring.front() == ring.back())) {
    throw DegenerateGeometry(std::string(what) + ": ring needs at least 4 points and must be closed");
  }
}

double checked_ring_area(std::span<const Point> ring, const char* what) {
  require_ring(ring, what);
  const double a = std::abs(signed_area(ring));
  const double s = ring_scale(ring);
  if (!(a > 1e-12 * s * s) || !std::isfinite(a)) {
    throw DegenerateGeometry(std::string(what) + ": ring has zero area");
  }
  return a;
}

// Orientation of c relative to segment ab with a length-scaled dead band.
int orient(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  const double eps = kTolerance * std::max(distance(a, b), 1.0);
  if (v > eps) return 1;
  if (v < -eps) return -1;
  return 0;
}

bool on_segment(Point a, Point b, Point c) {
  return std::min(a.x, b.x) - kTolerance <= c.x && c.x <= std::max(a.x, b.x) + kTolerance &&
         std::min(a.y, b.y) - kTolerance <= c.y && c.y <= std::max(a.y, b.y) + kTolerance;
}

bool segments_touch(Point a, Point b, Point c, Point d) {
  const int d1 = orient(c, d, a);
  const int d2 = orient(c, d, b);
  const int d3 = orient(a, b, c);
  const int d4 = orient(a, b, d);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

BoundingCircle circle_from(Point a, Point b) {
  const Point c{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
  return {c, std::max(distance(c, a), distance(c, b))};
}

BoundingCircle circle_from(Point a, Point b, Point c) {
  const Point ab = b - a;
  const Point ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double scale = std::max({dot(ab, ab), dot(ac, ac), 1e-300});
  if (std::abs(d) <= 1e-14 * scale) {
    // Collinear: the farthest pair spans the circle.
    BoundingCircle best = circle_from(a, b);
    for (const BoundingCircle& cand : {circle_from(a, c), circle_from(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  const Point rel{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
  const Point center = a + rel;
  return {center, std::max({distance(center, a), distance(center, b), distance(center, c)})};
}

bool covers(const BoundingCircle& c, Point p) {
  return distance(c.center, p) <= c.radius + 1e-12 * std::max(1.0, c.radius);
}

}  // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

PolygonGeom make_polygon(std::vector<Point> exterior, std::vector<std::vector<Point>> holes) {
  auto close = [](std::vector<Point>& r) {
    if (!r.empty() && !(r.front() == r.back())) r.push_back(r.front());
  };
  close(exterior);
  for (auto& h : holes) close(h);
  return PolygonGeom{std::move(exterior), std::move(holes)};
}

Box bounds(std::span<const Point> points) {
  Box b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
        -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Point& p : points) {
    b.min_x = std::min(b.min_x, p.x);
    b.min_y = std::min(b.min_y, p.y);
    b.max_x = std::max(b.max_x, p.x);
    b.max_y = std::max(b.max_y, p.y);
  }
  return b;
}

Box bounds(const PolygonGeom& p) { return bounds(p.exterior); }

bool looks_geographic(const Box& b) {
  return b.min_x >= -180.0 && b.max_x <= 180.0 && b.min_y >= -90.0 && b.max_y <= 90.0;
}

double signed_area(std::span<const Point> ring) {
  if (ring.size() < 3) return 0.0;
  const Point o = ring.front();
  double twice = 0.0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    twice += cross(ring[i] - o, ring[i + 1] - o);
  }
  if (!(ring.front() == ring.back())) twice += cross(ring.back() - o, ring.front() - o);
  return twice / 2.0;
}

double ring_length(std::span<const Point> ring) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) len += distance(ring[i], ring[i + 1]);
  return len;
}

double area(const PolygonGeom& p) {
  double a = checked_ring_area(p.exterior, "exterior");
  for (const Ring& h : p.holes) a -= checked_ring_area(h, "hole");
  if (!(a > 0.0)) throw DegenerateGeometry("polygon has non-positive net area");
  return a;
}

double perimeter(const PolygonGeom& p) {
  require_ring(p.exterior, "exterior");
  double len = ring_length(p.exterior);
  for (const Ring& h : p.holes) {
    require_ring(h, "hole");
    len += ring_length(h);
  }
  return len;
}

Ring convex_hull(std::span<const Point> points) {
  std::vector<Point> pts = distinct_points(points);
  if (pts.size() < 3) throw DegenerateGeometry("convex hull needs at least 3 distinct points");

  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Point& p = pts[i];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  hull.resize(k);  // closed: last == first
  if (hull.size() < 4) throw DegenerateGeometry("convex hull of collinear points");
  return hull;
}

BoundingCircle min_bounding_circle(std::span<const Point> points) {
  std::vector<Point> pts = distinct_points(points);
  if (pts.size() < 3) throw DegenerateGeometry("bounding circle needs at least 3 distinct points");

  // The circle of the hull vertices is the circle of the point set; the hull
  // order is a function of the point set alone, which keeps results stable.
  std::vector<Point> work;
  try {
    Ring hull = convex_hull(pts);
    work.assign(hull.begin(), hull.end() - 1);
  } catch (const DegenerateGeometry&) {
    work = pts;
  }

  BoundingCircle c{work[0], 0.0};
  for (std::size_t i = 1; i < work.size(); ++i) {
    if (covers(c, work[i])) continue;
    c = {work[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (covers(c, work[j])) continue;
      c = circle_from(work[i], work[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (!covers(c, work[k])) c = circle_from(work[i], work[j], work[k]);
      }
    }
  }
  return c;
}

BoundingCircle min_bounding_circle(const PolygonGeom& p) {
  return min_bounding_circle(open_view(p.exterior));
}

RotatedRect min_rotated_rect(const PolygonGeom& p) {
  const Ring hull = convex_hull(open_view(p.exterior));
  constexpr double kQuarter = std::numbers::pi / 2.0;

  RotatedRect best;
  double best_area = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const Point e = hull[i + 1] - hull[i];
    const double len = std::hypot(e.x, e.y);
    if (len == 0.0) continue;
    const Point u{e.x / len, e.y / len};
    const Point v{-u.y, u.x};

    double min_u = 0.0, max_u = 0.0, min_v = 0.0, max_v = 0.0;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
      const Point d = hull[k] - hull[i];
      const double pu = dot(d, u);
      const double pv = dot(d, v);
      min_u = std::min(min_u, pu);
      max_u = std::max(max_u, pu);
      min_v = std::min(min_v, pv);
      max_v = std::max(max_v, pv);
    }
    const double side_u = max_u - min_u;
    const double side_v = max_v - min_v;
    const double a = side_u * side_v;

    double angle = std::fmod(std::atan2(u.y, u.x), kQuarter);
    if (angle < 0.0) angle += kQuarter;
    if (angle >= kQuarter) angle = 0.0;

    const bool better = a < best_area * (1.0 - 1e-12);
    const bool tie = !better && a <= best_area * (1.0 + 1e-12) && angle < best.angle;
    if (better || tie) {
      best_area = std::min(a, best_area);
      const Point o = hull[i];
      best.corners = {o + min_u * u + min_v * v, o + max_u * u + min_v * v, o + max_u * u + max_v * v,
                      o + min_u * u + max_v * v};
      best.width = std::min(side_u, side_v);
      best.length = std::max(side_u, side_v);
      best.angle = angle;
    }
  }
  if (!(best.width > 0.0)) throw DegenerateGeometry("rotated rectangle has zero width");
  return best;
}

bool ring_is_simple(std::span<const Point> raw) {
  const Ring ring = clean_ring(raw);
  if (ring.size() < 4) return false;
  const std::size_t n = ring.size() - 1;

  std::vector<Box> boxes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = ring[i];
    const Point b = ring[i + 1];
    boxes[i] = {std::min(a.x, b.x) - kTolerance, std::min(a.y, b.y) - kTolerance, std::max(a.x, b.x) + kTolerance,
                std::max(a.y, b.y) + kTolerance};
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // Shared vertex is expected; folding back along the same line is not.
        const bool i_then_j = j == i + 1;
        const Point shared = i_then_j ? ring[j] : ring[i];
        const Point pi = i_then_j ? ring[i] : ring[i + 1];
        const Point pj = i_then_j ? ring[j + 1] : ring[j];
        const Point d1 = pi - shared;
        const Point d2 = pj - shared;
        if (orient(shared, pi, pj) == 0 && dot(d1, d2) > 0.0) return false;
        continue;
      }
      if (!boxes[i].intersects(boxes[j])) continue;
      if (segments_touch(ring[i], ring[i + 1], ring[j], ring[j + 1])) return false;
    }
  }
  return true;
}

void check_valid(const PolygonGeom& p) {
  auto check_ring = [](const Ring& r, const char* what) {
    if (r.size() < 4 || !(r.front() == r.back())) {
      throw InvalidGeometry(std::string(what) + " ring is open or has fewer than 4 points");
    }
    for (const Point& q : r) {
      if (!std::isfinite(q.x) || !std::isfinite(q.y)) throw InvalidGeometry("non-finite coordinate");
    }
    if (!ring_is_simple(r)) throw InvalidGeometry(std::string(what) + " ring self-intersects");
  };
  check_ring(p.exterior, "exterior");
  for (const Ring& h : p.holes) check_ring(h, "hole");
}

Location locate(Point q, const PolygonGeom& p) {
  bool inside = false;
  auto scan = [&](const Ring& r) {
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      const Point a = r[i];
      const Point b = r[i + 1];
      if (point_segment_distance(q, a, b) <= kTolerance) return true;
      if ((a.y > q.y) != (b.y > q.y)) {
        const double x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
        if (q.x < x) inside = !inside;
      }
    }
    return false;
  };
  if (scan(p.exterior)) return Location::boundary;
  for (const Ring& h : p.holes) {
    if (scan(h)) return Location::boundary;
  }
  return inside ? Location::inside : Location::outside;
}

namespace {

struct Edge {
  Point a;
  Point b;
  Box box;
};

// Exterior counterclockwise, holes clockwise, shifted by -origin.
std::vector<Edge> oriented_edges(const PolygonGeom& p, Point origin) {
  std::vector<Edge> edges;
  auto add = [&](const Ring& raw, bool want_ccw) {
    Ring r = clean_ring(raw);
    for (Point& q : r) q = q - origin;
    if ((signed_area(r) > 0.0) != want_ccw) std::reverse(r.begin(), r.end());
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      const Point a = r[i];
      const Point b = r[i + 1];
      edges.push_back({a, b, {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)}});
    }
  };
  add(p.exterior, true);
  for (const Ring& h : p.holes) add(h, false);
  return edges;
}

enum class SegmentClass { inside, outside, same_boundary, opposite_boundary };

SegmentClass classify_segment(Point mid, Point dir, const std::vector<Edge>& other) {
  bool inside = false;
  for (const Edge& e : other) {
    if (point_segment_distance(mid, e.a, e.b) <= kTolerance) {
      return dot(dir, e.b - e.a) > 0.0 ? SegmentClass::same_boundary : SegmentClass::opposite_boundary;
    }
    if ((e.a.y > mid.y) != (e.b.y > mid.y)) {
      const double x = e.a.x + (mid.y - e.a.y) * (e.b.x - e.a.x) / (e.b.y - e.a.y);
      if (mid.x < x) inside = !inside;
    }
  }
  return inside ? SegmentClass::inside : SegmentClass::outside;
}

// Line-integral contribution of the parts of `edges` that bound the
// intersection region. Same-direction shared boundary is counted only from the
// first polygon.
double boundary_contribution(const std::vector<Edge>& edges, const std::vector<Edge>& other, bool count_shared) {
  double twice = 0.0;
  std::vector<double> ts;
  for (const Edge& e : edges) {
    const Point d = e.b - e.a;
    const double len = std::hypot(d.x, d.y);
    if (len == 0.0) continue;
    const Box grown{e.box.min_x - kTolerance, e.box.min_y - kTolerance, e.box.max_x + kTolerance,
                    e.box.max_y + kTolerance};
    ts.assign({0.0, 1.0});
    for (const Edge& f : other) {
      if (!grown.intersects(f.box)) continue;
      const Point g = f.b - f.a;
      const double glen = std::hypot(g.x, g.y);
      if (glen == 0.0) continue;
      const double denom = cross(d, g);
      if (std::abs(denom) > 1e-12 * len * glen) {
        const double t = cross(f.a - e.a, g) / denom;
        const double u = cross(f.a - e.a, d) / denom;
        const double u_tol = kTolerance / glen;
        if (t > 0.0 && t < 1.0 && u >= -u_tol && u <= 1.0 + u_tol) ts.push_back(t);
      } else if (point_segment_distance(f.a, e.a, e.b) <= kTolerance ||
                 point_segment_distance(f.b, e.a, e.b) <= kTolerance) {
        for (Point q : {f.a, f.b}) {
          const double t = dot(q - e.a, d) / (len * len);
          if (t > 0.0 && t < 1.0) ts.push_back(t);
        }
      }
    }
    std::sort(ts.begin(), ts.end());
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      const double t0 = ts[k];
      const double t1 = ts[k + 1];
      if ((t1 - t0) * len <= 1e-12) continue;
      const Point p0 = e.a + t0 * d;
      const Point p1 = e.a + t1 * d;
      const Point mid = e.a + ((t0 + t1) / 2.0) * d;
      const SegmentClass c = classify_segment(mid, d, other);
      if (c == SegmentClass::inside || (count_shared && c == SegmentClass::same_boundary)) {
        twice += cross(p0, p1);
      }
    }
  }
  return twice;
}

}  // namespace

double intersection_area(const PolygonGeom& a, const PolygonGeom& b) {
  check_valid(a);
  check_valid(b);
  const Box ba = bounds(a);
  if (!ba.intersects(bounds(b))) return 0.0;

  const Point origin{ba.min_x, ba.min_y};
  const std::vector<Edge> ea = oriented_edges(a, origin);
  const std::vector<Edge> eb = oriented_edges(b, origin);
  const double twice = boundary_contribution(ea, eb, true) + boundary_contribution(eb, ea, false);
  const double result = twice / 2.0;
  return result > kTolerance ? result : 0.0;
}

}  // namespace faceart
