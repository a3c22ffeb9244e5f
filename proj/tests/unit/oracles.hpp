#pragma once

// Slow reference computations, independent of the library's algorithms.

#include "faceart/geometry.hpp"
#include "random_shapes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace faceart::testing {

inline bool covers(const BoundingCircle& c, std::span<const Point> pts) {
  for (const Point& p : pts) {
    if (distance(p, c.center) > c.radius * (1.0 + 1e-12) + 1e-12) return false;
  }
  return true;
}

// Smallest circle through every pair (as diameter) and every triple that
// encloses all points. O(n^4) in the enclosure check, fine for small n.
inline double brute_force_mbc_radius(std::span<const Point> pts) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const BoundingCircle c{0.5 * (pts[i] + pts[j]), distance(pts[i], pts[j]) / 2.0};
      if (c.radius < best && covers(c, pts)) best = c.radius;
      for (std::size_t k = j + 1; k < n; ++k) {
        const Point a = pts[i], b = pts[j], q = pts[k];
        const double d = 2.0 * (a.x * (b.y - q.y) + b.x * (q.y - a.y) + q.x * (a.y - b.y));
        if (std::abs(d) < 1e-12) continue;
        const double a2 = dot(a, a), b2 = dot(b, b), q2 = dot(q, q);
        const Point center{(a2 * (b.y - q.y) + b2 * (q.y - a.y) + q2 * (a.y - b.y)) / d,
                           (a2 * (q.x - b.x) + b2 * (a.x - q.x) + q2 * (b.x - a.x)) / d};
        const BoundingCircle t{center, distance(center, a)};
        if (t.radius < best && covers(t, pts)) best = t.radius;
      }
    }
  }
  return best;
}

// Area of the axis-aligned box of the points after rotating by -theta.
inline double enclosing_rect_area_at(std::span<const Point> pts, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  double lo_u = std::numeric_limits<double>::infinity(), hi_u = -lo_u, lo_v = lo_u, hi_v = -lo_u;
  for (const Point& p : pts) {
    const double u = c * p.x + s * p.y, v = -s * p.x + c * p.y;
    lo_u = std::min(lo_u, u);
    hi_u = std::max(hi_u, u);
    lo_v = std::min(lo_v, v);
    hi_v = std::max(hi_v, v);
  }
  return (hi_u - lo_u) * (hi_v - lo_v);
}

// Even-odd ray casting, boundary ignored.
inline bool inside_even_odd(Point q, const Ring& r) {
  bool in = false;
  for (std::size_t i = 0, j = r.size() - 2; i + 1 < r.size(); j = i++) {
    const Point a = r[i], b = r[j];
    if ((a.y > q.y) != (b.y > q.y) && q.x < (b.x - a.x) * (q.y - a.y) / (b.y - a.y) + a.x) in = !in;
  }
  return in;
}

inline bool inside_polygon(Point q, const PolygonGeom& p) {
  if (!inside_even_odd(q, p.exterior)) return false;
  for (const Ring& h : p.holes) {
    if (inside_even_odd(q, h)) return false;
  }
  return true;
}

struct MonteCarloEstimate {
  double value = 0.0;
  double sigma = 0.0;
};

inline MonteCarloEstimate monte_carlo_intersection(const PolygonGeom& a, const PolygonGeom& b, int samples, Rng& rng) {
  const Box box = bounds(a);
  const double box_area = (box.max_x - box.min_x) * (box.max_y - box.min_y);
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    const Point q{rng.uniform(box.min_x, box.max_x), rng.uniform(box.min_y, box.max_y)};
    if (inside_polygon(q, a) && inside_polygon(q, b)) ++hits;
  }
  const double p = static_cast<double>(hits) / samples;
  return {p * box_area, box_area * std::sqrt(p * (1.0 - p) / samples)};
}

}  // namespace faceart::testing

namespace faceart::testing {

// Spearman's rho as Pearson correlation of average ranks.
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = (i + j) / 2.0 + 1.0;
      i = j + 1;
    }
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace faceart::testing
