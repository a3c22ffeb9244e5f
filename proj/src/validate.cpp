#include "faceart/validate.hpp"

#include "faceart/errors.hpp"

#include <algorithm>
#include <utility>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/box.hpp>
#include <boost/geometry/geometries/point.hpp>
#include <boost/geometry/index/rtree.hpp>

namespace faceart {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace {

using BgPoint = bg::model::point<double, 2, bg::cs::cartesian>;
using BgBox = bg::model::box<BgPoint>;
using IndexEntry = std::pair<BgBox, std::size_t>;

BgBox to_bg(const Box& b) { return BgBox(BgPoint(b.min_x, b.min_y), BgPoint(b.max_x, b.max_y)); }

}  // namespace

OverlapResult overlap_areas(std::span<const FacePolygon> artifacts, std::span<const PolygonGeom> buildings) {
  OverlapResult out;
  std::vector<IndexEntry> entries;
  entries.reserve(buildings.size());
  for (std::size_t i = 0; i < buildings.size(); ++i) {
    try {
      check_valid(buildings[i]);
    } catch (const InvalidGeometry&) {
      ++out.skipped_buildings;
      continue;
    }
    entries.emplace_back(to_bg(bounds(buildings[i])), i);
  }
  const bgi::rtree<IndexEntry, bgi::rstar<16>> tree(entries.begin(), entries.end());

  out.overlaps.reserve(artifacts.size());
  std::vector<IndexEntry> hits;
  std::vector<std::size_t> ids;
  for (const FacePolygon& a : artifacts) {
    hits.clear();
    tree.query(bgi::intersects(to_bg(bounds(a.geometry))), std::back_inserter(hits));
    ids.clear();
    for (const auto& h : hits) ids.push_back(h.second);
    // Summing in building order makes the result independent of tree layout.
    std::sort(ids.begin(), ids.end());
    double total = 0.0;
    for (std::size_t id : ids) total += intersection_area(a.geometry, buildings[id]);
    out.overlaps.push_back(total);
  }
  return out;
}

ValidationReport false_positive_rates(std::span<const double> overlaps, std::span<const double> x_levels) {
  ValidationReport r;
  r.overlaps.assign(overlaps.begin(), overlaps.end());
  for (double x : x_levels) {
    FalsePositiveLevel level;
    level.x = x;
    level.n_artifacts = overlaps.size();
    level.n_false_positive =
        static_cast<std::size_t>(std::count_if(overlaps.begin(), overlaps.end(), [x](double o) { return o > x; }));
    if (level.n_artifacts > 0) {
      level.rate = static_cast<double>(level.n_false_positive) / static_cast<double>(level.n_artifacts);
    }
    r.levels.push_back(level);
  }
  return r;
}

}  // namespace faceart
