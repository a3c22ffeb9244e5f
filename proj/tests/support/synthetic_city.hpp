#pragma once

// Street network with known face types: a jittered block grid, some rows drawn
// as dual carriageways, octagonal roundabouts at some intersections and a few
// cul-de-sacs. Coordinates on the grid are integers or halves, so planted
// building overlaps are exact in binary floating point.

#include "faceart/geometry.hpp"
#include "faceart/polygonizer.hpp"

#include <cstdint>
#include <vector>

namespace faceart::testing {

enum class FaceKind { block, sliver, roundabout };

struct CityOptions {
  int nx = 20;  // blocks per row
  int ny = 20;
  int dual_every = 3;  // rows j with j % dual_every == 0, borders excluded
  int roundabouts = 40;
  int dangles = 12;
  int min_spacing = 80;
  int max_spacing = 120;
  // Per-row gaps and per-roundabout radii are drawn from these ranges in
  // steps of 0.5 m and 1 m.
  double min_gap = 4.0;
  double max_gap = 6.0;
  int min_radius = 12;
  int max_radius = 18;
  std::uint64_t seed = 1;
};

struct PlantedBuilding {
  PolygonGeom footprint;
  std::vector<Point> probes;     // one point inside each artifact it overlaps
  std::vector<double> overlaps;  // parallel to probes, exact
};

struct SyntheticCity {
  CityOptions options;
  EdgeSet network;  // one LineString per street segment, shared-endpoint noded
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<int> dual_rows;
  std::vector<double> row_gaps;  // parallel to dual_rows
  std::vector<Point> roundabout_centers;
  std::vector<double> roundabout_radii;
  std::vector<PlantedBuilding> buildings;

  FaceKind kind_of(const PolygonGeom& face) const;
};

SyntheticCity make_synthetic_city(const CityOptions& options = {});

// Overlap with every planted building, keyed by probes lying inside the face.
double planted_overlap(const SyntheticCity& city, const PolygonGeom& face);

}  // namespace faceart::testing
