#pragma once

#include "faceart/geometry.hpp"
#include "faceart/polygonizer.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace faceart {

inline constexpr std::array<double, 4> kDefaultOverlapLevels{0.0, 10.0, 50.0, 100.0};

struct OverlapResult {
  std::vector<double> overlaps;  // per artifact, square meters
  std::size_t skipped_buildings = 0;
};

// Sum of intersection areas between each artifact and every building whose
// bounding box meets the artifact's. A building overlapping several artifacts
// counts fully toward each.
OverlapResult overlap_areas(std::span<const FacePolygon> artifacts, std::span<const PolygonGeom> buildings);

struct FalsePositiveLevel {
  double x = 0.0;  // square meters
  std::size_t n_artifacts = 0;
  std::size_t n_false_positive = 0;
  std::optional<double> rate;  // absent when there are no artifacts
};

struct ValidationReport {
  std::vector<FalsePositiveLevel> levels;
  std::vector<int> artifact_ids;
  std::vector<double> overlaps;
  std::size_t skipped_buildings = 0;
};

// An artifact is a false positive at level X when its overlap exceeds X, so
// X = 0 flags any overlap at all.
ValidationReport false_positive_rates(std::span<const double> overlaps,
                                      std::span<const double> x_levels = kDefaultOverlapLevels);

}  // namespace faceart
