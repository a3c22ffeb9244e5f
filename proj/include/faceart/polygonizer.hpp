#pragma once

#include "faceart/geometry.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace faceart {

// shared_endpoints: lines meet only where they share a vertex (OSM semantics;
// crossings without a shared node are bridges or tunnels).
// full_geometric: every crossing becomes a node.
enum class NodingMode { shared_endpoints, full_geometric };

std::string_view to_string(NodingMode m);
std::optional<NodingMode> parse_noding_mode(std::string_view s);

using Polyline = std::vector<Point>;

struct EdgeSet {
  std::vector<Polyline> edges;
  NodingMode noding_mode = NodingMode::shared_endpoints;
};

// Same-point snapping distance used while noding.
inline constexpr double kSnapTolerance = 1e-6;
// Faces below this area are treated as numeric slivers.
inline constexpr double kMinFaceArea = 1e-6;

struct NodingResult {
  EdgeSet edges;
  std::size_t dropped_segments = 0;  // collapsed below the snap tolerance
};

NodingResult node_edges(const EdgeSet& raw);

struct FacePolygon {
  int id = 0;
  PolygonGeom geometry;  // hole-free, counterclockwise
};

struct PolygonizeResult {
  std::vector<FacePolygon> faces;
  std::size_t sliver_faces = 0;
  std::size_t removed_cut_edges = 0;  // dangles and bridges
};

// Bounded faces of the planar graph formed by the noded edges. Faces are sorted
// by (min x, min y, area) and numbered from 0 in that order.
PolygonizeResult polygonize(const EdgeSet& noded);

struct FaceAreaSummary {
  std::size_t count = 0;
  std::optional<double> mean_area;
  double total_area = 0.0;
};

FaceAreaSummary face_areas_summary(std::span<const FacePolygon> faces);

}  // namespace faceart
