#include "faceart/geometry.hpp"
#include "faceart/polygonizer.hpp"
#include "random_shapes.hpp"
#include "synthetic_city.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace faceart;
using namespace faceart::testing;

namespace {

// n x n street grid with unit spacing, as one polyline per street.
EdgeSet grid_as_long_lines(int n, double spacing = 1.0) {
  EdgeSet es;
  for (int k = 0; k < n; ++k) {
    Polyline h, v;
    for (int m = 0; m < n; ++m) {
      h.push_back({m * spacing, k * spacing});
      v.push_back({k * spacing, m * spacing});
    }
    es.edges.push_back(h);
    es.edges.push_back(v);
  }
  return es;
}

PolygonizeResult run(const EdgeSet& es) { return polygonize(node_edges(es).edges); }

}  // namespace

TEST_SUITE("polygonizer") {
  TEST_CASE("grid networks yield one face per cell") {
    for (int n : {3, 5, 10}) {
      CAPTURE(n);
      const PolygonizeResult r = run(grid_as_long_lines(n, 100.0));
      REQUIRE(r.faces.size() == static_cast<std::size_t>((n - 1) * (n - 1)));
      for (const auto& f : r.faces) {
        CHECK(area(f.geometry) == doctest::Approx(10000.0).epsilon(1e-12));
        CHECK(f.geometry.holes.empty());
        CHECK(signed_area(f.geometry.exterior) > 0.0);
      }
      CHECK(r.removed_cut_edges == 0);
    }
  }

  TEST_CASE("grid faces in full-geometric mode from lines without shared vertices") {
    // Two horizontals and two verticals cross without any shared vertex.
    EdgeSet es;
    es.noding_mode = NodingMode::full_geometric;
    for (int k = 0; k < 4; ++k) {
      es.edges.push_back({{-1.0, double(k)}, {4.0, double(k)}});
      es.edges.push_back({{double(k), -1.0}, {double(k), 4.0}});
    }
    const PolygonizeResult r = run(es);
    CHECK(r.faces.size() == 9);
    CHECK(r.removed_cut_edges == 16);  // the overhanging stubs
  }

  TEST_CASE("dangles and bridges produce no faces") {
    EdgeSet es;
    es.edges.push_back({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}});
    es.edges.push_back({{1, 1}, {2, 2}});             // dangle
    es.edges.push_back({{1, 0}, {3, 0}});             // bridge to a second square
    es.edges.push_back({{3, 0}, {4, 0}, {4, 1}, {3, 1}, {3, 0}});
    es.edges.push_back({{5, 5}, {6, 6}, {7, 5}});     // isolated path
    const PolygonizeResult r = run(es);
    REQUIRE(r.faces.size() == 2);
    CHECK(area(r.faces[0].geometry) == doctest::Approx(1.0));
    CHECK(area(r.faces[1].geometry) == doctest::Approx(1.0));
    CHECK(r.removed_cut_edges >= 4);
  }

  TEST_CASE("a tree network has no faces") {
    EdgeSet es;
    es.edges.push_back({{0, 0}, {1, 0}});
    es.edges.push_back({{1, 0}, {2, 1}});
    es.edges.push_back({{1, 0}, {2, -1}});
    CHECK(run(es).faces.empty());
  }

  TEST_CASE("node-free crossing depends on the noding mode") {
    EdgeSet plus;
    plus.edges.push_back({{-1, 0}, {1, 0}});
    plus.edges.push_back({{0, -1}, {0, 1}});
    CHECK(run(plus).faces.empty());  // shared-endpoints: a bridge, no node

    EdgeSet crossed;
    crossed.edges.push_back({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {0, 0}});
    crossed.edges.push_back({{0, 0}, {2, 2}});
    crossed.edges.push_back({{2, 0}, {0, 2}});
    crossed.noding_mode = NodingMode::shared_endpoints;
    const PolygonizeResult shared = run(crossed);
    // Diagonals meet only at corners: they pass each other without a node,
    // so the planar graph is not planar-embedded there; no face may use the
    // crossing point.
    for (const auto& f : shared.faces) {
      for (const Point& p : f.geometry.exterior) CHECK_FALSE(p == Point{1, 1});
    }

    crossed.noding_mode = NodingMode::full_geometric;
    const PolygonizeResult full = run(crossed);
    REQUIRE(full.faces.size() == 4);
    for (const auto& f : full.faces) CHECK(area(f.geometry) == doctest::Approx(1.0));
  }

  TEST_CASE("noding of a crossing pair") {
    EdgeSet x;
    x.edges.push_back({{0, 0}, {1, 1}});
    x.edges.push_back({{0, 1}, {1, 0}});
    CHECK(node_edges(x).edges.edges.size() == 2);
    x.noding_mode = NodingMode::full_geometric;
    const EdgeSet full = node_edges(x).edges;
    REQUIRE(full.edges.size() == 4);
    for (const auto& e : full.edges) {
      CHECK((e.front() == Point{0.5, 0.5} || e.back() == Point{0.5, 0.5}));
    }
  }

  TEST_CASE("ways sharing a middle node split there in either mode") {
    for (NodingMode mode : {NodingMode::shared_endpoints, NodingMode::full_geometric}) {
      EdgeSet plus;
      plus.noding_mode = mode;
      plus.edges.push_back({{-1, 0}, {0, 0}, {1, 0}});
      plus.edges.push_back({{0, -1}, {0, 0}, {0, 1}});
      CHECK(node_edges(plus).edges.edges.size() == 4);
    }
  }

  TEST_CASE("shared interior vertex splits in shared-endpoints mode") {
    EdgeSet plus;
    plus.edges.push_back({{-1, 0}, {0, 0}, {1, 0}});
    plus.edges.push_back({{0, -1}, {0, 0}, {0, 1}});
    plus.edges.push_back({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}, {-1, -1}});
    // The plus arms reach the square only at their endpoints' positions when
    // those are vertices of the square; here they meet edge interiors, so in
    // shared-endpoints mode the arms are dangles.
    CHECK(run(plus).faces.size() == 1);
    plus.noding_mode = NodingMode::full_geometric;
    CHECK(run(plus).faces.size() == 4);
  }

  TEST_CASE("T-junction and collinear overlap in full-geometric mode") {
    EdgeSet es;
    es.noding_mode = NodingMode::full_geometric;
    es.edges.push_back({{0, 0}, {4, 0}, {4, 2}, {0, 2}, {0, 0}});
    es.edges.push_back({{2, 0}, {2, 2}});          // T at both ends
    es.edges.push_back({{1, 2}, {3, 2}});          // collinear overlap with the top
    const PolygonizeResult r = run(es);
    REQUIRE(r.faces.size() == 2);
    CHECK(area(r.faces[0].geometry) == doctest::Approx(4.0));
    CHECK(area(r.faces[1].geometry) == doctest::Approx(4.0));
  }

  TEST_CASE("duplicate and reversed edges collapse") {
    EdgeSet es;
    es.edges.push_back({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}});
    es.edges.push_back({{0, 0}, {0, 1}, {1, 1}, {1, 0}, {0, 0}});
    const PolygonizeResult r = run(es);
    CHECK(r.faces.size() == 1);
  }

  TEST_CASE("vertices within the snap tolerance merge") {
    EdgeSet es;
    es.edges.push_back({{0, 0}, {1, 0}, {1, 1}});
    es.edges.push_back({{1, 1 + 1e-8}, {0, 1}, {0, 1e-8}});
    CHECK(run(es).faces.size() == 1);
  }

  TEST_CASE("nested ring gives the outer face a hole-free ring and the inner its own face") {
    EdgeSet es;
    es.edges.push_back({{0, 0}, {10, 0}, {10, 10}, {0, 10}, {0, 0}});
    es.edges.push_back({{4, 4}, {6, 4}, {6, 6}, {4, 6}, {4, 4}});
    const PolygonizeResult r = run(es);
    REQUIRE(r.faces.size() == 2);
    double total = 0.0;
    for (const auto& f : r.faces) total += area(f.geometry);
    // Faces are hole-free rings, so the outer face covers the inner one.
    CHECK(total == doctest::Approx(104.0));
  }

  TEST_CASE("face order and ids are stable under input permutation") {
    const SyntheticCity city = make_synthetic_city({.nx = 6, .ny = 6, .dual_every = 3, .roundabouts = 4,
                                                    .dangles = 3, .seed = 5});
    const PolygonizeResult a = run(city.network);
    EdgeSet shuffled = city.network;
    std::reverse(shuffled.edges.begin(), shuffled.edges.end());
    for (auto& e : shuffled.edges) std::reverse(e.begin(), e.end());
    const PolygonizeResult b = run(shuffled);
    REQUIRE(a.faces.size() == b.faces.size());
    for (std::size_t i = 0; i < a.faces.size(); ++i) {
      CHECK(a.faces[i].id == static_cast<int>(i));
      CHECK(a.faces[i].geometry.exterior == b.faces[i].geometry.exterior);
    }
  }

  TEST_CASE("synthetic city faces tile the study area") {
    const SyntheticCity city = make_synthetic_city({.nx = 8, .ny = 8, .roundabouts = 6, .seed = 2});
    const PolygonizeResult r = run(city.network);
    double total = 0.0;
    for (const auto& f : r.faces) total += area(f.geometry);
    const double extent = city.xs.back() * city.ys.back();
    CHECK(total == doctest::Approx(extent).epsilon(1e-9));
    // Same faces with full-geometric noding.
    EdgeSet full = city.network;
    full.noding_mode = NodingMode::full_geometric;
    CHECK(run(full).faces.size() == r.faces.size());
  }

  TEST_CASE("face area summary") {
    const PolygonizeResult r = run(grid_as_long_lines(3, 10.0));
    const FaceAreaSummary s = face_areas_summary(r.faces);
    CHECK(s.count == 4);
    REQUIRE(s.mean_area);
    CHECK(*s.mean_area == doctest::Approx(100.0));
    CHECK(s.total_area == doctest::Approx(400.0));
    CHECK_FALSE(face_areas_summary({}).mean_area.has_value());
  }

  TEST_CASE("noding mode names") {
    CHECK(parse_noding_mode("full-geometric") == NodingMode::full_geometric);
    CHECK(parse_noding_mode("shared-endpoints") == NodingMode::shared_endpoints);
    CHECK_FALSE(parse_noding_mode("full").has_value());
    CHECK(to_string(NodingMode::full_geometric) == "full-geometric");
  }
}
