#include "faceart/classify.hpp"
#include "faceart/errors.hpp"
#include "faceart/validate.hpp"
#include "oracles.hpp"
#include "random_shapes.hpp"

#include <doctest.h>

#include <cmath>

using namespace faceart;
using namespace faceart::testing;

namespace {

// Records whose cc index equals the given values; geometry is a placeholder.
std::vector<FaceRecord> records_with_fai(const std::vector<double>& values) {
  std::vector<FaceRecord> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    FaceRecord r;
    r.face.id = static_cast<int>(i);
    r.fai.fill(values[i]);
    out.push_back(r);
  }
  return out;
}

std::vector<double> bimodal_values(Rng& rng, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(rng.normal(i % 3 == 0 ? 3.0 : 9.0, 0.4));
  return v;
}

}  // namespace

TEST_SUITE("classify") {
  TEST_CASE("labels follow the strict rule") {
    Rng rng(83);
    const auto recs = records_with_fai(bimodal_values(rng, 900));
    const ClassificationResult r = classify(recs, Metric::cc);
    REQUIRE(r.report.found());
    REQUIRE(r.applied_threshold);
    CHECK_FALSE(r.threshold_overridden);
    const double t = *r.applied_threshold;
    std::size_t artifacts = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      CHECK(r.labels[i] == (recs[i].fai_of(Metric::cc) < t ? Label::artifact : Label::block));
      artifacts += r.labels[i] == Label::artifact;
    }
    CHECK(r.counts.n_artifacts == artifacts);
    CHECK(r.counts.n_blocks == recs.size() - artifacts);
    CHECK(r.counts.n_artifacts == 300);
  }

  TEST_CASE("a face exactly at the threshold is a block") {
    const auto recs = records_with_fai({1.0, 2.0, 3.0});
    ClassifyOptions opts;
    opts.threshold_override = 2.0;
    const ClassificationResult r = classify(recs, Metric::ipq, opts);
    CHECK(r.threshold_overridden);
    CHECK(r.labels[0] == Label::artifact);
    CHECK(r.labels[1] == Label::block);
    CHECK(r.labels[2] == Label::block);
  }

  TEST_CASE("no threshold leaves faces unlabeled") {
    // Normal quantiles: unimodal with no isolated tail points to form peaks.
    auto quantile = [](double p) {
      double lo = -10.0, hi = 10.0;
      for (int k = 0; k < 200; ++k) {
        const double mid = (lo + hi) / 2.0;
        (0.5 * std::erfc(-mid / std::sqrt(2.0)) < p ? lo : hi) = mid;
      }
      return (lo + hi) / 2.0;
    };
    std::vector<double> v;
    for (int i = 0; i < 500; ++i) v.push_back(8.0 + quantile((i + 0.5) / 500.0));
    const ClassificationResult r = classify(records_with_fai(v), Metric::cc);
    CHECK_FALSE(r.report.found());
    CHECK_FALSE(r.applied_threshold.has_value());
    for (Label l : r.labels) CHECK(l == Label::unlabeled);
    CHECK(r.counts.n_artifacts == 0);
    CHECK(r.counts.n_blocks == 0);
  }

  TEST_CASE("degenerate samples become a reported no-threshold") {
    const ClassificationResult r = classify(records_with_fai({4.0}), Metric::cc);
    CHECK_FALSE(r.report.found());
    CHECK_FALSE(r.report.reason.empty());
    const ClassificationResult empty = classify({}, Metric::cc);
    CHECK(empty.labels.empty());
  }

  TEST_CASE("all metrics at once") {
    Rng rng(97);
    const auto recs = records_with_fai(bimodal_values(rng, 300));
    const auto all = classify_all_metrics(recs);
    for (Metric m : kAllMetrics) CHECK(all[static_cast<std::size_t>(m)].metric == m);
  }
}

TEST_SUITE("validate") {
  TEST_CASE("overlaps with exact areas") {
    std::vector<FacePolygon> artifacts{{0, rectangle(0, 0, 10, 2)}, {1, rectangle(20, 0, 30, 2)}};
    std::vector<PolygonGeom> buildings{rectangle(1, 1, 6, 5),    // 5 x 1 in artifact 0
                                       rectangle(8, -1, 22, 1),  // 2 x 1 in each
                                       rectangle(100, 100, 101, 101)};
    const OverlapResult r = overlap_areas(artifacts, buildings);
    REQUIRE(r.overlaps.size() == 2);
    CHECK(r.overlaps[0] == 7.0);
    CHECK(r.overlaps[1] == 2.0);
    CHECK(r.skipped_buildings == 0);
  }

  TEST_CASE("invalid buildings are skipped") {
    std::vector<FacePolygon> artifacts{{0, rectangle(0, 0, 10, 10)}};
    std::vector<PolygonGeom> buildings{PolygonGeom{{{0, 0}, {5, 5}, {5, 0}, {0, 5}, {0, 0}}, {}}, rectangle(1, 1, 2, 2)};
    const OverlapResult r = overlap_areas(artifacts, buildings);
    CHECK(r.skipped_buildings == 1);
    CHECK(r.overlaps[0] == doctest::Approx(1.0));
  }

  TEST_CASE("indexed overlap equals the brute force exactly") {
    Rng rng(101);
    std::vector<FacePolygon> artifacts;
    for (int i = 0; i < 40; ++i) {
      artifacts.push_back({i, rigid_motion(random_star_polygon(rng), rng.uniform(0, 6),
                                           {rng.uniform(0, 500), rng.uniform(0, 500)})});
    }
    std::vector<PolygonGeom> buildings;
    for (int i = 0; i < 300; ++i) {
      const double x = rng.uniform(0, 500), y = rng.uniform(0, 500);
      buildings.push_back(rectangle(x, y, x + rng.uniform(2, 30), y + rng.uniform(2, 30)));
    }
    const OverlapResult r = overlap_areas(artifacts, buildings);
    for (std::size_t a = 0; a < artifacts.size(); ++a) {
      double brute = 0.0;
      for (const auto& b : buildings) brute += intersection_area(artifacts[a].geometry, b);
      CHECK(r.overlaps[a] == brute);
    }
  }

  TEST_CASE("false-positive rates by level") {
    const std::vector<double> overlaps{0.0, 5.0, 10.0, 20.0, 60.0, 150.0};
    const ValidationReport r = false_positive_rates(overlaps);
    REQUIRE(r.levels.size() == 4);
    const std::size_t expected[] = {5, 3, 2, 1};
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(r.levels[i].x == kDefaultOverlapLevels[i]);
      CHECK(r.levels[i].n_artifacts == 6);
      CHECK(r.levels[i].n_false_positive == expected[i]);
      CHECK(*r.levels[i].rate == static_cast<double>(expected[i]) / 6.0);
    }
    for (std::size_t i = 1; i < 4; ++i) CHECK(*r.levels[i].rate <= *r.levels[i - 1].rate);
  }

  TEST_CASE("no artifacts gives absent rates") {
    const ValidationReport r = false_positive_rates({});
    for (const auto& l : r.levels) CHECK_FALSE(l.rate.has_value());
  }
}
