#pragma once

#include "faceart/geometry.hpp"
#include "faceart/polygonizer.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace faceart {

// cc  circular compactness     area / area of minimum bounding circle
// ipq isoperimetric quotient   4 pi area / perimeter^2
// iaq isoareal quotient        2 pi sqrt(area / pi) / perimeter
// rr  radii ratio              sqrt(area / pi) / radius of minimum bounding circle
// dr  diameter ratio           width / length of minimum rotated rectangle
enum class Metric { cc = 0, ipq = 1, iaq = 2, rr = 3, dr = 4 };

inline constexpr std::array<Metric, 5> kAllMetrics{Metric::cc, Metric::ipq, Metric::iaq, Metric::rr, Metric::dr};

std::string_view to_string(Metric m);
std::optional<Metric> parse_metric(std::string_view s);

struct CompactnessVector {
  double cc = 0.0;
  double ipq = 0.0;
  double iaq = 0.0;
  double rr = 0.0;
  double dr = 0.0;

  double operator[](Metric m) const;
};

double circular_compactness(const PolygonGeom& p);
double isoperimetric_quotient(const PolygonGeom& p);
double isoareal_quotient(const PolygonGeom& p);
double radii_ratio(const PolygonGeom& p);
double diameter_ratio(const PolygonGeom& p);

// All five metrics from one pass over the measures. `clamped` counts ratios
// that rounding pushed above 1.
CompactnessVector compactness(const PolygonGeom& p, int* clamped = nullptr);

// Natural log of compactness times area. Throws NonPositiveInput unless both
// are positive.
double face_artifact_index(double compactness, double area);

struct FaceRecord {
  FacePolygon face;
  double area = 0.0;
  CompactnessVector compactness;
  std::array<double, 5> fai{};

  double fai_of(Metric m) const { return fai[static_cast<std::size_t>(m)]; }
};

FaceRecord make_record(const FacePolygon& face, int* clamped = nullptr);

struct EnrichFailure {
  int face_id = 0;
  std::string reason;
};

struct EnrichResult {
  std::vector<FaceRecord> records;  // input order, failures skipped
  std::vector<EnrichFailure> failures;
  int clamped = 0;
};

EnrichResult enrich(std::span<const FacePolygon> faces);

}  // namespace faceart
