#include "faceart/metrics.hpp"

#include "faceart/errors.hpp"

#include <cmath>
#include <numbers>

namespace faceart {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp_unit(double v, int* clamped) {
  if (v > 1.0) {
    if (clamped) ++*clamped;
    return 1.0;
  }
  return v;
}

}  // namespace

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::cc: return "cc";
    case Metric::ipq: return "ipq";
    case Metric::iaq: return "iaq";
    case Metric::rr: return "rr";
    case Metric::dr: return "dr";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view s) {
  for (Metric m : kAllMetrics) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

double CompactnessVector::operator[](Metric m) const {
  switch (m) {
    case Metric::cc: return cc;
    case Metric::ipq: return ipq;
    case Metric::iaq: return iaq;
    case Metric::rr: return rr;
    case Metric::dr: return dr;
  }
  return 0.0;
}

double circular_compactness(const PolygonGeom& p) {
  const double a = area(p);
  const double r = min_bounding_circle(p).radius;
  return clamp_unit(a / (kPi * r * r), nullptr);
}

double isoperimetric_quotient(const PolygonGeom& p) {
  const double a = area(p);
  const double per = perimeter(p);
  return clamp_unit(4.0 * kPi * a / (per * per), nullptr);
}

double isoareal_quotient(const PolygonGeom& p) {
  const double a = area(p);
  const double per = perimeter(p);
  return clamp_unit(2.0 * kPi * std::sqrt(a / kPi) / per, nullptr);
}

double radii_ratio(const PolygonGeom& p) {
  const double a = area(p);
  const double r = min_bounding_circle(p).radius;
  return clamp_unit(std::sqrt(a / kPi) / r, nullptr);
}

double diameter_ratio(const PolygonGeom& p) {
  const RotatedRect rect = min_rotated_rect(p);
  return rect.width / rect.length;
}

CompactnessVector compactness(const PolygonGeom& p, int* clamped) {
  const double a = area(p);
  const double per = perimeter(p);
  const double r = min_bounding_circle(p).radius;
  const RotatedRect rect = min_rotated_rect(p);

  CompactnessVector c;
  c.cc = clamp_unit(a / (kPi * r * r), clamped);
  c.ipq = clamp_unit(4.0 * kPi * a / (per * per), clamped);
  c.iaq = clamp_unit(2.0 * kPi * std::sqrt(a / kPi) / per, clamped);
  c.rr = clamp_unit(std::sqrt(a / kPi) / r, clamped);
  c.dr = rect.width / rect.length;
  return c;
}

double face_artifact_index(double compactness, double area) {
  if (!(compactness > 0.0) || !(area > 0.0)) {
    throw NonPositiveInput("face artifact index needs positive compactness and area");
  }
  return std::log(compactness * area);
}

FaceRecord make_record(const FacePolygon& face, int* clamped) {
  FaceRecord rec;
  rec.face = face;
  rec.area = area(face.geometry);
  rec.compactness = compactness(face.geometry, clamped);
  for (Metric m : kAllMetrics) {
    rec.fai[static_cast<std::size_t>(m)] = face_artifact_index(rec.compactness[m], rec.area);
  }
  return rec;
}

EnrichResult enrich(std::span<const FacePolygon> faces) {
  EnrichResult out;
  out.records.reserve(faces.size());
  for (const FacePolygon& f : faces) {
    try {
      out.records.push_back(make_record(f, &out.clamped));
    } catch (const Error& e) {
      out.failures.push_back({f.id, e.what()});
    }
  }
  return out;
}

}  // namespace faceart
