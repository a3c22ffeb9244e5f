#include "faceart/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace faceart {

namespace {

constexpr double kSemiMajor = 6378137.0;
constexpr double kFlattening = 1.0 / 298.257223563;
constexpr double kDeg = std::numbers::pi / 180.0;

// Krueger series to fourth order in the third flattening; sub-millimeter within
// a UTM zone.
struct KruegerCoefficients {
  double rectifying_radius;
  double alpha[4];
  double e;  // first eccentricity
};

KruegerCoefficients make_coefficients() {
  const double n = kFlattening / (2.0 - kFlattening);
  const double n2 = n * n;
  const double n3 = n2 * n;
  const double n4 = n3 * n;
  KruegerCoefficients k{};
  k.rectifying_radius = kSemiMajor / (1.0 + n) * (1.0 + n2 / 4.0 + n4 / 64.0);
  k.alpha[0] = n / 2.0 - 2.0 * n2 / 3.0 + 5.0 * n3 / 16.0 + 41.0 * n4 / 180.0;
  k.alpha[1] = 13.0 * n2 / 48.0 - 3.0 * n3 / 5.0 + 557.0 * n4 / 1440.0;
  k.alpha[2] = 61.0 * n3 / 240.0 - 103.0 * n4 / 140.0;
  k.alpha[3] = 49561.0 * n4 / 161280.0;
  k.e = std::sqrt(kFlattening * (2.0 - kFlattening));
  return k;
}

const KruegerCoefficients& coefficients() {
  static const KruegerCoefficients k = make_coefficients();
  return k;
}

}  // namespace

Point TransverseMercator::forward(double lon_deg, double lat_deg) const {
  const KruegerCoefficients& k = coefficients();
  const double phi = lat_deg * kDeg;
  const double dlam = (lon_deg - central_meridian_deg) * kDeg;

  const double sin_phi = std::sin(phi);
  const double t = std::sinh(std::atanh(sin_phi) - k.e * std::atanh(k.e * sin_phi));
  const double xi = std::atan2(t, std::cos(dlam));
  const double eta = std::atanh(std::sin(dlam) / std::sqrt(1.0 + t * t));

  double x = eta;
  double y = xi;
  for (int j = 1; j <= 4; ++j) {
    const double a = k.alpha[j - 1];
    x += a * std::cos(2.0 * j * xi) * std::sinh(2.0 * j * eta);
    y += a * std::sin(2.0 * j * xi) * std::cosh(2.0 * j * eta);
  }
  return {false_easting + scale * k.rectifying_radius * x, false_northing + scale * k.rectifying_radius * y};
}

std::string TransverseMercator::describe() const {
  std::ostringstream os;
  os.precision(10);
  os << "transverse mercator WGS84 lon0=" << central_meridian_deg << " k0=" << scale << " x0=" << false_easting
     << " y0=" << false_northing << "; units m";
  return os.str();
}

int utm_zone(double lon_deg) {
  const int zone = static_cast<int>(std::floor((lon_deg + 180.0) / 6.0)) + 1;
  return std::clamp(zone, 1, 60);
}

TransverseMercator utm_for(double lon_deg, double lat_deg) {
  TransverseMercator tm;
  tm.central_meridian_deg = -183.0 + 6.0 * utm_zone(lon_deg);
  tm.false_northing = lat_deg < 0.0 ? 10000000.0 : 0.0;
  return tm;
}

}  // namespace faceart
