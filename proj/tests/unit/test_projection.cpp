#include "faceart/projection.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace faceart;

namespace {

// Transverse Mercator by the classic power series in longitude difference,
// an independent route to the same projection.
Point snyder_forward(double lon_deg, double lat_deg, double lon0_deg, double k0, double fe, double fn) {
  const double a = 6378137.0;
  const double f = 1.0 / 298.257223563;
  const double e2 = f * (2.0 - f);
  const double ep2 = e2 / (1.0 - e2);
  const double deg = std::numbers::pi / 180.0;
  const double phi = lat_deg * deg;
  const double s = std::sin(phi), c = std::cos(phi), t = std::tan(phi);
  const double N = a / std::sqrt(1.0 - e2 * s * s);
  const double T = t * t;
  const double C = ep2 * c * c;
  const double A = (lon_deg - lon0_deg) * deg * c;
  const double e4 = e2 * e2, e6 = e4 * e2;
  const double M = a * ((1 - e2 / 4 - 3 * e4 / 64 - 5 * e6 / 256) * phi -
                        (3 * e2 / 8 + 3 * e4 / 32 + 45 * e6 / 1024) * std::sin(2 * phi) +
                        (15 * e4 / 256 + 45 * e6 / 1024) * std::sin(4 * phi) - (35 * e6 / 3072) * std::sin(6 * phi));
  const double x = k0 * N * (A + (1 - T + C) * std::pow(A, 3) / 6 +
                             (5 - 18 * T + T * T + 72 * C - 58 * ep2) * std::pow(A, 5) / 120);
  const double y = k0 * (M + N * t * (A * A / 2 + (5 - T + 9 * C + 4 * C * C) * std::pow(A, 4) / 24 +
                                      (61 - 58 * T + T * T + 600 * C - 330 * ep2) * std::pow(A, 6) / 720));
  return {x + fe, y + fn};
}

}  // namespace

TEST_SUITE("projection") {
  TEST_CASE("central meridian and equator") {
    const TransverseMercator tm{15.0};
    const Point p = tm.forward(15.0, 0.0);
    CHECK(p.x == doctest::Approx(500000.0).epsilon(1e-12));
    CHECK(std::abs(p.y) < 1e-6);
  }

  TEST_CASE("agrees with the power-series formulation") {
    const TransverseMercator tm{9.0};
    for (double lat : {-60.0, -33.9, 0.5, 40.7, 52.5, 71.0}) {
      for (double dlon : {-3.0, -1.2, 0.0, 0.7, 2.9}) {
        const Point p = tm.forward(9.0 + dlon, lat);
        const Point q = snyder_forward(9.0 + dlon, lat, 9.0, 0.9996, 500000.0, 0.0);
        CAPTURE(lat);
        CAPTURE(dlon);
        CHECK(std::abs(p.x - q.x) < 0.02);
        CHECK(std::abs(p.y - q.y) < 0.02);
      }
    }
    // Near the meridian the series is exact to well below a millimetre.
    const Point p = tm.forward(9.1, 48.0);
    const Point q = snyder_forward(9.1, 48.0, 9.0, 0.9996, 500000.0, 0.0);
    CHECK(std::abs(p.x - q.x) < 1e-3);
    CHECK(std::abs(p.y - q.y) < 1e-3);
  }

  TEST_CASE("symmetry about the central meridian") {
    const TransverseMercator tm{-75.0};
    const Point e = tm.forward(-74.0, 40.0), w = tm.forward(-76.0, 40.0);
    CHECK(e.x - 500000.0 == doctest::Approx(500000.0 - w.x).epsilon(1e-12));
    CHECK(e.y == doctest::Approx(w.y).epsilon(1e-12));
  }

  TEST_CASE("UTM zones") {
    CHECK(utm_zone(-180.0) == 1);
    CHECK(utm_zone(-177.1) == 1);
    CHECK(utm_zone(0.0) == 31);
    CHECK(utm_zone(13.4) == 33);
    CHECK(utm_zone(179.9) == 60);
    CHECK(utm_zone(180.0) == 60);
    const TransverseMercator n = utm_for(13.4, 52.5);
    CHECK(n.central_meridian_deg == 15.0);
    CHECK(n.false_northing == 0.0);
    const TransverseMercator s = utm_for(18.4, -33.9);
    CHECK(s.central_meridian_deg == 21.0);
    CHECK(s.false_northing == 10000000.0);
    CHECK(s.forward(18.4, -33.9).y > 0.0);
  }

  TEST_CASE("description names the parameters") {
    const std::string d = utm_for(13.4, 52.5).describe();
    CHECK(d.find("15") != std::string::npos);
    CHECK(d.find("0.9996") != std::string::npos);
  }
}
