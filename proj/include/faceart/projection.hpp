#pragma once

#include "faceart/geometry.hpp"

#include <string>

namespace faceart {

// Transverse Mercator on the WGS84 ellipsoid with latitude of origin 0.
struct TransverseMercator {
  double central_meridian_deg = 0.0;
  double scale = 0.9996;
  double false_easting = 500000.0;
  double false_northing = 0.0;

  // Longitude/latitude in degrees to easting/northing in meters.
  Point forward(double lon_deg, double lat_deg) const;

  std::string describe() const;
};

// UTM zone number (1..60) containing the longitude.
int utm_zone(double lon_deg);

// UTM parameters of the zone containing (lon, lat); southern hemisphere uses a
// 10 000 km false northing.
TransverseMercator utm_for(double lon_deg, double lat_deg);

}  // namespace faceart
