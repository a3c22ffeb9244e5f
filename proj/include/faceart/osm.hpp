#pragma once

// Street-network acquisition from an Overpass-compatible endpoint.

#include "faceart/geometry.hpp"
#include "faceart/polygonizer.hpp"
#include "faceart/projection.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace faceart {

inline constexpr std::string_view kDefaultOverpassEndpoint = "https://overpass-api.de/api/interpreter";
inline constexpr const char* kEndpointEnvVar = "FACEART_OVERPASS_URL";

// Highway classes requested from OSM; `service` is fetched and then dropped
// before polygonization.
const std::set<std::string>& default_highway_classes();

struct GeoBox {
  double min_lon = 0.0;
  double min_lat = 0.0;
  double max_lon = 0.0;
  double max_lat = 0.0;
};

class NetworkQuery {
 public:
  // Throws std::invalid_argument for an empty or inverted box, out-of-range
  // coordinates, an empty class set, or a non-positive timeout.
  explicit NetworkQuery(GeoBox bbox, std::set<std::string> highway_classes = default_highway_classes(),
                        int timeout_s = 180, std::string endpoint = std::string(kDefaultOverpassEndpoint));

  const GeoBox& bbox() const { return bbox_; }
  const std::set<std::string>& highway_classes() const { return classes_; }
  int timeout_s() const { return timeout_s_; }
  const std::string& endpoint() const { return endpoint_; }

 private:
  GeoBox bbox_;
  std::set<std::string> classes_;
  int timeout_s_;
  std::string endpoint_;
};

struct LonLat {
  double lon = 0.0;
  double lat = 0.0;
};

struct OsmWay {
  std::vector<std::int64_t> nodes;
  std::map<std::string, std::string> tags;
};

struct RawOsmGraph {
  std::map<std::int64_t, LonLat> nodes;
  std::map<std::int64_t, OsmWay> ways;
};

// Overpass QL text; identical queries give identical text.
std::string build_overpass_query(const NetworkQuery& q);

// Parses Overpass JSON output. Throws ParseError carrying the byte offset of
// malformed input.
RawOsmGraph parse_overpass_json(std::string_view body);

struct HttpRequest {
  std::string url;
  std::string body;
  std::string content_type;
  std::chrono::seconds timeout{180};
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Throws NetworkError when no HTTP response was obtained.
using HttpTransport = std::function<HttpResponse(const HttpRequest&)>;

// cpp-httplib backed transport; one request in flight per endpoint.
HttpTransport default_transport();

struct FetchOptions {
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{1000};
  HttpTransport transport;  // default_transport() when empty
};

// POSTs the query as form field `data`. Rate limits, gateway errors and
// transport failures are retried with exponential backoff.
RawOsmGraph fetch(const NetworkQuery& q, const FetchOptions& options = {});

// Endpoint from the environment override, else the default.
std::string endpoint_from_env();

std::string form_urlencode(std::string_view s);

struct EdgeSetOptions {
  std::optional<PolygonGeom> clip;  // projected study-area boundary
};

struct EdgeSetConversion {
  EdgeSet edges;
  std::size_t service_ways = 0;
  std::size_t skipped_ways = 0;    // unresolved node references
  std::size_t duplicate_ways = 0;
  std::vector<std::string> warnings;
};

// Drops highway=service ways, projects the rest and deduplicates them. The
// result uses shared-endpoint noding.
EdgeSetConversion to_edge_set(const RawOsmGraph& g, const TransverseMercator& projection,
                              const EdgeSetOptions& options = {});

// Parts of each line inside the polygon.
EdgeSet clip_edges(const EdgeSet& edges, const PolygonGeom& clip);

}  // namespace faceart
