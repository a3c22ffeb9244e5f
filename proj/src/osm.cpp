#include "faceart/osm.hpp"

#include "faceart/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace faceart {

const std::set<std::string>& default_highway_classes() {
  static const std::set<std::string> classes{
      "living_street", "motorway",  "motorway_link", "pedestrian",    "primary",
      "primary_link",  "residential", "secondary",   "secondary_link", "service",
      "tertiary",      "tertiary_link", "trunk",     "trunk_link",     "unclassified"};
  return classes;
}

NetworkQuery::NetworkQuery(GeoBox bbox, std::set<std::string> highway_classes, int timeout_s, std::string endpoint)
    : bbox_(bbox), classes_(std::move(highway_classes)), timeout_s_(timeout_s), endpoint_(std::move(endpoint)) {
  const bool finite = std::isfinite(bbox_.min_lon) && std::isfinite(bbox_.min_lat) && std::isfinite(bbox_.max_lon) &&
                      std::isfinite(bbox_.max_lat);
  if (!finite || !(bbox_.min_lon < bbox_.max_lon) || !(bbox_.min_lat < bbox_.max_lat)) {
    throw std::invalid_argument("bbox must satisfy min_lon < max_lon and min_lat < max_lat");
  }
  if (bbox_.min_lon < -180.0 || bbox_.max_lon > 180.0 || bbox_.min_lat < -90.0 || bbox_.max_lat > 90.0) {
    throw std::invalid_argument("bbox outside lon/lat range");
  }
  if (classes_.empty()) throw std::invalid_argument("highway class set is empty");
  for (const std::string& c : classes_) {
    if (c.empty() || c.find_first_of("|\"\\") != std::string::npos) {
      throw std::invalid_argument("invalid highway class: '" + c + "'");
    }
  }
  if (timeout_s_ <= 0) throw std::invalid_argument("timeout must be positive");
  if (endpoint_.empty()) throw std::invalid_argument("endpoint is empty");
}

std::string build_overpass_query(const NetworkQuery& q) {
  std::string pattern;
  for (const std::string& c : q.highway_classes()) {
    if (!pattern.empty()) pattern += '|';
    pattern += c;
  }
  const GeoBox& b = q.bbox();
  char area[160];
  std::snprintf(area, sizeof area, "(%.7f,%.7f,%.7f,%.7f)", b.min_lat, b.min_lon, b.max_lat, b.max_lon);
  std::string text = "[out:json][timeout:" + std::to_string(q.timeout_s()) + "];\n";
  text += "(\n  way[\"highway\"~\"" + pattern + "\"]" + area + ";\n  >;\n);\nout body;\n";
  return text;
}

namespace {

double require_number(const nlohmann::json& e, const char* key, std::size_t index) {
  auto it = e.find(key);
  if (it == e.end() || !it->is_number()) {
    throw ParseError("element " + std::to_string(index) + ": missing numeric '" + key + "'", std::nullopt, index);
  }
  return it->get<double>();
}

}  // namespace

RawOsmGraph parse_overpass_json(std::string_view body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body.begin(), body.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed Overpass response: ") + e.what(), e.byte);
  }
  if (!doc.is_object() || !doc.contains("elements") || !doc["elements"].is_array()) {
    throw ParseError("Overpass response has no 'elements' array");
  }

  RawOsmGraph g;
  const auto& elements = doc["elements"];
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& e = elements[i];
    if (!e.is_object() || !e.contains("type") || !e["type"].is_string()) {
      throw ParseError("element " + std::to_string(i) + ": missing 'type'", std::nullopt, i);
    }
    if (!e.contains("id") || !e["id"].is_number_integer()) {
      throw ParseError("element " + std::to_string(i) + ": missing integer 'id'", std::nullopt, i);
    }
    const auto id = e["id"].get<std::int64_t>();
    const std::string type = e["type"].get<std::string>();
    if (type == "node") {
      g.nodes[id] = LonLat{require_number(e, "lon", i), require_number(e, "lat", i)};
    } else if (type == "way") {
      if (!e.contains("nodes") || !e["nodes"].is_array()) {
        throw ParseError("element " + std::to_string(i) + ": way without 'nodes'", std::nullopt, i);
      }
      OsmWay w;
      for (const auto& n : e["nodes"]) {
        if (!n.is_number_integer()) throw ParseError("element " + std::to_string(i) + ": bad node id", std::nullopt, i);
        w.nodes.push_back(n.get<std::int64_t>());
      }
      if (e.contains("tags") && e["tags"].is_object()) {
        for (const auto& [k, v] : e["tags"].items()) {
          if (v.is_string()) w.tags[k] = v.get<std::string>();
        }
      }
      if (w.nodes.size() >= 2) g.ways[id] = std::move(w);
    }
  }
  return g;
}

std::string form_urlencode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(s.size() * 3);
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else if (c == ' ') {
      out += '+';
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0x0F];
    }
  }
  return out;
}

std::string endpoint_from_env() {
  const char* env = std::getenv(kEndpointEnvVar);
  if (env && *env) return env;
  return std::string(kDefaultOverpassEndpoint);
}

RawOsmGraph fetch(const NetworkQuery& q, const FetchOptions& options) {
  const HttpTransport transport = options.transport ? options.transport : default_transport();
  HttpRequest req;
  req.url = q.endpoint();
  req.body = "data=" + form_urlencode(build_overpass_query(q));
  req.content_type = "application/x-www-form-urlencoded";
  req.timeout = std::chrono::seconds(q.timeout_s());

  std::chrono::milliseconds delay = options.initial_backoff;
  std::string last_error;
  int last_status = 0;
  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    HttpResponse resp;
    try {
      resp = transport(req);
    } catch (const NetworkError& e) {
      last_error = e.what();
      last_status = 0;
      continue;
    }
    if (resp.status == 200) return parse_overpass_json(resp.body);
    last_status = resp.status;
    last_error = "HTTP " + std::to_string(resp.status);
    const bool retryable = resp.status == 429 || resp.status == 502 || resp.status == 503 || resp.status == 504;
    if (!retryable) break;
  }
  throw NetworkError("Overpass request to " + q.endpoint() + " failed: " + last_error, last_status);
}

EdgeSetConversion to_edge_set(const RawOsmGraph& g, const TransverseMercator& projection,
                              const EdgeSetOptions& options) {
  EdgeSetConversion out;
  out.edges.noding_mode = NodingMode::shared_endpoints;

  std::vector<std::vector<std::int64_t>> kept;
  // Canonical key: the lexicographically smaller of the sequence and its reverse.
  std::set<std::vector<std::int64_t>> seen;
  for (const auto& [id, way] : g.ways) {
    auto hw = way.tags.find("highway");
    if (hw != way.tags.end() && hw->second == "service") {
      ++out.service_ways;
      continue;
    }
    const bool resolvable =
        std::all_of(way.nodes.begin(), way.nodes.end(), [&](std::int64_t n) { return g.nodes.count(n) > 0; });
    if (!resolvable) {
      ++out.skipped_ways;
      out.warnings.push_back("way " + std::to_string(id) + " references a missing node; skipped");
      continue;
    }
    std::vector<std::int64_t> rev(way.nodes.rbegin(), way.nodes.rend());
    if (!seen.insert(std::min(way.nodes, rev)).second) {
      ++out.duplicate_ways;
      continue;
    }
    kept.push_back(way.nodes);
  }

  for (const auto& nodes : kept) {
    Polyline line;
    line.reserve(nodes.size());
    for (std::int64_t n : nodes) {
      const LonLat ll = g.nodes.at(n);
      line.push_back(projection.forward(ll.lon, ll.lat));
    }
    out.edges.edges.push_back(std::move(line));
  }
  if (options.clip) out.edges = clip_edges(out.edges, *options.clip);
  return out;
}

EdgeSet clip_edges(const EdgeSet& edges, const PolygonGeom& clip) {
  EdgeSet out;
  out.noding_mode = edges.noding_mode;

  std::vector<std::pair<Point, Point>> boundary;
  auto add_ring = [&](const Ring& r) {
    for (std::size_t i = 0; i + 1 < r.size(); ++i) boundary.emplace_back(r[i], r[i + 1]);
  };
  add_ring(clip.exterior);
  for (const Ring& h : clip.holes) add_ring(h);

  for (const Polyline& line : edges.edges) {
    Polyline current;
    auto flush = [&] {
      if (current.size() >= 2) out.edges.push_back(current);
      current.clear();
    };
    for (std::size_t k = 0; k + 1 < line.size(); ++k) {
      const Point a = line[k];
      const Point b = line[k + 1];
      const Point d = b - a;
      std::vector<double> ts{0.0, 1.0};
      for (const auto& [c, e] : boundary) {
        const Point g = e - c;
        const double denom = cross(d, g);
        if (denom == 0.0) continue;
        const double t = cross(c - a, g) / denom;
        const double u = cross(c - a, d) / denom;
        if (t > 0.0 && t < 1.0 && u >= 0.0 && u <= 1.0) ts.push_back(t);
      }
      std::sort(ts.begin(), ts.end());
      for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (ts[i + 1] - ts[i] <= 0.0) continue;
        const Point p0 = a + ts[i] * d;
        const Point p1 = a + ts[i + 1] * d;
        const Point mid = a + ((ts[i] + ts[i + 1]) / 2.0) * d;
        if (locate(mid, clip) == Location::outside) {
          flush();
          continue;
        }
        if (current.empty()) current.push_back(p0);
        current.push_back(p1);
      }
    }
    flush();
  }
  return out;
}

}  // namespace faceart
