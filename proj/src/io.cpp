#include "faceart/io.hpp"

#include "faceart/errors.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace faceart {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed for " + path.string());
}

namespace {

std::string where(std::size_t feature) { return "feature " + std::to_string(feature); }

Point parse_position(const nlohmann::json& pos, std::size_t feature) {
  if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
    throw ParseError(where(feature) + ": position must be an array of at least two numbers", std::nullopt, feature);
  }
  const Point p{pos[0].get<double>(), pos[1].get<double>()};
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw ParseError(where(feature) + ": non-finite coordinate", std::nullopt, feature);
  }
  return p;
}

std::vector<Point> parse_positions(const nlohmann::json& arr, std::size_t feature) {
  if (!arr.is_array()) throw ParseError(where(feature) + ": coordinates must be an array", std::nullopt, feature);
  std::vector<Point> pts;
  pts.reserve(arr.size());
  for (const auto& pos : arr) pts.push_back(parse_position(pos, feature));
  return pts;
}

Polyline parse_line(const nlohmann::json& coords, std::size_t feature) {
  Polyline line = parse_positions(coords, feature);
  if (line.size() < 2) throw ParseError(where(feature) + ": LineString needs two positions", std::nullopt, feature);
  return line;
}

PolygonGeom parse_polygon(const nlohmann::json& coords, std::size_t feature) {
  if (!coords.is_array() || coords.empty()) {
    throw ParseError(where(feature) + ": Polygon needs at least one ring", std::nullopt, feature);
  }
  PolygonGeom poly;
  for (std::size_t r = 0; r < coords.size(); ++r) {
    Ring ring = parse_positions(coords[r], feature);
    if (ring.size() < 4 || !(ring.front() == ring.back())) {
      throw ParseError(where(feature) + ": polygon rings must be closed with at least four positions", std::nullopt,
                       feature);
    }
    if (r == 0) {
      poly.exterior = std::move(ring);
    } else {
      poly.holes.push_back(std::move(ring));
    }
  }
  return poly;
}

}  // namespace

GeoJsonDocument parse_geojson(std::string_view text, NodingMode line_noding) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed GeoJSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
    throw ParseError("GeoJSON root must be an object with a 'type'");
  }

  nlohmann::json features;
  const std::string root_type = doc["type"].get<std::string>();
  if (root_type == "FeatureCollection") {
    if (!doc.contains("features") || !doc["features"].is_array()) {
      throw ParseError("FeatureCollection without a 'features' array");
    }
    features = doc["features"];
  } else if (root_type == "Feature") {
    features = nlohmann::json::array({doc});
  } else {
    throw ParseError("unsupported GeoJSON root type '" + root_type + "'");
  }

  EdgeSet lines;
  lines.noding_mode = line_noding;
  PolygonFeatures polys;
  bool saw_lines = false;
  bool saw_polygons = false;

  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& f = features[i];
    if (!f.is_object() || f.value("type", "") != "Feature") {
      throw ParseError(where(i) + ": not a Feature", std::nullopt, i);
    }
    if (!f.contains("geometry") || f["geometry"].is_null()) continue;
    const auto& g = f["geometry"];
    if (!g.is_object() || !g.contains("type") || !g["type"].is_string() || !g.contains("coordinates")) {
      throw ParseError(where(i) + ": geometry lacks type or coordinates", std::nullopt, i);
    }
    const std::string type = g["type"].get<std::string>();
    const auto& coords = g["coordinates"];
    Json props = Json::object();
    if (f.contains("properties") && f["properties"].is_object()) props = Json::parse(f["properties"].dump());

    if (type == "LineString" || type == "MultiLineString") {
      saw_lines = true;
      if (type == "LineString") {
        lines.edges.push_back(parse_line(coords, i));
      } else {
        if (!coords.is_array()) throw ParseError(where(i) + ": bad MultiLineString", std::nullopt, i);
        for (const auto& part : coords) lines.edges.push_back(parse_line(part, i));
      }
    } else if (type == "Polygon" || type == "MultiPolygon") {
      saw_polygons = true;
      std::vector<PolygonGeom> parts;
      if (type == "Polygon") {
        parts.push_back(parse_polygon(coords, i));
      } else {
        if (!coords.is_array()) throw ParseError(where(i) + ": bad MultiPolygon", std::nullopt, i);
        for (const auto& part : coords) parts.push_back(parse_polygon(part, i));
      }
      for (auto& p : parts) {
        polys.polygons.push_back(std::move(p));
        polys.properties.push_back(props);
        polys.feature_index.push_back(i);
      }
    } else {
      throw ParseError(where(i) + ": unsupported geometry type '" + type + "'", std::nullopt, i);
    }
    if (saw_lines && saw_polygons) {
      throw ParseError(where(i) + ": collection mixes line and polygon geometries", std::nullopt, i);
    }
  }

  GeoJsonDocument out;
  if (doc.contains("crs_note") && doc["crs_note"].is_string()) out.crs_note = doc["crs_note"].get<std::string>();

  std::vector<Point> all;
  if (saw_polygons) {
    for (const auto& p : polys.polygons) all.insert(all.end(), p.exterior.begin(), p.exterior.end());
    out.content = std::move(polys);
  } else {
    for (const auto& l : lines.edges) all.insert(all.end(), l.begin(), l.end());
    out.content = std::move(lines);
  }
  if (!all.empty() && looks_geographic(bounds(all))) {
    out.warnings.push_back("coordinates look geographic; inputs are expected in a projected meter plane");
  }
  return out;
}

GeoJsonDocument read_geojson(const std::filesystem::path& path, NodingMode line_noding) {
  return parse_geojson(read_text_file(path), line_noding);
}

namespace {

Json coords_of(std::span<const Point> pts) {
  Json arr = Json::array();
  for (const Point& p : pts) arr.push_back(Json::array({p.x, p.y}));
  return arr;
}

Json polygon_geometry(const PolygonGeom& p) {
  Json rings = Json::array();
  rings.push_back(coords_of(p.exterior));
  for (const Ring& h : p.holes) rings.push_back(coords_of(h));
  return Json{{"type", "Polygon"}, {"coordinates", std::move(rings)}};
}

Json collection(std::string_view crs_note) {
  Json doc;
  doc["type"] = "FeatureCollection";
  doc["crs_note"] = std::string(crs_note);
  doc["features"] = Json::array();
  return doc;
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json edges_to_geojson(const EdgeSet& edges, std::string_view crs_note) {
  Json doc = collection(crs_note);
  doc["noding_mode"] = std::string(to_string(edges.noding_mode));
  for (std::size_t i = 0; i < edges.edges.size(); ++i) {
    Json f;
    f["type"] = "Feature";
    f["properties"] = Json{{"edge_id", i}};
    f["geometry"] = Json{{"type", "LineString"}, {"coordinates", coords_of(edges.edges[i])}};
    doc["features"].push_back(std::move(f));
  }
  return doc;
}

Json faces_to_geojson(std::span<const FacePolygon> faces, std::string_view crs_note) {
  Json doc = collection(crs_note);
  for (const FacePolygon& face : faces) {
    Json f;
    f["type"] = "Feature";
    f["properties"] = Json{{"face_id", face.id}, {"area_m2", area(face.geometry)}};
    f["geometry"] = polygon_geometry(face.geometry);
    doc["features"].push_back(std::move(f));
  }
  return doc;
}

Json labeled_faces_to_geojson(std::span<const FaceRecord> records, const ClassificationResult& result,
                              std::string_view crs_note) {
  Json doc = collection(crs_note);
  const std::string fai_key = "fai_" + std::string(to_string(result.metric));
  for (std::size_t i = 0; i < records.size(); ++i) {
    const FaceRecord& r = records[i];
    Json props;
    props["face_id"] = r.face.id;
    props["area_m2"] = r.area;
    for (Metric m : kAllMetrics) props[std::string(to_string(m))] = r.compactness[m];
    props[fai_key] = r.fai_of(result.metric);
    props["label"] = std::string(to_string(i < result.labels.size() ? result.labels[i] : Label::unlabeled));
    Json f;
    f["type"] = "Feature";
    f["properties"] = std::move(props);
    f["geometry"] = polygon_geometry(r.face.geometry);
    doc["features"].push_back(std::move(f));
  }
  return doc;
}

std::string geojson_text(const Json& collection) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : collection.items()) {
    if (k == "features") continue;
    if (!first) out += ",";
    first = false;
    out += Json(k).dump() + ":" + v.dump();
  }
  if (!first) out += ",";
  out += "\"features\":[";
  const auto& features = collection.at("features");
  for (std::size_t i = 0; i < features.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += features[i].dump();
  }
  out += "\n]}\n";
  return out;
}

Json to_json(const Extremum& e) {
  Json j;
  j["location"] = e.location;
  j["height"] = e.height;
  j["kind"] = e.kind == ExtremumKind::peak ? "peak" : "valley";
  if (e.kind == ExtremumKind::peak) j["prominence"] = e.prominence;
  j["index"] = e.index;
  return j;
}

Json to_json(const ThresholdReport& r) {
  Json j;
  j["status"] = r.found() ? "found" : "no-threshold";
  j["threshold"] = optional_json(r.threshold);
  Json peaks = Json::array();
  for (const auto& p : r.peaks) peaks.push_back(to_json(p));
  Json valleys = Json::array();
  for (const auto& v : r.valleys) valleys.push_back(to_json(v));
  j["peaks"] = std::move(peaks);
  j["valleys"] = std::move(valleys);
  j["left_peak"] = r.left_peak ? to_json(*r.left_peak) : Json(nullptr);
  j["right_peak"] = r.right_peak ? to_json(*r.right_peak) : Json(nullptr);
  j["threshold_prominence"] = optional_json(r.threshold_prominence);
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (r.curve) j["bandwidth"] = r.curve->bandwidth;
  return j;
}

Json to_json(const ValidationReport& r) {
  Json j;
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    levels.push_back(Json{{"x_m2", l.x},
                          {"n_artifacts", l.n_artifacts},
                          {"n_false_positive", l.n_false_positive},
                          {"rate", optional_json(l.rate)}});
  }
  j["levels"] = std::move(levels);
  Json per = Json::array();
  for (std::size_t i = 0; i < r.overlaps.size(); ++i) {
    Json a;
    if (i < r.artifact_ids.size()) a["face_id"] = r.artifact_ids[i];
    a["building_overlap_m2"] = r.overlaps[i];
    per.push_back(std::move(a));
  }
  j["artifacts"] = std::move(per);
  j["skipped_buildings"] = r.skipped_buildings;
  j["false_negatives"] = "not computed: building footprints cannot reveal missed artifacts";
  return j;
}

Json run_report(const ClassificationResult& result, const RunParameters& params, const Json& extra) {
  Json j;
  j["metric"] = std::string(to_string(result.metric));
  j["threshold"] = optional_json(result.applied_threshold);
  j["threshold_source"] = result.threshold_overridden ? "override" : (result.report.found() ? "detected" : "none");
  j["status"] = result.report.found() ? "found" : "no-threshold";
  j["counts"] = Json{{"n_faces", result.counts.n_faces},
                     {"n_artifacts", result.counts.n_artifacts},
                     {"n_blocks", result.counts.n_blocks}};
  j["parameters"] = Json{{"grid_points", params.kde.grid_points},
                         {"peak_min_height", params.kde.peak_min_height},
                         {"peak_min_prominence", params.kde.peak_min_prominence},
                         {"valley_rule", std::string(to_string(params.valley_rule))},
                         {"noding", std::string(to_string(params.noding))},
                         {"threshold_override", optional_json(params.threshold_override)},
                         {"seed", params.seed}};
  j["report"] = to_json(result.report);
  for (const auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

namespace {

double parse_csv_double(std::string_view field, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw ParseError("CSV line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
  }
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!line.empty()) fn(line, line_no);
    start = end + 1;
  }
}

}  // namespace

std::string kde_csv(const KdeCurve& curve) {
  std::string out = "grid,density\n";
  for (std::size_t k = 0; k < curve.grid.size(); ++k) {
    out += format_double(curve.grid[k]);
    out += ',';
    out += format_double(curve.density[k]);
    out += '\n';
  }
  return out;
}

KdeCurve parse_kde_csv(std::string_view text) {
  KdeCurve c;
  for_each_line(text, [&](std::string_view line, std::size_t no) {
    if (no == 1) {
      if (line != "grid,density") throw ParseError("KDE CSV header must be 'grid,density'");
      return;
    }
    const auto f = split_fields(line);
    if (f.size() != 2) throw ParseError("CSV line " + std::to_string(no) + ": expected 2 fields");
    c.grid.push_back(parse_csv_double(f[0], no));
    c.density.push_back(parse_csv_double(f[1], no));
  });
  return c;
}

std::string distribution_csv(const std::map<std::string, KdeCurve>& curves) {
  std::string out = "metric,grid,density\n";
  for (const auto& [name, curve] : curves) {
    for (std::size_t k = 0; k < curve.grid.size(); ++k) {
      out += name;
      out += ',';
      out += format_double(curve.grid[k]);
      out += ',';
      out += format_double(curve.density[k]);
      out += '\n';
    }
  }
  return out;
}

std::map<std::string, KdeCurve> parse_distribution_csv(std::string_view text) {
  std::map<std::string, KdeCurve> out;
  for_each_line(text, [&](std::string_view line, std::size_t no) {
    if (no == 1) {
      if (line != "metric,grid,density") throw ParseError("distribution CSV header must be 'metric,grid,density'");
      return;
    }
    const auto f = split_fields(line);
    if (f.size() != 3) throw ParseError("CSV line " + std::to_string(no) + ": expected 3 fields");
    KdeCurve& c = out[std::string(f[0])];
    c.grid.push_back(parse_csv_double(f[1], no));
    c.density.push_back(parse_csv_double(f[2], no));
  });
  return out;
}

std::string validation_csv(const ValidationReport& r) {
  std::string out = "x_m2,n_artifacts,n_false_positive,rate\n";
  for (const auto& l : r.levels) {
    out += format_double(l.x) + ',' + std::to_string(l.n_artifacts) + ',' + std::to_string(l.n_false_positive) + ',' +
           (l.rate ? format_double(*l.rate) : std::string()) + '\n';
  }
  return out;
}

}  // namespace faceart
