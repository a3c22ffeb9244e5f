#pragma once

// GeoJSON ingestion and the JSON/CSV documents the tools emit.

#include "faceart/classify.hpp"
#include "faceart/metrics.hpp"
#include "faceart/polygonizer.hpp"
#include "faceart/threshold.hpp"
#include "faceart/validate.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace faceart {

using Json = nlohmann::ordered_json;

struct PolygonFeatures {
  std::vector<PolygonGeom> polygons;  // MultiPolygon parts become separate entries
  std::vector<Json> properties;       // parallel to polygons
  std::vector<std::size_t> feature_index;
};

struct GeoJsonDocument {
  std::variant<EdgeSet, PolygonFeatures> content;
  std::optional<std::string> crs_note;
  std::vector<std::string> warnings;

  bool is_lines() const { return std::holds_alternative<EdgeSet>(content); }
  const EdgeSet& lines() const { return std::get<EdgeSet>(content); }
  const PolygonFeatures& polygons() const { return std::get<PolygonFeatures>(content); }
};

// Accepts a FeatureCollection (or a single Feature) of LineString and
// MultiLineString geometries, or of Polygon and MultiPolygon geometries.
// Mixed or other geometry types raise ParseError naming the feature.
GeoJsonDocument parse_geojson(std::string_view text, NodingMode line_noding = NodingMode::shared_endpoints);
GeoJsonDocument read_geojson(const std::filesystem::path& path,
                             NodingMode line_noding = NodingMode::shared_endpoints);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

Json edges_to_geojson(const EdgeSet& edges, std::string_view crs_note);
Json faces_to_geojson(std::span<const FacePolygon> faces, std::string_view crs_note);

// One Feature per record with face_id, area_m2, the five ratios, the index of
// the classified metric and the label.
Json labeled_faces_to_geojson(std::span<const FaceRecord> records, const ClassificationResult& result,
                              std::string_view crs_note);

// FeatureCollection text with one compact feature per line.
std::string geojson_text(const Json& collection);

Json to_json(const Extremum& e);
Json to_json(const ThresholdReport& r);
Json to_json(const ValidationReport& r);

struct RunParameters {
  KdeConfig kde;
  ValleyRule valley_rule = ValleyRule::adjacent_to_max;
  NodingMode noding = NodingMode::shared_endpoints;
  std::optional<double> threshold_override;
  std::uint64_t seed = 0;
};

Json run_report(const ClassificationResult& result, const RunParameters& params, const Json& extra = Json::object());

// "grid,density" rows at round-trip precision.
std::string kde_csv(const KdeCurve& curve);
KdeCurve parse_kde_csv(std::string_view text);

// "metric,grid,density" rows for several curves.
std::string distribution_csv(const std::map<std::string, KdeCurve>& curves);
std::map<std::string, KdeCurve> parse_distribution_csv(std::string_view text);

std::string validation_csv(const ValidationReport& r);

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace faceart
