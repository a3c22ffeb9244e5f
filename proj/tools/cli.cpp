#include "cli.hpp"

#include "bench.hpp"
#include "faceart/classify.hpp"
#include "faceart/errors.hpp"
#include "faceart/io.hpp"
#include "faceart/metrics.hpp"
#include "faceart/osm.hpp"
#include "faceart/polygonizer.hpp"
#include "faceart/projection.hpp"
#include "faceart/threshold.hpp"
#include "faceart/validate.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace faceart::cli {

namespace {

struct Settings {
  std::string metric = "cc";
  double threshold = 0.0;
  CLI::Option* threshold_opt = nullptr;
  std::string valley_rule = "adjacent-to-max";
  std::string noding = "shared-endpoints";
  std::uint64_t seed = 0;
  bool quiet = false;
  bool project = false;
  KdeConfig kde;
  std::vector<double> validation_x{kDefaultOverlapLevels.begin(), kDefaultOverlapLevels.end()};

  std::optional<double> threshold_override() const {
    if (threshold_opt && threshold_opt->count() > 0) return threshold;
    return std::nullopt;
  }
  Metric metric_value() const { return *parse_metric(metric); }
  NodingMode noding_value() const { return *parse_noding_mode(noding); }
  ValleyRule valley_rule_value() const { return *parse_valley_rule(valley_rule); }
  DetectOptions detect_options() const { return DetectOptions{kde, valley_rule_value()}; }
};

struct Log {
  std::ostream& err;
  bool quiet = false;
  void info(const std::string& s) const {
    if (!quiet) err << s << '\n';
  }
  void warn(const std::string& s) const {
    if (!quiet) err << "warning: " << s << '\n';
  }
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

constexpr std::string_view kProjectedNote = "planar coordinates in meters, CRS of the input";

// Loaded polygons in a metric plane, whatever the input held.
struct FaceInput {
  std::vector<FacePolygon> faces;
  std::vector<Json> properties;  // parallel to faces; empty objects for polygonized lines
  std::string crs_note;
  std::vector<std::string> warnings;
  std::size_t sliver_faces = 0;
  std::size_t removed_cut_edges = 0;
  bool from_lines = false;
};

Ring project_ring(const Ring& r, const TransverseMercator& tm) {
  Ring out;
  out.reserve(r.size());
  for (const Point& p : r) out.push_back(tm.forward(p.x, p.y));
  return out;
}

// Replaces lon/lat coordinates with UTM meters when asked to; otherwise keeps
// the geographic warning.
void maybe_project(GeoJsonDocument& doc, const Settings& s) {
  const bool geographic = std::any_of(doc.warnings.begin(), doc.warnings.end(),
                                      [](const std::string& w) { return w.find("geographic") != std::string::npos; });
  if (!geographic || !s.project) return;
  std::vector<Point> all;
  if (doc.is_lines()) {
    for (const auto& l : doc.lines().edges) all.insert(all.end(), l.begin(), l.end());
  } else {
    for (const auto& p : doc.polygons().polygons) all.insert(all.end(), p.exterior.begin(), p.exterior.end());
  }
  const Box b = bounds(all);
  const TransverseMercator tm = utm_for((b.min_x + b.max_x) / 2.0, (b.min_y + b.max_y) / 2.0);
  if (doc.is_lines()) {
    auto& lines = std::get<EdgeSet>(doc.content);
    for (auto& l : lines.edges) l = project_ring(l, tm);
  } else {
    auto& polys = std::get<PolygonFeatures>(doc.content);
    for (auto& p : polys.polygons) {
      p.exterior = project_ring(p.exterior, tm);
      for (auto& h : p.holes) h = project_ring(h, tm);
    }
  }
  std::erase_if(doc.warnings, [](const std::string& w) { return w.find("geographic") != std::string::npos; });
  doc.crs_note = tm.describe();
}

std::string crs_note_of(const GeoJsonDocument& doc) { return doc.crs_note.value_or(std::string(kProjectedNote)); }

FaceInput load_faces(const std::string& path, const Settings& s) {
  GeoJsonDocument doc = read_geojson(path, s.noding_value());
  maybe_project(doc, s);
  FaceInput in;
  in.crs_note = crs_note_of(doc);
  in.warnings = doc.warnings;
  if (doc.is_lines()) {
    in.from_lines = true;
    PolygonizeResult pr = polygonize(node_edges(doc.lines()).edges);
    in.faces = std::move(pr.faces);
    in.properties.assign(in.faces.size(), Json::object());
    in.sliver_faces = pr.sliver_faces;
    in.removed_cut_edges = pr.removed_cut_edges;
    return in;
  }
  const PolygonFeatures& pf = doc.polygons();
  for (std::size_t i = 0; i < pf.polygons.size(); ++i) {
    FacePolygon f;
    const Json& props = pf.properties[i];
    auto it = props.find("face_id");
    f.id = (it != props.end() && it->is_number_integer()) ? it->get<int>() : static_cast<int>(i);
    f.geometry = pf.polygons[i];
    in.faces.push_back(std::move(f));
    in.properties.push_back(props);
  }
  return in;
}

void dump_warnings(const Log& log, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) log.warn(w);
}

// fetch

struct FetchArgs {
  std::vector<double> bbox;
  std::string out;
  std::string endpoint;
  int timeout_s = 180;
  int retries = 3;
  std::string clip;
  double central_meridian = 0.0;
  CLI::Option* central_meridian_opt = nullptr;
};

int cmd_fetch(const FetchArgs& a, const Settings&, const Log& log) {
  const GeoBox box{a.bbox[0], a.bbox[1], a.bbox[2], a.bbox[3]};
  const NetworkQuery q(box, default_highway_classes(), a.timeout_s, a.endpoint.empty() ? endpoint_from_env() : a.endpoint);
  TransverseMercator tm = utm_for((box.min_lon + box.max_lon) / 2.0, (box.min_lat + box.max_lat) / 2.0);
  if (a.central_meridian_opt && a.central_meridian_opt->count() > 0) tm.central_meridian_deg = a.central_meridian;

  EdgeSetOptions opts;
  if (!a.clip.empty()) {
    GeoJsonDocument clip_doc = read_geojson(a.clip);
    if (clip_doc.is_lines() || clip_doc.polygons().polygons.empty()) {
      throw ParseError("clip file must contain a polygon");
    }
    PolygonGeom clip = clip_doc.polygons().polygons.front();
    clip.exterior = project_ring(clip.exterior, tm);
    for (auto& h : clip.holes) h = project_ring(h, tm);
    opts.clip = std::move(clip);
  }

  FetchOptions fo;
  fo.max_retries = a.retries;
  log.info("querying " + q.endpoint());
  const RawOsmGraph raw = fetch(q, fo);
  EdgeSetConversion conv = to_edge_set(raw, tm, opts);
  dump_warnings(log, conv.warnings);
  log.info("ways: " + std::to_string(conv.edges.edges.size()) + " kept, " + std::to_string(conv.service_ways) +
           " service dropped, " + std::to_string(conv.duplicate_ways) + " duplicates, " +
           std::to_string(conv.skipped_ways) + " unresolved");
  write_text_file(a.out, geojson_text(edges_to_geojson(conv.edges, tm.describe())));
  return kExitOk;
}

// polygonize

int cmd_polygonize(const std::string& in_path, const std::string& out, const Settings& s, const Log& log) {
  GeoJsonDocument doc = read_geojson(in_path, s.noding_value());
  maybe_project(doc, s);
  dump_warnings(log, doc.warnings);
  if (!doc.is_lines()) throw ParseError("polygonize expects LineString or MultiLineString features");
  const NodingResult noded = node_edges(doc.lines());
  const PolygonizeResult pr = polygonize(noded.edges);
  const FaceAreaSummary sum = face_areas_summary(pr.faces);
  log.info("faces: " + std::to_string(sum.count) + ", cut edges removed: " + std::to_string(pr.removed_cut_edges) +
           ", slivers dropped: " + std::to_string(pr.sliver_faces));
  write_text_file(out, geojson_text(faces_to_geojson(pr.faces, crs_note_of(doc))));
  return kExitOk;
}

// classify

int cmd_classify(const std::string& in_path, const std::string& out, const Settings& s, const Log& log) {
  FaceInput in = load_faces(in_path, s);
  dump_warnings(log, in.warnings);
  const EnrichResult er = enrich(in.faces);
  for (const auto& f : er.failures) log.warn("face " + std::to_string(f.face_id) + " skipped: " + f.reason);

  ClassifyOptions copts;
  copts.detect = s.detect_options();
  copts.threshold_override = s.threshold_override();
  const Metric metric = s.metric_value();
  const ClassificationResult result = classify(er.records, metric, copts);

  RunParameters params;
  params.kde = s.kde;
  params.valley_rule = s.valley_rule_value();
  params.noding = s.noding_value();
  params.threshold_override = copts.threshold_override;
  params.seed = s.seed;

  Json failures = Json::array();
  for (const auto& f : er.failures) failures.push_back(Json{{"face_id", f.face_id}, {"reason", f.reason}});
  Json extra;
  extra["input"] = in_path;
  extra["input_kind"] = in.from_lines ? "network" : "faces";
  extra["faces"] = Json{{"n_input", in.faces.size()},
                        {"n_scored", er.records.size()},
                        {"sliver_faces_dropped", in.sliver_faces},
                        {"cut_edges_removed", in.removed_cut_edges},
                        {"ratios_clamped", er.clamped}};
  extra["enrich_failures"] = std::move(failures);
  extra["warnings"] = in.warnings;

  write_text_file(out, geojson_text(labeled_faces_to_geojson(er.records, result, in.crs_note)));
  write_text_file(out + ".report.json", dump(run_report(result, params, extra)));
  write_text_file(out + ".kde.csv", result.report.curve ? kde_csv(*result.report.curve) : std::string("grid,density\n"));

  if (result.threshold_overridden && result.report.found()) {
    log.warn("threshold override replaces the detected value " + format_double(*result.report.threshold));
  }
  if (!result.applied_threshold) {
    log.info("no threshold: " + result.report.reason);
    return kExitNoThreshold;
  }
  log.info(std::string(to_string(metric)) + " threshold " + format_double(*result.applied_threshold) + ": " +
           std::to_string(result.counts.n_artifacts) + " artifacts, " + std::to_string(result.counts.n_blocks) +
           " blocks");
  return kExitOk;
}

// validate

int cmd_validate(const std::string& labels_path, const std::string& buildings_path, const std::string& out,
                 const Settings& s, const Log& log) {
  GeoJsonDocument labels = read_geojson(labels_path);
  GeoJsonDocument buildings = read_geojson(buildings_path);
  maybe_project(labels, s);
  maybe_project(buildings, s);
  dump_warnings(log, labels.warnings);
  dump_warnings(log, buildings.warnings);
  if (labels.is_lines() || buildings.is_lines()) throw ParseError("validate expects polygon inputs");

  std::vector<FacePolygon> artifacts;
  const PolygonFeatures& lf = labels.polygons();
  for (std::size_t i = 0; i < lf.polygons.size(); ++i) {
    const Json& props = lf.properties[i];
    auto label = props.find("label");
    if (label == props.end() || !label->is_string() || label->get<std::string>() != "artifact") continue;
    auto id = props.find("face_id");
    artifacts.push_back(
        {(id != props.end() && id->is_number_integer()) ? id->get<int>() : static_cast<int>(i), lf.polygons[i]});
  }
  const OverlapResult ov = overlap_areas(artifacts, buildings.polygons().polygons);
  ValidationReport report = false_positive_rates(ov.overlaps, s.validation_x);
  for (const auto& a : artifacts) report.artifact_ids.push_back(a.id);
  report.skipped_buildings = ov.skipped_buildings;
  if (ov.skipped_buildings > 0) log.warn(std::to_string(ov.skipped_buildings) + " invalid buildings skipped");

  write_text_file(out, dump(to_json(report)));
  write_text_file(out + ".csv", validation_csv(report));
  for (const auto& l : report.levels) {
    log.info("X=" + format_double(l.x) + " m2: " + std::to_string(l.n_false_positive) + "/" +
             std::to_string(l.n_artifacts) + " false positives");
  }
  return kExitOk;
}

// bench

struct BenchArgs {
  std::string in;
  std::string out;
  std::size_t samples = 10000;
  int repetitions = 100;
};

int cmd_bench(const BenchArgs& a, const Settings& s, std::ostream& out, const Log& log) {
  FaceInput in = load_faces(a.in, s);
  dump_warnings(log, in.warnings);
  std::vector<PolygonGeom> polys;
  polys.reserve(in.faces.size());
  for (const auto& f : in.faces) polys.push_back(f.geometry);
  if (polys.empty()) throw Error("no polygons to benchmark");

  const BenchReport r = bench_metrics(polys, a.samples, a.repetitions, s.seed);
  if (r.with_replacement) log.warn("fewer polygons than the sample size; sampled with replacement");

  std::array<Metric, 5> order = kAllMetrics;
  std::stable_sort(order.begin(), order.end(), [&](Metric x, Metric y) {
    return r.timings[static_cast<std::size_t>(x)].mean_ms < r.timings[static_cast<std::size_t>(y)].mean_ms;
  });

  char line[160];
  out << "metric   mean_ms    std_ms     min_ms\n";
  Json rows = Json::array();
  for (Metric m : kAllMetrics) {
    const MetricTiming& t = r.timings[static_cast<std::size_t>(m)];
    std::snprintf(line, sizeof line, "%-6s %9.3f %9.3f %10.3f\n", std::string(to_string(m)).c_str(), t.mean_ms,
                  t.std_ms, t.min_ms);
    out << line;
    rows.push_back(Json{{"metric", std::string(to_string(m))},
                        {"mean_ms", t.mean_ms},
                        {"std_ms", t.std_ms},
                        {"min_ms", t.min_ms}});
  }
  if (!a.out.empty()) {
    Json j;
    j["population"] = r.population;
    j["sample_size"] = r.sample_size;
    j["with_replacement"] = r.with_replacement;
    j["repetitions"] = r.repetitions;
    j["seed"] = r.seed;
    j["threads"] = 1;
    j["timings"] = std::move(rows);
    Json ranked = Json::array();
    for (Metric m : order) ranked.push_back(std::string(to_string(m)));
    j["fastest_to_slowest"] = std::move(ranked);
    write_text_file(a.out, dump(j));
  }
  return kExitOk;
}

// distribution

int cmd_distribution(const std::string& in_path, const std::string& out, const Settings& s, const Log& log) {
  FaceInput in = load_faces(in_path, s);
  dump_warnings(log, in.warnings);
  const EnrichResult er = enrich(in.faces);

  std::map<std::string, KdeCurve> curves;
  Json side;
  side["parameters"] = Json{{"grid_points", s.kde.grid_points},
                            {"peak_min_height", s.kde.peak_min_height},
                            {"peak_min_prominence", s.kde.peak_min_prominence},
                            {"valley_rule", s.valley_rule}};
  Json metrics = Json::object();
  for (Metric m : kAllMetrics) {
    std::vector<double> sample;
    for (const auto& r : er.records) sample.push_back(r.fai_of(m));
    ThresholdReport rep;
    try {
      rep = detect(sample, s.detect_options());
    } catch (const DegenerateSample& e) {
      rep.reason = e.what();
    }
    if (rep.curve) curves[std::string(to_string(m))] = *rep.curve;
    metrics[std::string(to_string(m))] = to_json(rep);
  }
  side["metrics"] = std::move(metrics);
  write_text_file(out, distribution_csv(curves));
  write_text_file(out + ".extrema.json", dump(side));
  log.info("curves written for " + std::to_string(curves.size()) + " metrics");
  return kExitOk;
}

std::vector<std::string> keys_of(const std::vector<std::string_view>& v) { return {v.begin(), v.end()}; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Face-artifact detection for street-network polygons", "faceart"};
  app.set_config("--config", "", "INI/TOML file with option defaults; command-line flags take precedence");
  app.require_subcommand(1);

  Settings s;
  app.add_option("--metric", s.metric, "Compactness metric")
      ->check(CLI::IsMember(keys_of({"cc", "ipq", "iaq", "rr", "dr"})))
      ->capture_default_str();
  s.threshold_opt = app.add_option("--threshold", s.threshold, "Use this threshold instead of the detected one");
  app.add_option("--valley-rule", s.valley_rule, "Valley selection rule")
      ->check(CLI::IsMember(keys_of({"adjacent-to-max", "first"})))
      ->capture_default_str();
  app.add_option("--noding", s.noding, "Noding of line inputs")
      ->check(CLI::IsMember(keys_of({"shared-endpoints", "full-geometric"})))
      ->capture_default_str();
  app.add_option("--seed", s.seed, "Seed for sampling operations")->capture_default_str();
  app.add_flag("--quiet,-q", s.quiet, "Suppress progress and warnings");
  app.add_flag("--project", s.project, "Project lon/lat inputs to the UTM zone of their centre");
  app.add_option("--grid-points", s.kde.grid_points, "KDE evaluation points")
      ->check(CLI::Range(2, 1 << 24))
      ->capture_default_str();
  app.add_option("--peak-min-height", s.kde.peak_min_height, "Minimum peak density")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--peak-min-prominence", s.kde.peak_min_prominence, "Minimum peak prominence")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--validation-x", s.validation_x, "Building-overlap levels in square meters")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  FetchArgs fa;
  auto* fetch_cmd = app.add_subcommand("fetch", "Download a street network as projected lines");
  fetch_cmd->add_option("--bbox", fa.bbox, "min_lon,min_lat,max_lon,max_lat")->required()->delimiter(',')->expected(4);
  fetch_cmd->add_option("-o,--out", fa.out, "Output GeoJSON")->required();
  fetch_cmd->add_option("--endpoint", fa.endpoint, std::string("Overpass endpoint; default from ") + kEndpointEnvVar);
  fetch_cmd->add_option("--timeout", fa.timeout_s, "Server-side timeout in seconds")->capture_default_str();
  fetch_cmd->add_option("--retries", fa.retries, "Retries for rate limits and gateway errors")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  fetch_cmd->add_option("--clip", fa.clip, "Lon/lat polygon GeoJSON bounding the study area")
      ->check(CLI::ExistingFile);
  fa.central_meridian_opt =
      fetch_cmd->add_option("--central-meridian", fa.central_meridian, "Override the UTM central meridian");

  std::string in_path;
  std::string out_path;
  std::string second_path;

  auto* poly_cmd = app.add_subcommand("polygonize", "Extract face polygons from a line network");
  poly_cmd->add_option("network", in_path, "Line GeoJSON")->required()->check(CLI::ExistingFile);
  poly_cmd->add_option("-o,--out", out_path, "Output GeoJSON")->required();

  auto* class_cmd = app.add_subcommand("classify", "Label faces as artifacts or blocks");
  class_cmd->add_option("input", in_path, "Face polygons or a line network")->required()->check(CLI::ExistingFile);
  class_cmd->add_option("-o,--out", out_path, "Labeled GeoJSON; report and KDE files use it as prefix")->required();

  auto* val_cmd = app.add_subcommand("validate", "False-positive rates against building footprints");
  val_cmd->add_option("labels", in_path, "Labeled faces from classify")->required()->check(CLI::ExistingFile);
  val_cmd->add_option("buildings", second_path, "Building polygons")->required()->check(CLI::ExistingFile);
  val_cmd->add_option("-o,--out", out_path, "Report JSON; CSV is written beside it")->required();

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Time the compactness metrics");
  bench_cmd->add_option("input", ba.in, "Face polygons or a line network")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("-o,--out", ba.out, "Optional JSON report");
  bench_cmd->add_option("--samples", ba.samples, "Polygons sampled")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--repetitions", ba.repetitions, "Timed passes per metric")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* dist_cmd = app.add_subcommand("distribution", "Export index distributions for plotting");
  dist_cmd->add_option("input", in_path, "Face polygons or a line network")->required()->check(CLI::ExistingFile);
  dist_cmd->add_option("-o,--out", out_path, "Curve CSV; extrema JSON is written beside it")->required();

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFailure;
  }

  const Log log{err, s.quiet};
  try {
    if (*fetch_cmd) return cmd_fetch(fa, s, log);
    if (*poly_cmd) return cmd_polygonize(in_path, out_path, s, log);
    if (*class_cmd) return cmd_classify(in_path, out_path, s, log);
    if (*val_cmd) return cmd_validate(in_path, second_path, out_path, s, log);
    if (*bench_cmd) return cmd_bench(ba, s, out, log);
    if (*dist_cmd) return cmd_distribution(in_path, out_path, s, log);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const NetworkError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNetworkError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace faceart::cli
