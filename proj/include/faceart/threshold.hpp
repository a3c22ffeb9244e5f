#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace faceart {

struct KdeConfig {
  int grid_points = 1024;
  double peak_min_height = 0.0008;
  double peak_min_prominence = 0.00075;
};

// adjacent_to_max: first valley whose neighboring peaks include the highest
// peak. first: first valley with a qualifying peak on each side.
enum class ValleyRule { adjacent_to_max, first };

std::string_view to_string(ValleyRule r);
std::optional<ValleyRule> parse_valley_rule(std::string_view s);

struct KdeCurve {
  std::vector<double> grid;  // uniform, ascending
  std::vector<double> density;
  double bandwidth = 0.0;
};

// Trapezoid rule over the curve's grid.
double integral(const KdeCurve& c);

enum class ExtremumKind { peak, valley };

struct Extremum {
  double location = 0.0;
  double height = 0.0;
  ExtremumKind kind = ExtremumKind::peak;
  double prominence = 0.0;  // peaks only
  std::size_t index = 0;    // grid index
};

struct Extrema {
  std::vector<Extremum> peaks;    // filtered by height and prominence
  std::vector<Extremum> valleys;  // unfiltered
};

enum class ThresholdStatus { found, no_threshold };

struct ThresholdReport {
  ThresholdStatus status = ThresholdStatus::no_threshold;
  std::optional<double> threshold;
  std::vector<Extremum> peaks;
  std::vector<Extremum> valleys;
  std::optional<Extremum> left_peak;
  std::optional<Extremum> right_peak;
  std::optional<double> threshold_prominence;
  std::string reason;  // why no threshold was found
  std::optional<KdeCurve> curve;

  bool found() const { return status == ThresholdStatus::found; }
};

// 0.9 * min(sd, IQR / 1.34) * n^(-1/5), falling back to sd when IQR is zero.
// Throws DegenerateSample for n < 2 or zero variance.
double silverman_bandwidth(std::span<const double> sample);

// Gaussian KDE evaluated on grid_points over [min - 3h, max + 3h].
KdeCurve kde(std::span<const double> sample, double bandwidth, int grid_points = 1024);

// Topographic prominence of each strict local maximum, with the ends of the
// grid treated as the ends of the terrain.
double peak_prominence(std::span<const double> density, std::size_t peak);

Extrema find_extrema(const KdeCurve& curve, const KdeConfig& config = {});

ThresholdReport select_threshold(const Extrema& extrema, const KdeCurve& curve,
                                 ValleyRule rule = ValleyRule::adjacent_to_max);

struct DetectOptions {
  KdeConfig kde;
  ValleyRule valley_rule = ValleyRule::adjacent_to_max;
};

// Bandwidth, KDE, extrema and valley selection in sequence. The report carries
// the evaluated curve.
ThresholdReport detect(std::span<const double> sample, const DetectOptions& options = {});

}  // namespace faceart
