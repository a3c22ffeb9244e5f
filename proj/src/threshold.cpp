#include "faceart/threshold.hpp"

#include "faceart/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace faceart {

std::string_view to_string(ValleyRule r) { return r == ValleyRule::adjacent_to_max ? "adjacent-to-max" : "first"; }

std::optional<ValleyRule> parse_valley_rule(std::string_view s) {
  if (s == "adjacent-to-max") return ValleyRule::adjacent_to_max;
  if (s == "first") return ValleyRule::first;
  return std::nullopt;
}

double integral(const KdeCurve& c) {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < c.grid.size(); ++k) {
    s += (c.grid[k + 1] - c.grid[k]) * (c.density[k] + c.density[k + 1]) / 2.0;
  }
  return s;
}

namespace {

// Linear interpolation between order statistics at position p * (n - 1).
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double silverman_bandwidth(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 2) throw DegenerateSample("bandwidth needs at least two values");

  const double mean = std::accumulate(sample.begin(), sample.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double x : sample) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back() || !(sd > 0.0)) throw DegenerateSample("sample has zero variance");

  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

KdeCurve kde(std::span<const double> sample, double bandwidth, int grid_points) {
  if (sample.size() < 2) throw DegenerateSample("density estimate needs at least two values");
  if (!(bandwidth > 0.0)) throw DegenerateSample("bandwidth must be positive");
  if (grid_points < 3) throw DegenerateSample("grid needs at least three points");

  const auto [min_it, max_it] = std::minmax_element(sample.begin(), sample.end());
  const double lo = *min_it - 3.0 * bandwidth;
  const double hi = *max_it + 3.0 * bandwidth;
  const auto g = static_cast<std::size_t>(grid_points);
  const double step = (hi - lo) / static_cast<double>(g - 1);

  KdeCurve c;
  c.bandwidth = bandwidth;
  c.grid.resize(g);
  c.density.assign(g, 0.0);
  const double norm = 1.0 / (static_cast<double>(sample.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
  for (std::size_t k = 0; k < g; ++k) {
    const double x = lo + static_cast<double>(k) * step;
    c.grid[k] = x;
    double s = 0.0;
    for (double xi : sample) {
      const double z = (x - xi) / bandwidth;
      s += std::exp(-0.5 * z * z);
    }
    c.density[k] = s * norm;
  }
  return c;
}

double peak_prominence(std::span<const double> d, std::size_t peak) {
  const double h = d[peak];
  double left_min = h;
  for (std::size_t i = peak; i-- > 0;) {
    if (d[i] > h) break;
    left_min = std::min(left_min, d[i]);
  }
  double right_min = h;
  for (std::size_t i = peak + 1; i < d.size(); ++i) {
    if (d[i] > h) break;
    right_min = std::min(right_min, d[i]);
  }
  return h - std::max(left_min, right_min);
}

namespace {

// Strict local extrema of `d`; a plateau counts once, at its midpoint.
std::vector<std::size_t> local_extrema(const std::vector<double>& d, bool maxima) {
  auto rises = [&](double from, double to) { return maxima ? to > from : to < from; };
  std::vector<std::size_t> out;
  std::size_t i = 1;
  while (i + 1 < d.size()) {
    if (rises(d[i - 1], d[i])) {
      std::size_t j = i;
      while (j + 1 < d.size() && d[j + 1] == d[i]) ++j;
      if (j + 1 < d.size() && rises(d[j + 1], d[i])) out.push_back((i + j) / 2);
      i = j + 1;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace

Extrema find_extrema(const KdeCurve& curve, const KdeConfig& config) {
  Extrema e;
  for (std::size_t idx : local_extrema(curve.density, true)) {
    const double height = curve.density[idx];
    const double prom = peak_prominence(curve.density, idx);
    if (height >= config.peak_min_height && prom >= config.peak_min_prominence) {
      e.peaks.push_back({curve.grid[idx], height, ExtremumKind::peak, prom, idx});
    }
  }
  for (std::size_t idx : local_extrema(curve.density, false)) {
    e.valleys.push_back({curve.grid[idx], curve.density[idx], ExtremumKind::valley, 0.0, idx});
  }
  return e;
}

ThresholdReport select_threshold(const Extrema& extrema, const KdeCurve& curve, ValleyRule rule) {
  (void)curve;
  ThresholdReport r;
  r.peaks = extrema.peaks;
  r.valleys = extrema.valleys;
  if (r.peaks.size() < 2) {
    r.reason = "fewer than two peaks";
    return r;
  }
  if (r.valleys.empty()) {
    r.reason = "no valley";
    return r;
  }

  std::size_t highest = 0;
  for (std::size_t i = 1; i < r.peaks.size(); ++i) {
    if (r.peaks[i].height > r.peaks[highest].height) highest = i;
  }

  for (const Extremum& v : r.valleys) {
    const auto right = std::find_if(r.peaks.begin(), r.peaks.end(), [&](const Extremum& p) { return p.index > v.index; });
    if (right == r.peaks.begin() || right == r.peaks.end()) continue;
    const auto left = std::prev(right);
    const auto left_i = static_cast<std::size_t>(left - r.peaks.begin());
    const auto right_i = static_cast<std::size_t>(right - r.peaks.begin());
    if (rule == ValleyRule::adjacent_to_max && left_i != highest && right_i != highest) continue;

    r.status = ThresholdStatus::found;
    r.threshold = v.location;
    r.left_peak = *left;
    r.right_peak = *right;
    r.threshold_prominence = left->height - v.height;
    r.reason.clear();
    return r;
  }
  r.reason = rule == ValleyRule::adjacent_to_max ? "no valley adjacent to the highest peak"
                                                 : "no valley between two peaks";
  return r;
}

ThresholdReport detect(std::span<const double> sample, const DetectOptions& options) {
  const double h = silverman_bandwidth(sample);
  KdeCurve curve = kde(sample, h, options.kde.grid_points);
  const Extrema e = find_extrema(curve, options.kde);
  ThresholdReport r = select_threshold(e, curve, options.valley_rule);
  r.curve = std::move(curve);
  return r;
}

}  // namespace faceart
