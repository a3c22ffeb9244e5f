#include "bench.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace faceart::cli {

SampleIndices sample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  SampleIndices out;
  if (n == 0 || k == 0) return out;
  std::mt19937_64 rng(seed);
  out.indices.reserve(k);
  if (n < k) {
    out.with_replacement = true;
    for (std::size_t i = 0; i < k; ++i) out.indices.push_back(static_cast<std::size_t>(rng() % n));
    return out;
  }
  // Partial Fisher-Yates; modulo draws keep the sequence library independent.
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(pool[i], pool[j]);
    out.indices.push_back(pool[i]);
  }
  return out;
}

namespace {

double metric_value(Metric m, const PolygonGeom& p) {
  switch (m) {
    case Metric::cc: return circular_compactness(p);
    case Metric::ipq: return isoperimetric_quotient(p);
    case Metric::iaq: return isoareal_quotient(p);
    case Metric::rr: return radii_ratio(p);
    case Metric::dr: return diameter_ratio(p);
  }
  return 0.0;
}

}  // namespace

BenchReport bench_metrics(std::span<const PolygonGeom> population, std::size_t sample_size, int repetitions,
                          std::uint64_t seed) {
  BenchReport report;
  report.population = population.size();
  report.repetitions = repetitions;
  report.seed = seed;

  const SampleIndices s = sample_indices(population.size(), sample_size, seed);
  report.sample_size = s.indices.size();
  report.with_replacement = s.with_replacement;
  std::vector<PolygonGeom> sample;
  sample.reserve(s.indices.size());
  for (std::size_t i : s.indices) sample.push_back(population[i]);

  volatile double sink = 0.0;
  for (Metric m : kAllMetrics) {
    std::vector<double> ms;
    ms.reserve(static_cast<std::size_t>(std::max(repetitions, 0)));
    for (int r = 0; r < repetitions; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      double acc = 0.0;
      for (const PolygonGeom& p : sample) acc += metric_value(m, p);
      const auto t1 = std::chrono::steady_clock::now();
      sink = sink + acc;
      ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    MetricTiming& t = report.timings[static_cast<std::size_t>(m)];
    t.metric = m;
    if (ms.empty()) continue;
    const double mean = std::accumulate(ms.begin(), ms.end(), 0.0) / static_cast<double>(ms.size());
    double ss = 0.0;
    t.min_ms = std::numeric_limits<double>::infinity();
    for (double v : ms) {
      ss += (v - mean) * (v - mean);
      t.min_ms = std::min(t.min_ms, v);
    }
    t.mean_ms = mean;
    t.std_ms = ms.size() > 1 ? std::sqrt(ss / static_cast<double>(ms.size() - 1)) : 0.0;
  }
  return report;
}

}  // namespace faceart::cli
