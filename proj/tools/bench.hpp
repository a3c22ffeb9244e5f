#pragma once

// Single-threaded timing of the five compactness metrics.

#include "faceart/geometry.hpp"
#include "faceart/metrics.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace faceart::cli {

struct SampleIndices {
  std::vector<std::size_t> indices;
  bool with_replacement = false;  // population smaller than the sample
};

// k indices from [0, n) drawn with a seeded 64-bit Mersenne Twister. Without
// replacement when n >= k.
SampleIndices sample_indices(std::size_t n, std::size_t k, std::uint64_t seed);

struct MetricTiming {
  Metric metric = Metric::cc;
  double mean_ms = 0.0;
  double std_ms = 0.0;
  double min_ms = 0.0;
};

struct BenchReport {
  std::size_t population = 0;
  std::size_t sample_size = 0;
  bool with_replacement = false;
  int repetitions = 0;
  std::uint64_t seed = 0;
  std::array<MetricTiming, 5> timings{};
};

// Times one full pass of each metric over the sample, `repetitions` times.
// Polygons are expected to be prepared; no I/O happens inside the timed region.
BenchReport bench_metrics(std::span<const PolygonGeom> population, std::size_t sample_size, int repetitions,
                          std::uint64_t seed);

}  // namespace faceart::cli
