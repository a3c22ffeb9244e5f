#pragma once

#include "faceart/metrics.hpp"
#include "faceart/threshold.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace faceart {

enum class Label { artifact, block, unlabeled };

std::string_view to_string(Label l);

struct ClassifyOptions {
  DetectOptions detect;
  // Externally supplied threshold. Detection still runs for the report, but
  // labels use this value.
  std::optional<double> threshold_override;
};

struct ClassCounts {
  std::size_t n_faces = 0;
  std::size_t n_artifacts = 0;
  std::size_t n_blocks = 0;
};

struct ClassificationResult {
  Metric metric = Metric::cc;
  ThresholdReport report;
  std::optional<double> applied_threshold;  // set iff labels were assigned
  bool threshold_overridden = false;
  std::vector<Label> labels;  // parallel to the input records
  ClassCounts counts;
};

// Faces with index strictly below the threshold are artifacts; the rest are
// blocks. Without a threshold every face stays unlabeled.
ClassificationResult classify(std::span<const FaceRecord> records, Metric metric, const ClassifyOptions& options = {});

std::array<ClassificationResult, 5> classify_all_metrics(std::span<const FaceRecord> records,
                                                         const ClassifyOptions& options = {});

}  // namespace faceart
