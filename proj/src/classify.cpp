#include "faceart/classify.hpp"

#include "faceart/errors.hpp"

namespace faceart {

std::string_view to_string(Label l) {
  switch (l) {
    case Label::artifact: return "artifact";
    case Label::block: return "block";
    case Label::unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

ClassificationResult classify(std::span<const FaceRecord> records, Metric metric, const ClassifyOptions& options) {
  ClassificationResult out;
  out.metric = metric;
  out.counts.n_faces = records.size();
  out.labels.assign(records.size(), Label::unlabeled);

  std::vector<double> sample;
  sample.reserve(records.size());
  for (const FaceRecord& r : records) sample.push_back(r.fai_of(metric));

  try {
    out.report = detect(sample, options.detect);
  } catch (const DegenerateSample& e) {
    out.report = ThresholdReport{};
    out.report.reason = e.what();
  }

  if (options.threshold_override) {
    out.applied_threshold = options.threshold_override;
    out.threshold_overridden = true;
  } else if (out.report.found()) {
    out.applied_threshold = out.report.threshold;
  }
  if (!out.applied_threshold) return out;

  const double t = *out.applied_threshold;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (sample[i] < t) {
      out.labels[i] = Label::artifact;
      ++out.counts.n_artifacts;
    } else {
      out.labels[i] = Label::block;
      ++out.counts.n_blocks;
    }
  }
  return out;
}

std::array<ClassificationResult, 5> classify_all_metrics(std::span<const FaceRecord> records,
                                                         const ClassifyOptions& options) {
  std::array<ClassificationResult, 5> out;
  for (Metric m : kAllMetrics) out[static_cast<std::size_t>(m)] = classify(records, m, options);
  return out;
}

}  // namespace faceart
