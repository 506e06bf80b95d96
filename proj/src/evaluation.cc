#include "aab/evaluation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "aab/error.h"

namespace aab {
namespace {

void CheckCoverage(const EdgeStatistics& stats, const EdgeLabels& labels) {
  if (stats.size() != labels.size() ||
      stats.unsupported.size() != labels.size() ||
      labels.corrupted.size() != labels.size()) {
    throw InvalidArgumentError("statistics and labels cover different edges");
  }
}

double MedianOf(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

double CorruptionThreshold(double sigma) {
  return std::max(std::asin(std::clamp(sigma, 0.0, 1.0)), kZeroAngle);
}

EdgeLabels LabelEdges(const ViewGraph& graph, const GroundTruth& truth,
                      double sigma) {
  if (truth.clean_directions.size() != graph.num_edges()) {
    throw InvalidArgumentError("ground truth does not cover the graph's edges");
  }
  const double threshold = CorruptionThreshold(sigma);
  EdgeLabels labels;
  labels.angle.reserve(graph.num_edges());
  labels.corrupted.reserve(graph.num_edges());
  for (size_t idx = 0; idx < graph.num_edges(); ++idx) {
    const double angle =
        GreatCircleDistance(graph.edge(idx).direction,
                            truth.clean_directions[idx]);
    labels.angle.push_back(angle);
    labels.corrupted.push_back(angle > threshold);
  }
  labels.generator_corrupted = truth.generator_corrupted;
  return labels;
}

double TrapezoidArea(const std::vector<RocPoint>& points) {
  double area = 0.0;
  for (size_t n = 1; n < points.size(); ++n) {
    area += 0.5 * (points[n].fpr - points[n - 1].fpr) *
            (points[n].tpr + points[n - 1].tpr);
  }
  return area;
}

RocCurve ComputeRoc(const EdgeStatistics& stats, const EdgeLabels& labels,
                    int num_thresholds) {
  CheckCoverage(stats, labels);
  if (num_thresholds < 0 || num_thresholds == 1) {
    throw InvalidArgumentError("ROC needs 0 or at least 2 thresholds");
  }

  // Sorted supported values per class.
  std::vector<double> positives;
  std::vector<double> negatives;
  for (size_t idx = 0; idx < stats.size(); ++idx) {
    if (stats.unsupported[idx]) continue;
    (labels.corrupted[idx] ? positives : negatives).push_back(stats.values[idx]);
  }
  std::sort(positives.begin(), positives.end());
  std::sort(negatives.begin(), negatives.end());

  RocCurve curve;
  if (positives.empty() && negatives.empty()) return curve;
  const double lo = std::min(positives.empty() ? negatives.front() : positives.front(),
                             negatives.empty() ? positives.front() : negatives.front());
  const double hi = std::max(positives.empty() ? negatives.back() : positives.back(),
                             negatives.empty() ? positives.back() : negatives.back());

  if (num_thresholds == 0) {
    std::vector<double> all = positives;
    all.insert(all.end(), negatives.begin(), negatives.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    curve.thresholds = std::move(all);
  } else {
    curve.thresholds.resize(num_thresholds);
    for (int n = 0; n < num_thresholds; ++n) {
      curve.thresholds[n] =
          lo + (hi - lo) * static_cast<double>(n) / (num_thresholds - 1);
    }
    curve.thresholds.back() = hi;
  }

  auto rate_at_or_above = [](const std::vector<double>& sorted, double t) {
    if (sorted.empty()) return 0.0;
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), t);
    return static_cast<double>(sorted.end() - it) /
           static_cast<double>(sorted.size());
  };

  curve.points.push_back(
      {std::numeric_limits<double>::infinity(), 0.0, 0.0});
  for (auto it = curve.thresholds.rbegin(); it != curve.thresholds.rend();
       ++it) {
    curve.points.push_back({*it, rate_at_or_above(negatives, *it),
                            rate_at_or_above(positives, *it)});
  }
  if (!positives.empty() && !negatives.empty()) {
    curve.auc = TrapezoidArea(curve.points);
  }
  return curve;
}

Histogram ComputeHistogram(const EdgeStatistics& stats,
                           const EdgeLabels& labels, int bins) {
  CheckCoverage(stats, labels);
  if (bins < 1) throw InvalidArgumentError("histogram needs at least one bin");

  Histogram histogram;
  histogram.corrupted.assign(bins, 0);
  histogram.uncorrupted.assign(bins, 0);
  bool first = true;
  for (size_t idx = 0; idx < stats.size(); ++idx) {
    if (stats.unsupported[idx]) continue;
    const double v = stats.values[idx];
    histogram.lower = first ? v : std::min(histogram.lower, v);
    histogram.upper = first ? v : std::max(histogram.upper, v);
    first = false;
  }
  const double width = (histogram.upper - histogram.lower) / bins;
  for (size_t idx = 0; idx < stats.size(); ++idx) {
    if (stats.unsupported[idx]) continue;
    int bin = 0;
    if (width > 0.0) {
      bin = static_cast<int>((stats.values[idx] - histogram.lower) / width);
      bin = std::clamp(bin, 0, bins - 1);
    }
    ++(labels.corrupted[idx] ? histogram.corrupted : histogram.uncorrupted)[bin];
  }
  return histogram;
}

ErrorSummary LocationErrors(const LocationMap& aligned,
                            const LocationMap& truth) {
  std::vector<double> distances;
  for (const auto& [vertex, t] : aligned) {
    const auto it = truth.find(vertex);
    if (it != truth.end()) distances.push_back((t - it->second).norm());
  }
  if (distances.empty()) {
    throw InvalidArgumentError("estimate and ground truth share no vertex");
  }
  ErrorSummary summary;
  summary.count = distances.size();
  double total = 0.0;
  for (const double d : distances) total += d;
  summary.mean = total / static_cast<double>(distances.size());
  summary.median = MedianOf(std::move(distances));
  return summary;
}

ErrorSummary LocationErrors(const LocationMap& aligned,
                            const std::vector<Eigen::Vector3d>& truth) {
  LocationMap truth_map;
  for (size_t v = 0; v < truth.size(); ++v) {
    truth_map[static_cast<int>(v)] = truth[v];
  }
  return LocationErrors(aligned, truth_map);
}

double Improvement(double error_before, double error_after) {
  if (!(error_before > 0.0)) {
    throw InvalidArgumentError("baseline error must be positive");
  }
  return (error_before - error_after) / error_before * 100.0;
}

ExpectationGap ComputeExpectationGap(const EdgeStatistics& stats,
                                     const EdgeLabels& labels,
                                     double epsilon) {
  CheckCoverage(stats, labels);
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw InvalidArgumentError("epsilon must lie in [0, 1]");
  }
  const double level = std::numbers::pi * epsilon / 4.0;
  ExpectationGap gap;
  for (size_t idx = 0; idx < stats.size(); ++idx) {
    if (stats.unsupported[idx]) continue;
    const double v = stats.values[idx];
    if (!labels.corrupted[idx]) {
      ++gap.num_inliers;
      gap.max_inlier_statistic =
          std::max(gap.max_inlier_statistic.value_or(v), v);
      continue;
    }
    const double e = labels.angle[idx];
    if (std::min(e, std::numbers::pi - e) > level) {
      ++gap.num_outliers;
      gap.min_outlier_statistic =
          std::min(gap.min_outlier_statistic.value_or(v), v);
    }
  }
  if (gap.min_outlier_statistic && gap.max_inlier_statistic) {
    gap.separated = *gap.min_outlier_statistic > *gap.max_inlier_statistic;
  }
  return gap;
}

}  // namespace aab
