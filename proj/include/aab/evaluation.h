#pragma once

#include <optional>
#include <vector>

#include "aab/aab_stats.h"
#include "aab/solvers.h"
#include "aab/synthetic.h"
#include "aab/view_graph.h"

namespace aab {

// Corruption labels indexed like the graph's edges.
struct EdgeLabels {
  std::vector<double> angle;  // e_ij = ∠(γ_ij, γ*_ij)
  std::vector<bool> corrupted;
  // Generator flag when known (empty otherwise).
  std::vector<bool> generator_corrupted;

  size_t size() const { return angle.size(); }
};

// Numerical zero used for the σ = 0 labelling rule.
inline constexpr double kZeroAngle = 1e-9;

// corrupted ⇔ e_ij > arcsin(min(σ, 1)), with the threshold floored at
// kZeroAngle.
EdgeLabels LabelEdges(const ViewGraph& graph, const GroundTruth& truth,
                      double sigma);

double CorruptionThreshold(double sigma);

struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;
};

// Positive class = corrupted, predicted when statistic >= threshold. Points
// start with a (0, 0) anchor (threshold +inf) followed by one point per
// threshold in decreasing order; the last point is (1, 1).
struct RocCurve {
  std::vector<double> thresholds;  // ascending
  std::vector<RocPoint> points;
  std::optional<double> auc;  // absent when a class is empty
};

inline constexpr int kRocThresholds = 1000;

// `num_thresholds` equidistant thresholds over [min, max] of the supported
// statistics; 0 uses every distinct statistic value instead.
RocCurve ComputeRoc(const EdgeStatistics& stats, const EdgeLabels& labels,
                    int num_thresholds = kRocThresholds);

// Trapezoidal area under `points` in the given order.
double TrapezoidArea(const std::vector<RocPoint>& points);

struct Histogram {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<int> corrupted;
  std::vector<int> uncorrupted;
};

// Equal-width bins over [min, max] of the supported statistics.
Histogram ComputeHistogram(const EdgeStatistics& stats,
                           const EdgeLabels& labels, int bins);

struct ErrorSummary {
  double mean = 0.0;
  double median = 0.0;
  size_t count = 0;
};

// Euclidean distances over vertices present in both maps.
ErrorSummary LocationErrors(const LocationMap& aligned,
                            const LocationMap& truth);
ErrorSummary LocationErrors(const LocationMap& aligned,
                            const std::vector<Eigen::Vector3d>& truth);

// (before - after) / before · 100.
double Improvement(double error_before, double error_after);

struct ExpectationGap {
  std::optional<double> min_outlier_statistic;  // over E'
  std::optional<double> max_inlier_statistic;   // over E_g
  std::optional<bool> separated;
  size_t num_outliers = 0;  // |E'|
  size_t num_inliers = 0;   // |E_g|
};

// E' holds corrupted edges with min(e_ij, π - e_ij) > π·epsilon/4. Reports
// whether min over E' of the statistic exceeds max over uncorrupted edges.
// Realized statistics stand in for their expectations.
ExpectationGap ComputeExpectationGap(const EdgeStatistics& stats,
                                     const EdgeLabels& labels, double epsilon);

}  // namespace aab
