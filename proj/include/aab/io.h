#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aab/aab_stats.h"
#include "aab/evaluation.h"
#include "aab/solvers.h"
#include "aab/view_graph.h"

namespace aab {

// Shortest decimal form that round-trips a double; "nan", "inf", "-inf" for
// non-finite values.
std::string FormatDouble(double value);

// Writes `content` to a temporary sibling and renames it over `path`, so a
// failed run never leaves a partial file behind.
void WriteFileAtomic(const std::string& path, const std::string& content);

// Edge list:
//   # aab-edges v1 n=<n>
//   # <optional comment lines>
//   i j gx gy gz
// with 0-based i < j. Directions are renormalized on load and rejected when
// their norm is off by more than 1e-6.
std::string FormatEdgeList(const ViewGraph& graph,
                           const std::vector<std::string>& comments = {});
void WriteEdgeList(const ViewGraph& graph, const std::string& path,
                   const std::vector<std::string>& comments = {});
ViewGraph ParseEdgeList(const std::string& content,
                        const std::string& source = "<memory>");
ViewGraph ReadEdgeList(const std::string& path);

// Location file:
//   # aab-locations v1 n=<n>
//   i tx ty tz
struct LocationFile {
  int num_vertices = 0;
  LocationMap locations;
};
void WriteLocations(const LocationMap& locations, int num_vertices,
                    const std::string& path,
                    const std::vector<std::string>& comments = {});
LocationFile ParseLocations(const std::string& content,
                            const std::string& source = "<memory>");
LocationFile ReadLocations(const std::string& path);

// Statistic CSV "i,j,statistic,unsupported", one row per edge in edge order.
// Unsupported edges carry "nan".
void WriteStatistics(const ViewGraph& graph, const EdgeStatistics& stats,
                     const std::string& path,
                     const std::vector<std::string>& comments = {});
EdgeStatistics ReadStatistics(const ViewGraph& graph, const std::string& path);

// Per-iteration dump "t,i,j,statistic" for every retained S^(t).
void WritePerIteration(const ViewGraph& graph, const EdgeStatistics& stats,
                       const std::string& path,
                       const std::vector<std::string>& comments = {});

// Label CSV "i,j,angle,corrupted".
void WriteLabels(const ViewGraph& graph, const EdgeLabels& labels,
                 const std::string& path,
                 const std::vector<std::string>& comments = {});
EdgeLabels ReadLabels(const ViewGraph& graph, const std::string& path);

// ROC CSV "threshold,fpr,tpr" followed by a "# auc=<value>" footer.
std::string FormatRocCsv(const RocCurve& curve,
                         const std::vector<std::string>& comments = {});
// Histogram CSV "bin,lower,upper,corrupted,uncorrupted".
std::string FormatHistogramCsv(const Histogram& histogram,
                               const std::vector<std::string>& comments = {});

struct EvaluationOptions {
  int bins = 50;
  double epsilon = 0.2;
  std::optional<double> baseline_error;
  bool baseline_is_median = false;  // compare against the median error
  std::vector<std::string> provenance;
};

// Writes roc.csv, hist.csv and errors.json into `out_dir` (created if
// needed). `estimate`/`truth` are optional; when both are given the estimate
// is similarity-aligned and its location errors reported.
void WriteEvaluation(const std::string& out_dir, const ViewGraph& graph,
                     const EdgeStatistics& stats, const EdgeLabels& labels,
                     const LocationFile* estimate, const LocationFile* truth,
                     const EvaluationOptions& options);

}  // namespace aab
