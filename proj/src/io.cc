#include "aab/io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "aab/error.h"

namespace aab {
namespace {

constexpr char kEdgeHeader[] = "# aab-edges v1 n=";
constexpr char kLocationHeader[] = "# aab-locations v1 n=";
constexpr char kStatisticColumns[] = "i,j,statistic,unsupported";
constexpr char kLabelColumns[] = "i,j,angle,corrupted";

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> SplitLines(const std::string& content) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(content);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> SplitFields(const std::string& line, char sep) {
  std::vector<std::string> fields;
  if (sep == ' ') {
    std::istringstream in(line);
    std::string field;
    while (in >> field) fields.push_back(field);
    return fields;
  }
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

bool IsBlankOrComment(const std::string& line) {
  const size_t first = line.find_first_not_of(" \t");
  return first == std::string::npos || line[first] == '#';
}

int ParseInt(const std::string& text, const std::string& source, int line) {
  int value = 0;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ParseError(source, line, "expected an integer, got '" + text + "'");
  }
  return value;
}

double ParseReal(const std::string& text, const std::string& source,
                 int line) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ParseError(source, line, "expected a number, got '" + text + "'");
  }
  return value;
}

int ParseHeaderCount(const std::vector<std::string>& lines, const char* header,
                     const std::string& source) {
  const std::string prefix(header);
  if (lines.empty() || lines.front().rfind(prefix, 0) != 0) {
    throw ParseError(source, 1, "missing header '" + prefix + "<n>'");
  }
  const int n = ParseInt(lines.front().substr(prefix.size()), source, 1);
  if (n < 0) throw ParseError(source, 1, "negative vertex count");
  return n;
}

void AppendComments(std::string* out, const std::vector<std::string>& comments) {
  for (const auto& c : comments) {
    *out += "# " + c + "\n";
  }
}

// Finds the edge for a parsed (i, j) row of a per-edge CSV.
size_t EdgeForRow(const ViewGraph& graph, int i, int j,
                  std::vector<bool>* seen, const std::string& source,
                  int line) {
  const auto idx = graph.FindEdge(i, j);
  if (!idx || i >= j) {
    throw ParseError(source, line,
                     "row " + std::to_string(i) + "," + std::to_string(j) +
                         " is not an edge of the graph");
  }
  if ((*seen)[*idx]) throw ParseError(source, line, "duplicate row");
  (*seen)[*idx] = true;
  return *idx;
}

// Yields (line number, fields) for the data rows of a CSV with a fixed
// column header.
std::vector<std::pair<int, std::vector<std::string>>> CsvRows(
    const std::string& content, const char* columns, const std::string& source) {
  const std::vector<std::string> lines = SplitLines(content);
  std::vector<std::pair<int, std::vector<std::string>>> rows;
  bool header_seen = false;
  const size_t width = SplitFields(columns, ',').size();
  for (size_t n = 0; n < lines.size(); ++n) {
    const int line = static_cast<int>(n) + 1;
    if (IsBlankOrComment(lines[n])) continue;
    if (!header_seen) {
      if (lines[n] != columns) {
        throw ParseError(source, line,
                         "expected column header '" + std::string(columns) + "'");
      }
      header_seen = true;
      continue;
    }
    auto fields = SplitFields(lines[n], ',');
    if (fields.size() != width) {
      throw ParseError(source, line, "expected " + std::to_string(width) +
                                         " fields, got " +
                                         std::to_string(fields.size()));
    }
    rows.emplace_back(line, std::move(fields));
  }
  if (!header_seen) {
    throw ParseError(source, 1, "missing column header '" + std::string(columns) + "'");
  }
  return rows;
}

void RequireAllRows(const std::vector<bool>& seen, const std::string& source) {
  for (bool s : seen) {
    if (!s) throw IoError(source + ": file does not cover every graph edge");
  }
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void WriteFileAtomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path temp =
      target.parent_path() /
      (target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + temp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw IoError("failed writing '" + temp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw IoError("cannot move output into place at '" + path + "'");
  }
}

std::string FormatEdgeList(const ViewGraph& graph,
                           const std::vector<std::string>& comments) {
  std::string out = kEdgeHeader + std::to_string(graph.num_vertices()) + "\n";
  AppendComments(&out, comments);
  for (const Edge& e : graph.edges()) {
    out += std::to_string(e.i) + " " + std::to_string(e.j) + " " +
           FormatDouble(e.direction.x()) + " " + FormatDouble(e.direction.y()) +
           " " + FormatDouble(e.direction.z()) + "\n";
  }
  return out;
}

void WriteEdgeList(const ViewGraph& graph, const std::string& path,
                   const std::vector<std::string>& comments) {
  WriteFileAtomic(path, FormatEdgeList(graph, comments));
}

ViewGraph ParseEdgeList(const std::string& content, const std::string& source) {
  const std::vector<std::string> lines = SplitLines(content);
  const int n = ParseHeaderCount(lines, kEdgeHeader, source);

  std::vector<Edge> edges;
  std::unordered_map<uint64_t, int> first_line;
  for (size_t k = 1; k < lines.size(); ++k) {
    const int line = static_cast<int>(k) + 1;
    if (IsBlankOrComment(lines[k])) continue;
    const auto fields = SplitFields(lines[k], ' ');
    if (fields.size() != 5) {
      throw ParseError(source, line,
                       "expected 'i j gx gy gz', got " +
                           std::to_string(fields.size()) + " fields");
    }
    const int i = ParseInt(fields[0], source, line);
    const int j = ParseInt(fields[1], source, line);
    if (i == j) {
      throw ParseError(source, line, "self-loop at vertex " + std::to_string(i));
    }
    if (i > j) throw ParseError(source, line, "edge must satisfy i < j");
    if (i < 0 || j >= n) {
      throw ParseError(source, line, "vertex id out of range [0, " +
                                         std::to_string(n) + ")");
    }
    const Eigen::Vector3d g(ParseReal(fields[2], source, line),
                            ParseReal(fields[3], source, line),
                            ParseReal(fields[4], source, line));
    const double norm = g.norm();
    if (!std::isfinite(norm) ||
        std::abs(norm - 1.0) > UnitVector3::kNormTolerance) {
      throw ParseError(source, line,
                       "direction norm " + FormatDouble(norm) +
                           " deviates from 1 by more than 1e-6");
    }
    const uint64_t key = static_cast<uint64_t>(i) * static_cast<uint64_t>(n) +
                         static_cast<uint64_t>(j);
    if (!first_line.emplace(key, line).second) {
      throw ParseError(source, line,
                       "duplicate edge " + std::to_string(i) + " " +
                           std::to_string(j) + " (first at line " +
                           std::to_string(first_line[key]) + ")");
    }
    edges.push_back({i, j, UnitVector3::FromUnit(g)});
  }
  return ViewGraph(n, std::move(edges));
}

ViewGraph ReadEdgeList(const std::string& path) {
  return ParseEdgeList(ReadFile(path), path);
}

void WriteLocations(const LocationMap& locations, int num_vertices,
                    const std::string& path,
                    const std::vector<std::string>& comments) {
  std::string out = kLocationHeader + std::to_string(num_vertices) + "\n";
  AppendComments(&out, comments);
  for (const auto& [vertex, t] : locations) {
    out += std::to_string(vertex) + " " + FormatDouble(t.x()) + " " +
           FormatDouble(t.y()) + " " + FormatDouble(t.z()) + "\n";
  }
  WriteFileAtomic(path, out);
}

LocationFile ParseLocations(const std::string& content,
                            const std::string& source) {
  const std::vector<std::string> lines = SplitLines(content);
  LocationFile file;
  file.num_vertices = ParseHeaderCount(lines, kLocationHeader, source);
  for (size_t k = 1; k < lines.size(); ++k) {
    const int line = static_cast<int>(k) + 1;
    if (IsBlankOrComment(lines[k])) continue;
    const auto fields = SplitFields(lines[k], ' ');
    if (fields.size() != 4) {
      throw ParseError(source, line, "expected 'i tx ty tz'");
    }
    const int v = ParseInt(fields[0], source, line);
    if (v < 0 || v >= file.num_vertices) {
      throw ParseError(source, line, "vertex id out of range");
    }
    const Eigen::Vector3d t(ParseReal(fields[1], source, line),
                            ParseReal(fields[2], source, line),
                            ParseReal(fields[3], source, line));
    if (!t.allFinite()) throw ParseError(source, line, "non-finite location");
    if (!file.locations.emplace(v, t).second) {
      throw ParseError(source, line,
                       "vertex " + std::to_string(v) + " listed twice");
    }
  }
  return file;
}

LocationFile ReadLocations(const std::string& path) {
  return ParseLocations(ReadFile(path), path);
}

void WriteStatistics(const ViewGraph& graph, const EdgeStatistics& stats,
                     const std::string& path,
                     const std::vector<std::string>& comments) {
  if (stats.size() != graph.num_edges()) {
    throw InvalidArgumentError("statistics do not match the graph");
  }
  std::string out;
  AppendComments(&out, comments);
  out += std::string(kStatisticColumns) + "\n";
  for (size_t idx = 0; idx < graph.num_edges(); ++idx) {
    const Edge& e = graph.edge(idx);
    out += std::to_string(e.i) + "," + std::to_string(e.j) + "," +
           FormatDouble(stats.unsupported[idx]
                            ? std::numeric_limits<double>::quiet_NaN()
                            : stats.values[idx]) +
           "," + (stats.unsupported[idx] ? "1" : "0") + "\n";
  }
  WriteFileAtomic(path, out);
}

EdgeStatistics ReadStatistics(const ViewGraph& graph, const std::string& path) {
  EdgeStatistics stats;
  stats.values.assign(graph.num_edges(), std::numeric_limits<double>::quiet_NaN());
  stats.unsupported.assign(graph.num_edges(), true);
  std::vector<bool> seen(graph.num_edges(), false);
  for (const auto& [line, fields] : CsvRows(ReadFile(path), kStatisticColumns, path)) {
    const int i = ParseInt(fields[0], path, line);
    const int j = ParseInt(fields[1], path, line);
    const size_t idx = EdgeForRow(graph, i, j, &seen, path, line);
    const int flag = ParseInt(fields[3], path, line);
    if (flag != 0 && flag != 1) {
      throw ParseError(path, line, "unsupported flag must be 0 or 1");
    }
    stats.unsupported[idx] = flag == 1;
    const double value = ParseReal(fields[2], path, line);
    if (flag == 0 && !(value >= 0.0 && value <= std::numbers::pi + 1e-12)) {
      throw ParseError(path, line, "statistic outside [0, pi]");
    }
    stats.values[idx] = value;
  }
  RequireAllRows(seen, path);
  return stats;
}

void WritePerIteration(const ViewGraph& graph, const EdgeStatistics& stats,
                       const std::string& path,
                       const std::vector<std::string>& comments) {
  std::string out;
  AppendComments(&out, comments);
  out += "t,i,j,statistic\n";
  for (size_t t = 0; t < stats.per_iteration.size(); ++t) {
    for (size_t idx = 0; idx < graph.num_edges(); ++idx) {
      const Edge& e = graph.edge(idx);
      out += std::to_string(t) + "," + std::to_string(e.i) + "," +
             std::to_string(e.j) + "," +
             FormatDouble(stats.per_iteration[t][idx]) + "\n";
    }
  }
  WriteFileAtomic(path, out);
}

void WriteLabels(const ViewGraph& graph, const EdgeLabels& labels,
                 const std::string& path,
                 const std::vector<std::string>& comments) {
  if (labels.size() != graph.num_edges()) {
    throw InvalidArgumentError("labels do not match the graph");
  }
  std::string out;
  AppendComments(&out, comments);
  out += std::string(kLabelColumns) + "\n";
  for (size_t idx = 0; idx < graph.num_edges(); ++idx) {
    const Edge& e = graph.edge(idx);
    out += std::to_string(e.i) + "," + std::to_string(e.j) + "," +
           FormatDouble(labels.angle[idx]) + "," +
           (labels.corrupted[idx] ? "1" : "0") + "\n";
  }
  WriteFileAtomic(path, out);
}

EdgeLabels ReadLabels(const ViewGraph& graph, const std::string& path) {
  EdgeLabels labels;
  labels.angle.assign(graph.num_edges(), 0.0);
  labels.corrupted.assign(graph.num_edges(), false);
  std::vector<bool> seen(graph.num_edges(), false);
  for (const auto& [line, fields] : CsvRows(ReadFile(path), kLabelColumns, path)) {
    const int i = ParseInt(fields[0], path, line);
    const int j = ParseInt(fields[1], path, line);
    const size_t idx = EdgeForRow(graph, i, j, &seen, path, line);
    const double angle = ParseReal(fields[2], path, line);
    if (!(angle >= 0.0 && angle <= std::numbers::pi + 1e-12)) {
      throw ParseError(path, line, "angle outside [0, pi]");
    }
    const int flag = ParseInt(fields[3], path, line);
    if (flag != 0 && flag != 1) {
      throw ParseError(path, line, "corrupted flag must be 0 or 1");
    }
    labels.angle[idx] = angle;
    labels.corrupted[idx] = flag == 1;
  }
  RequireAllRows(seen, path);
  return labels;
}

std::string FormatRocCsv(const RocCurve& curve,
                         const std::vector<std::string>& comments) {
  std::string out;
  AppendComments(&out, comments);
  out += "threshold,fpr,tpr\n";
  for (const RocPoint& p : curve.points) {
    out += FormatDouble(p.threshold) + "," + FormatDouble(p.fpr) + "," +
           FormatDouble(p.tpr) + "\n";
  }
  out += "# auc=" + (curve.auc ? FormatDouble(*curve.auc) : std::string("none")) +
         "\n";
  return out;
}

std::string FormatHistogramCsv(const Histogram& histogram,
                               const std::vector<std::string>& comments) {
  std::string out;
  AppendComments(&out, comments);
  out += "bin,lower,upper,corrupted,uncorrupted\n";
  const int bins = static_cast<int>(histogram.corrupted.size());
  const double width = (histogram.upper - histogram.lower) / bins;
  for (int b = 0; b < bins; ++b) {
    const double lo = histogram.lower + b * width;
    const double hi = b + 1 == bins ? histogram.upper : lo + width;
    out += std::to_string(b) + "," + FormatDouble(lo) + "," + FormatDouble(hi) +
           "," + std::to_string(histogram.corrupted[b]) + "," +
           std::to_string(histogram.uncorrupted[b]) + "\n";
  }
  return out;
}

void WriteEvaluation(const std::string& out_dir, const ViewGraph& graph,
                     const EdgeStatistics& stats, const EdgeLabels& labels,
                     const LocationFile* estimate, const LocationFile* truth,
                     const EvaluationOptions& options) {
  if (stats.size() != graph.num_edges() || labels.size() != graph.num_edges()) {
    throw InvalidArgumentError("statistics or labels do not match the graph");
  }
  const RocCurve roc = ComputeRoc(stats, labels);
  const Histogram histogram = ComputeHistogram(stats, labels, options.bins);
  const ExpectationGap gap =
      ComputeExpectationGap(stats, labels, options.epsilon);

  nlohmann::ordered_json report;
  report["provenance"] = options.provenance;
  report["supported_edges"] = stats.NumSupported();
  report["auc"] = roc.auc ? nlohmann::ordered_json(*roc.auc) : nullptr;
  report["expectation_gap"] = {
      {"epsilon", options.epsilon},
      {"min_outlier_statistic",
       gap.min_outlier_statistic ? nlohmann::ordered_json(*gap.min_outlier_statistic)
                                 : nullptr},
      {"max_inlier_statistic",
       gap.max_inlier_statistic ? nlohmann::ordered_json(*gap.max_inlier_statistic)
                                : nullptr},
      {"separated",
       gap.separated ? nlohmann::ordered_json(*gap.separated) : nullptr}};

  if ((estimate == nullptr) != (truth == nullptr)) {
    throw InvalidArgumentError(
        "location errors need both an estimate and a ground truth");
  }
  if (estimate != nullptr) {
    const SimilarityAlignment alignment =
        AlignSimilarity(estimate->locations, truth->locations);
    const ErrorSummary errors =
        LocationErrors(alignment.aligned, truth->locations);
    report["mean"] = errors.mean;
    report["median"] = errors.median;
    report["located_vertices"] = errors.count;
    report["scale"] = alignment.scale;
    if (options.baseline_error) {
      const double after = options.baseline_is_median ? errors.median : errors.mean;
      report["baseline_error"] = *options.baseline_error;
      report["baseline_metric"] = options.baseline_is_median ? "median" : "mean";
      report["improvement_percent"] = Improvement(*options.baseline_error, after);
    }
  } else if (options.baseline_error) {
    throw InvalidArgumentError("--baseline-error needs an estimate");
  }

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  WriteFileAtomic((dir / "roc.csv").string(), FormatRocCsv(roc, options.provenance));
  WriteFileAtomic((dir / "hist.csv").string(),
                  FormatHistogramCsv(histogram, options.provenance));
  WriteFileAtomic((dir / "errors.json").string(), report.dump(2) + "\n");
}

}  // namespace aab
