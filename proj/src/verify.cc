#include "aab/verify.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <json.hpp>

#include "aab/error.h"
#include "aab/parallel.h"
#include "aab/random.h"

namespace aab {
namespace {

constexpr int64_t kChunk = 8192;

// Running mean and squared deviation (Welford), merged with Chan's update.
struct Moments {
  int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void Add(double value) {
    ++count;
    const double delta = value - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (value - mean);
  }

  void Merge(const Moments& other) {
    if (other.count == 0) return;
    const int64_t total = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / static_cast<double>(total);
    m2 += other.m2 + delta * delta * static_cast<double>(count) *
                         static_cast<double>(other.count) /
                         static_cast<double>(total);
    count = total;
  }
};

// Fixed chunking with one derived stream per chunk; chunks are merged in
// order so the result is independent of the thread count.
McEstimate ChunkedMonteCarlo(
    int64_t samples, uint64_t seed, uint64_t tag,
    const std::function<double(RandomStream&)>& draw) {
  if (samples < 1) throw InvalidArgumentError("samples must be positive");
  const auto chunks = static_cast<size_t>((samples + kChunk - 1) / kChunk);
  std::vector<Moments> partial(chunks);
  ParallelFor(chunks, [&](size_t begin, size_t end) {
    for (size_t c = begin; c < end; ++c) {
      RandomStream stream =
          DeriveStream(seed, StreamDomain::kMonteCarlo, {tag, c});
      const int64_t first = static_cast<int64_t>(c) * kChunk;
      const int64_t count = std::min(kChunk, samples - first);
      for (int64_t n = 0; n < count; ++n) partial[c].Add(draw(stream));
    }
  });
  Moments total;
  for (const auto& m : partial) total.Merge(m);

  McEstimate estimate;
  estimate.value = total.mean;
  estimate.samples = samples;
  estimate.seed = seed;
  if (samples > 1) {
    const double variance = total.m2 / static_cast<double>(samples - 1);
    estimate.std_error = std::sqrt(variance / static_cast<double>(samples));
  }
  return estimate;
}

UnitVector3 DrawNonDegeneratePartner(RandomStream& stream,
                                     const UnitVector3& other) {
  while (true) {
    const UnitVector3 v = SampleUniformSphere(stream);
    if (!IsDegenerateBase(other, v)) return v;
  }
}

}  // namespace

double LemmaF(double x) { return 0.5 * (x + std::sin(x)); }

std::vector<double> LemmaGrid() {
  std::vector<double> grid;
  for (int k = 0; k <= 8; ++k) grid.push_back(k * std::numbers::pi / 8.0);
  return grid;
}

McEstimate McEstimateF(double x, int64_t samples, uint64_t seed) {
  if (!(x >= 0.0 && x <= std::numbers::pi)) {
    throw InvalidArgumentError("x must lie in [0, pi]");
  }
  const UnitVector3 v1 = UnitVector3::FromUnit(-1.0, 0.0, 0.0);
  const UnitVector3 v2 =
      UnitVector3::Normalize(std::cos(x), std::sin(x), 0.0);
  return ChunkedMonteCarlo(samples, seed, 1, [&](RandomStream& stream) {
    const UnitVector3 v = DrawNonDegeneratePartner(stream, v1);
    return AabInconsistency(v2, v1, v);
  });
}

McEstimate McEstimateZ(int64_t samples, uint64_t seed) {
  return ChunkedMonteCarlo(samples, seed, 2, [](RandomStream& stream) {
    const UnitVector3 z = SampleUniformSphere(stream);
    const UnitVector3 x = SampleUniformSphere(stream);
    const UnitVector3 y = DrawNonDegeneratePartner(stream, x);
    return AabInconsistency(z, x, y);
  });
}

double AabInconsistencyAsPrinted(const UnitVector3& g3, const UnitVector3& g1,
                                 const UnitVector3& g2) {
  if (IsDegenerateBase(g1, g2)) {
    throw DegenerateError("degenerate AAB base: g1 and g2 are (anti)parallel");
  }
  const double x = g1.dot(g3);
  const double y = g2.dot(g3);
  const double z = g1.dot(g2);
  const double a = (x < y * z && y < x * z) ? 1.0 : 0.0;
  const double arg =
      a * (x * x + y * y - 2.0 * x * y * z) / (1.0 - z * z) +
      (a - 1.0) * std::min(x, y);
  return std::acos(std::clamp(arg, -1.0, 1.0));
}

FormulaDeviation FormulaVsOracle(int64_t samples, int oracle_steps,
                                 uint64_t seed) {
  if (samples < 1) throw InvalidArgumentError("samples must be positive");
  if (oracle_steps < 2) throw InvalidArgumentError("oracle_steps must be >= 2");

  const auto chunks = static_cast<size_t>((samples + kChunk - 1) / kChunk);
  std::vector<double> corrected(chunks, 0.0);
  std::vector<double> printed(chunks, 0.0);
  ParallelFor(chunks, [&](size_t begin, size_t end) {
    for (size_t c = begin; c < end; ++c) {
      RandomStream stream = DeriveStream(seed, StreamDomain::kMonteCarlo, {3, c});
      const int64_t first = static_cast<int64_t>(c) * kChunk;
      const int64_t count = std::min(kChunk, samples - first);
      for (int64_t n = 0; n < count; ++n) {
        const UnitVector3 g3 = SampleUniformSphere(stream);
        const UnitVector3 g1 = SampleUniformSphere(stream);
        const UnitVector3 g2 = DrawNonDegeneratePartner(stream, g1);
        const double oracle = AabInconsistencyOracle(g3, g1, g2, oracle_steps);
        corrected[c] = std::max(corrected[c],
                                std::abs(AabInconsistency(g3, g1, g2) - oracle));
        printed[c] = std::max(
            printed[c], std::abs(AabInconsistencyAsPrinted(g3, g1, g2) - oracle));
      }
    }
  });

  FormulaDeviation deviation;
  deviation.samples = samples;
  deviation.oracle_steps = oracle_steps;
  deviation.seed = seed;
  deviation.max_abs_dev_corrected =
      *std::max_element(corrected.begin(), corrected.end());
  deviation.max_abs_dev_as_printed =
      *std::max_element(printed.begin(), printed.end());
  return deviation;
}

std::string VerifyReportJson(const std::string& mode, int64_t samples,
                             uint64_t seed, int oracle_steps) {
  nlohmann::ordered_json report;
  report["mode"] = mode;
  report["samples"] = samples;
  report["seed"] = seed;

  if (mode == "lemma") {
    nlohmann::ordered_json estimates = nlohmann::ordered_json::array();
    const std::vector<double> grid = LemmaGrid();
    bool all_within = true;
    for (size_t k = 0; k < grid.size(); ++k) {
      const McEstimate e = McEstimateF(grid[k], samples, seed + k);
      const double reference = LemmaF(grid[k]);
      const double deviation = std::abs(e.value - reference);
      const bool within = deviation <= 4.0 * e.std_error;
      all_within = all_within && within;
      estimates.push_back({{"x", grid[k]},
                           {"estimate", e.value},
                           {"std_error", e.std_error},
                           {"closed_form", reference},
                           {"abs_deviation", deviation},
                           {"within_4_se", within},
                           {"seed", e.seed}});
    }
    report["estimates"] = estimates;
    report["all_within_4_se"] = all_within;
  } else if (mode == "z") {
    const McEstimate e = McEstimateZ(samples, seed);
    report["estimate"] = e.value;
    report["std_error"] = e.std_error;
  } else if (mode == "formula") {
    const FormulaDeviation d = FormulaVsOracle(samples, oracle_steps, seed);
    report["oracle_steps"] = oracle_steps;
    report["max_abs_dev_corrected"] = d.max_abs_dev_corrected;
    report["max_abs_dev_as_printed"] = d.max_abs_dev_as_printed;
    const UnitVector3 g1 = UnitVector3::FromUnit(1.0, 0.0, 0.0);
    const UnitVector3 g2 = UnitVector3::FromUnit(0.0, 1.0, 0.0);
    const UnitVector3 g3 = UnitVector3::Normalize(-1.0, -1.0, 1.0);
    const double oracle = AabInconsistencyOracle(g3, g1, g2, oracle_steps);
    report["reference_triple"] = {
        {"g1", {1.0, 0.0, 0.0}},
        {"g2", {0.0, 1.0, 0.0}},
        {"g3", {-1.0 / std::sqrt(3.0), -1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)}},
        {"oracle", oracle},
        {"corrected", AabInconsistency(g3, g1, g2)},
        {"as_printed", AabInconsistencyAsPrinted(g3, g1, g2)}};
  } else {
    throw InvalidArgumentError("unknown verify mode '" + mode +
                               "' (expected lemma, z or formula)");
  }
  return report.dump(2) + "\n";
}

}  // namespace aab
