#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aab/sphere_geometry.h"

namespace aab {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;  // sample standard deviation / √samples
  int64_t samples = 0;
  uint64_t seed = 0;
};

// Closed form claimed for f(x) = E[I_AAB(v₂(x); v₁, v)], v ~ U(S²):
// ½(x + sin x).
double LemmaF(double x);

// Monte Carlo estimate of f(x) with v₁ = (-1, 0, 0), v₂(x) = (cos x, sin x, 0).
McEstimate McEstimateF(double x, int64_t samples, uint64_t seed);

// Monte Carlo estimate of E[Z], Z = I_AAB(z; x, y) with x, y, z i.i.d.
// uniform on S² (degenerate bases are redrawn).
McEstimate McEstimateZ(int64_t samples, uint64_t seed);

// The AAB formula exactly as printed originally: arccos of
// a·(x² + y² - 2xyz)/(1 - z²) + (a - 1)·min(x, y), without the square root.
// Kept only to quantify its deviation; not used by the statistics.
double AabInconsistencyAsPrinted(const UnitVector3& g3, const UnitVector3& g1,
                                 const UnitVector3& g2);

struct FormulaDeviation {
  double max_abs_dev_corrected = 0.0;
  double max_abs_dev_as_printed = 0.0;
  int64_t samples = 0;
  int oracle_steps = 0;
  uint64_t seed = 0;
};

// Compares both closed forms with AabInconsistencyOracle over random
// non-degenerate triples.
FormulaDeviation FormulaVsOracle(int64_t samples, int oracle_steps,
                                 uint64_t seed);

// x = kπ/8, k = 0..8.
std::vector<double> LemmaGrid();

// JSON reports for the `verify` subcommand. `mode` is "lemma", "z" or
// "formula".
std::string VerifyReportJson(const std::string& mode, int64_t samples,
                             uint64_t seed, int oracle_steps);

}  // namespace aab
