#pragma once

#include <optional>

#include <Eigen/Core>

#include "aab/random.h"

namespace aab {

// A point on the unit sphere S². Construction validates or normalizes, so
// every instance has Euclidean norm 1 to within rounding.
class UnitVector3 {
 public:
  // Accepts vectors whose norm is within kNormTolerance of 1 and
  // renormalizes them. Throws InvalidArgumentError otherwise.
  static UnitVector3 FromUnit(const Eigen::Vector3d& v);
  static UnitVector3 FromUnit(double x, double y, double z) {
    return FromUnit(Eigen::Vector3d(x, y, z));
  }

  // Normalizes any nonzero finite vector.
  static UnitVector3 Normalize(const Eigen::Vector3d& v);
  static UnitVector3 Normalize(double x, double y, double z) {
    return Normalize(Eigen::Vector3d(x, y, z));
  }

  static constexpr double kNormTolerance = 1e-6;

  const Eigen::Vector3d& vec() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  double dot(const UnitVector3& other) const { return v_.dot(other.v_); }

  UnitVector3 operator-() const { return UnitVector3(-v_); }
  bool operator==(const UnitVector3& other) const { return v_ == other.v_; }

 private:
  explicit UnitVector3(const Eigen::Vector3d& v) : v_(v) {}

  Eigen::Vector3d v_;
};

// Angle between u and v in [0, π]. Uses half-chord arcsine on whichever of
// v or -v is closer to u, which keeps full precision near 0 and near π.
double GreatCircleDistance(const UnitVector3& u, const UnitVector3& v);

// Normalized isotropic Gaussian draw.
UnitVector3 SampleUniformSphere(RandomStream& stream);

// Base pair (g1, g2) is degenerate when z = g1·g2 satisfies z² ≥ 1 - 1e-9;
// the consistency arc then collapses to a point or a full great circle.
bool IsDegenerateBase(const UnitVector3& g1, const UnitVector3& g2);

// AAB inconsistency of g3 with respect to the base (g1, g2): the geodesic
// distance from g3 to the arc Ω(g1, g2) of positive combinations of -g1 and
// -g2. Returns nullopt for a degenerate base.
std::optional<double> TryAabInconsistency(const UnitVector3& g3,
                                          const UnitVector3& g1,
                                          const UnitVector3& g2);

// As above, throwing DegenerateError for a degenerate base.
double AabInconsistency(const UnitVector3& g3, const UnitVector3& g1,
                        const UnitVector3& g2);

enum class OracleScan {
  // Coarse pass plus exhaustive refinement around the coarse minimizer.
  // Returns the same value as kExhaustive because distance along an arc
  // shorter than π has at most one interior local minimum.
  kCoarseToFine,
  kExhaustive,
};

// Brute-force AAB inconsistency: minimum of GreatCircleDistance(g3, p) over
// `steps` slerp samples p of the arc from -g1 to -g2, endpoints included.
// Overestimates the true distance by at most (arc length) / (steps - 1).
double AabInconsistencyOracle(const UnitVector3& g3, const UnitVector3& g1,
                              const UnitVector3& g2, int steps,
                              OracleScan scan = OracleScan::kCoarseToFine);

}  // namespace aab
