#include "aab/sphere_geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Geometry>

#include "aab/error.h"

namespace aab {
namespace {

constexpr double kDegenerateBase = 1e-9;

double HalfChordAngle(const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
  return 2.0 * std::asin(std::min(1.0, 0.5 * (u - v).norm()));
}

}  // namespace

UnitVector3 UnitVector3::FromUnit(const Eigen::Vector3d& v) {
  const double norm = v.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormTolerance) {
    throw InvalidArgumentError("vector is not unit length (norm " +
                               std::to_string(norm) + ")");
  }
  return UnitVector3(v / norm);
}

UnitVector3 UnitVector3::Normalize(const Eigen::Vector3d& v) {
  const double norm = v.norm();
  if (!std::isfinite(norm) || norm == 0.0) {
    throw InvalidArgumentError("cannot normalize a zero or non-finite vector");
  }
  return UnitVector3(v / norm);
}

double GreatCircleDistance(const UnitVector3& u, const UnitVector3& v) {
  if (u.dot(v) >= 0.0) return HalfChordAngle(u.vec(), v.vec());
  return std::numbers::pi - HalfChordAngle(u.vec(), -v.vec());
}

UnitVector3 SampleUniformSphere(RandomStream& stream) {
  std::normal_distribution<double> normal(0.0, 1.0);
  while (true) {
    const Eigen::Vector3d v(normal(stream), normal(stream), normal(stream));
    if (v.squaredNorm() > 1e-300) return UnitVector3::Normalize(v);
  }
}

bool IsDegenerateBase(const UnitVector3& g1, const UnitVector3& g2) {
  const double z = g1.dot(g2);
  return !(z * z < 1.0 - kDegenerateBase);
}

std::optional<double> TryAabInconsistency(const UnitVector3& g3,
                                          const UnitVector3& g1,
                                          const UnitVector3& g2) {
  if (IsDegenerateBase(g1, g2)) return std::nullopt;

  const double x = g1.dot(g3);
  const double y = g2.dot(g3);
  const double z = g1.dot(g2);
  const bool inside = (x < y * z) && (y < x * z);
  if (inside) {
    // The projection of g3 onto span{g1, g2} normalizes into Ω. Its length
    // is the cosine of the answer; the distance to the plane is the sine.
    const double cos_sq = (x * x + y * y - 2.0 * x * y * z) / (1.0 - z * z);
    const double cos_angle = std::sqrt(std::clamp(cos_sq, 0.0, 1.0));
    const Eigen::Vector3d normal = g1.vec().cross(g2.vec());
    const double sin_angle = std::abs(g3.vec().dot(normal)) / normal.norm();
    return std::atan2(sin_angle, cos_angle);
  }
  // Nearest point of Ω is one of its endpoints -g1, -g2; this equals
  // arccos(-min(x, y)).
  return std::min(GreatCircleDistance(g3, -g1), GreatCircleDistance(g3, -g2));
}

double AabInconsistency(const UnitVector3& g3, const UnitVector3& g1,
                        const UnitVector3& g2) {
  if (auto value = TryAabInconsistency(g3, g1, g2)) return *value;
  throw DegenerateError("degenerate AAB base: g1 and g2 are (anti)parallel");
}

double AabInconsistencyOracle(const UnitVector3& g3, const UnitVector3& g1,
                              const UnitVector3& g2, int steps,
                              OracleScan scan) {
  if (steps < 2) throw InvalidArgumentError("oracle needs at least 2 steps");
  if (IsDegenerateBase(g1, g2)) {
    throw DegenerateError("degenerate AAB base: g1 and g2 are (anti)parallel");
  }

  const Eigen::Vector3d a = -g1.vec();
  const Eigen::Vector3d b = -g2.vec();
  const double omega = GreatCircleDistance(-g1, -g2);
  const double sin_omega = std::sin(omega);
  const double last = static_cast<double>(steps - 1);

  auto distance_at = [&](int index) {
    const double t = static_cast<double>(index) / last;
    const Eigen::Vector3d p =
        (std::sin((1.0 - t) * omega) * a + std::sin(t * omega) * b) /
        sin_omega;
    return GreatCircleDistance(g3, UnitVector3::Normalize(p));
  };
  auto scan_range = [&](int begin, int end, int stride, int* argmin) {
    double best = distance_at(begin);
    *argmin = begin;
    for (int index = begin + stride; index <= end; index += stride) {
      const double d = distance_at(index);
      if (d < best) {
        best = d;
        *argmin = index;
      }
    }
    return best;
  };

  int argmin = 0;
  constexpr int kCoarsePoints = 2048;
  if (scan == OracleScan::kExhaustive || steps <= 2 * kCoarsePoints) {
    return scan_range(0, steps - 1, 1, &argmin);
  }

  const int stride = (steps - 1 + kCoarsePoints - 1) / kCoarsePoints;
  double best = scan_range(0, steps - 1, stride, &argmin);
  // The strided pass can skip the final endpoint.
  if (const double d = distance_at(steps - 1); d < best) {
    best = d;
    argmin = steps - 1;
  }

  int refined = 0;
  const int begin = std::max(0, argmin - stride);
  const int end = std::min(steps - 1, argmin + stride);
  return std::min(best, scan_range(begin, end, 1, &refined));
}

}  // namespace aab
