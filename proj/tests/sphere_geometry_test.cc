#include "aab/sphere_geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "aab/error.h"
#include "test_util.h"

namespace aab {
namespace {

using testing::RandomTriple;
using testing::Rotate;
using testing::TestStream;
using testing::V;

constexpr double kPi = std::numbers::pi;

TEST(UnitVector3, RejectsNonUnitInput) {
  EXPECT_THROW(UnitVector3::FromUnit(2.0, 0.0, 0.0), InvalidArgumentError);
  EXPECT_THROW(UnitVector3::FromUnit(1.0 + 2e-6, 0.0, 0.0),
               InvalidArgumentError);
  EXPECT_NO_THROW(UnitVector3::FromUnit(1.0 + 5e-7, 0.0, 0.0));
  EXPECT_THROW(UnitVector3::Normalize(0.0, 0.0, 0.0), InvalidArgumentError);
  EXPECT_THROW(UnitVector3::Normalize(NAN, 0.0, 0.0), InvalidArgumentError);
  const UnitVector3 v = UnitVector3::FromUnit(1.0 + 5e-7, 0.0, 0.0);
  EXPECT_NEAR(v.vec().norm(), 1.0, 1e-15);
}

TEST(GreatCircleDistance, Examples) {
  EXPECT_EQ(GreatCircleDistance(V(1, 0, 0), V(1, 0, 0)), 0.0);
  EXPECT_NEAR(GreatCircleDistance(V(1, 0, 0), V(-1, 0, 0)), kPi, 1e-15);
  EXPECT_NEAR(GreatCircleDistance(V(1, 0, 0), V(0, 1, 0)), kPi / 2, 1e-15);
}

TEST(GreatCircleDistance, StableNearEndpoints) {
  const double tiny = 1e-10;
  EXPECT_NEAR(GreatCircleDistance(V(1, 0, 0), V(std::cos(tiny), std::sin(tiny), 0)),
              tiny, 1e-20);
  EXPECT_NEAR(GreatCircleDistance(V(1, 0, 0), V(-std::cos(tiny), std::sin(tiny), 0)),
              kPi - tiny, 1e-15);
}

TEST(GreatCircleDistance, SymmetricAndInRange) {
  RandomStream stream = TestStream(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const UnitVector3 u = SampleUniformSphere(stream);
    const UnitVector3 v = SampleUniformSphere(stream);
    const double d = GreatCircleDistance(u, v);
    EXPECT_EQ(d, GreatCircleDistance(v, u));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, kPi);
    EXPECT_NEAR(d, std::acos(std::clamp(u.dot(v), -1.0, 1.0)), 1e-7);
  }
}

TEST(SampleUniformSphere, UnitNormAndDeterministic) {
  RandomStream a = TestStream(7);
  RandomStream b = TestStream(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const UnitVector3 u = SampleUniformSphere(a);
    EXPECT_NEAR(u.vec().norm(), 1.0, 1e-12);
    EXPECT_EQ(u, SampleUniformSphere(b));
  }
}

TEST(SampleUniformSphere, MeanNearZero) {
  constexpr int kDraws = 100000;
  RandomStream stream = TestStream(11);
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (int n = 0; n < kDraws; ++n) sum += SampleUniformSphere(stream).vec();
  const Eigen::Vector3d mean = sum / kDraws;
  const double se = (1.0 / std::sqrt(3.0)) / std::sqrt(double(kDraws));
  for (int c = 0; c < 3; ++c) {
    EXPECT_LT(std::abs(mean(c)), 4.0 * se);
    EXPECT_LT(std::abs(mean(c)), 0.02);
  }
}

TEST(AabInconsistency, Examples) {
  const UnitVector3 g1 = V(1, 0, 0);
  const UnitVector3 g2 = V(0, 1, 0);
  EXPECT_NEAR(AabInconsistency(V(-1, -1, 0), g1, g2), 0.0, 1e-15);
  EXPECT_NEAR(AabInconsistency(V(1, 0, 0), g1, g2), kPi / 2, 1e-15);
  EXPECT_NEAR(AabInconsistency(V(-1, -1, 1), g1, g2),
              std::acos(std::sqrt(2.0 / 3.0)), 1e-15);
  EXPECT_NEAR(AabInconsistency(V(-1, -1, 1), g1, g2), 0.61548, 5e-6);
  EXPECT_NEAR(AabInconsistency(V(0, 0, 1), g1, g2), kPi / 2, 1e-15);
}

TEST(AabInconsistency, DegenerateBase) {
  EXPECT_THROW(AabInconsistency(V(0, 0, 1), V(1, 0, 0), V(1, 0, 0)),
               DegenerateError);
  EXPECT_THROW(AabInconsistency(V(0, 0, 1), V(1, 0, 0), V(-1, 0, 0)),
               DegenerateError);
  EXPECT_FALSE(TryAabInconsistency(V(0, 0, 1), V(1, 0, 0), V(1, 1e-6, 0)));
  EXPECT_TRUE(TryAabInconsistency(V(0, 0, 1), V(1, 0, 0), V(1, 1e-4, 0)));
  EXPECT_TRUE(IsDegenerateBase(V(1, 0, 0), V(-1, 1e-5, 0)));
}

TEST(AabInconsistency, RangeProperty) {
  RandomStream stream = TestStream(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto t = RandomTriple(stream);
    const double value = AabInconsistency(t.g3, t.g1, t.g2);
    EXPECT_GE(value, 0.0);
    EXPECT_LE(value, kPi);
  }
}

TEST(AabInconsistency, ZeroForConsistentTriangles) {
  RandomStream stream = TestStream(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto t = testing::RandomLocations(3, stream);
    const UnitVector3 gij = CleanDirection(t[0], t[1]);
    const UnitVector3 gjk = CleanDirection(t[1], t[2]);
    const UnitVector3 gki = CleanDirection(t[2], t[0]);
    EXPECT_LE(AabInconsistency(gij, gjk, gki), 1e-9);
    EXPECT_LE(AabInconsistency(gjk, gki, gij), 1e-9);
    EXPECT_LE(AabInconsistency(gki, gij, gjk), 1e-9);
  }
}

TEST(AabInconsistency, RotationInvariance) {
  RandomStream stream = TestStream(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto t = RandomTriple(stream);
    const Eigen::Matrix3d r = testing::RandomRotation(stream);
    const UnitVector3 r1 = Rotate(r, t.g1);
    const UnitVector3 r2 = Rotate(r, t.g2);
    if (IsDegenerateBase(r1, r2)) continue;
    EXPECT_NEAR(AabInconsistency(Rotate(r, t.g3), r1, r2),
                AabInconsistency(t.g3, t.g1, t.g2), 1e-9);
  }
}

TEST(AabInconsistency, NegationInvariance) {
  RandomStream stream = TestStream(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto t = RandomTriple(stream);
    EXPECT_NEAR(AabInconsistency(-t.g3, -t.g1, -t.g2),
                AabInconsistency(t.g3, t.g1, t.g2), 1e-12);
  }
}

TEST(AabInconsistency, BaseSymmetry) {
  RandomStream stream = TestStream(6);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto t = RandomTriple(stream);
    EXPECT_NEAR(AabInconsistency(t.g3, t.g2, t.g1),
                AabInconsistency(t.g3, t.g1, t.g2), 1e-12);
  }
}

TEST(AabInconsistencyOracle, Examples) {
  const UnitVector3 g1 = V(1, 0, 0);
  const UnitVector3 g2 = V(0, 1, 0);
  EXPECT_NEAR(AabInconsistencyOracle(V(1, 0, 0), g1, g2, 1000000), kPi / 2,
              1e-5);
  EXPECT_NEAR(AabInconsistencyOracle(V(-1, -1, 1), g1, g2, 1000000),
              std::acos(std::sqrt(2.0 / 3.0)), 1e-5);

  RandomStream stream = TestStream(8);
  const auto t = testing::RandomLocations(3, stream);
  EXPECT_LE(AabInconsistencyOracle(CleanDirection(t[0], t[1]),
                                   CleanDirection(t[1], t[2]),
                                   CleanDirection(t[2], t[0]), 1000000),
            1e-5);
}

TEST(AabInconsistencyOracle, PreconditionsRejected) {
  EXPECT_THROW(AabInconsistencyOracle(V(0, 0, 1), V(1, 0, 0), V(0, 1, 0), 1),
               InvalidArgumentError);
  EXPECT_THROW(
      AabInconsistencyOracle(V(0, 0, 1), V(1, 0, 0), V(1, 0, 0), 1000),
      DegenerateError);
}

TEST(AabInconsistencyOracle, AgreesWithClosedForm) {
  RandomStream stream = TestStream(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = RandomTriple(stream);
    EXPECT_NEAR(AabInconsistencyOracle(t.g3, t.g1, t.g2, 1000000),
                AabInconsistency(t.g3, t.g1, t.g2), 1e-5);
  }
}

TEST(AabInconsistencyOracle, WithinDiscretizationBound) {
  RandomStream stream = TestStream(10);
  constexpr int kSteps = 1001;
  for (int trial = 0; trial < 500; ++trial) {
    const auto t = RandomTriple(stream);
    const double arc = GreatCircleDistance(-t.g1, -t.g2);
    const double gap = AabInconsistencyOracle(t.g3, t.g1, t.g2, kSteps) -
                       AabInconsistency(t.g3, t.g1, t.g2);
    EXPECT_GE(gap, -1e-12);
    EXPECT_LE(gap, arc / (kSteps - 1) + 1e-12);
  }
}

TEST(AabInconsistencyOracle, CoarseToFineMatchesExhaustiveScan) {
  RandomStream stream = TestStream(12);
  for (const int steps : {4097, 10007, 100000}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto t = RandomTriple(stream);
      EXPECT_EQ(AabInconsistencyOracle(t.g3, t.g1, t.g2, steps,
                                       OracleScan::kCoarseToFine),
                AabInconsistencyOracle(t.g3, t.g1, t.g2, steps,
                                       OracleScan::kExhaustive));
    }
  }
  // Minimum at an endpoint, including the last one.
  for (const auto& g3 : {V(1, 0, 0), V(0, 1, 0), V(-1, 0.2, 0.1)}) {
    EXPECT_EQ(AabInconsistencyOracle(g3, V(1, 0, 0), V(0, 1, 0), 50001),
              AabInconsistencyOracle(g3, V(1, 0, 0), V(0, 1, 0), 50001,
                                     OracleScan::kExhaustive));
  }
}

}  // namespace
}  // namespace aab
