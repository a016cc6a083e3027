#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "sicpovm/verify.hpp"
#include "sicpovm/weyl_heisenberg.hpp"

using namespace sicpovm;
using namespace sicpovm::testing;

TEST(Clock, Examples) {
  EXPECT_EQ(clock(1)(0, 0), Complex(1.0));
  const auto z2 = clock(2);
  EXPECT_EQ(z2(0, 0), Complex(1.0));
  EXPECT_EQ(z2(1, 1), Complex(-1.0));
  EXPECT_EQ(z2(0, 1), Complex(0.0));
  const auto z3 = clock(3);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(std::abs(z3(j, j) - std::polar(1.0, 2.0 * std::numbers::pi * j / 3.0)), 0.0, 1e-15);
  }
  EXPECT_THROW(clock(0), std::invalid_argument);
}

TEST(Shift, Examples) {
  EXPECT_EQ(shift(1)(0, 0), Complex(1.0));
  const auto x2 = shift(2);
  EXPECT_EQ(x2(0, 1), Complex(1.0));
  EXPECT_EQ(x2(1, 0), Complex(1.0));
  EXPECT_EQ(x2(0, 0), Complex(0.0));
  const auto moved = apply(shift(3), StateVector::basis(3, 0));
  EXPECT_EQ(moved[1], Complex(1.0));
  EXPECT_THROW(shift(0), std::invalid_argument);
}

TEST(ClockShift, OrderAndCommutation) {
  for (std::size_t n = 1; n <= 9; ++n) {
    const auto x = shift(n);
    const auto z = clock(n);
    const auto id = SquareMatrix::identity(n);
    EXPECT_LE(max_abs_diff(brute_power(z, n), id), 1e-12) << n;
    EXPECT_LE(max_abs_diff(brute_power(x, n), id), 1e-12) << n;
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / n);
    EXPECT_LE(max_abs_diff(z * x, w * (x * z)), 1e-12) << n;
  }
}

TEST(DisplacementIndex, ReducedModN) {
  const DisplacementIndex p(-1, 7, 3);
  EXPECT_EQ(p.p1(), 2u);
  EXPECT_EQ(p.p2(), 1u);
  EXPECT_EQ((p + DisplacementIndex(1, 2, 3)), DisplacementIndex(0, 0, 3));
  EXPECT_EQ(DisplacementIndex::from_flat(p.flat(), 3), p);
}

TEST(Displacement, Examples) {
  for (std::size_t n = 1; n <= 6; ++n) {
    EXPECT_LE(max_abs_diff(displacement({0, 0, n}), SquareMatrix::identity(n)), 0.0);
  }
  EXPECT_LE(max_abs_diff(displacement({1, 0, 2}), SquareMatrix(2, {0.0, 1.0, 1.0, 0.0})), 0.0);
}

TEST(Displacement, UnitarityAndAdjointSweep) {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::size_t k = 0; k < n * n; ++k) {
      const auto p = DisplacementIndex::from_flat(k, n);
      const SquareMatrix d = displacement(p);
      EXPECT_LT(max_abs_diff(d.adjoint() * d, SquareMatrix::identity(n)), 1e-12);
      // D_p^dagger is a unimodular multiple of D_{-p}.
      const SquareMatrix dm = displacement(-p);
      const Complex ratio = (dm.adjoint() * d.adjoint()).trace() / static_cast<double>(n);
      EXPECT_NEAR(std::abs(ratio), 1.0, 1e-12);
      EXPECT_LT(max_abs_diff(d.adjoint(), ratio * dm), 1e-12);
    }
  }
}

TEST(Displacement, MatchesConventionlessPowersUpToPhase) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t k = 0; k < n * n; ++k) {
      const auto p = DisplacementIndex::from_flat(k, n);
      const auto bare = brute_power(brute_shift(n), p.p1()) * brute_power(brute_clock(n), p.p2());
      const SquareMatrix d = displacement(p);
      const Complex ratio = (bare.adjoint() * d).trace() / static_cast<double>(n);
      EXPECT_NEAR(std::abs(ratio), 1.0, 1e-12);
      EXPECT_LT(max_abs_diff(d, ratio * bare), 1e-12);
    }
  }
}

TEST(Displacement, GroupLawUpToPhase) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t a = 0; a < n * n; ++a)
      for (std::size_t b = 0; b < n * n; ++b) {
        const auto p = DisplacementIndex::from_flat(a, n);
        const auto q = DisplacementIndex::from_flat(b, n);
        const SquareMatrix dpq = displacement(p + q);
        const SquareMatrix prod = displacement(p) * displacement(q);
        EXPECT_NEAR(std::abs((dpq.adjoint() * prod).trace()), static_cast<double>(n), 1e-10);
      }
  }
}

TEST(Displace, StructuredMatchesMatrix) {
  std::mt19937_64 rng(31);
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto psi = random_state(n, rng);
    for (std::size_t k = 0; k < n * n; ++k) {
      const auto p = DisplacementIndex::from_flat(k, n);
      const auto fast = displace(p, psi.entries());
      const auto fast_adj = displace_adjoint(p, psi.entries());
      const auto slow = apply(displacement(p), psi);
      const auto slow_adj = apply(displacement(p).adjoint(), psi);
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_NEAR(std::abs(fast[j] - slow[j]), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(fast_adj[j] - slow_adj[j]), 0.0, 1e-14);
      }
    }
  }
}

TEST(Orbit, SingleStateAtNOne) {
  const auto ens = orbit(StateVector::basis(1, 0));
  ASSERT_EQ(ens.size(), 1u);
  EXPECT_EQ(ens[0][0], Complex(1.0));
}

TEST(Orbit, OrderingAndFiducialFirst) {
  std::mt19937_64 rng(37);
  const auto psi = random_state(4, rng);
  const auto ens = orbit(psi);
  ASSERT_EQ(ens.size(), 16u);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(ens.fiducial()[j], psi[j]);
  for (std::size_t k = 0; k < 16; ++k) {
    const auto expected = apply(displacement(DisplacementIndex::from_flat(k, 4)), psi);
    EXPECT_NEAR(std::abs(inner(expected, ens[k])), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(ens[k][0] - expected[0]), 0.0, 1e-14);
  }
  EXPECT_EQ(&ens.at({1, 2, 4}), &ens[6]);
}

TEST(Orbit, BasisVectorGivesTwoDistinctProjectors) {
  const auto ens = orbit(StateVector::basis(2, 0));
  // {e0, e0 (Z), e1 (X), e1 (XZ, up to phase)}
  EXPECT_NEAR(std::norm(ens[0][0]), 1.0, 1e-15);
  EXPECT_NEAR(std::norm(ens[1][0]), 1.0, 1e-15);
  EXPECT_NEAR(std::norm(ens[2][1]), 1.0, 1e-15);
  EXPECT_NEAR(std::norm(ens[3][1]), 1.0, 1e-15);
  EXPECT_LE(max_abs_diff(projector(ens[0]), projector(ens[1])), 1e-15);
  EXPECT_LE(max_abs_diff(projector(ens[2]), projector(ens[3])), 1e-15);
}

TEST(Orbit, KnownFiducialsEquiangular) {
  // Oracle: brute-force X^a Z^b orbit, all pairs.
  EXPECT_LT(brute_equiangularity(fiducial_n2()), 1e-12);
  EXPECT_LT(brute_equiangularity(fiducial_n3()), 1e-12);
  for (const auto& psi : {fiducial_n2(), fiducial_n3()}) {
    const auto ens = orbit(psi);
    const double target = 1.0 / (psi.dim() + 1.0);
    for (std::size_t i = 0; i < ens.size(); ++i)
      for (std::size_t j = i + 1; j < ens.size(); ++j)
        EXPECT_NEAR(std::norm(inner(ens[i], ens[j])), target, 1e-12);
  }
}

TEST(Orbit, OverlapsInvariantUnderCommonDisplacement) {
  std::mt19937_64 rng(41);
  const std::size_t n = 4;
  const auto ens = orbit(random_state(n, rng));
  for (std::size_t r = 0; r < n * n; ++r) {
    const auto d = displacement(DisplacementIndex::from_flat(r, n));
    for (std::size_t i = 0; i < ens.size(); ++i)
      for (std::size_t j = 0; j < ens.size(); ++j)
        EXPECT_NEAR(std::abs(inner(apply(d, ens[i]), apply(d, ens[j]))), std::abs(inner(ens[i], ens[j])),
                    1e-12);
  }
}

TEST(Orbit, ProjectorsPermutedByDisplacement) {
  for (const auto& psi : {fiducial_n2(), fiducial_n3()}) {
    const auto ens = orbit(psi);
    const std::size_t n = ens.dim();
    std::vector<DensityMatrix> proj;
    for (const auto& s : ens) proj.push_back(projector(s));
    for (std::size_t r = 0; r < n * n; ++r) {
      const auto d = displacement(DisplacementIndex::from_flat(r, n));
      std::vector<bool> hit(proj.size(), false);
      for (const auto& p : proj) {
        const auto q = conjugate(d, p);
        std::size_t matches = 0;
        for (std::size_t k = 0; k < proj.size(); ++k) {
          if (max_abs_diff(q, proj[k]) < 1e-10) {
            ++matches;
            hit[k] = true;
          }
        }
        EXPECT_EQ(matches, 1u);
      }
      EXPECT_EQ(std::count(hit.begin(), hit.end(), true), static_cast<long>(proj.size()));
    }
  }
}

TEST(Orbit, ResidualsIndependentOfPhaseConvention) {
  std::mt19937_64 rng(43);
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto psi = random_state(n, rng);
    const auto ens = orbit(psi);
    std::vector<StateVector> bare;
    for (auto& v : brute_orbit(psi)) bare.push_back(StateVector::normalized(std::move(v)));
    const SicEnsemble plain(std::move(bare));
    EXPECT_NEAR(equiangularity_residual(ens), equiangularity_residual(plain), 1e-12);
    EXPECT_NEAR(identity_residual(ens), identity_residual(plain), 1e-12);
    EXPECT_NEAR(frame_potential(ens), frame_potential(plain), 1e-10);
  }
}

TEST(SicEnsemble, RejectsWrongCount) {
  EXPECT_THROW(SicEnsemble({StateVector::basis(2, 0), StateVector::basis(2, 1)}), std::invalid_argument);
}
