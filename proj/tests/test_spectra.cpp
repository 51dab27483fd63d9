#include "critsense/spectra.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace critsense;

namespace {

double grover_gap(int l, double theta) {
  const double n = std::ldexp(1.0, l);
  return std::sqrt(std::pow(1.0 - theta, 2) + 4.0 * theta / n);
}

}  // namespace

TEST(Spectra, GroverGapAtCritical) {
  EXPECT_NEAR(energy_gap(Grover{4}, 1.0), 0.5, 1e-14);
}

TEST(Spectra, GroverGapClosedForm) {
  for (int l = 2; l <= 30; ++l)
    for (double theta : {0.0, 0.5, 0.999, 1.0, 1.001, 2.0}) {
      const double exact = grover_gap(l, theta);
      EXPECT_NEAR(energy_gap(Grover{l}, theta), exact, 1e-9 * exact) << "L=" << l << " theta=" << theta;
    }
}

TEST(Spectra, TwoByTwoEigenvectors) {
  RealMatrix h(2, 2);
  h << -1.0 - 1e-9, -3e-5, -3e-5, -1.0 + 1e-9;
  const auto s = detail::solve_two_by_two(h);
  for (int k = 0; k < 2; ++k) {
    const RealVector r = h * s.states.col(k) - s.energies(k) * s.states.col(k);
    EXPECT_LT(r.norm(), 1e-15);
  }
  EXPECT_NEAR(s.states.col(0).dot(s.states.col(1)), 0.0, 1e-15);
}

TEST(Spectra, LanczosMatchesDense) {
  const auto h = build_full_space(PSpin{9, 3, 1, 1.0}, 1.2);
  ASSERT_TRUE(h.is_sparse());
  const auto dense = eigensolve_lowest(h, 3);
  const auto krylov = eigensolve_lowest_iterative(h, 3);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(dense.energies(i), krylov.energies(i), 1e-9);
  EXPECT_NEAR(std::abs(dense.states.col(0).dot(krylov.states.col(0))), 1.0, 1e-9);
}

TEST(Spectra, DegenerateGroundReportsZeroGap) {
  // Theta = 0 p-spin ground state "all up" is unique; even-parity biclique is not needed here.
  // Use H2 alone with theta huge: -sum sigma^x is non-degenerate, so construct a trivial degenerate case.
  const auto split = build_h_split(Grover{2});
  HamiltonianSplit zero{split.h1.combine(0.0, split.h1, 0.0), split.h2.combine(0.0, split.h2, 0.0)};
  EXPECT_EQ(energy_gap(zero, 0.0), 0.0);
}

TEST(Spectra, LocateCriticalGrover) {
  for (int l : {4, 10, 20}) {
    const auto cp = locate_critical(Grover{l}, {0.5, 1.5}, 1e-10);
    const double n = std::ldexp(1.0, l);
    // Minimum of (1-theta)^2 + 4 theta / N sits at 1 - 2/N.
    EXPECT_NEAR(cp.theta_c, 1.0 - 2.0 / n, 1e-6);
    EXPECT_NEAR(cp.gap_at_c, grover_gap(l, 1.0 - 2.0 / n), 1e-12);
    EXPECT_GE(cp.history.size(), 2u);
  }
}

TEST(Spectra, LocateCriticalRejectsMonotone) {
  EXPECT_THROW(locate_critical(Grover{6}, {2.0, 3.0}), NumericalFailure);
  EXPECT_THROW(locate_critical(Grover{6}, {2.0, 1.0}), InvalidArgument);
}

TEST(Spectra, GapProfileValidation) {
  EXPECT_THROW(gap_profile(Grover{4}, {}), InvalidArgument);
  EXPECT_THROW(gap_profile(Grover{4}, {1.0, 0.5}), InvalidArgument);
  const auto prof = gap_profile(Grover{4}, {0.5, 1.0});
  EXPECT_NEAR(prof[1].gap, 0.5, 1e-14);
}

TEST(Spectra, ReducedMatchesFullLowestPair) {
  for (int l = 2; l <= 8; ++l) {
    const PSpin spec{l, 3, 1, 1.0};
    const auto r = eigensolve_lowest(build_hamiltonian(spec, 1.3), 2);
    const auto f = eigensolve_lowest(build_full_space(spec, 1.3), 2);
    EXPECT_NEAR(r.energies(0), f.energies(0), 1e-9) << l;
  }
}
