#include "critsense/models.hpp"
#include "critsense/spectra.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace critsense;

namespace {

RealVector sorted_eigenvalues(const HamiltonianRep& h) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(h.to_dense(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// Every eigenvalue of `sub` occurs in `full` (within tol).
bool contained_in(const RealVector& sub, const RealVector& full, double tol) {
  for (Eigen::Index i = 0; i < sub.size(); ++i) {
    if ((full.array() - sub(i)).abs().minCoeff() > tol) return false;
  }
  return true;
}

}  // namespace

TEST(Models, GroverTwoLevelMatrix) {
  const auto h = build_hamiltonian(Grover{2}, 1.0).to_dense();
  EXPECT_NEAR(h(0, 0), -1.25, 1e-15);
  EXPECT_NEAR(h(0, 1), -std::sqrt(3.0) / 4.0, 1e-15);
  EXPECT_NEAR(h(1, 0), -std::sqrt(3.0) / 4.0, 1e-15);
  EXPECT_NEAR(h(1, 1), -0.75, 1e-15);
}

TEST(Models, GroverThetaZeroIsMarkedProjector) {
  const auto h = build_hamiltonian(Grover{2}, 0.0).to_dense();
  EXPECT_EQ(h(0, 0), -1.0);
  EXPECT_EQ(h(0, 1), 0.0);
  EXPECT_EQ(h(1, 1), 0.0);
}

TEST(Models, GroverClosedFormEntries) {
  for (int l : {1, 5, 17, 30}) {
    const double n = std::ldexp(1.0, l);
    const double theta = 0.7;
    const auto h = build_hamiltonian(Grover{l}, theta).to_dense();
    EXPECT_NEAR(h(0, 0), -1.0 - theta / n, 1e-15);
    EXPECT_NEAR(h(0, 1), -theta * std::sqrt(n - 1.0) / n, 1e-15);
    EXPECT_NEAR(h(1, 1), -theta * (n - 1.0) / n, 1e-15);
  }
}

TEST(Models, BicliqueDerivedFields) {
  const Biclique b{3, 2, 1.0, 0.49, 0.5};
  EXPECT_NEAR(b.field_a(), 2.0 - 0.98 / 3.0, 1e-15);
  EXPECT_NEAR(b.field_a(), 1.673333, 1e-6);
  EXPECT_NEAR(b.field_b(), 2.5, 1e-15);
  EXPECT_EQ(b.total(), 5);
}

TEST(Models, SingleSpinPSpin) {
  const auto split = build_h_split(PSpin{1, 3, 1, 1.0});
  const auto h1 = split.h1.to_dense(), h2 = split.h2.to_dense();
  RealMatrix z(2, 2), x(2, 2);
  z << 1, 0, 0, -1;
  x << 0, 1, 1, 0;
  EXPECT_LT((h1 + z).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((h2 + x).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Models, Validation) {
  EXPECT_THROW(validate(PSpin{4, 4, 1, 1.0}), InvalidArgument);
  EXPECT_THROW(validate(PSpin{4, 1, 1, 1.0}), InvalidArgument);
  EXPECT_THROW(validate(PSpin{4, 3, 1, 1.5}), InvalidArgument);
  EXPECT_THROW(validate(PSpin{4, 3, 1, -0.1}), InvalidArgument);
  EXPECT_THROW(validate(Biclique{3, 3, 1.0, 0.49, 0.5}), InvalidArgument);
  EXPECT_THROW(validate(Grover{0}), InvalidArgument);
  EXPECT_NO_THROW(validate(PSpin{4, 5, 2, 0.1}));
}

TEST(Models, FullSpaceSizeGuard) {
  EXPECT_NO_THROW(build_full_space(PSpin{2, 3, 1, 1.0}, 1.0));
  EXPECT_THROW(build_full_space(PSpin{15, 3, 1, 1.0}, 1.0), InvalidArgument);
}

TEST(Models, GroverFullSpaceGroundEnergy) {
  const auto full = sorted_eigenvalues(build_full_space(Grover{3}, 0.8));
  const auto reduced = sorted_eigenvalues(build_hamiltonian(Grover{3}, 0.8));
  EXPECT_NEAR(full(0), reduced(0), 1e-10);
  EXPECT_TRUE(contained_in(reduced, full, 1e-10));
}

TEST(Models, PSpinReducedSpectrumInsideFull) {
  for (double theta : {0.3, 1.0, 1.3, 2.5}) {
    const PSpin spec{4, 3, 1, 1.0};
    EXPECT_TRUE(contained_in(sorted_eigenvalues(build_hamiltonian(spec, theta)),
                             sorted_eigenvalues(build_full_space(spec, theta)), 1e-10))
        << "theta " << theta;
  }
  const PSpin second{5, 5, 2, 0.1};
  EXPECT_TRUE(contained_in(sorted_eigenvalues(build_hamiltonian(second, 1.7)),
                           sorted_eigenvalues(build_full_space(second, 1.7)), 1e-10));
}

TEST(Models, BicliqueReducedSpectrumInsideFull) {
  const Biclique spec{3, 2, 1.0, 0.49, 0.5};
  for (double theta : {0.05, 0.4, 1.1}) {
    const auto reduced = sorted_eigenvalues(build_hamiltonian(spec, theta));
    EXPECT_EQ(reduced.size(), 12);
    EXPECT_TRUE(contained_in(reduced, sorted_eigenvalues(build_full_space(spec, theta)), 1e-10));
  }
}

TEST(Models, BicliqueThetaZeroIsClassical) {
  const auto h = build_full_space(Biclique{3, 2, 1.0, 0.49, 0.5}, 0.0).to_dense();
  EXPECT_LT((h - RealMatrix(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-15);
  Eigen::Index arg;
  h.diagonal().minCoeff(&arg);
  const auto s = eigensolve_lowest(build_full_space(Biclique{3, 2, 1.0, 0.49, 0.5}, 0.0), 1);
  EXPECT_NEAR(std::abs(s.states(arg, 0)), 1.0, 1e-12);
}

TEST(Models, StorageClass) {
  EXPECT_FALSE(build_hamiltonian(PSpin{30, 3, 1, 1.0}, 1.0).is_sparse());
  EXPECT_TRUE(build_hamiltonian(PSpin{64, 3, 1, 1.0}, 1.0).is_sparse());
  EXPECT_TRUE(build_full_space(PSpin{7, 3, 1, 1.0}, 1.0).is_sparse());
  EXPECT_EQ(build_hamiltonian(Biclique{7, 6, 1.0, 0.49, 0.5}, 0.1).dim(), 56);
}

TEST(Models, HamiltoniansSymmetric) {
  const std::vector<ModelSpec> specs{Grover{6}, PSpin{12, 3, 1, 1.0}, PSpin{9, 5, 2, 0.1},
                                     Biclique{4, 3, 1.0, 0.49, 0.5}, Biclique{3, 2, 1.0, 4.0, 3.5}};
  for (const auto& spec : specs)
    for (double theta = -1.0; theta <= 3.0; theta += 0.5) {
      EXPECT_LE(build_hamiltonian(spec, theta).relative_asymmetry(), 1e-12);
      EXPECT_LE(build_full_space(spec, theta).relative_asymmetry(), 1e-12);
    }
}

TEST(Models, MeasurementCounts) {
  for (int l : {1, 4, 25}) EXPECT_EQ(optimal_measurement(Grover{l}).size(), 2u);
  const auto pm = optimal_measurement(PSpin{4, 3, 1, 1.0});
  ASSERT_EQ(pm.size(), 5u);
  EXPECT_EQ(pm.labels, (std::vector<double>{-4, -2, 0, 2, 4}));

  const auto bm = optimal_measurement(Biclique{3, 2, 1.0, 0.49, 0.5});
  std::set<long> values;
  for (double ma : {1.5, 0.5, -0.5, -1.5})
    for (double mb : {1.0, 0.0, -1.0}) values.insert(std::lround(2 * ma - 2 * mb));
  EXPECT_EQ(bm.size(), values.size());
}

TEST(Models, ProjectorsComplete) {
  const std::vector<std::pair<ModelSpec, BasisKind>> cases{
      {Grover{5}, BasisKind::EffectiveTwoLevel},     {Grover{4}, BasisKind::FullComputational},
      {PSpin{6, 3, 1, 1.0}, BasisKind::CollectiveSpin}, {PSpin{5, 3, 1, 1.0}, BasisKind::FullComputational},
      {Biclique{4, 3, 1.0, 0.49, 0.5}, BasisKind::BipartiteCollective},
      {Biclique{3, 2, 1.0, 4.0, 3.5}, BasisKind::FullComputational}};
  for (const auto& [spec, basis] : cases) {
    const auto m = optimal_measurement(spec, basis);
    const auto dim = m.masks.front().size();
    RealMatrix total = RealMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < m.size(); ++i) {
      const RealMatrix p = m.projector(i);
      EXPECT_LE((p * p - p).cwiseAbs().maxCoeff(), 1e-10);
      for (std::size_t j = i + 1; j < m.size(); ++j) EXPECT_LE((p * m.projector(j)).cwiseAbs().maxCoeff(), 1e-10);
      total += p;
    }
    EXPECT_LE((total - RealMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff(), 1e-10);
  }
}
