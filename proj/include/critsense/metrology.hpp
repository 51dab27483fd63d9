#ifndef CRITSENSE_METROLOGY_HPP
#define CRITSENSE_METROLOGY_HPP

// Quantum and classical Fisher information for ground states, prepared pure
// states and density matrices.

#include "critsense/common.hpp"
#include "critsense/models.hpp"
#include "critsense/spectra.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace critsense {

struct PureState {
  ComplexVector amplitudes;
  BasisKind basis = BasisKind::EffectiveTwoLevel;
};

struct MixedState {
  ComplexMatrix rho;
  BasisKind basis = BasisKind::EffectiveTwoLevel;
};

using QuantumState = std::variant<PureState, MixedState>;

inline BasisKind basis_of(const QuantumState& s) {
  return std::visit([](const auto& v) { return v.basis; }, s);
}

inline ComplexMatrix density_matrix(const QuantumState& s) {
  if (const auto* p = std::get_if<PureState>(&s)) return p->amplitudes * p->amplitudes.adjoint();
  return std::get<MixedState>(s).rho;
}

/// Throws InvalidArgument unless the state is normalized (and, for density
/// matrices, Hermitian with eigenvalues >= -1e-10).
inline void validate_state(const QuantumState& s) {
  if (const auto* p = std::get_if<PureState>(&s)) {
    detail::require(std::abs(p->amplitudes.norm() - 1.0) <= 1e-10, "pure state is not normalized");
    return;
  }
  const auto& rho = std::get<MixedState>(s).rho;
  detail::require(std::abs(rho.trace().real() - 1.0) <= 1e-10, "density matrix trace differs from 1");
  detail::require((rho - rho.adjoint()).cwiseAbs().maxCoeff() <= 1e-9, "density matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  detail::require(es.eigenvalues().minCoeff() >= -1e-10, "density matrix has negative eigenvalues");
}

/// Outcome probabilities Tr[rho Pi_n] for a measurement diagonal in the state's basis.
inline std::vector<double> outcome_probabilities(const QuantumState& s, const MeasurementBasis& basis) {
  RealVector diag;
  if (const auto* p = std::get_if<PureState>(&s))
    diag = p->amplitudes.cwiseAbs2();
  else
    diag = std::get<MixedState>(s).rho.diagonal().real();
  detail::require(diag.size() == (basis.masks.empty() ? 0 : basis.masks.front().size()),
                  "measurement and state dimensions differ");
  std::vector<double> out;
  out.reserve(basis.size());
  for (const auto& mask : basis.masks) out.push_back(mask.dot(diag));
  return out;
}

enum class FisherMethod { PureOverlap, SpectralSum, MixedSld, Classical };

inline std::string to_string(FisherMethod m) {
  switch (m) {
    case FisherMethod::PureOverlap: return "pure-overlap";
    case FisherMethod::SpectralSum: return "spectral-sum";
    case FisherMethod::MixedSld: return "mixed-sld";
    case FisherMethod::Classical: return "classical";
  }
  return "unknown";
}

struct FisherEstimate {
  double value = 0.0;
  FisherMethod method = FisherMethod::PureOverlap;
  std::optional<double> delta;
};

/// 1 + 4 * F * delta^2 / 8 > 1 must stay resolvable in double precision.
inline constexpr double kMinOverlapDeficit = 100.0 * std::numeric_limits<double>::epsilon();

/// F = 8 (1 - |<a|b>|) / delta^2 for two normalized states a delta apart.
/// Phase-free, so eigenvector gauge never enters.
inline double overlap_fisher(const ComplexVector& a, const ComplexVector& b, double delta) {
  const double overlap = std::abs(a.dot(b));
  if (overlap > 1.0 + 1e-12) throw NumericalFailure("state overlap exceeds one", overlap - 1.0);
  return 8.0 * std::max(0.0, 1.0 - std::min(overlap, 1.0)) / (delta * delta);
}

inline double default_delta(double theta) { return 1e-4 * std::max(1.0, std::abs(theta)); }

inline RealVector ground_state(const HamiltonianSplit& split, double theta) {
  const auto s = eigensolve_lowest(split.h1.combine(1.0, split.h2, theta), 2);
  if (s.ground_degenerate()) throw NumericalFailure("degenerate ground state at theta = " + std::to_string(theta));
  return s.states.col(0);
}

/// Ground-state QFI from the fidelity between theta -/+ delta/2.
inline FisherEstimate qfi_pure_overlap(const HamiltonianSplit& split, double theta, double delta) {
  detail::require(delta > 0.0, "qfi_pure_overlap: delta must be positive");
  const ComplexVector lo = ground_state(split, theta - 0.5 * delta).cast<Complex>();
  const ComplexVector hi = ground_state(split, theta + 0.5 * delta).cast<Complex>();
  return {overlap_fisher(lo, hi, delta), FisherMethod::PureOverlap, delta};
}

inline FisherEstimate qfi_pure_overlap(const ModelSpec& spec, double theta, double delta) {
  return qfi_pure_overlap(build_h_split(spec), theta, delta);
}

/// Overlap QFI with the step shrunk near criticality: delta is reduced until
/// F delta^2 / 8 <= 1e-6 (the O(delta^2) regime), never below the point where
/// the overlap deficit drops under 100 machine epsilons.
inline FisherEstimate qfi_pure_overlap_adaptive(const HamiltonianSplit& split, double theta) {
  double delta = default_delta(theta);
  auto est = qfi_pure_overlap(split, theta, delta);
  for (int i = 0; i < 40; ++i) {
    const double deficit = est.value * delta * delta / 8.0;
    if (deficit <= 1e-6) break;
    const double next = delta * std::max(0.1, std::sqrt(1e-7 / deficit));
    if (est.value * next * next / 8.0 < kMinOverlapDeficit) break;
    delta = next;
    est = qfi_pure_overlap(split, theta, delta);
  }
  return est;
}

/// F = 4 sum_{n>0} |<n|H2|0>|^2 / (E_n - E_0)^2 over the full reduced spectrum.
inline FisherEstimate qfi_spectral(const HamiltonianSplit& split, double theta) {
  const auto h = split.h1.combine(1.0, split.h2, theta);
  const auto spec = eigensolve_all(h);
  if (spec.ground_degenerate()) throw NumericalFailure("degenerate ground state at theta = " + std::to_string(theta));
  const RealVector dh0 = split.h2.apply(RealVector(spec.states.col(0)));
  double f = 0.0;
  for (Eigen::Index n = 1; n < spec.energies.size(); ++n) {
    const double m = spec.states.col(n).dot(dh0);
    const double de = spec.energies(n) - spec.energies(0);
    f += m * m / (de * de);
  }
  return {4.0 * f, FisherMethod::SpectralSum, std::nullopt};
}

inline FisherEstimate qfi_spectral(const ModelSpec& spec, double theta) {
  return qfi_spectral(build_h_split(spec), theta);
}

struct MixedFisher {
  FisherEstimate estimate;
  /// Symmetric logarithmic derivative in the basis of the input rho.
  ComplexMatrix sld;
};

inline constexpr double kDefaultEigFloor = 1e-10;

/// F = 2 sum_{ij: l_i + l_j > floor} |<i|drho|j>|^2 / (l_i + l_j), with the
/// SLD built on the same retained pairs.
inline MixedFisher qfi_mixed(const ComplexMatrix& rho, const ComplexMatrix& drho, double eig_floor = kDefaultEigFloor) {
  detail::require(eig_floor > 0.0, "qfi_mixed: eig_floor must be positive");
  detail::require(rho.rows() == rho.cols() && drho.rows() == rho.rows() && drho.cols() == rho.cols(),
                  "qfi_mixed: dimension mismatch");
  detail::require((rho - rho.adjoint()).cwiseAbs().maxCoeff() <= 1e-9, "qfi_mixed: rho is not Hermitian");
  detail::require((drho - drho.adjoint()).cwiseAbs().maxCoeff() <= 1e-9, "qfi_mixed: drho is not Hermitian");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  const RealVector& lambda = es.eigenvalues();
  const ComplexMatrix& u = es.eigenvectors();
  const ComplexMatrix d = u.adjoint() * drho * u;
  ComplexMatrix sld_eig = ComplexMatrix::Zero(rho.rows(), rho.cols());
  double f = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    for (Eigen::Index j = 0; j < lambda.size(); ++j) {
      const double s = lambda(i) + lambda(j);
      if (s <= eig_floor) continue;
      f += 2.0 * std::norm(d(i, j)) / s;
      sld_eig(i, j) = 2.0 * d(i, j) / s;
    }
  return {{f, FisherMethod::MixedSld, std::nullopt}, u * sld_eig * u.adjoint()};
}

inline constexpr double kProbabilityFloor = 1e-12;

/// F_C = sum_n (dp_n/dtheta)^2 / p_n with central differences of p(theta).
inline FisherEstimate cfi_from_probabilities(const std::function<std::vector<double>(double)>& probabilities_at,
                                             double theta, double delta) {
  detail::require(delta > 0.0, "cfi: delta must be positive");
  const auto p = probabilities_at(theta);
  const auto lo = probabilities_at(theta - 0.5 * delta);
  const auto hi = probabilities_at(theta + 0.5 * delta);
  for (const auto* v : {&p, &lo, &hi}) {
    double total = 0.0;
    for (double x : *v) total += x;
    if (std::abs(total - 1.0) > 1e-8) throw NumericalFailure("outcome probabilities do not sum to one", total - 1.0);
  }
  double f = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (p[n] <= kProbabilityFloor) continue;
    const double dp = (hi[n] - lo[n]) / delta;
    f += dp * dp / p[n];
  }
  return {f, FisherMethod::Classical, delta};
}

inline FisherEstimate cfi(const std::function<QuantumState(double)>& state_at, const MeasurementBasis& basis,
                          double theta, double delta) {
  return cfi_from_probabilities([&](double t) { return outcome_probabilities(state_at(t), basis); }, theta, delta);
}

/// Ground-state CFI in `basis` (reduced basis of the model).
inline FisherEstimate cfi_ground(const HamiltonianSplit& split, const MeasurementBasis& basis, double theta,
                                 double delta) {
  return cfi(
      [&](double t) -> QuantumState {
        return PureState{ground_state(split, t).cast<Complex>(), split.h1.basis()};
      },
      basis, theta, delta);
}

/// Cramer-Rao bound 1 / sqrt(M F); +infinity when F = 0.
inline double cramer_rao(const FisherEstimate& f, long long measurements) {
  detail::require(measurements >= 1, "cramer_rao: need at least one measurement");
  detail::require(f.value >= 0.0, "cramer_rao: Fisher information must be non-negative");
  if (f.value == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(static_cast<double>(measurements) * f.value);
}

}  // namespace critsense

#endif  // CRITSENSE_METROLOGY_HPP
