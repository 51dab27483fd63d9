#ifndef CRITSENSE_SPECTRA_HPP
#define CRITSENSE_SPECTRA_HPP

#include "critsense/common.hpp"
#include "critsense/models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace critsense {

/// Lowest eigenpairs, energies ascending, eigenvectors as columns.
struct Spectrum {
  RealVector energies;
  RealMatrix states;

  static constexpr double kDegeneracyThreshold = 1e-12;

  double gap() const { return energies.size() < 2 ? 0.0 : energies(1) - energies(0); }
  bool ground_degenerate() const { return energies.size() >= 2 && gap() < kDegeneracyThreshold; }
};

struct CriticalPoint {
  double theta_c = 0.0;
  double gap_at_c = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
  /// Brackets visited by the refinement, outermost first.
  std::vector<std::pair<double, double>> history;
};

inline constexpr Eigen::Index kDenseSolverLimit = 1024;

namespace detail {

// Closed-form 2x2 solve; avoids cancellation when the two levels nearly cross.
inline Spectrum solve_two_by_two(const RealMatrix& h) {
  const double a = h(0, 0), b = 0.5 * (h(0, 1) + h(1, 0)), d = h(1, 1);
  const double mean = 0.5 * (a + d);
  const double half_diff = 0.5 * (a - d);
  const double radius = std::hypot(half_diff, b);
  Spectrum s{RealVector(2), RealMatrix(2, 2)};
  s.energies << mean - radius, mean + radius;
  // Ground state from the half-angle form of the rotation that diagonalizes h.
  double c, sn;
  if (radius == 0.0) {
    c = 1.0;
    sn = 0.0;
  } else if (half_diff <= 0.0) {
    c = std::sqrt(0.5 * (1.0 - half_diff / radius));
    sn = -b / (2.0 * radius * c);
  } else {
    sn = std::sqrt(0.5 * (1.0 + half_diff / radius));
    c = -b / (2.0 * radius * sn);
  }
  s.states << c, -sn, sn, c;
  return s;
}

inline Spectrum dense_lowest(const RealMatrix& h, Eigen::Index n_eig) {
  if (h.rows() == 2) {
    auto s = solve_two_by_two(h);
    s.energies.conservativeResize(n_eig);
    s.states.conservativeResize(2, n_eig);
    return s;
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalFailure("dense eigensolver failed");
  return {solver.eigenvalues().head(n_eig), solver.eigenvectors().leftCols(n_eig)};
}

/// Lanczos with full reorthogonalization. The Krylov space grows until the
/// lowest n_eig Ritz pairs satisfy the residual test or `max_krylov` is hit.
inline Spectrum lanczos_lowest(const HamiltonianRep& h, Eigen::Index n_eig, double rel_tol = 1e-10,
                               Eigen::Index max_krylov = 800, unsigned seed = 12345) {
  const Eigen::Index dim = h.dim();
  const Eigen::Index cap = std::min(dim, max_krylov);
  const double norm = std::max(h.max_row_sum(), 1e-300);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  RealVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = gauss(rng);
  v.normalize();

  RealMatrix basis(dim, cap);
  std::vector<double> alpha, beta;
  basis.col(0) = v;
  double last_residual = 0.0;

  for (Eigen::Index k = 0; k < cap; ++k) {
    RealVector w = h.apply(RealVector(basis.col(k)));
    const double a = basis.col(k).dot(w);
    alpha.push_back(a);
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      const RealVector coeffs = basis.leftCols(k + 1).transpose() * w;
      w.noalias() -= basis.leftCols(k + 1) * coeffs;
    }
    const double b = w.norm();

    const Eigen::Index m = k + 1;
    const bool check = m >= n_eig && (m % 10 == 0 || m == cap || b < 1e-14 * norm);
    if (check) {
      RealMatrix t = RealMatrix::Zero(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
      Eigen::SelfAdjointEigenSolver<RealMatrix> tri(t);
      bool converged = true;
      last_residual = 0.0;
      for (Eigen::Index i = 0; i < n_eig; ++i) {
        const double r = std::abs(b * tri.eigenvectors()(m - 1, i));
        last_residual = std::max(last_residual, r);
        if (r > rel_tol * norm) converged = false;
      }
      if (converged) {
        Spectrum s{tri.eigenvalues().head(n_eig), basis.leftCols(m) * tri.eigenvectors().leftCols(n_eig)};
        for (Eigen::Index i = 0; i < n_eig; ++i) s.states.col(i).normalize();
        return s;
      }
    }
    if (b < 1e-14 * norm) {
      // Invariant subspace exhausted before the requested pairs converged.
      break;
    }
    if (k + 1 < cap) {
      beta.push_back(b);
      basis.col(k + 1) = w / b;
    }
  }
  throw NumericalFailure("lanczos did not converge; residual " + std::to_string(last_residual), last_residual);
}

}  // namespace detail

/// Lowest n_eig eigenpairs: dense solver up to 1024 states, Lanczos above.
inline Spectrum eigensolve_lowest(const HamiltonianRep& h, Eigen::Index n_eig) {
  detail::require(n_eig >= 1 && n_eig <= h.dim(), "n_eig must lie in [1, dim]");
  if (h.dim() <= kDenseSolverLimit) return detail::dense_lowest(h.to_dense(), n_eig);
  return detail::lanczos_lowest(h, n_eig);
}

/// Forces the Lanczos path regardless of dimension (used for cross-checks).
inline Spectrum eigensolve_lowest_iterative(const HamiltonianRep& h, Eigen::Index n_eig) {
  detail::require(n_eig >= 1 && n_eig <= h.dim(), "n_eig must lie in [1, dim]");
  return detail::lanczos_lowest(h, n_eig);
}

/// Full spectrum of a reduced-basis Hamiltonian.
inline Spectrum eigensolve_all(const HamiltonianRep& h) {
  detail::require(h.dim() <= kDenseSolverLimit, "full spectrum requires a dense-sized basis");
  return detail::dense_lowest(h.to_dense(), h.dim());
}

/// E1 - E0 of H(theta); 0 when the ground state is degenerate.
inline double energy_gap(const HamiltonianSplit& split, double theta) {
  const auto s = eigensolve_lowest(split.h1.combine(1.0, split.h2, theta), 2);
  return s.ground_degenerate() ? 0.0 : s.gap();
}

inline double energy_gap(const ModelSpec& spec, double theta) { return energy_gap(build_h_split(spec), theta); }

struct GapPoint {
  double theta;
  double gap;
};

inline std::vector<GapPoint> gap_profile(const ModelSpec& spec, const std::vector<double>& thetas) {
  detail::require(!thetas.empty(), "gap_profile: empty grid");
  detail::require(std::is_sorted(thetas.begin(), thetas.end()), "gap_profile: grid must be ascending");
  const auto split = build_h_split(spec);
  std::vector<GapPoint> out;
  out.reserve(thetas.size());
  for (double t : thetas) out.push_back({t, energy_gap(split, t)});
  return out;
}

inline constexpr int kCoarseScanPoints = 51;

/// Golden-section minimization of f over `bracket`, after a 51-point scan
/// that must find an interior point below both ends.
inline CriticalPoint locate_minimum(const std::function<double(double)>& f, std::pair<double, double> bracket,
                                    double tol) {
  auto [lo, hi] = bracket;
  detail::require(lo < hi, "locate_critical: bracket must satisfy lo < hi");
  detail::require(tol > 0.0, "locate_critical: tolerance must be positive");

  std::vector<double> grid(kCoarseScanPoints), values(kCoarseScanPoints);
  for (int i = 0; i < kCoarseScanPoints; ++i) {
    grid[i] = lo + (hi - lo) * i / (kCoarseScanPoints - 1);
    values[i] = f(grid[i]);
  }
  const auto best = static_cast<int>(std::min_element(values.begin(), values.end()) - values.begin());
  if (best == 0 || best == kCoarseScanPoints - 1 || !(values[best] < values.front()) ||
      !(values[best] < values.back()))
    throw NumericalFailure("locate_critical: no interior gap minimum in bracket (monotone gap)");

  CriticalPoint cp;
  cp.history.emplace_back(lo, hi);
  double a = grid[best - 1], b = grid[best + 1];
  cp.history.emplace_back(a, b);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a))) break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    cp.history.emplace_back(a, b);
  }
  const double best_x = fc < fd ? c : d;
  const double best_f = std::min(fc, fd);
  cp.theta_c = best_x;
  cp.gap_at_c = best_f;
  cp.bracket = {a, b};
  return cp;
}

/// Search window holding the gap minimum of each model family.
inline std::pair<double, double> suggested_bracket(const ModelSpec& spec) {
  if (std::holds_alternative<Grover>(spec)) return {0.5, 1.5};
  if (std::holds_alternative<PSpin>(spec)) return {0.5, 3.0};
  return {0.01, 3.0};
}

inline CriticalPoint locate_critical(const ModelSpec& spec, std::pair<double, double> bracket, double tol = 1e-6) {
  const auto split = build_h_split(spec);
  return locate_minimum([&](double t) { return energy_gap(split, t); }, bracket, tol);
}

}  // namespace critsense

#endif  // CRITSENSE_SPECTRA_HPP
