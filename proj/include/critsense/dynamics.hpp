#ifndef CRITSENSE_DYNAMICS_HPP
#define CRITSENSE_DYNAMICS_HPP

// Adiabatic schedules, closed and dephasing evolution, probe preparation.

#include "critsense/collective_dephasing.hpp"
#include "critsense/common.hpp"
#include "critsense/metrology.hpp"
#include "critsense/models.hpp"
#include "critsense/spectra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace critsense {

// ---------------------------------------------------------------------------
// Schedules

enum class ScheduleKind { GroverAnalytic, LocalAdiabaticNumeric, Linear };

inline std::string to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::GroverAnalytic: return "grover-analytic";
    case ScheduleKind::LocalAdiabaticNumeric: return "local-adiabatic-numeric";
    case ScheduleKind::Linear: return "linear";
  }
  return "unknown";
}

struct ScheduleSample {
  double t;
  double s;
};

/// Local-adiabatic node: gap of H(s) and the numerator c(s) of dt/ds.
struct GapNode {
  double s;
  double gap;
  double numerator;
};

/// Monotone map between time and the interpolation parameter s.
class Schedule {
 public:
  ScheduleKind kind() const { return kind_; }
  double epsilon() const { return epsilon_; }
  double t_total() const { return t_total_; }
  double s_end() const { return s_end_; }
  const std::vector<ScheduleSample>& samples() const { return samples_; }

  static Schedule linear(double t_total, double s_end) {
    detail::require(t_total >= 0.0, "schedule duration must be non-negative");
    detail::require(s_end > 0.0 && s_end <= 1.0, "s_end must lie in (0, 1]");
    Schedule out;
    out.kind_ = ScheduleKind::Linear;
    out.t_total_ = t_total;
    out.s_end_ = s_end;
    out.samples_ = {{0.0, 0.0}, {t_total, s_end}};
    return out;
  }

  /// t(s) = N [atan(r (2s - 1)) + atan r] / (2 eps r), r = sqrt(N - 1).
  static Schedule grover(int qubits, double epsilon, double s_end = 1.0) {
    detail::require(qubits >= 1 && qubits <= 62, "grover schedule needs 1 <= L <= 62");
    detail::require(epsilon > 0.0 && epsilon < 1.0, "adiabatic epsilon must lie in (0, 1)");
    detail::require(s_end > 0.0 && s_end <= 1.0, "s_end must lie in (0, 1]");
    Schedule out;
    out.kind_ = ScheduleKind::GroverAnalytic;
    out.epsilon_ = epsilon;
    out.s_end_ = s_end;
    out.grover_n_ = std::ldexp(1.0, qubits);
    out.t_total_ = out.t_at(s_end);
    constexpr int kSamples = 1001;
    out.samples_.reserve(kSamples);
    for (int i = 0; i < kSamples; ++i) {
      const double s = s_end * i / (kSamples - 1);
      out.samples_.push_back({out.t_at(s), s});
    }
    out.samples_.back() = {out.t_total_, s_end};
    return out;
  }

  /// dt/ds = c(s) / (eps gap(s)^2) with gap linear and c constant on each
  /// segment, which integrates and inverts in closed form.
  static Schedule local_adiabatic(const std::vector<GapNode>& nodes, double epsilon) {
    detail::require(epsilon > 0.0 && epsilon < 1.0, "adiabatic epsilon must lie in (0, 1)");
    detail::require(nodes.size() >= 2, "local adiabatic schedule needs at least two nodes");
    detail::require(nodes.front().s == 0.0, "schedule must start at s = 0");
    double c_max = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (i > 0) detail::require(nodes[i].s > nodes[i - 1].s, "schedule nodes must be strictly increasing in s");
      if (!(nodes[i].gap >= 1e-14))
        throw NumericalFailure("gap below 1e-14 at s = " + std::to_string(nodes[i].s), nodes[i].gap);
      detail::require(nodes[i].numerator >= 0.0, "numerator must be non-negative");
      c_max = std::max(c_max, nodes[i].numerator);
    }
    detail::require(c_max > 0.0, "numerator vanishes everywhere");
    Schedule out;
    out.kind_ = ScheduleKind::LocalAdiabaticNumeric;
    out.epsilon_ = epsilon;
    out.s_end_ = nodes.back().s;
    out.nodes_ = nodes;
    out.node_t_.assign(nodes.size(), 0.0);
    out.seg_c_.assign(nodes.size() - 1, 0.0);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      // A vanishing matrix element would make a segment instantaneous.
      const double c = std::max(0.5 * (nodes[i].numerator + nodes[i + 1].numerator), 1e-6 * c_max);
      out.seg_c_[i] = c;
      const double h = nodes[i + 1].s - nodes[i].s;
      out.node_t_[i + 1] = out.node_t_[i] + c * h / (epsilon * nodes[i].gap * nodes[i + 1].gap);
    }
    out.t_total_ = out.node_t_.back();
    for (std::size_t i = 0; i < nodes.size(); ++i) out.samples_.push_back({out.node_t_[i], nodes[i].s});
    return out;
  }

  double s_at(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= t_total_) return s_end_;
    switch (kind_) {
      case ScheduleKind::Linear: return s_end_ * t / t_total_;
      case ScheduleKind::GroverAnalytic: {
        const double r = std::sqrt(grover_n_ - 1.0);
        const double phase = 2.0 * epsilon_ * r * t / grover_n_ - std::atan(r);
        return std::clamp(0.5 * (1.0 + std::tan(phase) / r), 0.0, s_end_);
      }
      case ScheduleKind::LocalAdiabaticNumeric: {
        const auto it = std::upper_bound(node_t_.begin(), node_t_.end(), t);
        const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - node_t_.begin() - 1, 0));
        const double h = nodes_[i + 1].s - nodes_[i].s;
        const double d0 = nodes_[i].gap;
        const double k = (nodes_[i + 1].gap - d0) / h;
        const double tau = epsilon_ * (t - node_t_[i]) / seg_c_[i];
        const double x = tau * d0 * d0 / (1.0 - tau * d0 * k);
        return std::clamp(nodes_[i].s + std::clamp(x, 0.0, h), 0.0, s_end_);
      }
    }
    return 0.0;
  }

  double t_at(double s) const {
    detail::require(s >= 0.0 && s <= s_end_ + 1e-15, "s outside the schedule range");
    switch (kind_) {
      case ScheduleKind::Linear: return t_total_ * s / s_end_;
      case ScheduleKind::GroverAnalytic: {
        const double r = std::sqrt(grover_n_ - 1.0);
        return grover_n_ * (std::atan(r * (2.0 * s - 1.0)) + std::atan(r)) / (2.0 * epsilon_ * r);
      }
      case ScheduleKind::LocalAdiabaticNumeric: {
        if (s >= s_end_) return t_total_;
        const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s,
                                         [](double v, const GapNode& n) { return v < n.s; });
        const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - nodes_.begin() - 1, 0));
        const double x = s - nodes_[i].s;
        const double d0 = nodes_[i].gap;
        const double k = (nodes_[i + 1].gap - d0) / (nodes_[i + 1].s - nodes_[i].s);
        return node_t_[i] + seg_c_[i] * x / (epsilon_ * d0 * (d0 + k * x));
      }
    }
    return 0.0;
  }

  /// dt/ds at s (piecewise, from the segment containing s).
  double rate_at(double s) const {
    switch (kind_) {
      case ScheduleKind::Linear: return t_total_ / s_end_;
      case ScheduleKind::GroverAnalytic: {
        const double g2 = 1.0 - 4.0 * (1.0 - 1.0 / grover_n_) * s * (1.0 - s);
        return 1.0 / (epsilon_ * g2);
      }
      case ScheduleKind::LocalAdiabaticNumeric: {
        const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s,
                                         [](double v, const GapNode& n) { return v < n.s; });
        const auto i = std::min(static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - nodes_.begin() - 1, 0)),
                                nodes_.size() - 2);
        const double w = (s - nodes_[i].s) / (nodes_[i + 1].s - nodes_[i].s);
        const double g = nodes_[i].gap + w * (nodes_[i + 1].gap - nodes_[i].gap);
        return seg_c_[i] / (epsilon_ * g * g);
      }
    }
    return 0.0;
  }

  const std::vector<GapNode>& nodes() const { return nodes_; }

 private:
  ScheduleKind kind_ = ScheduleKind::Linear;
  double epsilon_ = 0.0;
  double t_total_ = 0.0;
  double s_end_ = 1.0;
  std::vector<ScheduleSample> samples_;
  double grover_n_ = 0.0;
  std::vector<GapNode> nodes_;
  std::vector<double> node_t_;
  std::vector<double> seg_c_;
};

inline Schedule grover_schedule(int qubits, double epsilon, double s_end = 1.0) {
  return Schedule::grover(qubits, epsilon, s_end);
}

// ---------------------------------------------------------------------------
// Time-dependent Hamiltonians H(s) = a(s) H1 + b(s) H2

/// reparameterized: a = s, b = 1 - s + s eta, so H(s)/s = H1 + ((1 - s)/s + eta) H2.
/// controlled: a = s / (1 - s), b = theta + offset + eta; at s = 1/2 this is
/// H1 + (theta + offset + eta) H2. eta shifts the sensed parameter and is
/// used to difference two evolutions under one schedule.
struct DriveForm {
  enum class Kind { Reparameterized, Controlled };
  Kind kind = Kind::Reparameterized;
  double theta = 0.0;
  double offset = 0.0;
  double eta = 0.0;

  static DriveForm reparameterized(double eta = 0.0) { return {Kind::Reparameterized, 0.0, 0.0, eta}; }
  static DriveForm controlled(double theta, double offset = 0.0, double eta = 0.0) {
    return {Kind::Controlled, theta, offset, eta};
  }

  DriveForm shifted(double d) const {
    DriveForm f = *this;
    f.eta += d;
    return f;
  }

  double a(double s) const { return kind == Kind::Reparameterized ? s : s / (1.0 - s); }
  double b(double s) const { return kind == Kind::Reparameterized ? 1.0 - s + s * eta : theta + offset + eta; }
  double da(double s) const { return kind == Kind::Reparameterized ? 1.0 : 1.0 / ((1.0 - s) * (1.0 - s)); }
  double db(double) const { return kind == Kind::Reparameterized ? eta - 1.0 : 0.0; }

  /// Parameter sensed by the ground state of H(s), i.e. H(s) / a(s) = H1 + theta_eff H2.
  double effective_theta(double s) const { return b(s) / a(s); }

  void check_range(double s_end) const {
    detail::require(s_end > 0.0 && s_end <= 1.0, "s_end must lie in (0, 1]");
    if (kind == Kind::Controlled) detail::require(s_end < 1.0, "controlled form requires s_end < 1");
  }
};

inline std::string to_string(DriveForm::Kind k) {
  return k == DriveForm::Kind::Reparameterized ? "reparameterized" : "controlled";
}

enum class Numerator { AppendixBound, ExactMatrixElement };

inline std::string to_string(Numerator n) {
  return n == Numerator::AppendixBound ? "appendix-bound" : "exact-matrix-element";
}

inline constexpr int kScheduleGridPoints = 201;
inline constexpr int kScheduleRefinement = 5;

/// Gap (and numerator) of H(s) on the schedule grid: 201 uniform points on
/// [0, s_end], with the two cells next to the minimum subdivided 5x.
inline std::vector<GapNode> adiabatic_gap_profile(const HamiltonianSplit& split, const DriveForm& form, double s_end,
                                                  Numerator numerator, double bound) {
  form.check_range(s_end);
  auto eval = [&](double s) {
    const auto h = split.h1.combine(form.a(s), split.h2, form.b(s));
    const auto sp = eigensolve_lowest(h, 2);
    GapNode n{s, sp.gap(), bound};
    if (numerator == Numerator::ExactMatrixElement) {
      const RealVector v0 = sp.states.col(0);
      const RealVector dh0 = form.da(s) * split.h1.apply(v0) + form.db(s) * split.h2.apply(v0);
      n.numerator = std::abs(sp.states.col(1).dot(dh0));
    }
    if (!(n.gap >= 1e-14)) throw NumericalFailure("gap below 1e-14 at s = " + std::to_string(s), n.gap);
    return n;
  };
  std::vector<GapNode> grid;
  grid.reserve(kScheduleGridPoints + 2 * kScheduleRefinement);
  for (int i = 0; i < kScheduleGridPoints; ++i) grid.push_back(eval(s_end * i / (kScheduleGridPoints - 1)));
  grid.back().s = s_end;

  const auto best = static_cast<std::size_t>(
      std::min_element(grid.begin(), grid.end(), [](const GapNode& x, const GapNode& y) { return x.gap < y.gap; }) -
      grid.begin());
  std::vector<GapNode> out;
  out.reserve(grid.size() + 2 * kScheduleRefinement);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.push_back(grid[i]);
    const bool refine = i + 1 < grid.size() && (i + 1 == best || i == best);
    if (!refine) continue;
    for (int k = 1; k < kScheduleRefinement; ++k)
      out.push_back(eval(grid[i].s + (grid[i + 1].s - grid[i].s) * k / kScheduleRefinement));
  }
  return out;
}

/// Local adiabatic schedule for H(s) of the given form. Appendix-bound mode
/// uses c(s) = L (total qubits); exact mode uses |<1|dH/ds|0>|.
inline Schedule local_adiabatic_schedule(const ModelSpec& spec, double epsilon, double s_end, Numerator numerator,
                                         const DriveForm& form = DriveForm::reparameterized()) {
  detail::require(epsilon > 0.0 && epsilon < 1.0, "adiabatic epsilon must lie in (0, 1)");
  const auto split = build_h_split(spec);
  return Schedule::local_adiabatic(
      adiabatic_gap_profile(split, form, s_end, numerator, static_cast<double>(total_qubits(spec))), epsilon);
}

// ---------------------------------------------------------------------------
// Evolution

struct EvolveOptions {
  int checkpoints = 100;
  /// RK4 step is step_factor / max row sum of H over the schedule.
  double step_factor = 0.02;
  bool keep_states = false;
  bool track_fidelity = true;
};

struct Checkpoint {
  double t = 0.0;
  double s = 0.0;
  double fidelity = 1.0;
};

struct EvolutionResult {
  std::vector<Checkpoint> checkpoints;
  /// Per-checkpoint states, filled when EvolveOptions::keep_states is set.
  std::vector<QuantumState> states;
  QuantumState final_state;
  double t_total = 0.0;
  std::size_t steps = 0;

  double min_fidelity() const {
    double m = 1.0;
    for (const auto& c : checkpoints) m = std::min(m, c.fidelity);
    return m;
  }
  double final_fidelity() const { return checkpoints.empty() ? 1.0 : checkpoints.back().fidelity; }
};

namespace detail {

/// y += coef * H x for a real symmetric H, without temporaries.
class RealOperator {
 public:
  RealOperator() = default;
  explicit RealOperator(const HamiltonianRep& h) : dim_(h.dim()), sparse_(h.is_sparse()) {
    if (sparse_)
      csr_ = h.sparse();
    else
      set_dense(h.dense());
  }
  RealOperator(const RealMatrix& m) : dim_(m.rows()) { set_dense(m); }
  RealOperator(const SparseRowMatrix& m) : dim_(m.rows()), sparse_(true), csr_(m) { csr_.makeCompressed(); }

  Eigen::Index dim() const { return dim_; }
  bool sparse() const { return sparse_; }

  double max_row_sum() const {
    if (!sparse_) return dense_.rows() ? dense_.cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
    double best = 0.0;
    for (Eigen::Index r = 0; r < csr_.outerSize(); ++r) {
      double acc = 0.0;
      for (SparseRowMatrix::InnerIterator it(csr_, r); it; ++it) acc += std::abs(it.value());
      best = std::max(best, acc);
    }
    return best;
  }

  void apply_add(const Complex* x, Complex* y, double coef) const {
    if (coef == 0.0) return;
    if (sparse_) {
      const auto* outer = csr_.outerIndexPtr();
      const auto* inner = csr_.innerIndexPtr();
      const auto* val = csr_.valuePtr();
      for (Eigen::Index r = 0; r < dim_; ++r) {
        Complex acc = 0.0;
        for (auto k = outer[r]; k < outer[r + 1]; ++k) acc += val[k] * x[inner[k]];
        y[r] += coef * acc;
      }
      return;
    }
    const double* d = dense_.data();
    for (Eigen::Index c = 0; c < dim_; ++c) {
      const Complex xc = coef * x[c];
      const double* col = d + c * dim_;
      for (Eigen::Index r = 0; r < dim_; ++r) y[r] += col[r] * xc;
    }
  }

  /// Y += coef * H X for column-major dim x dim complex X.
  void apply_matrix_add(const Complex* x, Complex* y, double coef) const {
    for (Eigen::Index c = 0; c < dim_; ++c) apply_add(x + c * dim_, y + c * dim_, coef);
  }

 private:
  // Mostly-zero matrices (diagonal fields, ladder operators) go to CSR.
  void set_dense(const RealMatrix& m) {
    const auto nnz = (m.array() != 0.0).count();
    if (4 * nnz <= m.size()) {
      csr_ = m.sparseView(0.0, 0.0);
      csr_.makeCompressed();
      sparse_ = true;
    } else {
      dense_ = m;
    }
  }

  Eigen::Index dim_ = 0;
  bool sparse_ = false;
  RealMatrix dense_;
  SparseRowMatrix csr_;
};

inline double drive_norm(const RealOperator& h1, const RealOperator& h2, const DriveForm& form, double s_end) {
  const double n1 = h1.max_row_sum(), n2 = h2.max_row_sum();
  double best = 0.0;
  constexpr int kProbe = 101;
  for (int i = 0; i < kProbe; ++i) {
    const double s = s_end * i / (kProbe - 1);
    best = std::max(best, std::abs(form.a(s)) * n1 + std::abs(form.b(s)) * n2);
  }
  return best;
}

/// Step count: a multiple of the checkpoint count so checkpoints sit on steps.
inline std::size_t step_count(double t_total, double max_step, int checkpoints) {
  if (t_total <= 0.0) return 0;
  const auto raw = static_cast<std::size_t>(std::ceil(t_total / max_step));
  const auto k = static_cast<std::size_t>(checkpoints);
  return k * ((raw + k - 1) / k);
}

/// Allowed norm or trace drift after evolving for time t: 1e-6, relaxed to
/// 1e-8 per unit time for long ramps.
inline double drift_tolerance(double t) { return std::max(1e-6, 1e-8 * t); }

inline void times_minus_i(ComplexVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(v(i).imag(), -v(i).real());
}

inline double ground_fidelity(const HamiltonianSplit& split, const DriveForm& form, double s, const ComplexVector& psi) {
  const auto sp = eigensolve_lowest(split.h1.combine(form.a(s), split.h2, form.b(s)), 1);
  const double f = std::norm(sp.states.col(0).cast<Complex>().dot(psi)) / psi.squaredNorm();
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace detail

/// Ground state of H2, the initial state of every protocol.
inline ComplexVector initial_state(const HamiltonianSplit& split) {
  const auto sp = eigensolve_lowest(split.h2, 2);
  if (sp.ground_degenerate()) throw NumericalFailure("ground state of H2 is degenerate");
  return sp.states.col(0).cast<Complex>();
}

/// Schroedinger evolution under H(s(t)) with fixed-step RK4.
inline EvolutionResult evolve_pure(const HamiltonianSplit& split, const Schedule& schedule, const DriveForm& form,
                                   const EvolveOptions& opt = {}) {
  detail::require(opt.checkpoints >= 1, "need at least one checkpoint");
  detail::require(opt.step_factor > 0.0, "step factor must be positive");
  form.check_range(schedule.s_end());
  const detail::RealOperator h1(split.h1), h2(split.h2);
  const double norm = std::max(detail::drive_norm(h1, h2, form, schedule.s_end()), 1e-300);
  const std::size_t n = detail::step_count(schedule.t_total(), opt.step_factor / norm, opt.checkpoints);
  const double dt = n ? schedule.t_total() / static_cast<double>(n) : 0.0;
  const BasisKind basis = split.h1.basis();

  ComplexVector psi = initial_state(split);
  const Eigen::Index dim = psi.size();
  ComplexVector k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

  auto deriv = [&](double s, const ComplexVector& x, ComplexVector& out) {
    out.setZero();
    h1.apply_add(x.data(), out.data(), form.a(s));
    h2.apply_add(x.data(), out.data(), form.b(s));
    detail::times_minus_i(out);
  };

  EvolutionResult res;
  res.t_total = schedule.t_total();
  res.steps = n;
  auto record = [&](double t, double s) {
    Checkpoint c{t, s, 1.0};
    const double drift = std::abs(psi.norm() - 1.0);
    if (drift > detail::drift_tolerance(t))
      throw NumericalFailure("norm drift " + std::to_string(drift) + " at t = " + std::to_string(t) +
                                 "; reduce the RK4 step",
                             drift);
    if (opt.track_fidelity) c.fidelity = detail::ground_fidelity(split, form, s, psi);
    res.checkpoints.push_back(c);
    if (opt.keep_states) res.states.push_back(PureState{psi, basis});
  };

  record(0.0, 0.0);
  const std::size_t every = n ? n / static_cast<std::size_t>(opt.checkpoints) : 1;
  for (std::size_t step = 0; step < n; ++step) {
    const double t = dt * static_cast<double>(step);
    const double s0 = schedule.s_at(t), sh = schedule.s_at(t + 0.5 * dt), s1 = schedule.s_at(t + dt);
    deriv(s0, psi, k1);
    tmp = psi + (0.5 * dt) * k1;
    deriv(sh, tmp, k2);
    tmp = psi + (0.5 * dt) * k2;
    deriv(sh, tmp, k3);
    tmp = psi + dt * k3;
    deriv(s1, tmp, k4);
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((step + 1) % every == 0) record(dt * static_cast<double>(step + 1), s1);
  }
  if (n > 0) res.checkpoints.back().s = schedule.s_end();
  res.final_state = PureState{psi, basis};
  return res;
}

inline EvolutionResult evolve_pure(const ModelSpec& spec, const Schedule& schedule, const DriveForm& form,
                                   const EvolveOptions& opt = {}) {
  return evolve_pure(build_h_split(spec), schedule, form, opt);
}

// ---------------------------------------------------------------------------
// Dephasing

enum class NoiseOperators { GroverCollective, LocalZ };

inline std::string to_string(NoiseOperators n) {
  return n == NoiseOperators::GroverCollective ? "grover-collective" : "local-z";
}

struct NoiseSpec {
  double gamma = 0.0;
  NoiseOperators operators = NoiseOperators::LocalZ;
};

/// How local-z dephasing is represented. Collective blocks keep only
/// permutation-invariant states (exact for the p-spin and biclique protocols,
/// whose Hamiltonian, noise and initial state are permutation symmetric within
/// each group); FullSpace stores the 2^L density matrix.
enum class LindbladBackend { Auto, TwoLevel, CollectiveBlocks, FullSpace };

/// One block of a block-diagonal density matrix, repeated `multiplicity`
/// times. For collective blocks two_j_a / two_j_b are twice the total spins.
struct DensityBlock {
  int two_j_a = 0;
  int two_j_b = 0;
  double multiplicity = 1.0;
  ComplexMatrix rho;
};

struct BlockDensity {
  BasisKind basis = BasisKind::EffectiveTwoLevel;
  std::vector<DensityBlock> blocks;

  double trace() const {
    double t = 0.0;
    for (const auto& b : blocks) t += b.multiplicity * b.rho.trace().real();
    return t;
  }

  /// Largest anti-Hermitian part over blocks.
  double asymmetry() const {
    double a = 0.0;
    for (const auto& b : blocks) a = std::max(a, (b.rho - b.rho.adjoint()).cwiseAbs().maxCoeff());
    return a;
  }

  double min_eigenvalue() const {
    double m = 1.0;
    for (const auto& b : blocks) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(b.rho, Eigen::EigenvaluesOnly);
      m = std::min(m, es.eigenvalues().minCoeff());
    }
    return m;
  }

  /// Block holding the ground state (the symmetric sector).
  const ComplexMatrix& leading() const { return blocks.front().rho; }

  /// Density matrix when the state is a single block of multiplicity one.
  MixedState as_mixed() const {
    detail::require(blocks.size() == 1 && blocks.front().multiplicity == 1.0,
                    "state spans several symmetry blocks");
    return MixedState{blocks.front().rho, basis};
  }
};

struct LindbladResult {
  std::vector<Checkpoint> checkpoints;
  std::vector<BlockDensity> states;
  BlockDensity final_state;
  double t_total = 0.0;
  std::size_t steps = 0;
  LindbladBackend backend = LindbladBackend::TwoLevel;

  double min_fidelity() const {
    double m = 1.0;
    for (const auto& c : checkpoints) m = std::min(m, c.fidelity);
    return m;
  }
};

namespace detail {

struct LindbladBlock {
  int two_j_a = 0;
  int two_j_b = 0;
  double multiplicity = 1.0;
  Eigen::Index dim = 0;
  Eigen::Index offset = 0;
  RealOperator h1, h2;
};

/// d rho / dt = -i [H, rho] + gamma * (diag .* rho + T rho) on the flattened
/// (column-major, block after block) density matrix.
struct LindbladSystem {
  BasisKind basis = BasisKind::EffectiveTwoLevel;
  LindbladBackend backend = LindbladBackend::TwoLevel;
  std::vector<LindbladBlock> blocks;
  Eigen::Index size = 0;
  RealVector diag;
  SparseRowMatrix transfer;
  HamiltonianSplit leading_split;
  double dissipator_norm = 0.0;
};

inline void add_block(LindbladSystem& sys, int ja, int jb, double mult, RealOperator h1, RealOperator h2) {
  LindbladBlock b;
  b.two_j_a = ja;
  b.two_j_b = jb;
  b.multiplicity = mult;
  b.dim = h1.dim();
  b.offset = sys.size;
  b.h1 = std::move(h1);
  b.h2 = std::move(h2);
  sys.size += b.dim * b.dim;
  sys.blocks.push_back(std::move(b));
}

inline LindbladSystem two_level_system(const ModelSpec& spec) {
  LindbladSystem sys;
  sys.basis = BasisKind::EffectiveTwoLevel;
  sys.backend = LindbladBackend::TwoLevel;
  sys.leading_split = build_h_split(spec);
  add_block(sys, 0, 0, 1.0, RealOperator(sys.leading_split.h1), RealOperator(sys.leading_split.h2));
  // Single sigma^z between |m> and |m_perp>: coherences decay at 2 gamma.
  sys.diag = RealVector::Zero(4);
  sys.diag(1) = sys.diag(2) = -2.0;
  sys.dissipator_norm = 2.0;
  return sys;
}

inline LindbladSystem full_space_system(const ModelSpec& spec) {
  const int n = total_qubits(spec);
  detail::require(n <= 12, "full-space Lindblad evolution limited to 12 qubits");
  LindbladSystem sys;
  sys.basis = BasisKind::FullComputational;
  sys.backend = LindbladBackend::FullSpace;
  sys.leading_split = build_full_split(spec);
  add_block(sys, n, 0, 1.0, RealOperator(sys.leading_split.h1), RealOperator(sys.leading_split.h2));
  const Eigen::Index dim = Eigen::Index{1} << n;
  sys.diag.resize(dim * dim);
  // sum_q z_q(a) z_q(b) - n = -2 popcount(a xor b).
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r)
      sys.diag(c * dim + r) = -2.0 * std::popcount(static_cast<std::uint64_t>(r ^ c));
  sys.dissipator_norm = 2.0 * n;
  return sys;
}

inline LindbladSystem collective_system(const ModelSpec& spec) {
  using dephasing::transfer;
  LindbladSystem sys;
  sys.backend = LindbladBackend::CollectiveBlocks;
  sys.leading_split = build_h_split(spec);
  sys.basis = sys.leading_split.h1.basis();
  std::vector<Eigen::Triplet<double>> trips;

  if (const auto* m = std::get_if<PSpin>(&spec)) {
    const int n = m->qubits;
    for (int tj = n; tj >= 0; tj -= 2) {
      auto [h1, h2] = pspin_block(*m, tj);
      add_block(sys, tj, 0, dephasing::multiplicity(n, tj), RealOperator(h1), RealOperator(h2));
    }
    for (std::size_t bi = 0; bi < sys.blocks.size(); ++bi) {
      const auto& src = sys.blocks[bi];
      const int tj = src.two_j_a;
      for (Eigen::Index c = 0; c < src.dim; ++c)
        for (Eigen::Index r = 0; r < src.dim; ++r) {
          const int tm = tj - 2 * static_cast<int>(r), tmp = tj - 2 * static_cast<int>(c);
          const Eigen::Index from = src.offset + c * src.dim + r;
          trips.emplace_back(from, from, -static_cast<double>(n));
          for (std::size_t bj = (bi ? bi - 1 : 0); bj <= std::min(bi + 1, sys.blocks.size() - 1); ++bj) {
            const auto& dst = sys.blocks[bj];
            const int tjp = dst.two_j_a;
            if (std::abs(tm) > tjp || std::abs(tmp) > tjp) continue;
            const double coef = transfer(n, tj, tjp, tm, tmp);
            if (coef == 0.0) continue;
            const Eigen::Index rp = (tjp - tm) / 2, cp = (tjp - tmp) / 2;
            trips.emplace_back(dst.offset + cp * dst.dim + rp, from, coef);
          }
        }
    }
    sys.dissipator_norm = 2.0 * n;
  } else if (const auto* b = std::get_if<Biclique>(&spec)) {
    const int na = b->size_a, nb = b->size_b;
    std::vector<int> ja_list, jb_list;
    for (int t = na; t >= 0; t -= 2) ja_list.push_back(t);
    for (int t = nb; t >= 0; t -= 2) jb_list.push_back(t);
    auto index_of = [&](int ja, int jb) {
      for (std::size_t i = 0; i < sys.blocks.size(); ++i)
        if (sys.blocks[i].two_j_a == ja && sys.blocks[i].two_j_b == jb) return static_cast<std::ptrdiff_t>(i);
      return std::ptrdiff_t{-1};
    };
    for (int ja : ja_list)
      for (int jb : jb_list) {
        auto [h1, h2] = biclique_block(*b, ja, jb);
        add_block(sys, ja, jb, dephasing::multiplicity(na, ja) * dephasing::multiplicity(nb, jb), RealOperator(h1),
                  RealOperator(h2));
      }
    for (const auto& src : sys.blocks) {
      const int ja = src.two_j_a, jb = src.two_j_b;
      const int db = jb + 1;
      for (Eigen::Index c = 0; c < src.dim; ++c)
        for (Eigen::Index r = 0; r < src.dim; ++r) {
          const int ia = static_cast<int>(r) / db, ib = static_cast<int>(r) % db;
          const int ca = static_cast<int>(c) / db, cb = static_cast<int>(c) % db;
          const int ma = ja - 2 * ia, mb = jb - 2 * ib, mpa = ja - 2 * ca, mpb = jb - 2 * cb;
          const Eigen::Index from = src.offset + c * src.dim + r;
          trips.emplace_back(from, from, -static_cast<double>(na + nb));
          for (int d : {-2, 0, 2}) {
            // Part A changes total spin, part B untouched.
            const int jap = ja + d;
            if (const auto k = index_of(jap, jb); k >= 0 && std::abs(ma) <= jap && std::abs(mpa) <= jap) {
              const double coef = transfer(na, ja, jap, ma, mpa);
              const auto& dst = sys.blocks[static_cast<std::size_t>(k)];
              const Eigen::Index rp = ((jap - ma) / 2) * db + ib, cp = ((jap - mpa) / 2) * db + cb;
              if (coef != 0.0) trips.emplace_back(dst.offset + cp * dst.dim + rp, from, coef);
            }
            const int jbp = jb + d;
            if (const auto k = index_of(ja, jbp); k >= 0 && std::abs(mb) <= jbp && std::abs(mpb) <= jbp) {
              const double coef = transfer(nb, jb, jbp, mb, mpb);
              const auto& dst = sys.blocks[static_cast<std::size_t>(k)];
              const int dbp = jbp + 1;
              const Eigen::Index rp = ia * dbp + (jbp - mb) / 2, cp = ca * dbp + (jbp - mpb) / 2;
              if (coef != 0.0) trips.emplace_back(dst.offset + cp * dst.dim + rp, from, coef);
            }
          }
        }
    }
    sys.dissipator_norm = 2.0 * (na + nb);
  } else {
    detail::require(false, "collective dephasing blocks need a p-spin or biclique model");
  }
  sys.transfer.resize(sys.size, sys.size);
  sys.transfer.setFromTriplets(trips.begin(), trips.end());
  sys.transfer.makeCompressed();
  return sys;
}

inline LindbladSystem lindblad_system(const ModelSpec& spec, const NoiseSpec& noise, LindbladBackend backend) {
  validate(spec);
  const bool grover = std::holds_alternative<Grover>(spec);
  if (noise.operators == NoiseOperators::GroverCollective) {
    detail::require(grover, "grover-collective noise applies to the grover model only");
    detail::require(backend == LindbladBackend::Auto || backend == LindbladBackend::TwoLevel,
                    "grover-collective noise lives in the two-level basis");
    return two_level_system(spec);
  }
  if (backend == LindbladBackend::FullSpace) return full_space_system(spec);
  detail::require(!grover, "local-z noise on the grover model needs the full-space backend");
  detail::require(backend == LindbladBackend::Auto || backend == LindbladBackend::CollectiveBlocks,
                  "local-z noise uses collective blocks or the full space");
  return collective_system(spec);
}

inline BlockDensity unpack(const LindbladSystem& sys, const ComplexVector& y) {
  BlockDensity out;
  out.basis = sys.basis;
  for (const auto& b : sys.blocks) {
    DensityBlock d{b.two_j_a, b.two_j_b, b.multiplicity,
                   Eigen::Map<const ComplexMatrix>(y.data() + b.offset, b.dim, b.dim)};
    out.blocks.push_back(std::move(d));
  }
  return out;
}

}  // namespace detail

/// Lindblad evolution with sigma^z dephasing at rate gamma.
inline LindbladResult evolve_lindblad(const ModelSpec& spec, const Schedule& schedule, const NoiseSpec& noise,
                                      const DriveForm& form, const EvolveOptions& opt = {},
                                      LindbladBackend backend = LindbladBackend::Auto) {
  detail::require(noise.gamma >= 0.0, "dephasing rate must be non-negative");
  detail::require(opt.checkpoints >= 1, "need at least one checkpoint");
  detail::require(opt.step_factor > 0.0, "step factor must be positive");
  form.check_range(schedule.s_end());
  const auto sys = detail::lindblad_system(spec, noise, backend);
  const auto& lead = sys.blocks.front();

  double norm = 0.0;
  for (const auto& b : sys.blocks) norm = std::max(norm, detail::drive_norm(b.h1, b.h2, form, schedule.s_end()));
  norm = std::max(norm + noise.gamma * sys.dissipator_norm, 1e-300);
  const std::size_t n = detail::step_count(schedule.t_total(), opt.step_factor / norm, opt.checkpoints);
  const double dt = n ? schedule.t_total() / static_cast<double>(n) : 0.0;

  ComplexVector y = ComplexVector::Zero(sys.size);
  {
    const ComplexVector psi = initial_state(sys.leading_split);
    Eigen::Map<ComplexMatrix>(y.data() + lead.offset, lead.dim, lead.dim) = psi * psi.adjoint();
  }
  ComplexVector k1(sys.size), k2(sys.size), k3(sys.size), k4(sys.size), tmp(sys.size);
  Eigen::Index max_dim = 0;
  for (const auto& b : sys.blocks) max_dim = std::max(max_dim, b.dim);
  ComplexMatrix work(max_dim, max_dim);
  const bool has_transfer = sys.transfer.nonZeros() > 0;
  const bool has_diag = sys.diag.size() > 0;

  auto deriv = [&](double s, const ComplexVector& x, ComplexVector& out) {
    const double a = form.a(s), bcoef = form.b(s);
    for (const auto& b : sys.blocks) {
      const Complex* xr = x.data() + b.offset;
      Complex* o = out.data() + b.offset;
      const Eigen::Index d = b.dim;
      Complex* w = work.data();
      std::fill(w, w + d * d, Complex(0.0));
      b.h1.apply_matrix_add(xr, w, a);
      b.h2.apply_matrix_add(xr, w, bcoef);
      // -i [H, rho] = -i (H rho - (H rho)^dagger) for Hermitian rho.
      for (Eigen::Index c = 0; c < d; ++c)
        for (Eigen::Index r = 0; r < d; ++r) {
          const Complex v = w[c * d + r] - std::conj(w[r * d + c]);
          o[c * d + r] = Complex(v.imag(), -v.real());
        }
    }
    if (noise.gamma == 0.0) return;
    if (has_diag)
      for (Eigen::Index i = 0; i < sys.size; ++i) out(i) += noise.gamma * sys.diag(i) * x(i);
    if (has_transfer) {
      const auto* outer = sys.transfer.outerIndexPtr();
      const auto* inner = sys.transfer.innerIndexPtr();
      const auto* val = sys.transfer.valuePtr();
      for (Eigen::Index r = 0; r < sys.size; ++r) {
        Complex acc = 0.0;
        for (auto k = outer[r]; k < outer[r + 1]; ++k) acc += val[k] * x(inner[k]);
        out(r) += noise.gamma * acc;
      }
    }
  };

  LindbladResult res;
  res.t_total = schedule.t_total();
  res.steps = n;
  res.backend = sys.backend;
  const bool check_spectrum = sys.size <= 256 * 256;
  auto record = [&](double t, double s) {
    const auto state = detail::unpack(sys, y);
    const double drift = std::abs(state.trace() - 1.0);
    if (drift > detail::drift_tolerance(t)) throw NumericalFailure("trace drift " + std::to_string(drift) + "; reduce the RK4 step", drift);
    if (check_spectrum) {
      const double neg = state.min_eigenvalue();
      if (neg < -1e-6) throw NumericalFailure("density matrix lost positivity", neg);
    }
    Checkpoint c{t, s, 1.0};
    if (opt.track_fidelity) {
      const auto sp =
          eigensolve_lowest(sys.leading_split.h1.combine(form.a(s), sys.leading_split.h2, form.b(s)), 1);
      const ComplexVector g = sp.states.col(0).cast<Complex>();
      c.fidelity = std::clamp((g.adjoint() * state.leading() * g)(0, 0).real(), 0.0, 1.0);
    }
    res.checkpoints.push_back(c);
    if (opt.keep_states) res.states.push_back(state);
  };

  record(0.0, 0.0);
  const std::size_t every = n ? n / static_cast<std::size_t>(opt.checkpoints) : 1;
  for (std::size_t step = 0; step < n; ++step) {
    const double t = dt * static_cast<double>(step);
    const double s0 = schedule.s_at(t), sh = schedule.s_at(t + 0.5 * dt), s1 = schedule.s_at(t + dt);
    deriv(s0, y, k1);
    tmp = y + (0.5 * dt) * k1;
    deriv(sh, tmp, k2);
    tmp = y + (0.5 * dt) * k2;
    deriv(sh, tmp, k3);
    tmp = y + dt * k3;
    deriv(s1, tmp, k4);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((step + 1) % every == 0) record(dt * static_cast<double>(step + 1), s1);
  }
  if (n > 0) res.checkpoints.back().s = schedule.s_end();
  res.final_state = detail::unpack(sys, y);
  if (!check_spectrum) {
    const double neg = res.final_state.min_eigenvalue();
    if (neg < -1e-6) throw NumericalFailure("density matrix lost positivity", neg);
  }
  return res;
}

/// QFI of a block-diagonal state from two states a parameter step delta
/// apart: rho = (rho+ + rho-)/2, drho = (rho+ - rho-)/delta, summed over
/// blocks with their multiplicities.
inline FisherEstimate qfi_blocks(const BlockDensity& minus, const BlockDensity& plus, double delta,
                                 double eig_floor = kDefaultEigFloor) {
  detail::require(delta > 0.0, "delta must be positive");
  detail::require(minus.blocks.size() == plus.blocks.size(), "block structures differ");
  double f = 0.0;
  for (std::size_t i = 0; i < plus.blocks.size(); ++i) {
    const auto& p = plus.blocks[i];
    const auto& m = minus.blocks[i];
    detail::require(p.rho.rows() == m.rho.rows(), "block structures differ");
    const ComplexMatrix rho = 0.5 * (p.rho + m.rho);
    const ComplexMatrix drho = (p.rho - m.rho) / delta;
    f += p.multiplicity * qfi_mixed(rho, drho, eig_floor).estimate.value;
  }
  return {f, FisherMethod::MixedSld, delta};
}

// ---------------------------------------------------------------------------
// Evolved-state Fisher information

/// Overlap QFI of two evolved pure states.
inline FisherEstimate qfi_evolved_pure(const QuantumState& minus, const QuantumState& plus, double delta) {
  const auto& a = std::get<PureState>(minus).amplitudes;
  const auto& b = std::get<PureState>(plus).amplitudes;
  return {overlap_fisher(a / a.norm(), b / b.norm(), delta), FisherMethod::PureOverlap, delta};
}

struct TrackPoint {
  double t = 0.0;
  double s = 0.0;
  double theta = 0.0;
  double fidelity = 1.0;
  double qfi_evolved = 0.0;
  double qfi_ground = 0.0;
};

/// QFI of the evolving state along a schedule: evolutions with the sensed
/// parameter shifted by -delta/2 and +delta/2, identical schedule.
inline std::vector<TrackPoint> adiabatic_fisher_track(const HamiltonianSplit& split, const Schedule& schedule,
                                                      const DriveForm& form, double delta, EvolveOptions opt = {}) {
  detail::require(delta > 0.0, "delta must be positive");
  opt.keep_states = true;
  const auto centre = evolve_pure(split, schedule, form, opt);
  EvolveOptions quiet = opt;
  quiet.track_fidelity = false;
  const auto lo = evolve_pure(split, schedule, form.shifted(-0.5 * delta), quiet);
  const auto hi = evolve_pure(split, schedule, form.shifted(0.5 * delta), quiet);
  std::vector<TrackPoint> out;
  for (std::size_t i = 0; i < centre.checkpoints.size(); ++i) {
    const auto& c = centre.checkpoints[i];
    if (form.a(c.s) <= 0.0) continue;
    TrackPoint p;
    p.t = c.t;
    p.s = c.s;
    p.theta = form.effective_theta(c.s);
    p.fidelity = c.fidelity;
    p.qfi_evolved = qfi_evolved_pure(lo.states[i], hi.states[i], delta).value;
    p.qfi_ground = qfi_spectral(split, p.theta).value;
    out.push_back(p);
  }
  return out;
}

/// Evolved-state QFI at the end of the schedule.
inline FisherEstimate qfi_after_evolution(const HamiltonianSplit& split, const Schedule& schedule,
                                          const DriveForm& form, double delta, EvolveOptions opt = {}) {
  opt.track_fidelity = false;
  opt.keep_states = false;
  const auto lo = evolve_pure(split, schedule, form.shifted(-0.5 * delta), opt);
  const auto hi = evolve_pure(split, schedule, form.shifted(0.5 * delta), opt);
  return qfi_evolved_pure(lo.final_state, hi.final_state, delta);
}

// ---------------------------------------------------------------------------
// Probe preparation for an unknown parameter

struct ProbeOptions {
  /// Critical point of the model; located from the model's bracket when unset.
  std::optional<double> theta_c;
  Numerator numerator = Numerator::AppendixBound;
  EvolveOptions evolve;
};

struct PreparedProbe {
  Schedule schedule;
  EvolutionResult evolution;
  DriveForm form;
  /// Parameter sensed by the ground state at the end of the ramp.
  double theta_effective = 0.0;
  /// Overlap with the exact ground state at theta_effective.
  double fidelity = 0.0;

  const QuantumState& state() const { return evolution.final_state; }
};

inline double critical_point_of(const ModelSpec& spec, const ProbeOptions& opt) {
  if (opt.theta_c) return *opt.theta_c;
  if (std::holds_alternative<Grover>(spec)) return 1.0;
  return locate_critical(spec, suggested_bracket(spec), 1e-10).theta_c;
}

/// Schedule for the controlled ramp s: 0 -> 1/2 at the given parameter.
inline Schedule probe_schedule(const ModelSpec& spec, double theta_true, double epsilon, bool use_offset,
                               const ProbeOptions& opt = {}) {
  detail::require(theta_true >= 0.0, "theta_true must be non-negative");
  const double theta_c = critical_point_of(spec, opt);
  if (!use_offset)
    detail::require(theta_true >= theta_c, "without the offset field theta_true must not lie below theta_c");
  const DriveForm form = DriveForm::controlled(theta_true, use_offset ? theta_c : 0.0);
  return local_adiabatic_schedule(spec, epsilon, 0.5, opt.numerator, form);
}

/// Ramps the controlled Hamiltonian (s/(1-s)) H1 + (theta_true [+ theta_c]) H2
/// from the ground state of H2 to s = 1/2. `eta` shifts the parameter seen by
/// the evolution while keeping the schedule computed at theta_true.
inline PreparedProbe prepare_probe(const ModelSpec& spec, double theta_true, double epsilon, bool use_offset,
                                   const ProbeOptions& opt = {}, double eta = 0.0) {
  const auto split = build_h_split(spec);
  const double theta_c = critical_point_of(spec, opt);
  ProbeOptions resolved = opt;
  resolved.theta_c = theta_c;
  PreparedProbe out{probe_schedule(spec, theta_true, epsilon, use_offset, resolved), {}, {}, 0.0, 0.0};
  out.form = DriveForm::controlled(theta_true, use_offset ? theta_c : 0.0, eta);
  out.evolution = evolve_pure(split, out.schedule, out.form, opt.evolve);
  auto& amps = std::get<PureState>(out.evolution.final_state).amplitudes;
  amps /= amps.norm();
  out.theta_effective = out.form.effective_theta(0.5);
  const auto& psi = std::get<PureState>(out.evolution.final_state).amplitudes;
  const ComplexVector g = ground_state(split, out.theta_effective).cast<Complex>();
  out.fidelity = std::norm(g.dot(psi));
  return out;
}

struct ProbeFisher {
  double theta_true = 0.0;
  double theta_effective = 0.0;
  double fidelity = 0.0;
  double qfi_prepared = 0.0;
  double cfi_prepared = 0.0;
  double qfi_ground = 0.0;
  double cfi_ground = 0.0;
};

/// Fisher information of the prepared probe with respect to theta_true
/// (three preparations under one schedule), next to the ground-state values.
inline ProbeFisher probe_fisher(const ModelSpec& spec, double theta_true, double epsilon, bool use_offset,
                                double delta, const ProbeOptions& opt = {}) {
  detail::require(delta > 0.0, "delta must be positive");
  const auto split = build_h_split(spec);
  ProbeOptions resolved = opt;
  resolved.theta_c = critical_point_of(spec, opt);
  resolved.evolve.keep_states = false;
  const auto centre = prepare_probe(spec, theta_true, epsilon, use_offset, resolved);
  ProbeOptions quiet = resolved;
  quiet.evolve.track_fidelity = false;
  const auto lo = prepare_probe(spec, theta_true, epsilon, use_offset, quiet, -0.5 * delta);
  const auto hi = prepare_probe(spec, theta_true, epsilon, use_offset, quiet, 0.5 * delta);
  const auto basis = optimal_measurement(spec);

  ProbeFisher out;
  out.theta_true = theta_true;
  out.theta_effective = centre.theta_effective;
  out.fidelity = centre.fidelity;
  out.qfi_prepared = qfi_evolved_pure(lo.state(), hi.state(), delta).value;
  const auto p0 = outcome_probabilities(centre.state(), basis);
  const auto pl = outcome_probabilities(lo.state(), basis);
  const auto ph = outcome_probabilities(hi.state(), basis);
  out.cfi_prepared = cfi_from_probabilities(
                         [&](double t) {
                           if (t < theta_true) return pl;
                           if (t > theta_true) return ph;
                           return p0;
                         },
                         theta_true, delta)
                         .value;
  out.qfi_ground = qfi_spectral(split, centre.theta_effective).value;
  out.cfi_ground = cfi_ground(split, basis, centre.theta_effective, delta).value;
  return out;
}

}  // namespace critsense

#endif  // CRITSENSE_DYNAMICS_HPP
