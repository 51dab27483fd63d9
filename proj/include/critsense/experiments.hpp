#ifndef CRITSENSE_EXPERIMENTS_HPP
#define CRITSENSE_EXPERIMENTS_HPP

// Scaling studies, exponent fits, dephasing sweeps and adaptive estimation.

#include "critsense/common.hpp"
#include "critsense/dynamics.hpp"
#include "critsense/metrology.hpp"
#include "critsense/models.hpp"
#include "critsense/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace critsense {

// ---------------------------------------------------------------------------
// Fits

enum class FitKind { Exponential, Algebraic, ExpLinearPrefactor };

inline std::string to_string(FitKind k) {
  switch (k) {
    case FitKind::Exponential: return "exponential";
    case FitKind::Algebraic: return "algebraic";
    case FitKind::ExpLinearPrefactor: return "exp-linear-prefactor";
  }
  return "unknown";
}

struct ScalingPoint {
  double size;
  double value;
};

/// exponential: A e^{cL}; algebraic: A L^c; exp-linear-prefactor: A L e^{-cL}.
struct ScalingResult {
  std::vector<ScalingPoint> points;
  FitKind fit_kind = FitKind::Exponential;
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;

  static constexpr double kPoorFit = 0.9;
  bool flagged() const { return r_squared < kPoorFit; }
  /// Magnitude of the exponent (decay and growth rates are quoted positive).
  double rate() const { return std::abs(exponent); }
};

inline constexpr std::size_t kMinFitPoints = 4;

inline ScalingResult fit_scaling(const std::vector<ScalingPoint>& points, FitKind kind) {
  std::set<double> sizes;
  for (const auto& p : points) {
    detail::require(p.value > 0.0 && std::isfinite(p.value), "fit_scaling: values must be positive");
    detail::require(p.size > 0.0, "fit_scaling: sizes must be positive");
    sizes.insert(p.size);
  }
  detail::require(sizes.size() >= kMinFitPoints, "fit_scaling: need at least 4 distinct sizes");

  const auto n = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    const double x = kind == FitKind::Algebraic ? std::log(p.size) : p.size;
    const double y = kind == FitKind::ExpLinearPrefactor ? std::log(p.value / p.size) : std::log(p.value);
    xs.push_back(x);
    ys.push_back(y);
    sx += x;
    sy += y;
  }
  const double mx = sx / n, my = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    ss_res += r * r;
    ss_tot += (ys[i] - my) * (ys[i] - my);
  }
  ScalingResult out;
  out.points = points;
  out.fit_kind = kind;
  out.exponent = kind == FitKind::ExpLinearPrefactor ? -slope : slope;
  out.prefactor = std::exp(intercept);
  out.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  return out;
}

/// Drops the smallest sizes (finite-size transients): up to `skip`, while
/// keeping at least four points.
inline std::vector<ScalingPoint> fit_window(std::vector<ScalingPoint> points, std::size_t skip = 2) {
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.size < b.size; });
  const std::size_t drop = points.size() > kMinFitPoints ? std::min(skip, points.size() - kMinFitPoints) : 0;
  return {points.begin() + static_cast<std::ptrdiff_t>(drop), points.end()};
}

// ---------------------------------------------------------------------------
// Task pool

namespace detail {

/// Runs fn(0..count-1) on up to `threads` workers; results land in index order.
template <class Fn>
auto parallel_map(std::size_t count, int threads, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  const auto workers = static_cast<std::size_t>(std::clamp<long>(threads, 1, static_cast<long>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  // First failure in task order, so error reports do not depend on scheduling.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(count);
  for (auto& r : slots) out.push_back(std::move(*r));
  return out;
}

}  // namespace detail

inline int default_threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

// ---------------------------------------------------------------------------
// Critical scans

/// Model family indexed by the total size L.
using ModelFamily = std::function<ModelSpec(int)>;
/// Critical-point search window as a function of L.
using BracketRule = std::function<std::pair<double, double>(int)>;

struct CriticalRow {
  int size = 0;
  double theta_c = 0.0;
  double gap_c = 0.0;
  double qfi_c = 0.0;
};

inline constexpr double kScalingTolerance = 1e-13;

/// theta_c, Delta_c and F^Q_c per size. The gap dips of first-order
/// transitions are narrow and V-shaped, so theta is refined close to double
/// resolution by default.
inline std::vector<CriticalRow> run_critical_scan(const ModelFamily& family, const std::vector<int>& sizes,
                                                  const BracketRule& bracket, double tol = kScalingTolerance,
                                                  int threads = 1) {
  detail::require(!sizes.empty(), "size list is empty");
  return detail::parallel_map(sizes.size(), threads, [&](std::size_t i) {
    const int l = sizes[i];
    const auto spec = family(l);
    const auto split = build_h_split(spec);
    const auto cp = locate_minimum([&](double t) { return energy_gap(split, t); }, bracket(l), tol);
    return CriticalRow{l, cp.theta_c, cp.gap_at_c, qfi_spectral(split, cp.theta_c).value};
  });
}

inline std::vector<ScalingPoint> gap_points(const std::vector<CriticalRow>& rows) {
  std::vector<ScalingPoint> p;
  for (const auto& r : rows) p.push_back({static_cast<double>(r.size), r.gap_c});
  return p;
}

inline std::vector<ScalingPoint> qfi_points(const std::vector<CriticalRow>& rows) {
  std::vector<ScalingPoint> p;
  for (const auto& r : rows) p.push_back({static_cast<double>(r.size), r.qfi_c});
  return p;
}

inline ScalingResult run_gap_scaling(const ModelFamily& family, const std::vector<int>& sizes,
                                     const BracketRule& bracket, FitKind kind, std::size_t skip = 2) {
  return fit_scaling(fit_window(gap_points(run_critical_scan(family, sizes, bracket)), skip), kind);
}

inline ScalingResult run_qfi_scaling(const ModelFamily& family, const std::vector<int>& sizes,
                                     const BracketRule& bracket, FitKind kind, std::size_t skip = 2) {
  return fit_scaling(fit_window(qfi_points(run_critical_scan(family, sizes, bracket)), skip), kind);
}

struct BetaTwoAlphaReport {
  double alpha = 0.0;
  double beta = 0.0;
  bool defined = false;
  double relative_deviation = std::numeric_limits<double>::quiet_NaN();
  bool within_tolerance = false;
  /// beta - alpha: growth rate of F^Q_c / T when T ~ 1 / Delta_c.
  double figure_of_merit = 0.0;
};

inline BetaTwoAlphaReport check_beta_two_alpha(const ScalingResult& gap, const ScalingResult& qfi, double tol_rel) {
  detail::require(gap.fit_kind == qfi.fit_kind || gap.fit_kind == FitKind::ExpLinearPrefactor,
                  "gap and QFI fits must describe the same regime");
  BetaTwoAlphaReport r;
  r.alpha = gap.rate();
  r.beta = qfi.rate();
  r.figure_of_merit = r.beta - r.alpha;
  r.defined = r.alpha != 0.0;
  if (r.defined) {
    r.relative_deviation = std::abs(r.beta - 2.0 * r.alpha) / (2.0 * r.alpha);
    r.within_tolerance = r.relative_deviation <= tol_rel;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Preparation time

struct PrepTimeRow {
  int size = 0;
  double theta_c = 0.0;
  double s_c = 0.0;
  double t_total = 0.0;
};

/// T_total of the appendix-bound local-adiabatic schedule up to s_c = 1/(1 + theta_c).
inline std::vector<PrepTimeRow> run_preparation_times(const ModelFamily& family, const std::vector<int>& sizes,
                                                      const BracketRule& bracket, double epsilon,
                                                      Numerator numerator = Numerator::AppendixBound,
                                                      int threads = 1) {
  detail::require(!sizes.empty(), "size list is empty");
  detail::require(epsilon > 0.0, "epsilon must be positive");
  return detail::parallel_map(sizes.size(), threads, [&](std::size_t i) {
    const int l = sizes[i];
    const auto spec = family(l);
    const auto cp = locate_critical(spec, bracket(l), kScalingTolerance);
    const double sc = 1.0 / (1.0 + cp.theta_c);
    return PrepTimeRow{l, cp.theta_c, sc, local_adiabatic_schedule(spec, epsilon, sc, numerator).t_total()};
  });
}

inline ScalingResult run_preparation_time_scaling(const ModelFamily& family, const std::vector<int>& sizes,
                                                  const BracketRule& bracket, double epsilon, std::size_t skip = 2) {
  std::vector<ScalingPoint> pts;
  for (const auto& r : run_preparation_times(family, sizes, bracket, epsilon))
    pts.push_back({static_cast<double>(r.size), r.t_total});
  return fit_scaling(fit_window(pts, skip), FitKind::Exponential);
}

// ---------------------------------------------------------------------------
// Dephasing

struct DephasingConfig {
  NoiseOperators operators = NoiseOperators::LocalZ;
  LindbladBackend backend = LindbladBackend::Auto;
  double epsilon = 0.1;
  Numerator numerator = Numerator::AppendixBound;
  /// Upper bound on the parameter step of the two evolutions differenced for drho;
  /// shrunk to 0.1/sqrt(F_ground) so it stays inside the critical window.
  double delta = 1e-3;
  int checkpoints = 100;
  double step_factor = 0.02;
};

struct DephasingRow {
  int size = 0;
  double gamma = 0.0;
  double theta_c = 0.0;
  double t_total = 0.0;
  double qfi = 0.0;
  double fidelity = 0.0;
  double delta = 0.0;
};

struct DephasingSweep {
  std::vector<DephasingRow> rows;
  /// Exponential fit of F^Q_c in L at each gamma (when enough sizes).
  std::map<double, ScalingResult> size_fits;
  /// Algebraic fit of F^Q_c in gamma (gamma > 0) at each size.
  std::map<int, ScalingResult> decay_fits;
};

/// Schedule used to bring the state to theta_c: the analytic one for Grover,
/// local adiabatic otherwise.
inline Schedule critical_schedule(const ModelSpec& spec, double theta_c, double epsilon, Numerator numerator) {
  const double sc = 1.0 / (1.0 + theta_c);
  if (const auto* g = std::get_if<Grover>(&spec)) return grover_schedule(g->qubits, epsilon, sc);
  return local_adiabatic_schedule(spec, epsilon, sc, numerator);
}

inline DephasingRow dephasing_point(const ModelSpec& spec, double theta_c, double gamma, const DephasingConfig& cfg) {
  const auto schedule = critical_schedule(spec, theta_c, cfg.epsilon, cfg.numerator);
  const NoiseSpec noise{gamma, cfg.operators};
  EvolveOptions opt;
  opt.checkpoints = cfg.checkpoints;
  opt.step_factor = cfg.step_factor;
  const double f_ground = qfi_spectral(build_h_split(spec), theta_c).value;
  const double delta = f_ground > 0.0 ? std::min(cfg.delta, 0.1 / std::sqrt(f_ground)) : cfg.delta;
  const auto lo = evolve_lindblad(spec, schedule, noise, DriveForm::reparameterized(-0.5 * delta), opt, cfg.backend);
  opt.track_fidelity = false;
  const auto hi = evolve_lindblad(spec, schedule, noise, DriveForm::reparameterized(0.5 * delta), opt, cfg.backend);

  DephasingRow row{total_qubits(spec), gamma, theta_c, schedule.t_total(), 0.0, 0.0, delta};
  row.qfi = qfi_blocks(lo.final_state, hi.final_state, delta).value;
  row.fidelity = lo.checkpoints.back().fidelity;
  return row;
}

inline DephasingSweep run_dephasing_sweep(const ModelFamily& family, const std::vector<int>& sizes,
                                          const std::vector<double>& gammas, const BracketRule& bracket,
                                          const DephasingConfig& cfg = {}, int threads = 1) {
  detail::require(!sizes.empty(), "size list is empty");
  detail::require(!gammas.empty(), "gamma list is empty");
  for (double g : gammas) detail::require(g >= 0.0, "dephasing rates must be non-negative");
  DephasingSweep out;
  const auto crit = detail::parallel_map(sizes.size(), threads, [&](std::size_t i) {
    return locate_critical(family(sizes[i]), bracket(sizes[i]), kScalingTolerance).theta_c;
  });
  out.rows = detail::parallel_map(sizes.size() * gammas.size(), threads, [&](std::size_t i) {
    const std::size_t li = i / gammas.size();
    return dephasing_point(family(sizes[li]), crit[li], gammas[i % gammas.size()], cfg);
  });
  for (double g : gammas) {
    std::vector<ScalingPoint> pts;
    for (const auto& r : out.rows)
      if (r.gamma == g && r.qfi > 0.0) pts.push_back({static_cast<double>(r.size), r.qfi});
    if (pts.size() >= kMinFitPoints) out.size_fits.emplace(g, fit_scaling(pts, FitKind::Exponential));
  }
  for (int l : sizes) {
    std::vector<ScalingPoint> pts;
    for (const auto& r : out.rows)
      if (r.size == l && r.gamma > 0.0 && r.qfi > 0.0) pts.push_back({r.gamma, r.qfi});
    if (pts.size() >= kMinFitPoints) out.decay_fits.emplace(l, fit_scaling(pts, FitKind::Algebraic));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Adaptive estimation

struct ProbeSize {
  double l_opt;
  double f_max;
};

/// Size maximizing the Grover QFI at detuning epsilon from criticality, and that maximum.
inline ProbeSize optimal_probe_size(double epsilon_det) {
  detail::require(epsilon_det > 0.0 && epsilon_det < 2.0, "detuning must lie in (0, 2)");
  const double e = epsilon_det;
  return {std::log2((2.0 * (e - 2.0) * e + 4.0) / (e * e)), 1.0 / (4.0 * (e - 2.0) * (e - 2.0) * e * e)};
}

struct AdaptiveRound {
  int iteration = 0;
  double theta_est = 0.0;
  double epsilon_det = 0.0;
  int probe_size = 0;
  double control_field = 0.0;
  long long shots = 0;
  /// Cramer-Rao bound of the round's measurement (CFI at the estimate).
  double cramer_rao = 0.0;
  bool flagged = false;
};

struct AdaptiveOptions {
  int max_probe_size = 60;
  int grid_points = 401;
  /// Starting estimate; drawn uniformly within epsilon0 / 2 of theta_true when unset.
  std::optional<double> theta_est0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Independent generator for stream `index` of a run seeded with `seed`.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x5851F42D4C957F2Dull)));
}

inline std::vector<double> ground_probabilities(const ModelSpec& spec, const MeasurementBasis& basis, double theta) {
  const auto split = build_h_split(spec);
  return outcome_probabilities(PureState{ground_state(split, theta).cast<Complex>(), split.h1.basis()}, basis);
}

/// Multinomial draw by sequential binomials.
inline std::vector<long long> sample_counts(const std::vector<double>& p, long long shots, std::mt19937_64& rng) {
  std::vector<long long> counts(p.size(), 0);
  long long left = shots;
  double mass = 1.0;
  for (std::size_t i = 0; i + 1 < p.size() && left > 0; ++i) {
    const double q = mass > 0.0 ? std::clamp(p[i] / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<long long> draw(left, q);
    counts[i] = draw(rng);
    left -= counts[i];
    mass -= p[i];
  }
  if (!p.empty()) counts.back() += left;
  return counts;
}

}  // namespace detail

/// Two-step loop per round: recentre at theta_c with a control field, pick the
/// probe size for the current uncertainty, measure, update by grid maximum
/// likelihood. Rounds record the state *before* the update; the returned list
/// has rounds + 1 entries, the last holding the final estimate.
inline std::vector<AdaptiveRound> adaptive_estimate(const ModelFamily& family, double theta_true, double epsilon0,
                                                    int rounds, long long shots_per_round, std::uint64_t seed,
                                                    double theta_c = 1.0, const AdaptiveOptions& opt = {}) {
  detail::require(theta_true > 0.0, "theta_true must be positive");
  detail::require(epsilon0 > 0.0 && epsilon0 < std::min(theta_true, 2.0), "epsilon0 must lie in (0, min(theta, 2))");
  detail::require(rounds >= 0, "rounds must be non-negative");
  detail::require(shots_per_round >= 0, "shots must be non-negative");
  detail::require(opt.grid_points >= 3, "likelihood grid needs at least three points");

  double theta_est;
  if (opt.theta_est0) {
    theta_est = *opt.theta_est0;
  } else {
    auto rng = detail::stream(seed, 0);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    theta_est = theta_true + epsilon0 * u(rng);
  }
  double eps = epsilon0;
  std::vector<AdaptiveRound> out;

  for (int n = 0; n < rounds; ++n) {
    AdaptiveRound r;
    r.iteration = n;
    r.theta_est = theta_est;
    r.epsilon_det = eps;
    r.shots = shots_per_round;
    r.control_field = theta_c - theta_est;
    r.probe_size = std::max(1, static_cast<int>(std::floor(optimal_probe_size(std::min(eps, 1.999)).l_opt)));
    if (r.probe_size > opt.max_probe_size) break;

    const auto spec = family(r.probe_size);
    const auto basis = optimal_measurement(spec);
    const auto split = build_h_split(spec);
    const double theta_eff_true = theta_true + r.control_field;
    const auto cfi_at_est = cfi_ground(split, basis, theta_c, default_delta(theta_c) * std::min(1.0, eps));
    r.cramer_rao = cramer_rao(cfi_at_est, std::max<long long>(shots_per_round, 1));
    out.push_back(r);
    if (shots_per_round == 0) continue;

    auto rng = detail::stream(seed, static_cast<std::uint64_t>(n) + 1);
    const auto counts = detail::sample_counts(detail::ground_probabilities(spec, basis, theta_eff_true),
                                              shots_per_round, rng);

    const int g = opt.grid_points;
    const double lo = theta_est - 2.0 * eps, width = 4.0 * eps;
    std::vector<double> grid(static_cast<std::size_t>(g)), loglik(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
      grid[static_cast<std::size_t>(i)] = lo + width * i / (g - 1);
      const auto p = detail::ground_probabilities(spec, basis, grid[static_cast<std::size_t>(i)] + r.control_field);
      double ll = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k)
        if (counts[k] > 0) ll += static_cast<double>(counts[k]) * std::log(std::max(p[k], 1e-300));
      loglik[static_cast<std::size_t>(i)] = ll;
    }
    const double top = *std::max_element(loglik.begin(), loglik.end());
    const double bottom = *std::min_element(loglik.begin(), loglik.end());
    if (top - bottom < 1e-12 * std::max(1.0, std::abs(top))) {
      out.back().flagged = true;
      continue;
    }
    // Ties go to the point nearest the grid centre.
    int best = -1;
    for (int i = 0; i < g; ++i) {
      if (loglik[static_cast<std::size_t>(i)] != top) continue;
      if (best < 0 || std::abs(i - (g - 1) / 2) < std::abs(best - (g - 1) / 2)) best = i;
    }
    const double h = width / (g - 1);
    // Observed information from the curvature of the log-likelihood.
    double se = eps;
    if (best > 0 && best < g - 1) {
      const auto b = static_cast<std::size_t>(best);
      const double curv = -(loglik[b + 1] - 2.0 * loglik[b] + loglik[b - 1]) / (h * h);
      if (curv > 0.0) se = 1.0 / std::sqrt(curv);
    }
    theta_est = grid[static_cast<std::size_t>(best)];
    const auto f_est =
        cfi_ground(split, basis, theta_est + r.control_field, default_delta(theta_c) * std::min(1.0, eps));
    eps = std::max({se, cramer_rao(f_est, shots_per_round), h});
  }
  AdaptiveRound last;
  last.iteration = static_cast<int>(out.size());
  last.theta_est = theta_est;
  last.epsilon_det = eps;
  last.control_field = theta_c - theta_est;
  out.push_back(last);
  return out;
}

}  // namespace critsense

#endif  // CRITSENSE_EXPERIMENTS_HPP
