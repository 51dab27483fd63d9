#ifndef CRITSENSE_RUNNER_HPP
#define CRITSENSE_RUNNER_HPP

// Config-driven experiment dispatch used by the command-line tool.

#include "critsense/common.hpp"
#include "critsense/dynamics.hpp"
#include "critsense/experiments.hpp"
#include "critsense/io.hpp"
#include "critsense/metrology.hpp"
#include "critsense/presets.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace critsense {

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"gap-scan",        "qfi-scan",  "scaling",  "adiabatic",
                                              "prepare-unknown", "dephasing", "adaptive", "prep-time"};
  return names;
}

struct ThetaGrid {
  double min = 0.0;
  double max = 0.0;
  int points = 0;

  std::vector<double> values() const {
    if (points == 1) return {min};
    std::vector<double> v;
    for (int i = 0; i < points; ++i) v.push_back(min + (max - min) * i / (points - 1));
    return v;
  }
};

struct RunConfig {
  std::string experiment;
  /// Preset name, or the model name of an inline spec.
  std::string label;
  Preset preset;
  std::optional<Json> inline_model;
  std::vector<int> sizes;
  ThetaGrid theta;
  std::optional<std::pair<double, double>> bracket;
  double epsilon = 0.1;
  Numerator numerator = Numerator::AppendixBound;
  double delta = 0.0;
  std::vector<double> gammas;
  LindbladBackend backend = LindbladBackend::Auto;
  std::vector<double> theta_true;
  bool use_offset = false;
  double epsilon0 = 0.2;
  int rounds = 4;
  long long shots = 10000;
  int seeds = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  std::size_t skip = 2;
  double beta_tolerance = 0.25;
  std::string out = ".";

  BracketRule bracket_rule() const {
    if (bracket) {
      const auto b = *bracket;
      return [b](int) { return b; };
    }
    return preset.bracket;
  }
};

struct RunOutput {
  CsvTable table{{"empty"}};
  Json manifest;
  std::string summary;
  /// File stem: <label>_<experiment>.
  std::string stem;
};

namespace detail {

inline std::vector<int> int_list(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  detail::require(j.at(key).is_array(), std::string("'") + key + "' must be an array");
  std::vector<int> v;
  for (const auto& x : j.at(key)) {
    detail::require(x.is_number_integer(), std::string("'") + key + "' must hold integers");
    v.push_back(x.get<int>());
  }
  return v;
}

inline std::vector<double> real_list(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  const auto& a = j.at(key);
  if (a.is_number()) return {a.get<double>()};
  detail::require(a.is_array(), std::string("'") + key + "' must be a number or an array");
  std::vector<double> v;
  for (const auto& x : a) {
    detail::require(x.is_number(), std::string("'") + key + "' must hold numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

inline Numerator parse_numerator(const std::string& s) {
  if (s == "appendix-bound") return Numerator::AppendixBound;
  if (s == "exact" || s == "exact-matrix-element") return Numerator::ExactMatrixElement;
  throw InvalidArgument("unknown numerator '" + s + "'");
}

inline LindbladBackend parse_backend(const std::string& s) {
  if (s == "auto") return LindbladBackend::Auto;
  if (s == "two-level") return LindbladBackend::TwoLevel;
  if (s == "collective") return LindbladBackend::CollectiveBlocks;
  if (s == "full") return LindbladBackend::FullSpace;
  throw InvalidArgument("unknown backend '" + s + "'");
}

inline std::string to_string(LindbladBackend b) {
  switch (b) {
    case LindbladBackend::Auto: return "auto";
    case LindbladBackend::TwoLevel: return "two-level";
    case LindbladBackend::CollectiveBlocks: return "collective";
    case LindbladBackend::FullSpace: return "full";
  }
  return "unknown";
}

/// Family for an inline spec: the total size L replaces the spec's own size.
inline Preset inline_preset(const ModelSpec& spec) {
  Preset p;
  p.name = model_name(spec);
  p.description = "inline model";
  p.family = [spec](int l) -> ModelSpec {
    ModelSpec out = spec;
    if (auto* g = std::get_if<Grover>(&out)) g->qubits = l;
    if (auto* m = std::get_if<PSpin>(&out)) m->qubits = l;
    if (auto* b = std::get_if<Biclique>(&out)) std::tie(b->size_a, b->size_b) = biclique_parts(l);
    validate(out);
    return out;
  };
  const auto br = suggested_bracket(spec);
  p.bracket = [br](int) { return br; };
  p.theta_c_hint = 0.5 * (br.first + br.second);
  p.default_sizes = {total_qubits(spec)};
  p.odd_sizes_only = std::holds_alternative<Biclique>(spec);
  p.noise = std::holds_alternative<Grover>(spec) ? NoiseOperators::GroverCollective : NoiseOperators::LocalZ;
  if (const auto* m = std::get_if<PSpin>(&spec)) {
    // lambda < 1 with k > 1 is the second-order regime.
    const bool second = m->lambda < 1.0 && m->k > 1;
    p.gap_fit = second ? FitKind::Algebraic : FitKind::ExpLinearPrefactor;
    p.qfi_fit = second ? FitKind::Algebraic : FitKind::Exponential;
  }
  return p;
}

}  // namespace detail

/// Resolves a config document. `experiment` (the subcommand) must agree with
/// the document's own "experiment" field when both are present.
inline RunConfig parse_config(const Json& j, const std::string& experiment) {
  detail::require(j.is_object(), "config must be a JSON object");
  RunConfig c;
  c.experiment = experiment;
  if (j.contains("experiment")) {
    const auto e = detail::field<std::string>(j, "experiment", "");
    detail::require(c.experiment.empty() || e == c.experiment,
                    "config experiment '" + e + "' differs from subcommand '" + c.experiment + "'");
    c.experiment = e;
  }
  const auto& names = experiment_names();
  detail::require(std::find(names.begin(), names.end(), c.experiment) != names.end(),
                  "unknown experiment '" + c.experiment + "'");

  detail::require(!(j.contains("preset") && j.contains("model")), "give either 'preset' or 'model', not both");
  if (j.contains("model")) {
    c.inline_model = j.at("model");
    const auto spec = model_from_json(j.at("model"));
    c.preset = detail::inline_preset(spec);
    c.label = c.preset.name;
  } else {
    c.preset = find_preset(detail::field<std::string>(j, "preset", "grover"));
    c.label = c.preset.name;
  }

  c.sizes = j.contains("sizes") ? detail::int_list(j, "sizes") : c.preset.default_sizes;
  detail::require(!c.sizes.empty(), "size list is empty");
  for (int l : c.sizes) {
    detail::require(l >= 1, "sizes must be positive");
    if (c.preset.odd_sizes_only) detail::require(l % 2 == 1 && l >= 3, "biclique sizes must be odd and >= 3");
  }

  if (j.contains("bracket")) {
    const auto b = detail::real_list(j, "bracket");
    detail::require(b.size() == 2 && b[0] < b[1], "'bracket' must be [low, high] with low < high");
    c.bracket = std::pair{b[0], b[1]};
  }
  Json theta = j.contains("theta") ? j.at("theta") : Json::object();
  detail::require(theta.is_object(), "'theta' must be an object {min, max, points}");
  // Probe preparation without the offset field needs theta >= theta_c.
  const bool probe = c.experiment == "prepare-unknown";
  const auto window = c.bracket ? *c.bracket : c.preset.bracket(c.sizes.front());
  c.theta.min = detail::field(theta, "min", probe ? c.preset.theta_c_hint : window.first);
  c.theta.max = detail::field(theta, "max", probe ? c.preset.theta_c_hint + 0.1 : window.second);
  c.theta.points = detail::field(theta, "points", probe ? 11 : 101);
  detail::require(c.theta.points >= 1, "theta grid needs at least one point");
  detail::require(c.theta.points == 1 || c.theta.min < c.theta.max, "theta.min must be below theta.max");

  c.epsilon = detail::field(j, "epsilon", c.epsilon);
  detail::require(c.epsilon > 0.0 && c.epsilon < 1.0, "epsilon must lie in (0, 1)");
  c.numerator = detail::parse_numerator(detail::field<std::string>(j, "numerator", "appendix-bound"));
  const double default_delta_value = c.experiment == "dephasing" ? 1e-3 : 1e-4;
  c.delta = detail::field(j, "delta", default_delta_value);
  detail::require(c.delta > 0.0, "delta must be positive");

  c.gammas = j.contains("gammas") ? detail::real_list(j, "gammas") : std::vector<double>{0.0, 0.001, 0.01, 0.1};
  detail::require(!c.gammas.empty(), "gamma list is empty");
  for (double g : c.gammas) detail::require(g >= 0.0, "gammas must be non-negative");
  c.backend = detail::parse_backend(detail::field<std::string>(j, "backend", "auto"));

  c.theta_true = j.contains("theta_true") ? detail::real_list(j, "theta_true") : std::vector<double>{};
  c.use_offset = detail::field(j, "use_offset", c.use_offset);
  c.epsilon0 = detail::field(j, "epsilon0", c.epsilon0);
  c.rounds = detail::field(j, "rounds", c.rounds);
  c.shots = detail::field(j, "shots", c.shots);
  c.seeds = detail::field(j, "seeds", c.seeds);
  detail::require(c.rounds >= 0 && c.shots >= 0 && c.seeds >= 1, "rounds, shots and seeds must be non-negative");
  c.seed = detail::field<std::uint64_t>(j, "seed", 0);
  c.threads = detail::field(j, "threads", default_threads());
  detail::require(c.threads >= 1, "threads must be >= 1");
  c.skip = detail::field<std::size_t>(j, "skip", 2);
  c.beta_tolerance = detail::field(j, "beta_tolerance", c.beta_tolerance);
  c.out = detail::field<std::string>(j, "out", ".");
  return c;
}

inline Json resolved_config(const RunConfig& c) {
  Json j;
  j["experiment"] = c.experiment;
  if (c.inline_model)
    j["model"] = *c.inline_model;
  else
    j["preset"] = c.label;
  j["sizes"] = c.sizes;
  j["theta"] = {{"min", c.theta.min}, {"max", c.theta.max}, {"points", c.theta.points}};
  if (c.bracket) j["bracket"] = {c.bracket->first, c.bracket->second};
  j["epsilon"] = c.epsilon;
  j["numerator"] = to_string(c.numerator);
  j["delta"] = c.delta;
  j["gammas"] = c.gammas;
  j["backend"] = detail::to_string(c.backend);
  j["theta_true"] = c.theta_true;
  j["use_offset"] = c.use_offset;
  j["epsilon0"] = c.epsilon0;
  j["rounds"] = c.rounds;
  j["shots"] = c.shots;
  j["seeds"] = c.seeds;
  j["seed"] = c.seed;
  j["skip"] = c.skip;
  j["beta_tolerance"] = c.beta_tolerance;
  return j;
}

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

inline std::optional<ScalingResult> try_fit(const std::vector<ScalingPoint>& pts, FitKind kind, std::size_t skip) {
  std::vector<ScalingPoint> positive;
  for (const auto& p : pts)
    if (p.value > 0.0) positive.push_back(p);
  std::set<double> distinct;
  for (const auto& p : positive) distinct.insert(p.size);
  if (distinct.size() < kMinFitPoints) return std::nullopt;
  return fit_scaling(fit_window(positive, skip), kind);
}

inline Json fit_json(const std::optional<ScalingResult>& r) { return r ? to_json(*r) : Json(nullptr); }

inline RunOutput scan(const RunConfig& c, bool qfi) {
  RunOutput out;
  out.table = CsvTable({"L", "theta", qfi ? "qfi" : "gap"});
  const auto thetas = c.theta.values();
  struct Cell {
    double value;
  };
  const auto cells = parallel_map(c.sizes.size() * thetas.size(), c.threads, [&](std::size_t i) {
    const auto split = build_h_split(c.preset.family(c.sizes[i / thetas.size()]));
    const double t = thetas[i % thetas.size()];
    return Cell{qfi ? qfi_spectral(split, t).value : energy_gap(split, t)};
  });
  double best = qfi ? 0.0 : std::numeric_limits<double>::infinity(), best_theta = thetas.front();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out.table.row() << c.sizes[i / thetas.size()] << thetas[i % thetas.size()] << cells[i].value;
    if (i / thetas.size() + 1 == c.sizes.size() &&
        (qfi ? cells[i].value > best : cells[i].value < best)) {
      best = cells[i].value;
      best_theta = thetas[i % thetas.size()];
    }
  }
  out.summary = std::string(qfi ? "max qfi " : "min gap ") + fmt(best) + " at theta " + fmt(best_theta) +
                " (L=" + std::to_string(c.sizes.back()) + ")";
  out.manifest["result"] = {{qfi ? "max_qfi" : "min_gap", best}, {"theta", best_theta}, {"L", c.sizes.back()}};
  return out;
}

inline RunOutput scaling(const RunConfig& c) {
  RunOutput out;
  out.table = CsvTable({"L", "theta_c", "gap_c", "qfi_c"});
  const auto rows = run_critical_scan(c.preset.family, c.sizes, c.bracket_rule(), kScalingTolerance, c.threads);
  for (const auto& r : rows) out.table.row() << r.size << r.theta_c << r.gap_c << r.qfi_c;
  const auto gap = try_fit(gap_points(rows), c.preset.gap_fit, c.skip);
  const auto qfi = try_fit(qfi_points(rows), c.preset.qfi_fit, c.skip);
  out.manifest["result"]["gap_fit"] = fit_json(gap);
  out.manifest["result"]["qfi_fit"] = fit_json(qfi);
  out.summary = "theta_c " + fmt(rows.back().theta_c) + " (L=" + std::to_string(rows.back().size) + ")";
  if (gap && qfi) {
    const auto rep = check_beta_two_alpha(*gap, *qfi, c.beta_tolerance);
    out.manifest["result"]["beta_two_alpha"] = to_json(rep);
    out.summary += " alpha " + fmt(rep.alpha) + " beta " + fmt(rep.beta) + " beta-alpha " + fmt(rep.figure_of_merit);
  } else {
    out.summary += " (fewer than 4 sizes: no fit)";
  }
  return out;
}

inline RunOutput adiabatic(const RunConfig& c) {
  RunOutput out;
  out.table = CsvTable({"L", "t", "s", "theta", "fidelity", "qfi_evolved", "qfi_ground"});
  struct Track {
    double theta_c;
    double t_total;
    std::vector<TrackPoint> points;
  };
  const auto tracks = parallel_map(c.sizes.size(), c.threads, [&](std::size_t i) {
    const auto spec = c.preset.family(c.sizes[i]);
    const double theta_c = locate_critical(spec, c.bracket_rule()(c.sizes[i]), kScalingTolerance).theta_c;
    const double sc = 1.0 / (1.0 + theta_c);
    const auto schedule = std::holds_alternative<Grover>(spec)
                              ? grover_schedule(c.sizes[i], c.epsilon, sc)
                              : local_adiabatic_schedule(spec, c.epsilon, sc, c.numerator);
    return Track{theta_c, schedule.t_total(),
                 adiabatic_fisher_track(build_h_split(spec), schedule, DriveForm::reparameterized(), c.delta)};
  });
  Json res = Json::array();
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    double min_f = 1.0;
    for (const auto& p : tracks[i].points) {
      out.table.row() << c.sizes[i] << p.t << p.s << p.theta << p.fidelity << p.qfi_evolved << p.qfi_ground;
      min_f = std::min(min_f, p.fidelity);
    }
    const auto& last = tracks[i].points.back();
    res.push_back({{"L", c.sizes[i]},
                   {"theta_c", tracks[i].theta_c},
                   {"t_total", tracks[i].t_total},
                   {"min_fidelity", min_f},
                   {"final_fidelity", last.fidelity},
                   {"qfi_evolved", last.qfi_evolved},
                   {"qfi_ground", last.qfi_ground}});
  }
  out.manifest["result"] = res;
  const auto& last = res.back();
  out.summary = "L=" + std::to_string(c.sizes.back()) + " theta_c " + fmt(last["theta_c"].get<double>()) + " T " +
                fmt(last["t_total"].get<double>()) + " fidelity " + fmt(last["final_fidelity"].get<double>()) +
                " qfi ratio " + fmt(last["qfi_evolved"].get<double>() / last["qfi_ground"].get<double>());
  return out;
}

inline RunOutput prepare_unknown(const RunConfig& c) {
  RunOutput out;
  out.table = CsvTable({"L", "theta_true", "theta_effective", "fidelity", "qfi_prepared", "cfi_prepared",
                        "qfi_ground", "cfi_ground"});
  std::vector<double> thetas = c.theta_true.empty() ? c.theta.values() : c.theta_true;
  ProbeOptions opt;
  opt.numerator = c.numerator;
  std::vector<std::pair<int, double>> tasks;
  for (int l : c.sizes)
    for (double t : thetas) tasks.emplace_back(l, t);
  // Resolve theta_c once per size so tasks do not repeat the search.
  std::map<int, double> theta_c;
  for (int l : c.sizes) {
    const auto spec = c.preset.family(l);
    theta_c[l] = std::holds_alternative<Grover>(spec)
                     ? 1.0
                     : locate_critical(spec, c.bracket_rule()(l), kScalingTolerance).theta_c;
  }
  const auto rows = parallel_map(tasks.size(), c.threads, [&](std::size_t i) {
    ProbeOptions o = opt;
    o.theta_c = theta_c.at(tasks[i].first);
    return probe_fisher(c.preset.family(tasks[i].first), tasks[i].second, c.epsilon, c.use_offset, c.delta, o);
  });
  double min_f = 1.0, worst_q = 0.0, worst_c = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out.table.row() << tasks[i].first << r.theta_true << r.theta_effective << r.fidelity << r.qfi_prepared
                    << r.cfi_prepared << r.qfi_ground << r.cfi_ground;
    min_f = std::min(min_f, r.fidelity);
    worst_q = std::max(worst_q, std::abs(r.qfi_prepared / r.qfi_ground - 1.0));
    worst_c = std::max(worst_c, std::abs(r.cfi_prepared / r.cfi_ground - 1.0));
  }
  out.manifest["result"] = {{"min_fidelity", min_f}, {"max_qfi_deviation", worst_q}, {"max_cfi_deviation", worst_c}};
  out.summary = "min fidelity " + fmt(min_f) + " max |qfi/qfi_ground-1| " + fmt(worst_q) + " max |cfi/cfi_ground-1| " +
                fmt(worst_c);
  return out;
}

inline RunOutput dephasing(const RunConfig& c) {
  RunOutput out;
  out.table = CsvTable({"L", "gamma", "theta_c", "t_total", "qfi", "fidelity", "delta"});
  DephasingConfig cfg;
  cfg.operators = c.preset.noise;
  cfg.backend = c.backend;
  cfg.epsilon = c.epsilon;
  cfg.numerator = c.numerator;
  cfg.delta = c.delta;
  const auto sweep = run_dephasing_sweep(c.preset.family, c.sizes, c.gammas, c.bracket_rule(), cfg, c.threads);
  for (const auto& r : sweep.rows)
    out.table.row() << r.size << r.gamma << r.theta_c << r.t_total << r.qfi << r.fidelity << r.delta;
  Json size_fits = Json::array(), decay_fits = Json::array();
  for (const auto& [g, f] : sweep.size_fits) size_fits.push_back({{"gamma", g}, {"fit", to_json(f)}});
  for (const auto& [l, f] : sweep.decay_fits) decay_fits.push_back({{"L", l}, {"fit", to_json(f)}});
  out.manifest["result"] = {{"size_fits", size_fits}, {"decay_fits", decay_fits}};
  out.summary = std::to_string(sweep.rows.size()) + " points";
  for (const auto& [l, f] : sweep.decay_fits)
    out.summary += " decay exponent L=" + std::to_string(l) + " " + fmt(f.rate());
  for (const auto& [g, f] : sweep.size_fits) out.summary += " growth gamma=" + fmt(g) + " " + fmt(f.exponent);
  return out;
}

inline RunOutput adaptive(const RunConfig& c) {
  RunOutput out;
  out.table = CsvTable({"seed", "iteration", "theta_est", "epsilon_det", "probe_size", "control_field", "shots",
                        "cramer_rao", "flagged"});
  const double theta_true = c.theta_true.empty() ? c.preset.theta_c_hint + 0.05 : c.theta_true.front();
  const auto runs = parallel_map(static_cast<std::size_t>(c.seeds), c.threads, [&](std::size_t i) {
    return adaptive_estimate(c.preset.family, theta_true, c.epsilon0, c.rounds, c.shots, c.seed + i,
                             c.preset.theta_c_hint);
  });
  std::vector<double> final_eps;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (const auto& r : runs[i])
      out.table.row() << static_cast<long long>(c.seed + i) << r.iteration << r.theta_est << r.epsilon_det
                      << r.probe_size << r.control_field << r.shots << r.cramer_rao << r.flagged;
    final_eps.push_back(runs[i].back().epsilon_det);
  }
  std::sort(final_eps.begin(), final_eps.end());
  const double median = final_eps[final_eps.size() / 2];
  const auto opt = optimal_probe_size(std::min(c.epsilon0, 1.999));
  out.manifest["result"] = {{"median_final_epsilon", median},
                            {"shrink_factor", c.epsilon0 / median},
                            {"initial_probe", {{"l_opt", opt.l_opt}, {"f_max", opt.f_max}}}};
  out.summary = "median final epsilon " + fmt(median) + " (shrink " + fmt(c.epsilon0 / median) + "x over " +
                std::to_string(c.rounds) + " rounds, " + std::to_string(c.seeds) + " seeds)";
  return out;
}

inline RunOutput prep_time(const RunConfig& c) {
  RunOutput out;
  out.table = CsvTable({"L", "theta_c", "s_c", "t_total"});
  const auto rows = run_preparation_times(c.preset.family, c.sizes, c.bracket_rule(), c.epsilon, c.numerator, c.threads);
  std::vector<ScalingPoint> pts;
  for (const auto& r : rows) {
    out.table.row() << r.size << r.theta_c << r.s_c << r.t_total;
    pts.push_back({static_cast<double>(r.size), r.t_total});
  }
  const auto fit = try_fit(pts, FitKind::Exponential, c.skip);
  out.manifest["result"] = {{"time_fit", fit_json(fit)}};
  out.summary = "T " + fmt(rows.back().t_total) + " at L=" + std::to_string(rows.back().size);
  if (fit) out.summary += " exponent " + fmt(fit->exponent) + " r2 " + fmt(fit->r_squared);
  return out;
}

}  // namespace detail

/// Runs one experiment. Artifacts are returned, not written.
inline RunOutput run(const RunConfig& c) {
  RunOutput out;
  if (c.experiment == "gap-scan") out = detail::scan(c, false);
  else if (c.experiment == "qfi-scan") out = detail::scan(c, true);
  else if (c.experiment == "scaling") out = detail::scaling(c);
  else if (c.experiment == "adiabatic") out = detail::adiabatic(c);
  else if (c.experiment == "prepare-unknown") out = detail::prepare_unknown(c);
  else if (c.experiment == "dephasing") out = detail::dephasing(c);
  else if (c.experiment == "adaptive") out = detail::adaptive(c);
  else if (c.experiment == "prep-time") out = detail::prep_time(c);
  else throw InvalidArgument("unknown experiment '" + c.experiment + "'");
  out.stem = c.label + "_" + c.experiment;
  Json m;
  m["config"] = resolved_config(c);
  m["csv"] = out.stem + ".csv";
  m["columns"] = out.table.columns();
  m["rows"] = out.table.size();
  m["result"] = out.manifest.contains("result") ? out.manifest["result"] : Json(nullptr);
  m["summary"] = out.summary;
  out.manifest = std::move(m);
  return out;
}

inline CsvTable preset_table() {
  CsvTable t({"name", "theta_c_hint", "gap_fit", "qfi_fit", "noise", "description"});
  for (const auto& p : presets())
    t.row() << p.name << p.theta_c_hint << to_string(p.gap_fit) << to_string(p.qfi_fit) << to_string(p.noise)
            << p.description;
  return t;
}

}  // namespace critsense

#endif  // CRITSENSE_RUNNER_HPP
