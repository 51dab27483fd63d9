#ifndef CRITSENSE_PRESETS_HPP
#define CRITSENSE_PRESETS_HPP

// Named model configurations with their critical-point windows and fit regimes.

#include "critsense/common.hpp"
#include "critsense/dynamics.hpp"
#include "critsense/experiments.hpp"
#include "critsense/models.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace critsense {

struct Preset {
  std::string name;
  std::string description;
  ModelFamily family;
  BracketRule bracket;
  double theta_c_hint = 1.0;
  FitKind gap_fit = FitKind::Exponential;
  FitKind qfi_fit = FitKind::Exponential;
  std::vector<int> default_sizes;
  NoiseOperators noise = NoiseOperators::LocalZ;
  /// Sizes must be odd (biclique parts differ by one).
  bool odd_sizes_only = false;
};

/// Splits an odd total into parts (L+1)/2 and (L-1)/2.
inline std::pair<int, int> biclique_parts(int total) {
  detail::require(total >= 3 && total % 2 == 1, "biclique sizes must be odd and at least 3");
  return {(total + 1) / 2, (total - 1) / 2};
}

inline std::vector<Preset> presets() {
  std::vector<Preset> out;
  out.push_back({"grover", "Grover search, marked-state projector; theta_c = 1",
                 [](int l) -> ModelSpec { return Grover{l}; },
                 [](int) { return std::pair{0.5, 1.5}; }, 1.0, FitKind::Exponential, FitKind::Exponential,
                 {6, 10, 14, 18, 22, 26}, NoiseOperators::GroverCollective});
  out.push_back({"pspin-first", "p-spin p=3, k=1, lambda=1 (first order)",
                 [](int l) -> ModelSpec { return PSpin{l, 3, 1, 1.0}; },
                 [](int) { return std::pair{0.8, 1.8}; }, 1.3, FitKind::ExpLinearPrefactor, FitKind::Exponential,
                 {10, 14, 18, 22, 26, 30}});
  out.push_back({"pspin-second", "p-spin p=5, k=2, lambda=0.1 (second order)",
                 [](int l) -> ModelSpec { return PSpin{l, 5, 2, 0.1}; },
                 [](int) { return std::pair{1.0, 3.0}; }, 1.8, FitKind::Algebraic, FitKind::Algebraic,
                 {10, 14, 18, 22, 26, 30}});
  out.push_back({"biclique-scaling", "biclique J=1, W_A=0.49, W_B=0.5",
                 [](int l) -> ModelSpec {
                   const auto [a, b] = biclique_parts(l);
                   return Biclique{a, b, 1.0, 0.49, 0.5};
                 },
                 [](int) { return std::pair{0.01, 0.3}; }, 0.05, FitKind::Exponential, FitKind::Exponential,
                 {5, 7, 9, 11, 13}, NoiseOperators::LocalZ, true});
  // The critical dip drifts to larger theta with size; beyond L = 7 it is a
  // shallow local minimum, so the window follows it.
  out.push_back({"biclique-dynamics", "biclique J=1, W_A=4, W_B=3.5",
                 [](int l) -> ModelSpec {
                   const auto [a, b] = biclique_parts(l);
                   return Biclique{a, b, 1.0, 4.0, 3.5};
                 },
                 [](int l) { return std::pair{0.5 + 0.25 * std::max(0, l - 5), 4.0}; }, 1.4,
                 FitKind::Exponential, FitKind::Exponential, {5, 7, 9, 11}, NoiseOperators::LocalZ, true});
  return out;
}

inline Preset find_preset(const std::string& name) {
  for (auto& p : presets())
    if (p.name == name) return p;
  throw InvalidArgument("unknown preset '" + name + "'");
}

}  // namespace critsense

#endif  // CRITSENSE_PRESETS_HPP
