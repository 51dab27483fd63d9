#ifndef CRITSENSE_COLLECTIVE_DEPHASING_HPP
#define CRITSENSE_COLLECTIVE_DEPHASING_HPP

// Local sigma^z dephasing of N spins restricted to permutation-invariant
// density matrices. Such a state is a direct sum over total spin j,
//   rho = sum_j rho_j (x) 1_{d_j},
// and sum_n sigma^z_n rho sigma^z_n couples block j only to j - 1, j, j + 1
// at fixed (m, m'). The coefficients below follow from coupling N - 1 spins
// of spin j1 with one extra spin-1/2.

#include "critsense/common.hpp"

#include <cmath>
#include <cstdint>

namespace critsense::dephasing {

/// Twice a (half-)integer spin, so that j = two_j / 2 stays exact.
using TwoJ = int;

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

/// Number of copies of total spin j among N spin-1/2 particles.
inline double multiplicity(int n, TwoJ two_j) {
  if (two_j < 0 || two_j > n || (n - two_j) % 2 != 0) return 0.0;
  const int k = (n - two_j) / 2;
  return binomial(n, k) - binomial(n, k - 1);
}

/// <j1, m - sigma; 1/2, sigma | j, m> (Condon-Shortley), j = j1 +- 1/2.
/// Arguments are doubled: two_m = 2m, two_sigma = +-1.
inline double clebsch_half(TwoJ two_j1, TwoJ two_j, int two_m, int two_sigma) {
  if (std::abs(two_m - two_sigma) > two_j1) return 0.0;
  const double j1 = 0.5 * two_j1, m = 0.5 * two_m;
  const double den = 2.0 * j1 + 1.0;
  if (two_j == two_j1 + 1)
    return two_sigma > 0 ? std::sqrt((j1 + m + 0.5) / den) : std::sqrt((j1 - m + 0.5) / den);
  return two_sigma > 0 ? -std::sqrt((j1 - m + 0.5) / den) : std::sqrt((j1 + m + 0.5) / den);
}

inline double sigma_z_overlap(TwoJ two_j1, TwoJ two_j, TwoJ two_jp, int two_m) {
  double a = 0.0;
  for (int two_sigma : {1, -1})
    a += two_sigma * clebsch_half(two_j1, two_jp, two_m, two_sigma) * clebsch_half(two_j1, two_j, two_m, two_sigma);
  return a;
}

/// Coefficient c with sum_n sigma^z_n E^j_{m m'} sigma^z_n = sum_{j'} c E^{j'}_{m m'},
/// where E^j_{m m'} = sum_alpha |j m alpha><j m' alpha|.
inline double transfer(int n, TwoJ two_j, TwoJ two_jp, int two_m, int two_mp) {
  if (std::abs(two_j - two_jp) > 2) return 0.0;
  if (std::abs(two_m) > two_j || std::abs(two_mp) > two_j) return 0.0;
  if (std::abs(two_m) > two_jp || std::abs(two_mp) > two_jp) return 0.0;
  double total = 0.0;
  for (TwoJ two_j1 : {two_j - 1, two_j + 1}) {
    if (two_j1 < 0 || two_j1 > n - 1) continue;
    if (std::abs(two_j1 - two_jp) != 1) continue;
    total += multiplicity(n - 1, two_j1) * sigma_z_overlap(two_j1, two_j, two_jp, two_m) *
             sigma_z_overlap(two_j1, two_j, two_jp, two_mp);
  }
  return n * total / multiplicity(n, two_jp);
}

}  // namespace critsense::dephasing

#endif  // CRITSENSE_COLLECTIVE_DEPHASING_HPP
