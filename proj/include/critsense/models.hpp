#ifndef CRITSENSE_MODELS_HPP
#define CRITSENSE_MODELS_HPP

// Hamiltonians H(theta) = H1 + theta * H2 for the Grover, p-spin and
// biclique models, in symmetry-reduced bases and in the full
// computational basis.

#include "critsense/common.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace critsense {

/// L qubits with one marked configuration; Hilbert dimension 2^L.
struct Grover {
  int qubits = 1;
};

/// p-spin model with an optional transverse fluctuation term of order k.
struct PSpin {
  int qubits = 1;
  int p = 3;
  int k = 1;
  double lambda = 1.0;
};

/// Complete bipartite Ising graph between parts A and B with part-dependent
/// longitudinal fields derived from the weights.
struct Biclique {
  int size_a = 3;
  int size_b = 2;
  double coupling = 1.0;
  double weight_a = 0.49;
  double weight_b = 0.5;

  int total() const { return size_a + size_b; }
  double field_a() const { return size_b * coupling - 2.0 * weight_a / size_a; }
  double field_b() const { return size_a * coupling - 2.0 * weight_b / size_b; }
};

using ModelSpec = std::variant<Grover, PSpin, Biclique>;

enum class BasisKind { EffectiveTwoLevel, CollectiveSpin, BipartiteCollective, FullComputational };

inline std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::EffectiveTwoLevel: return "effective-two-level";
    case BasisKind::CollectiveSpin: return "collective-spin";
    case BasisKind::BipartiteCollective: return "bipartite-collective";
    case BasisKind::FullComputational: return "full-computational";
  }
  return "unknown";
}

inline std::string model_name(const ModelSpec& spec) {
  struct {
    std::string operator()(const Grover&) const { return "grover"; }
    std::string operator()(const PSpin&) const { return "pspin"; }
    std::string operator()(const Biclique&) const { return "biclique"; }
  } visitor;
  return std::visit(visitor, spec);
}

inline int total_qubits(const ModelSpec& spec) {
  struct {
    int operator()(const Grover& g) const { return g.qubits; }
    int operator()(const PSpin& m) const { return m.qubits; }
    int operator()(const Biclique& b) const { return b.total(); }
  } visitor;
  return std::visit(visitor, spec);
}

inline void validate(const ModelSpec& spec) {
  using detail::require;
  if (const auto* g = std::get_if<Grover>(&spec)) {
    require(g->qubits >= 1, "grover: qubit count must be >= 1");
    require(g->qubits <= 62, "grover: qubit count must be <= 62");
  } else if (const auto* m = std::get_if<PSpin>(&spec)) {
    require(m->qubits >= 1, "pspin: qubit count must be >= 1");
    require(m->p >= 3 && m->p % 2 == 1, "pspin: p must be an odd integer >= 3");
    require(m->k >= 1, "pspin: k must be >= 1");
    require(m->lambda >= 0.0 && m->lambda <= 1.0, "pspin: lambda must lie in [0, 1]");
  } else {
    const auto& b = std::get<Biclique>(spec);
    require(b.size_a >= 2, "biclique: L_A must be >= 2");
    require(b.size_a == b.size_b + 1, "biclique: L_A must equal L_B + 1");
  }
}

/// Symmetry-reduced basis used by default for a model.
inline BasisKind reduced_basis(const ModelSpec& spec) {
  if (std::holds_alternative<Grover>(spec)) return BasisKind::EffectiveTwoLevel;
  if (std::holds_alternative<PSpin>(spec)) return BasisKind::CollectiveSpin;
  return BasisKind::BipartiteCollective;
}

/// Quantum numbers attached to one basis state. For collective bases these are
/// the spin projections m (of part A and part B for the bipartite basis); for
/// the two-level Grover basis `m_a` is 0 for |m> and 1 for |m_perp>; in the
/// full computational basis they are the magnetization projections of the
/// bitstring (sum sigma^z / 2 over A and B, or over all spins in `m_a`).
struct QuantumNumbers {
  double m_a = 0.0;
  double m_b = 0.0;
};

/// Real symmetric matrix in a declared basis. Stored dense up to
/// `kDenseLimit` states and as compressed rows above.
class HamiltonianRep {
 public:
  static constexpr Eigen::Index kDenseLimit = 64;

  HamiltonianRep() = default;

  HamiltonianRep(BasisKind basis, const RealMatrix& matrix, std::vector<QuantumNumbers> labels)
      : basis_(basis), dim_(matrix.rows()), labels_(std::move(labels)) {
    detail::require(matrix.rows() == matrix.cols(), "hamiltonian must be square");
    if (dim_ <= kDenseLimit) {
      dense_ = matrix;
    } else {
      sparse_ = matrix.sparseView(0.0, 0.0);
      sparse_.makeCompressed();
      is_sparse_ = true;
    }
  }

  HamiltonianRep(BasisKind basis, SparseRowMatrix matrix, std::vector<QuantumNumbers> labels)
      : basis_(basis), dim_(matrix.rows()), labels_(std::move(labels)) {
    detail::require(matrix.rows() == matrix.cols(), "hamiltonian must be square");
    if (dim_ <= kDenseLimit) {
      dense_ = RealMatrix(matrix);
    } else {
      sparse_ = std::move(matrix);
      sparse_.makeCompressed();
      is_sparse_ = true;
    }
  }

  BasisKind basis() const { return basis_; }
  Eigen::Index dim() const { return dim_; }
  bool is_sparse() const { return is_sparse_; }
  const std::vector<QuantumNumbers>& labels() const { return labels_; }

  const RealMatrix& dense() const { return dense_; }
  const SparseRowMatrix& sparse() const { return sparse_; }

  RealMatrix to_dense() const { return is_sparse_ ? RealMatrix(sparse_) : dense_; }

  SparseRowMatrix to_sparse() const {
    if (is_sparse_) return sparse_;
    SparseRowMatrix s = dense_.sparseView(0.0, 0.0);
    s.makeCompressed();
    return s;
  }

  template <typename Vector>
  Vector apply(const Vector& v) const {
    if (is_sparse_) return sparse_ * v;
    return dense_ * v;
  }

  /// a * this + b * other, in the same basis and storage class.
  HamiltonianRep combine(double a, const HamiltonianRep& other, double b) const {
    detail::require(other.basis_ == basis_ && other.dim_ == dim_, "cannot combine hamiltonians of different bases");
    HamiltonianRep out;
    out.basis_ = basis_;
    out.dim_ = dim_;
    out.labels_ = labels_;
    out.is_sparse_ = is_sparse_;
    if (is_sparse_) {
      out.sparse_ = a * sparse_ + b * other.sparse_;
      out.sparse_.makeCompressed();
    } else {
      out.dense_ = a * dense_ + b * other.dense_;
    }
    return out;
  }

  /// Maximum absolute row sum (the induced infinity norm).
  double max_row_sum() const {
    if (!is_sparse_) return dense_.cwiseAbs().rowwise().sum().maxCoeff();
    double best = 0.0;
    for (Eigen::Index r = 0; r < sparse_.outerSize(); ++r) {
      double acc = 0.0;
      for (SparseRowMatrix::InnerIterator it(sparse_, r); it; ++it) acc += std::abs(it.value());
      best = std::max(best, acc);
    }
    return best;
  }

  /// max |H_ij - H_ji| relative to max |H_ij|.
  double relative_asymmetry() const {
    const RealMatrix d = to_dense();
    const double scale = std::max(d.cwiseAbs().maxCoeff(), 1e-300);
    return (d - d.transpose()).cwiseAbs().maxCoeff() / scale;
  }

 private:
  BasisKind basis_ = BasisKind::EffectiveTwoLevel;
  Eigen::Index dim_ = 0;
  std::vector<QuantumNumbers> labels_;
  bool is_sparse_ = false;
  RealMatrix dense_;
  SparseRowMatrix sparse_;
};

struct HamiltonianSplit {
  HamiltonianRep h1;
  HamiltonianRep h2;
};

/// Projective measurement that is diagonal in its basis. Each outcome is a
/// 0/1 mask over basis states; `projector(n)` materializes the matrix.
struct MeasurementBasis {
  BasisKind basis = BasisKind::EffectiveTwoLevel;
  std::vector<RealVector> masks;
  std::vector<double> labels;

  std::size_t size() const { return masks.size(); }

  RealMatrix projector(std::size_t n) const { return masks.at(n).asDiagonal(); }

  /// Single outcome spanning the whole space; carries no information.
  static MeasurementBasis trivial(BasisKind basis, Eigen::Index dim) {
    return MeasurementBasis{basis, {RealVector::Ones(dim)}, {0.0}};
  }
};

namespace detail {

/// Collective operators of spin j = n/2 in the Dicke basis |j, m>, index i
/// carrying m = j - i (index 0 is the fully polarized "all up" state).
struct CollectiveOps {
  RealVector sz;  // diagonal of 2 J_z = sum sigma^z
  RealMatrix sx;  // J_+ + J_- = sum sigma^x
};

inline CollectiveOps collective_ops(int spins) {
  const double j = 0.5 * spins;
  const int dim = spins + 1;
  CollectiveOps ops{RealVector(dim), RealMatrix::Zero(dim, dim)};
  for (int i = 0; i < dim; ++i) {
    const double m = j - i;
    ops.sz(i) = 2.0 * m;
    if (i + 1 < dim) {
      // <j, m-1 | J_- | j, m> = sqrt(j(j+1) - m(m-1))
      const double amp = std::sqrt(j * (j + 1.0) - m * (m - 1.0));
      ops.sx(i + 1, i) = amp;
      ops.sx(i, i + 1) = amp;
    }
  }
  return ops;
}

inline RealMatrix matrix_power(const RealMatrix& m, int k) {
  RealMatrix out = RealMatrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

inline double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

inline std::vector<QuantumNumbers> collective_labels(int spins) {
  std::vector<QuantumNumbers> labels(spins + 1);
  for (int i = 0; i <= spins; ++i) labels[i] = {0.5 * spins - i, 0.0};
  return labels;
}

inline std::vector<QuantumNumbers> bipartite_labels(int na, int nb) {
  std::vector<QuantumNumbers> labels;
  labels.reserve(static_cast<std::size_t>((na + 1) * (nb + 1)));
  for (int ia = 0; ia <= na; ++ia)
    for (int ib = 0; ib <= nb; ++ib) labels.push_back({0.5 * na - ia, 0.5 * nb - ib});
  return labels;
}

inline RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline HamiltonianSplit grover_two_level(const Grover& g) {
  const double n = std::ldexp(1.0, g.qubits);
  const double a = 1.0 / std::sqrt(n);
  const double b = std::sqrt((n - 1.0) / n);
  RealMatrix h1 = RealMatrix::Zero(2, 2);
  h1(0, 0) = -1.0;
  RealMatrix h2(2, 2);
  h2 << -a * a, -a * b, -a * b, -(n - 1.0) / n;
  std::vector<QuantumNumbers> labels{{0.0, 0.0}, {1.0, 0.0}};
  return {HamiltonianRep(BasisKind::EffectiveTwoLevel, h1, labels),
          HamiltonianRep(BasisKind::EffectiveTwoLevel, h2, labels)};
}

/// p-spin terms restricted to total spin j = block_spins / 2 of an L-spin
/// system (block_spins = L gives the symmetric sector).
inline std::pair<RealMatrix, RealMatrix> pspin_block(const PSpin& m, int block_spins) {
  const auto ops = collective_ops(block_spins);
  const double l = m.qubits;
  RealMatrix h1 = RealMatrix::Zero(block_spins + 1, block_spins + 1);
  for (int i = 0; i <= block_spins; ++i) h1(i, i) = -m.lambda * std::pow(l, 1 - m.p) * ipow(ops.sz(i), m.p);
  if (m.lambda < 1.0) h1 += (1.0 - m.lambda) * std::pow(l, 1 - m.k) * matrix_power(ops.sx, m.k);
  return {h1, RealMatrix(-ops.sx)};
}

inline HamiltonianSplit pspin_collective(const PSpin& m) {
  auto [h1, h2] = pspin_block(m, m.qubits);
  const auto labels = collective_labels(m.qubits);
  return {HamiltonianRep(BasisKind::CollectiveSpin, h1, labels), HamiltonianRep(BasisKind::CollectiveSpin, h2, labels)};
}

/// Biclique terms on total spins (j_A, j_B) = (spins_a / 2, spins_b / 2);
/// index ia * (spins_b + 1) + ib.
inline std::pair<RealMatrix, RealMatrix> biclique_block(const Biclique& b, int spins_a, int spins_b) {
  const auto a_ops = collective_ops(spins_a);
  const auto b_ops = collective_ops(spins_b);
  const int da = spins_a + 1;
  const int db = spins_b + 1;
  const double ha = b.field_a();
  const double hb = b.field_b();
  RealMatrix h1 = RealMatrix::Zero(da * db, da * db);
  for (int ia = 0; ia < da; ++ia)
    for (int ib = 0; ib < db; ++ib) {
      const double za = a_ops.sz(ia);
      const double zb = b_ops.sz(ib);
      h1(ia * db + ib, ia * db + ib) = b.coupling * za * zb + ha * za + hb * zb;
    }
  RealMatrix h2 = kron(a_ops.sx, RealMatrix::Identity(db, db)) + kron(RealMatrix::Identity(da, da), b_ops.sx);
  return {h1, h2};
}

inline HamiltonianSplit biclique_bipartite(const Biclique& b) {
  auto [h1, h2] = biclique_block(b, b.size_a, b.size_b);
  const auto labels = bipartite_labels(b.size_a, b.size_b);
  return {HamiltonianRep(BasisKind::BipartiteCollective, h1, labels),
          HamiltonianRep(BasisKind::BipartiteCollective, h2, labels)};
}

/// sigma^z eigenvalue of qubit q in computational basis state `index`
/// (bit set means spin down).
inline double z_of(std::uint64_t index, int q) { return (index >> q) & 1u ? -1.0 : 1.0; }

inline SparseRowMatrix full_sum_x(int spins) {
  const std::uint64_t dim = std::uint64_t{1} << spins;
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(dim * spins);
  for (std::uint64_t s = 0; s < dim; ++s)
    for (int q = 0; q < spins; ++q)
      trips.emplace_back(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s ^ (std::uint64_t{1} << q)), 1.0);
  SparseRowMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

inline SparseRowMatrix diagonal_sparse(const RealVector& d) {
  SparseRowMatrix m(d.size(), d.size());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(d.size()));
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (d(i) != 0.0) trips.emplace_back(i, i, d(i));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

inline std::vector<QuantumNumbers> full_labels(const ModelSpec& spec) {
  const int n = total_qubits(spec);
  const int na = std::holds_alternative<Biclique>(spec) ? std::get<Biclique>(spec).size_a : n;
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<QuantumNumbers> labels(dim);
  for (std::uint64_t s = 0; s < dim; ++s) {
    double ma = 0.0, mb = 0.0;
    for (int q = 0; q < n; ++q) (q < na ? ma : mb) += 0.5 * z_of(s, q);
    labels[s] = {ma, mb};
  }
  return labels;
}

}  // namespace detail

/// Maximum total qubit count accepted by the full computational basis.
inline constexpr int kFullSpaceMaxQubits = 14;
/// The Grover full-space projector is dense; it is capped lower.
inline constexpr int kGroverFullSpaceMaxQubits = 12;

/// Split H(theta) = H1 + theta * H2 in the model's reduced basis.
inline HamiltonianSplit build_h_split(const ModelSpec& spec) {
  validate(spec);
  if (const auto* g = std::get_if<Grover>(&spec)) return detail::grover_two_level(*g);
  if (const auto* m = std::get_if<PSpin>(&spec)) return detail::pspin_collective(*m);
  return detail::biclique_bipartite(std::get<Biclique>(spec));
}

/// Split in the full 2^L computational basis (cross-check oracle).
inline HamiltonianSplit build_full_split(const ModelSpec& spec) {
  validate(spec);
  const int n = total_qubits(spec);
  detail::require(n <= kFullSpaceMaxQubits, "full computational basis limited to 14 qubits");
  const std::uint64_t dim = std::uint64_t{1} << n;
  const auto d = static_cast<Eigen::Index>(dim);
  auto labels = detail::full_labels(spec);

  if (std::holds_alternative<Grover>(spec)) {
    detail::require(n <= kGroverFullSpaceMaxQubits, "grover full space limited to 12 qubits (dense projector)");
    // Marked state m = 0.
    RealMatrix h1 = RealMatrix::Zero(d, d);
    h1(0, 0) = -1.0;
    RealMatrix h2 = RealMatrix::Constant(d, d, -1.0 / static_cast<double>(dim));
    return {HamiltonianRep(BasisKind::FullComputational, h1, labels),
            HamiltonianRep(BasisKind::FullComputational, h2, std::move(labels))};
  }

  SparseRowMatrix sum_x = detail::full_sum_x(n);
  RealVector diag(d);
  if (const auto* m = std::get_if<PSpin>(&spec)) {
    const double l = n;
    for (std::uint64_t s = 0; s < dim; ++s) {
      const double z = n - 2.0 * std::popcount(s);
      diag(static_cast<Eigen::Index>(s)) = -m->lambda * std::pow(l, 1 - m->p) * detail::ipow(z, m->p);
    }
    SparseRowMatrix h1 = detail::diagonal_sparse(diag);
    if (m->lambda < 1.0) {
      SparseRowMatrix power = sum_x;
      for (int i = 1; i < m->k; ++i) power = SparseRowMatrix(power * sum_x);
      h1 = h1 + ((1.0 - m->lambda) * std::pow(l, 1 - m->k)) * power;
    }
    return {HamiltonianRep(BasisKind::FullComputational, std::move(h1), labels),
            HamiltonianRep(BasisKind::FullComputational, SparseRowMatrix(-sum_x), std::move(labels))};
  }

  const auto& b = std::get<Biclique>(spec);
  for (std::uint64_t s = 0; s < dim; ++s) {
    double za = 0.0, zb = 0.0;
    for (int q = 0; q < n; ++q) (q < b.size_a ? za : zb) += detail::z_of(s, q);
    diag(static_cast<Eigen::Index>(s)) = b.coupling * za * zb + b.field_a() * za + b.field_b() * zb;
  }
  return {HamiltonianRep(BasisKind::FullComputational, detail::diagonal_sparse(diag), labels),
          HamiltonianRep(BasisKind::FullComputational, std::move(sum_x), std::move(labels))};
}

inline HamiltonianSplit build_split(const ModelSpec& spec, BasisKind basis) {
  if (basis == BasisKind::FullComputational) return build_full_split(spec);
  detail::require(basis == reduced_basis(spec), "basis " + to_string(basis) + " not available for " + model_name(spec));
  return build_h_split(spec);
}

/// H1 + theta * H2 in the reduced basis.
inline HamiltonianRep build_hamiltonian(const ModelSpec& spec, double theta) {
  const auto split = build_h_split(spec);
  return split.h1.combine(1.0, split.h2, theta);
}

/// H1 + theta * H2 in the full computational basis.
inline HamiltonianRep build_full_space(const ModelSpec& spec, double theta) {
  const auto split = build_full_split(spec);
  return split.h1.combine(1.0, split.h2, theta);
}

/// Measurement in which each model's critical QFI is saturated:
/// Grover {|m>, |m_perp>}, p-spin total magnetization, biclique imbalance
/// sum_A sigma^z - sum_B sigma^z. Degenerate outcome values share a projector.
inline MeasurementBasis optimal_measurement(const ModelSpec& spec, BasisKind basis) {
  validate(spec);
  if (basis != BasisKind::FullComputational)
    detail::require(basis == reduced_basis(spec), "basis not available for model");

  if (std::holds_alternative<Grover>(spec)) {
    if (basis == BasisKind::EffectiveTwoLevel) {
      RealVector pm(2), pperp(2);
      pm << 1.0, 0.0;
      pperp << 0.0, 1.0;
      return {basis, {pm, pperp}, {0.0, 1.0}};
    }
    const int n = total_qubits(spec);
    detail::require(n <= kGroverFullSpaceMaxQubits, "grover full space limited to 12 qubits");
    const Eigen::Index dim = Eigen::Index{1} << n;
    RealVector pm = RealVector::Zero(dim);
    pm(0) = 1.0;
    return {basis, {pm, RealVector(RealVector::Ones(dim) - pm)}, {0.0, 1.0}};
  }

  std::vector<QuantumNumbers> labels;
  if (basis == BasisKind::FullComputational) {
    detail::require(total_qubits(spec) <= kFullSpaceMaxQubits, "full computational basis limited to 14 qubits");
    labels = detail::full_labels(spec);
  } else if (const auto* m = std::get_if<PSpin>(&spec)) {
    labels = detail::collective_labels(m->qubits);
  } else {
    const auto& b = std::get<Biclique>(spec);
    labels = detail::bipartite_labels(b.size_a, b.size_b);
  }

  const bool is_pspin = std::holds_alternative<PSpin>(spec);
  // Outcome value: total magnetization (p-spin) or imbalance (biclique), both
  // integers in sigma^z units; keys are exact after rounding.
  std::map<long, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double value = is_pspin ? 2.0 * (labels[i].m_a + labels[i].m_b) : 2.0 * (labels[i].m_a - labels[i].m_b);
    groups[std::lround(value)].push_back(i);
  }
  MeasurementBasis out{basis, {}, {}};
  const auto dim = static_cast<Eigen::Index>(labels.size());
  for (const auto& [value, members] : groups) {
    RealVector mask = RealVector::Zero(dim);
    for (auto i : members) mask(static_cast<Eigen::Index>(i)) = 1.0;
    out.masks.push_back(std::move(mask));
    out.labels.push_back(static_cast<double>(value));
  }
  return out;
}

inline MeasurementBasis optimal_measurement(const ModelSpec& spec) {
  return optimal_measurement(spec, reduced_basis(spec));
}

}  // namespace critsense

#endif  // CRITSENSE_MODELS_HPP
