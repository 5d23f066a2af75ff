#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qsim/common.hpp"

namespace qsim {

using QubitList = std::vector<int>;

/// Normalised pure state of n qubits. Basis index i stores qubit q in bit q
/// (qubit 0 is the least significant bit).
template <typename Real = double>
class BasicStateVector {
 public:
  using Scalar = Complex<Real>;
  using Vector = AmplitudeVector<Real>;

  /// Validates length and norm.
  BasicStateVector(int num_qubits, Vector amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubit_count(num_qubits_);
    if (amplitudes_.size() != dimension_of(num_qubits_)) {
      throw DomainError("amplitude count " + std::to_string(amplitudes_.size()) +
                        " does not match 2^" + std::to_string(num_qubits_));
    }
    const Real norm2 = amplitudes_.squaredNorm();
    if (!(std::abs(norm2 - Real(1)) <= Tolerance<Real>::algebraic)) {
      throw DomainError("state is not normalised (norm^2 = " + std::to_string(norm2) + ")");
    }
  }

  /// Scales an arbitrary nonzero vector to unit norm.
  static BasicStateVector normalized(int num_qubits, Vector amplitudes) {
    const Real norm = amplitudes.norm();
    if (!(norm > Real(0))) throw DomainError("cannot normalise the zero vector");
    amplitudes /= norm;
    return BasicStateVector(num_qubits, std::move(amplitudes));
  }

  static void check_qubit_count(int n) {
    if (n < 1) throw DomainError("qubit count must be at least 1");
    if (n > kMaxStateQubits) {
      throw ResourceError("state vectors are limited to " + std::to_string(kMaxStateQubits) +
                          " qubits");
    }
  }

  int num_qubits() const { return num_qubits_; }
  Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  const Scalar& operator[](Index i) const { return amplitudes_[i]; }

  /// Mutable access for in-place kernels. Callers are responsible for
  /// applying only norm-preserving updates.
  Vector& mutable_amplitudes() { return amplitudes_; }

  Real norm() const { return amplitudes_.norm(); }

  /// |c_i|^2 for every basis index.
  Eigen::Matrix<Real, Eigen::Dynamic, 1> probabilities() const {
    return amplitudes_.cwiseAbs2();
  }

  template <typename To>
  BasicStateVector<To> cast() const {
    return BasicStateVector<To>::normalized(num_qubits_,
                                            amplitudes_.template cast<Complex<To>>());
  }

 private:
  int num_qubits_;
  Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator on n qubits.
template <typename Real = double>
class BasicDensityMatrix {
 public:
  using Scalar = Complex<Real>;
  using Matrix = ComplexMatrix<Real>;

  /// Checks shape, hermiticity and trace. Positivity needs a full
  /// diagonalisation and is checked separately by is_positive().
  BasicDensityMatrix(int num_qubits, Matrix entries)
      : num_qubits_(num_qubits), entries_(std::move(entries)) {
    check_qubit_count(num_qubits_);
    const Index d = dimension_of(num_qubits_);
    if (entries_.rows() != d || entries_.cols() != d) {
      throw DomainError("density matrix must be 2^n x 2^n");
    }
    if (!is_hermitian()) throw DomainError("density matrix is not Hermitian");
    const Real tr = entries_.trace().real();
    if (!(std::abs(tr - Real(1)) <= Tolerance<Real>::algebraic)) {
      throw DomainError("density matrix trace is " + std::to_string(tr) + ", expected 1");
    }
  }

  static void check_qubit_count(int n) {
    if (n < 1) throw DomainError("qubit count must be at least 1");
    if (n > kMaxDensityQubits) {
      throw ResourceError("density matrices are limited to " +
                          std::to_string(kMaxDensityQubits) + " qubits");
    }
  }

  /// Maximally mixed state I / 2^n.
  static BasicDensityMatrix maximally_mixed(int num_qubits) {
    check_qubit_count(num_qubits);
    const Index d = dimension_of(num_qubits);
    return BasicDensityMatrix(num_qubits, Matrix::Identity(d, d) / Real(d));
  }

  int num_qubits() const { return num_qubits_; }
  Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  const Scalar& operator()(Index r, Index c) const { return entries_(r, c); }

  Eigen::Matrix<Real, Eigen::Dynamic, 1> eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
  }

  bool is_hermitian() const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= Tolerance<Real>::algebraic;
  }

  bool is_positive() const {
    return eigenvalues().minCoeff() >= -Tolerance<Real>::eigenvalue;
  }

  /// All three invariants: Hermitian, unit trace, PSD.
  bool is_physical() const {
    return is_hermitian() &&
           std::abs(entries_.trace().real() - Real(1)) <= Tolerance<Real>::algebraic &&
           is_positive();
  }

 private:
  int num_qubits_;
  Matrix entries_;
};

using StateVector = BasicStateVector<double>;
using DensityMatrix = BasicDensityMatrix<double>;

/// Result of a full computational-basis measurement.
template <typename Real = double>
struct BasicMeasurementRecord {
  Index outcome_index;
  Real probability;
  BasicStateVector<Real> post_state;
};

/// Result of measuring a single qubit.
template <typename Real = double>
struct BasicQubitMeasurement {
  int bit;
  Real probability;
  BasicStateVector<Real> post_state;
};

using MeasurementRecord = BasicMeasurementRecord<double>;
using QubitMeasurement = BasicQubitMeasurement<double>;

// ---------------------------------------------------------------------------
// Construction

template <typename Real = double>
BasicStateVector<Real> basis_state(int num_qubits, Index index) {
  BasicStateVector<Real>::check_qubit_count(num_qubits);
  const Index d = dimension_of(num_qubits);
  if (index < 0 || index >= d) {
    throw DomainError("basis index " + std::to_string(index) + " out of range for " +
                      std::to_string(num_qubits) + " qubits");
  }
  AmplitudeVector<Real> amps = AmplitudeVector<Real>::Zero(d);
  amps[index] = Real(1);
  return BasicStateVector<Real>(num_qubits, std::move(amps));
}

/// Tensor product with `low` on qubits [0, low.n) and `high` above it.
template <typename Real>
BasicStateVector<Real> tensor(const BasicStateVector<Real>& low, const BasicStateVector<Real>& high) {
  const int n = low.num_qubits() + high.num_qubits();
  BasicStateVector<Real>::check_qubit_count(n);
  AmplitudeVector<Real> amps(dimension_of(n));
  for (Index h = 0; h < high.dim(); ++h) {
    amps.segment(h * low.dim(), low.dim()) = high[h] * low.amplitudes();
  }
  return BasicStateVector<Real>::normalized(n, std::move(amps));
}

/// Haar-random pure state drawn from normal-distributed amplitudes.
template <typename Real = double, typename Urbg>
BasicStateVector<Real> random_state(int num_qubits, Urbg& gen) {
  BasicStateVector<Real>::check_qubit_count(num_qubits);
  std::normal_distribution<Real> normal;
  AmplitudeVector<Real> amps(dimension_of(num_qubits));
  for (Index i = 0; i < amps.size(); ++i) amps[i] = {normal(gen), normal(gen)};
  return BasicStateVector<Real>::normalized(num_qubits, std::move(amps));
}

// ---------------------------------------------------------------------------
// Algebra

/// <u|v> = sum_i conj(u_i) v_i.
template <typename Real>
Complex<Real> inner_product(const BasicStateVector<Real>& u, const BasicStateVector<Real>& v) {
  if (u.num_qubits() != v.num_qubits()) {
    throw DomainError("inner product of states with different qubit counts");
  }
  return u.amplitudes().dot(v.amplitudes());
}

template <typename Real>
Real fidelity(const BasicStateVector<Real>& u, const BasicStateVector<Real>& v) {
  return std::norm(inner_product(u, v));
}

/// |v><v|.
template <typename Real>
BasicDensityMatrix<Real> to_density(const BasicStateVector<Real>& v) {
  BasicDensityMatrix<Real>::check_qubit_count(v.num_qubits());
  return BasicDensityMatrix<Real>(v.num_qubits(),
                                  v.amplitudes() * v.amplitudes().adjoint());
}

/// Tr(rho^2).
template <typename Real>
Real purity(const BasicDensityMatrix<Real>& rho) {
  // Tr(rho rho) = sum_ij rho_ij rho_ji = sum_ij |rho_ij|^2 for Hermitian rho.
  return rho.matrix().cwiseAbs2().sum();
}

// ---------------------------------------------------------------------------
// Measurement

namespace detail {

template <typename Real, typename Urbg>
Real uniform01(Urbg& gen) {
  return std::uniform_real_distribution<Real>(Real(0), Real(1))(gen);
}

inline void check_qubit_index(int q, int num_qubits) {
  if (q < 0 || q >= num_qubits) {
    throw DomainError("qubit index " + std::to_string(q) + " out of range for " +
                      std::to_string(num_qubits) + " qubits");
  }
}

}  // namespace detail

/// Samples a basis outcome j with probability |c_j|^2 and collapses to |j>.
template <typename Real, typename Urbg>
BasicMeasurementRecord<Real> measure_all(const BasicStateVector<Real>& v, Urbg& gen) {
  const Real r = detail::uniform01<Real>(gen);
  Real cumulative = 0;
  Index outcome = -1;
  Index last_nonzero = 0;
  for (Index i = 0; i < v.dim(); ++i) {
    const Real p = std::norm(v[i]);
    if (p > 0) last_nonzero = i;
    cumulative += p;
    if (r < cumulative && p > 0) {
      outcome = i;
      break;
    }
  }
  // Rounding can leave r above the final cumulative sum.
  if (outcome < 0) outcome = last_nonzero;
  return {outcome, std::norm(v[outcome]), basis_state<Real>(v.num_qubits(), outcome)};
}

template <typename Real>
BasicMeasurementRecord<Real> measure_all(const BasicStateVector<Real>& v, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return measure_all(v, gen);
}

/// Probability that qubit q reads 1.
template <typename Real>
Real probability_of_one(const BasicStateVector<Real>& v, int q) {
  detail::check_qubit_index(q, v.num_qubits());
  const Index mask = Index{1} << q;
  Real p1 = 0;
  for (Index i = 0; i < v.dim(); ++i) {
    if (i & mask) p1 += std::norm(v[i]);
  }
  return p1;
}

/// Projects qubit q onto `bit` and renormalises. Branches with probability
/// below the impossible-branch tolerance are rejected.
template <typename Real>
BasicStateVector<Real> project_qubit(const BasicStateVector<Real>& v, int q, int bit) {
  detail::check_qubit_index(q, v.num_qubits());
  const Index mask = Index{1} << q;
  const Real p1 = probability_of_one(v, q);
  const Real p = bit ? p1 : Real(1) - p1;
  if (p < Tolerance<Real>::impossible_branch) {
    throw DomainError("projection onto an outcome of zero probability");
  }
  AmplitudeVector<Real> amps = v.amplitudes();
  const Real scale = Real(1) / std::sqrt(p);
  for (Index i = 0; i < amps.size(); ++i) {
    const bool set = (i & mask) != 0;
    amps[i] = (set == (bit != 0)) ? amps[i] * scale : Complex<Real>(0);
  }
  return BasicStateVector<Real>::normalized(v.num_qubits(), std::move(amps));
}

template <typename Real, typename Urbg>
BasicQubitMeasurement<Real> measure_qubit(const BasicStateVector<Real>& v, int q, Urbg& gen) {
  const Real p1 = probability_of_one(v, q);
  const Real r = detail::uniform01<Real>(gen);
  int bit = r < p1 ? 1 : 0;
  // Never select a branch that cannot occur.
  if (bit == 1 && p1 < Tolerance<Real>::impossible_branch) bit = 0;
  if (bit == 0 && Real(1) - p1 < Tolerance<Real>::impossible_branch) bit = 1;
  const Real p = bit ? p1 : Real(1) - p1;
  return {bit, p, project_qubit(v, q, bit)};
}

template <typename Real>
BasicQubitMeasurement<Real> measure_qubit(const BasicStateVector<Real>& v, int q,
                                          std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return measure_qubit(v, q, gen);
}

// ---------------------------------------------------------------------------
// Reduction

namespace detail {

/// Validates `keep` and returns the sorted kept and traced-out qubit lists.
inline std::pair<QubitList, QubitList> split_qubits(const QubitList& keep, int num_qubits) {
  QubitList kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw DomainError("duplicate qubit in subsystem");
  }
  for (int q : kept) check_qubit_index(q, num_qubits);
  if (kept.empty() || static_cast<int>(kept.size()) == num_qubits) {
    throw DomainError("subsystem must be a nonempty proper subset of the qubits");
  }
  QubitList traced;
  for (int q = 0; q < num_qubits; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  }
  return {kept, traced};
}

/// Scatters the bits of `local` onto the positions listed in `qubits`.
inline Index scatter_bits(Index local, const QubitList& qubits) {
  Index out = 0;
  for (std::size_t m = 0; m < qubits.size(); ++m) {
    if (local & (Index{1} << m)) out |= Index{1} << qubits[m];
  }
  return out;
}

}  // namespace detail

/// rho_A = Tr_B(rho). Kept qubits are renumbered 0..k-1 in increasing order.
template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicDensityMatrix<Real>& rho, const QubitList& keep) {
  const auto [kept, traced] = detail::split_qubits(keep, rho.num_qubits());
  const Index dk = dimension_of(static_cast<int>(kept.size()));
  const Index dt = dimension_of(static_cast<int>(traced.size()));

  std::vector<Index> kept_offsets(dk), traced_offsets(dt);
  for (Index i = 0; i < dk; ++i) kept_offsets[i] = detail::scatter_bits(i, kept);
  for (Index e = 0; e < dt; ++e) traced_offsets[e] = detail::scatter_bits(e, traced);

  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(dk, dk);
  for (Index c = 0; c < dk; ++c) {
    for (Index r = 0; r < dk; ++r) {
      Complex<Real> acc = 0;
      for (Index e = 0; e < dt; ++e) {
        acc += rho(kept_offsets[r] | traced_offsets[e], kept_offsets[c] | traced_offsets[e]);
      }
      out(r, c) = acc;
    }
  }
  return BasicDensityMatrix<Real>(static_cast<int>(kept.size()), std::move(out));
}

/// Reduced density matrix of a pure state, computed from the amplitudes
/// without forming |v><v|. Works for states larger than the density cap as
/// long as the kept subsystem fits.
template <typename Real>
BasicDensityMatrix<Real> reduced_density(const BasicStateVector<Real>& v, const QubitList& keep) {
  const auto [kept, traced] = detail::split_qubits(keep, v.num_qubits());
  BasicDensityMatrix<Real>::check_qubit_count(static_cast<int>(kept.size()));
  const Index dk = dimension_of(static_cast<int>(kept.size()));
  const Index dt = dimension_of(static_cast<int>(traced.size()));

  // Psi(i, e) = amplitude of kept index i with environment index e.
  ComplexMatrix<Real> psi(dk, dt);
  std::vector<Index> kept_offsets(dk);
  for (Index i = 0; i < dk; ++i) kept_offsets[i] = detail::scatter_bits(i, kept);
  for (Index e = 0; e < dt; ++e) {
    const Index base = detail::scatter_bits(e, traced);
    for (Index i = 0; i < dk; ++i) psi(i, e) = v[base | kept_offsets[i]];
  }
  ComplexMatrix<Real> rho = psi * psi.adjoint();
  // Re-symmetrise to remove rounding asymmetry from the product.
  rho = (rho + rho.adjoint()).eval() / Real(2);
  return BasicDensityMatrix<Real>(static_cast<int>(kept.size()), std::move(rho));
}

}  // namespace qsim
