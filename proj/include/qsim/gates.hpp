#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsim/common.hpp"
#include "qsim/state.hpp"

namespace qsim {

/// Angles (radians) of the three-parameter single-qubit gate.
struct GateParams {
  double theta = 0.0;
  double phi = 0.0;
  double lam = 0.0;

  friend bool operator==(const GateParams&, const GateParams&) = default;
};

enum class Pauli { I, X, Y, Z };

inline char pauli_symbol(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

template <typename Real>
bool is_unitary(const ComplexMatrix<Real>& m, Real tol = Tolerance<Real>::algebraic) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix<Real> gram = m.adjoint() * m;
  return (gram - ComplexMatrix<Real>::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

/// A unitary acting on `arity` qubits. Local basis index bit m corresponds to
/// the m-th entry of the target list the gate is applied with.
template <typename Real = double>
class BasicGate {
 public:
  using Matrix = ComplexMatrix<Real>;

  BasicGate(int arity, Matrix matrix, std::string label)
      : arity_(arity), matrix_(std::move(matrix)), label_(std::move(label)) {
    if (arity_ < 1) throw DomainError("gate arity must be at least 1");
    const Index d = dimension_of(arity_);
    if (matrix_.rows() != d || matrix_.cols() != d) {
      throw DomainError("gate '" + label_ + "' matrix must be 2^arity square");
    }
    if (!is_unitary(matrix_)) throw DomainError("gate '" + label_ + "' is not unitary");
  }

  int arity() const { return arity_; }
  const Matrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  Index dim() const { return matrix_.rows(); }

 private:
  int arity_;
  Matrix matrix_;
  std::string label_;
};

using Gate = BasicGate<double>;

// ---------------------------------------------------------------------------
// Built-in gates

template <typename Real = double>
BasicGate<Real> identity_gate(int arity = 1) {
  const Index d = dimension_of(arity);
  return {arity, ComplexMatrix<Real>::Identity(d, d), "id"};
}

/// H = (sigma_x + sigma_z) / sqrt(2).
template <typename Real = double>
BasicGate<Real> hadamard() {
  const Real s = Real(1) / std::sqrt(Real(2));
  ComplexMatrix<Real> m(2, 2);
  m << s, s, s, -s;
  return {1, std::move(m), "h"};
}

template <typename Real = double>
BasicGate<Real> pauli(Pauli which) {
  using C = Complex<Real>;
  ComplexMatrix<Real> m(2, 2);
  switch (which) {
    case Pauli::I: m << 1, 0, 0, 1; return {1, std::move(m), "id"};
    case Pauli::X: m << 0, 1, 1, 0; return {1, std::move(m), "x"};
    case Pauli::Y: m << C(0), C(0, -1), C(0, 1), C(0); return {1, std::move(m), "y"};
    case Pauli::Z: m << 1, 0, 0, -1; return {1, std::move(m), "z"};
  }
  throw DomainError("unknown Pauli");
}

/// diag(1, e^{i theta}).
template <typename Real = double>
BasicGate<Real> phase(double theta) {
  ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = std::polar(Real(1), static_cast<Real>(theta));
  return {1, std::move(m), "phase"};
}

/// U(theta, phi, lam) = [[cos(t/2), -e^{i lam} sin(t/2)],
///                       [e^{i phi} sin(t/2), e^{i(phi+lam)} cos(t/2)]].
/// Reaches every element of U(2) up to a global phase.
template <typename Real = double>
BasicGate<Real> single_qubit_u(const GateParams& p) {
  const Real c = std::cos(static_cast<Real>(p.theta) / 2);
  const Real s = std::sin(static_cast<Real>(p.theta) / 2);
  const auto e = [](double angle) { return std::polar(Real(1), static_cast<Real>(angle)); };
  ComplexMatrix<Real> m(2, 2);
  m << Complex<Real>(c), -e(p.lam) * s, e(p.phi) * s, e(p.phi + p.lam) * c;
  return {1, std::move(m), "u"};
}

/// Identity unless every control bit (the low `num_controls` local bits) is 1,
/// in which case `g` acts on the remaining bits.
template <typename Real>
BasicGate<Real> controlled(const BasicGate<Real>& g, int num_controls) {
  if (num_controls < 1) throw DomainError("controlled gate needs at least one control");
  const int arity = g.arity() + num_controls;
  const Index d = dimension_of(arity);
  const Index ones = dimension_of(num_controls) - 1;
  ComplexMatrix<Real> m = ComplexMatrix<Real>::Identity(d, d);
  for (Index r = 0; r < g.dim(); ++r) {
    for (Index c = 0; c < g.dim(); ++c) {
      m((r << num_controls) | ones, (c << num_controls) | ones) = g.matrix()(r, c);
    }
  }
  return {arity, std::move(m), std::string(num_controls, 'c') + g.label()};
}

/// Target list [control, target]: flips target when control is 1.
template <typename Real = double>
BasicGate<Real> cnot() {
  auto g = controlled(pauli<Real>(Pauli::X), 1);
  return {2, g.matrix(), "cnot"};
}

/// Target list [control0, control1, target].
template <typename Real = double>
BasicGate<Real> toffoli() {
  auto g = controlled(pauli<Real>(Pauli::X), 2);
  return {3, g.matrix(), "ccnot"};
}

/// Conjugate transpose.
template <typename Real>
BasicGate<Real> dagger(const BasicGate<Real>& g) {
  return {g.arity(), g.matrix().adjoint(), g.label() + "_dg"};
}

/// Gate product: `second` applied after `first` on the same target list.
template <typename Real>
BasicGate<Real> then(const BasicGate<Real>& first, const BasicGate<Real>& second) {
  if (first.arity() != second.arity()) throw DomainError("gate arity mismatch in product");
  return {first.arity(), second.matrix() * first.matrix(), first.label() + "*" + second.label()};
}

/// Swap of two qubits, assembled from three CNOTs.
template <typename Real = double>
BasicGate<Real> swap_gate() {
  const ComplexMatrix<Real> a = cnot<Real>().matrix();
  ComplexMatrix<Real> b = ComplexMatrix<Real>::Zero(4, 4);
  // CNOT with control and target exchanged.
  b(0, 0) = b(1, 1) = b(2, 3) = b(3, 2) = 1;
  return {2, a * b * a, "swap"};
}

/// True iff the matrix is a 0/1 permutation matrix.
template <typename Real>
bool is_classical_reversible(const BasicGate<Real>& g) {
  const Real tol = Tolerance<Real>::algebraic;
  const auto& m = g.matrix();
  std::vector<int> col_ones(m.cols(), 0);
  for (Index r = 0; r < m.rows(); ++r) {
    int row_ones = 0;
    for (Index c = 0; c < m.cols(); ++c) {
      const Complex<Real> x = m(r, c);
      if (std::abs(x) <= tol) continue;
      if (std::abs(x - Complex<Real>(1)) > tol) return false;
      ++row_ones;
      ++col_ones[c];
    }
    if (row_ones != 1) return false;
  }
  return std::all_of(col_ones.begin(), col_ones.end(), [](int n) { return n == 1; });
}

/// max |a - e^{i alpha} b| below tolerance, alpha fixed by the first
/// nonzero element of b.
template <typename Real>
bool equal_up_to_phase(const ComplexMatrix<Real>& a, const ComplexMatrix<Real>& b,
                       Real tol = Tolerance<Real>::algebraic) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index c = 0; c < b.cols(); ++c) {
    for (Index r = 0; r < b.rows(); ++r) {
      if (std::abs(b(r, c)) > tol) {
        if (std::abs(a(r, c)) <= tol) return false;
        const Complex<Real> phase_factor = std::polar(Real(1), std::arg(a(r, c) / b(r, c)));
        return (a - phase_factor * b).cwiseAbs().maxCoeff() < tol;
      }
    }
  }
  return a.cwiseAbs().maxCoeff() < tol;
}

// ---------------------------------------------------------------------------
// Application kernel

namespace detail {

inline void check_targets(const QubitList& targets, int arity, int num_qubits) {
  if (static_cast<int>(targets.size()) != arity) {
    throw DomainError("gate of arity " + std::to_string(arity) + " given " +
                      std::to_string(targets.size()) + " targets");
  }
  for (int q : targets) check_qubit_index(q, num_qubits);
  QubitList sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("duplicate target qubit");
  }
}

/// Inserts a zero bit at each (ascending) position.
inline Index insert_zero_bits(Index value, const QubitList& ascending) {
  for (int p : ascending) {
    const Index low = value & ((Index{1} << p) - 1);
    value = ((value >> p) << (p + 1)) | low;
  }
  return value;
}

// Plain complex product. std::complex operator* carries C99 Annex G inf/NaN
// recovery, which dominates the inner loops.
template <typename Real>
inline Complex<Real> mul(const Complex<Real>& a, const Complex<Real>& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

template <typename Real>
void apply_one_qubit(std::span<Complex<Real>> amps, const ComplexMatrix<Real>& u, int target) {
  const Index stride = Index{1} << target;
  const Index dim = static_cast<Index>(amps.size());
  const Complex<Real> u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  for (Index block = 0; block < dim; block += 2 * stride) {
    for (Index i = block; i < block + stride; ++i) {
      const Complex<Real> a0 = amps[i];
      const Complex<Real> a1 = amps[i + stride];
      amps[i] = mul(u00, a0) + mul(u01, a1);
      amps[i + stride] = mul(u10, a0) + mul(u11, a1);
    }
  }
}

template <typename Real>
void apply_k_qubit(std::span<Complex<Real>> amps, const ComplexMatrix<Real>& u,
                   const QubitList& targets) {
  const int k = static_cast<int>(targets.size());
  const Index group = dimension_of(k);
  QubitList ascending = targets;
  std::sort(ascending.begin(), ascending.end());

  std::vector<Index> offsets(group);
  for (Index j = 0; j < group; ++j) offsets[j] = scatter_bits(j, targets);

  // Nonzero entries row by row: controlled and permutation gates are sparse.
  struct Entry {
    Index col;
    Complex<Real> value;
  };
  std::vector<Entry> entries;
  std::vector<std::size_t> row_start(group + 1, 0);
  for (Index r = 0; r < group; ++r) {
    for (Index c = 0; c < group; ++c) {
      if (u(r, c) != Complex<Real>(0)) entries.push_back({c, u(r, c)});
    }
    row_start[r + 1] = entries.size();
  }

  std::vector<Complex<Real>> in(group);
  const Index num_groups = static_cast<Index>(amps.size()) >> k;
  for (Index g = 0; g < num_groups; ++g) {
    const Index base = insert_zero_bits(g, ascending);
    for (Index j = 0; j < group; ++j) in[j] = amps[base | offsets[j]];
    for (Index r = 0; r < group; ++r) {
      Complex<Real> acc = 0;
      for (std::size_t e = row_start[r]; e < row_start[r + 1]; ++e) {
        acc += mul(entries[e].value, in[entries[e].col]);
      }
      amps[base | offsets[r]] = acc;
    }
  }
}

}  // namespace detail

/// Applies a 2^k x 2^k matrix to the listed qubits of a raw amplitude array of
/// 2^n entries in place. O(2^n 2^k) time, O(2^k) extra memory; the full
/// 2^n x 2^n operator is never formed. The array need not be normalised.
template <typename Real>
void apply_matrix(std::span<Complex<Real>> amps, int num_qubits, const ComplexMatrix<Real>& u,
                  const QubitList& targets) {
  if (static_cast<Index>(amps.size()) != dimension_of(num_qubits)) {
    throw DomainError("amplitude array length does not match qubit count");
  }
  const int k = static_cast<int>(targets.size());
  if (u.rows() != dimension_of(k) || u.cols() != dimension_of(k)) {
    throw DomainError("matrix size does not match the number of targets");
  }
  detail::check_targets(targets, k, num_qubits);
  if (k == 1) {
    detail::apply_one_qubit(amps, u, targets[0]);
  } else {
    detail::apply_k_qubit(amps, u, targets);
  }
}

template <typename Real>
void apply_inplace(BasicStateVector<Real>& state, const BasicGate<Real>& g,
                   const QubitList& targets) {
  detail::check_targets(targets, g.arity(), state.num_qubits());
  auto& amps = state.mutable_amplitudes();
  apply_matrix(std::span<Complex<Real>>(amps.data(), static_cast<std::size_t>(amps.size())),
               state.num_qubits(), g.matrix(), targets);
}

/// (U at targets, identity elsewhere) |state>.
template <typename Real>
BasicStateVector<Real> apply(BasicStateVector<Real> state, const BasicGate<Real>& g,
                             const QubitList& targets) {
  apply_inplace(state, g, targets);
  return state;
}

// ---------------------------------------------------------------------------
// No-cloning check

struct NoCloningReport {
  double overlap_magnitude;  ///< |<u|v>|
  double residual;           ///< | |<u|v>| - |<u|v>|^2 |
  bool clonable;             ///< a single unitary can copy both states
};

/// A unitary copier U|u>|0> = |u>|u>, U|v>|0> = |v>|v> needs
/// <u|v> = <u|v>^2, so only identical or orthogonal pairs qualify.
template <typename Real>
NoCloningReport verify_no_cloning(const BasicStateVector<Real>& u, const BasicStateVector<Real>& v) {
  if (u.num_qubits() != 1 || v.num_qubits() != 1) {
    throw DomainError("no-cloning check expects single-qubit states");
  }
  const double m = std::abs(inner_product(u, v));
  const double tol = Tolerance<double>::algebraic;
  return {m, std::abs(m - m * m), m <= tol || std::abs(m - 1.0) <= tol};
}

}  // namespace qsim
