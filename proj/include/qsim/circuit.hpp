#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qsim/gates.hpp"
#include "qsim/state.hpp"

namespace qsim {

/// Named gates of the circuit language, plus arbitrary user matrices.
enum class GateKind { H, X, Y, Z, Phase, U, Cnot, Ccnot, Swap, Custom };

/// DSL spelling of a gate kind ("custom" for matrix-backed ops).
std::string_view gate_name(GateKind kind);

/// Number of target qubits the base gate acts on (excluding extra controls).
int gate_arity(GateKind kind);

/// One step of a circuit: a base gate on `targets`, optionally conditioned on
/// every qubit in `controls` being 1.
struct CircuitOp {
  GateKind kind = GateKind::H;
  GateParams params;  ///< phase uses theta; u uses theta, phi, lam
  QubitList controls;
  QubitList targets;
  std::shared_ptr<const Gate> custom;  ///< set only for GateKind::Custom

  static CircuitOp named(GateKind kind, QubitList targets, GateParams params = {},
                         QubitList controls = {});
  static CircuitOp from_gate(Gate gate, QubitList targets, QubitList controls = {});

  /// The gate without extra controls.
  Gate base_gate() const;
  /// The gate including extra controls; acts on qubits().
  Gate full_gate() const;
  /// controls followed by targets.
  QubitList qubits() const;

  friend bool operator==(const CircuitOp& a, const CircuitOp& b);
};

/// Ordered, acyclic list of gate applications on a fixed register.
class Circuit {
 public:
  explicit Circuit(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  const std::vector<CircuitOp>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }

  /// Appends after validating qubit indices and distinctness.
  Circuit& add(CircuitOp op);
  Circuit& add(GateKind kind, QubitList targets, GateParams params = {}, QubitList controls = {}) {
    return add(CircuitOp::named(kind, std::move(targets), params, std::move(controls)));
  }

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.num_qubits_ == b.num_qubits_ && a.ops_ == b.ops_;
  }

 private:
  int num_qubits_;
  std::vector<CircuitOp> ops_;
};

/// Position-tagged syntax or validation failure in circuit source text.
class ParseError : public DomainError {
 public:
  ParseError(int line, int column, std::string message);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

/// Parses the line-oriented circuit language:
///
///   # comment
///   qubits 3
///   h 0
///   cnot 0 1
///   phase 2 theta=0.785398
///   u 1 theta=1.2 phi=0 lam=3.14
///   c phase 0 2 theta=1.57   # control 0, target 2
///
/// Each leading `c` adds one control, listed before the targets.
/// Throws ParseError at the first violation.
Circuit parse(std::string_view text);

/// Inverse of parse for circuits made of named gates. Angles are written in
/// shortest round-trip form, so parse(render(c)) == c.
std::string render(const Circuit& c);

/// Applies every op in order.
StateVector run(const Circuit& c, StateVector initial);

/// Reverses the op order and replaces every gate by its adjoint.
Circuit inverse(const Circuit& c);

inline constexpr int kMaxUnitaryQubits = 10;

/// Dense 2^n x 2^n matrix realised by the circuit, one column per basis
/// input. Throws ResourceError above kMaxUnitaryQubits.
Gate unitary_of(const Circuit& c);

}  // namespace qsim
