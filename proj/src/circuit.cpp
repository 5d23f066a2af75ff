#include "qsim/circuit.hpp"

#include <algorithm>

namespace qsim {

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::Phase: return "phase";
    case GateKind::U: return "u";
    case GateKind::Cnot: return "cnot";
    case GateKind::Ccnot: return "ccnot";
    case GateKind::Swap: return "swap";
    case GateKind::Custom: return "custom";
  }
  return "?";
}

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::Cnot:
    case GateKind::Swap: return 2;
    case GateKind::Ccnot: return 3;
    case GateKind::Custom: return 0;
    default: return 1;
  }
}

CircuitOp CircuitOp::named(GateKind kind, QubitList targets, GateParams params,
                           QubitList controls) {
  if (kind == GateKind::Custom) throw DomainError("custom ops need a gate matrix");
  if (static_cast<int>(targets.size()) != gate_arity(kind)) {
    throw DomainError("gate '" + std::string(gate_name(kind)) + "' expects " +
                      std::to_string(gate_arity(kind)) + " target(s)");
  }
  CircuitOp op;
  op.kind = kind;
  op.params = params;
  op.controls = std::move(controls);
  op.targets = std::move(targets);
  return op;
}

CircuitOp CircuitOp::from_gate(Gate gate, QubitList targets, QubitList controls) {
  if (static_cast<int>(targets.size()) != gate.arity()) {
    throw DomainError("gate '" + gate.label() + "' expects " + std::to_string(gate.arity()) +
                      " target(s)");
  }
  CircuitOp op;
  op.kind = GateKind::Custom;
  op.controls = std::move(controls);
  op.targets = std::move(targets);
  op.custom = std::make_shared<const Gate>(std::move(gate));
  return op;
}

Gate CircuitOp::base_gate() const {
  switch (kind) {
    case GateKind::H: return hadamard();
    case GateKind::X: return pauli(Pauli::X);
    case GateKind::Y: return pauli(Pauli::Y);
    case GateKind::Z: return pauli(Pauli::Z);
    case GateKind::Phase: return phase(params.theta);
    case GateKind::U: return single_qubit_u(params);
    case GateKind::Cnot: return cnot();
    case GateKind::Ccnot: return toffoli();
    case GateKind::Swap: return swap_gate();
    case GateKind::Custom: return *custom;
  }
  throw DomainError("unknown gate kind");
}

Gate CircuitOp::full_gate() const {
  Gate g = base_gate();
  return controls.empty() ? g : controlled(g, static_cast<int>(controls.size()));
}

QubitList CircuitOp::qubits() const {
  QubitList all = controls;
  all.insert(all.end(), targets.begin(), targets.end());
  return all;
}

bool operator==(const CircuitOp& a, const CircuitOp& b) {
  if (a.kind != b.kind || a.controls != b.controls || a.targets != b.targets) return false;
  if (a.kind == GateKind::Custom) {
    return a.custom->matrix() == b.custom->matrix();
  }
  return a.params == b.params;
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  StateVector::check_qubit_count(num_qubits);
}

Circuit& Circuit::add(CircuitOp op) {
  QubitList all = op.qubits();
  for (int q : all) detail::check_qubit_index(q, num_qubits_);
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw DomainError("op '" + std::string(gate_name(op.kind)) + "' repeats a qubit");
  }
  ops_.push_back(std::move(op));
  return *this;
}

StateVector run(const Circuit& c, StateVector initial) {
  if (initial.num_qubits() != c.num_qubits()) {
    throw DomainError("circuit has " + std::to_string(c.num_qubits()) +
                      " qubits but the initial state has " +
                      std::to_string(initial.num_qubits()));
  }
  for (const CircuitOp& op : c.ops()) apply_inplace(initial, op.full_gate(), op.qubits());
  return initial;
}

Circuit inverse(const Circuit& c) {
  Circuit out(c.num_qubits());
  for (auto it = c.ops().rbegin(); it != c.ops().rend(); ++it) {
    CircuitOp op = *it;
    switch (op.kind) {
      case GateKind::Phase:
        op.params.theta = -op.params.theta;
        break;
      case GateKind::U:
        // U(theta, phi, lam)^dagger = U(-theta, -lam, -phi)
        op.params = {-op.params.theta, -op.params.lam, -op.params.phi};
        break;
      case GateKind::Custom:
        op.custom = std::make_shared<const Gate>(dagger(*op.custom));
        break;
      default:
        break;  // remaining named gates are self-inverse
    }
    out.add(std::move(op));
  }
  return out;
}

Gate unitary_of(const Circuit& c) {
  if (c.num_qubits() > kMaxUnitaryQubits) {
    throw ResourceError("unitary_of is limited to " + std::to_string(kMaxUnitaryQubits) +
                        " qubits");
  }
  const Index d = dimension_of(c.num_qubits());
  ComplexMatrix<double> u(d, d);
  for (Index col = 0; col < d; ++col) {
    u.col(col) = run(c, basis_state(c.num_qubits(), col)).amplitudes();
  }
  return Gate(c.num_qubits(), std::move(u), "circuit");
}

}  // namespace qsim
