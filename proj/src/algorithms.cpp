#include "qsim/algorithms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

namespace qsim {

StateVector uniform_superposition(int n) {
  StateVector s = basis_state(n, 0);
  const Gate h = hadamard();
  for (int q = 0; q < n; ++q) apply_inplace(s, h, {q});
  return s;
}

Circuit qft_circuit(int n) {
  Circuit c(n);
  // Qubit n-1 is the most significant bit of x.
  for (int j = n - 1; j >= 0; --j) {
    c.add(GateKind::H, {j});
    for (int m = j - 1; m >= 0; --m) {
      const double angle = std::numbers::pi / static_cast<double>(Index{1} << (j - m));
      c.add(GateKind::Phase, {j}, {angle, 0.0, 0.0}, {m});
    }
  }
  for (int q = 0; q < n / 2; ++q) c.add(GateKind::Swap, {q, n - 1 - q});
  return c;
}

GroverOracle::GroverOracle(int n, std::vector<Index> marked_items)
    : num_qubits(n), marked(std::move(marked_items)) {
  StateVector::check_qubit_count(n);
  if (n < 2) throw DomainError("Grover search needs at least 2 qubits");
  if (marked.empty()) throw DomainError("oracle must mark at least one item");
  std::sort(marked.begin(), marked.end());
  marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
  for (Index m : marked) {
    if (m < 0 || m >= dimension_of(n)) {
      throw DomainError("marked index " + std::to_string(m) + " out of range");
    }
  }
}

int grover_iterations(Index search_space, Index num_marked) {
  if (search_space < 4 || !std::has_single_bit(static_cast<std::uint64_t>(search_space))) {
    throw DomainError("search space must be a power of two >= 4, got " +
                      std::to_string(search_space));
  }
  if (num_marked < 1 || num_marked > search_space) {
    throw DomainError("marked count out of range");
  }
  const double theta =
      std::asin(std::sqrt(static_cast<double>(num_marked) / static_cast<double>(search_space)));
  const double ideal = std::numbers::pi / (4.0 * theta) - 0.5;
  return std::max(1, static_cast<int>(std::lround(ideal)));
}

void apply_oracle(StateVector& state, const GroverOracle& oracle) {
  if (state.num_qubits() != oracle.num_qubits) throw DomainError("oracle size mismatch");
  auto& amps = state.mutable_amplitudes();
  for (Index m : oracle.marked) amps[m] = -amps[m];
}

void apply_diffusion(StateVector& state) {
  auto& amps = state.mutable_amplitudes();
  const Complex<double> two_mean = 2.0 * amps.mean();
  amps = (-amps).array() + two_mean;
}

StateVector grover_state(const GroverOracle& oracle, int iterations) {
  StateVector s = uniform_superposition(oracle.num_qubits);
  for (int k = 0; k < iterations; ++k) {
    apply_oracle(s, oracle);
    apply_diffusion(s);
  }
  return s;
}

GroverResult grover_search(const GroverOracle& oracle, std::uint64_t seed) {
  const int iterations =
      grover_iterations(oracle.search_space(), static_cast<Index>(oracle.marked.size()));
  const StateVector s = grover_state(oracle, iterations);
  double success = 0.0;
  for (Index m : oracle.marked) success += std::norm(s[m]);
  const MeasurementRecord rec = measure_all(s, seed);
  return {rec.outcome_index, iterations, success};
}

StateVector bell_pair(BellPair kind) {
  AmplitudeVector<double> amps = AmplitudeVector<double>::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  if (kind == BellPair::PhiPlus) {
    amps[0b00] = s;
    amps[0b11] = s;
  } else {
    // |01> with qubit 0 = 0, qubit 1 = 1 is index 2.
    amps[0b10] = s;
    amps[0b01] = -s;
  }
  return StateVector(2, std::move(amps));
}

namespace {

/// Amplitudes of `q` given every other qubit is in a definite basis state.
StateVector extract_qubit(const StateVector& joint, int q) {
  const Index mask = Index{1} << q;
  Index rest = -1;
  for (Index i = 0; i < joint.dim(); ++i) {
    if (std::norm(joint[i]) > 1e-24) {
      rest = i & ~mask;
      break;
    }
  }
  AmplitudeVector<double> amps(2);
  amps << joint[rest], joint[rest | mask];
  return StateVector::normalized(1, std::move(amps));
}

}  // namespace

TeleportResult teleport(const StateVector& psi, std::uint64_t seed) {
  if (psi.num_qubits() != 1) throw DomainError("teleport expects a one-qubit state");
  std::mt19937_64 gen(seed);

  StateVector s = tensor(psi, bell_pair(BellPair::PhiPlus));
  // Bell-basis measurement of qubits 0 and 1.
  apply_inplace(s, cnot(), {0, 1});
  apply_inplace(s, hadamard(), {0});
  const QubitMeasurement m0 = measure_qubit(s, 0, gen);
  const QubitMeasurement m1 = measure_qubit(m0.post_state, 1, gen);
  s = m1.post_state;

  if (m1.bit) apply_inplace(s, pauli(Pauli::X), {2});
  if (m0.bit) apply_inplace(s, pauli(Pauli::Z), {2});

  StateVector received = extract_qubit(s, 2);
  const double f = fidelity(psi, received);
  return {m0.bit, m1.bit, std::move(received), f, std::move(s)};
}

std::pair<int, int> dense_code(int b1, int b2, std::uint64_t seed, BellPair resource) {
  if ((b1 != 0 && b1 != 1) || (b2 != 0 && b2 != 1)) {
    throw DomainError("dense coding sends two bits");
  }
  // Decoding the untouched resource yields this pair; encode relative to it.
  const int r1 = resource == BellPair::Singlet ? 1 : 0;
  const int r2 = resource == BellPair::Singlet ? 1 : 0;

  StateVector s = bell_pair(resource);
  if (b1 ^ r1) apply_inplace(s, pauli(Pauli::Z), {0});
  if (b2 ^ r2) apply_inplace(s, pauli(Pauli::X), {0});

  // Qubit 0 is "sent" and reunited with qubit 1.
  apply_inplace(s, cnot(), {0, 1});
  apply_inplace(s, hadamard(), {0});
  const MeasurementRecord rec = measure_all(s, seed);
  return {static_cast<int>(rec.outcome_index & 1), static_cast<int>((rec.outcome_index >> 1) & 1)};
}

Circuit adder_circuit() {
  Circuit c(3);
  c.add(GateKind::Ccnot, {0, 1, 2});
  c.add(GateKind::Cnot, {0, 1});
  return c;
}

HalfAdderOutput run_adder(int x, int y) {
  if ((x != 0 && x != 1) || (y != 0 && y != 1)) throw DomainError("adder inputs are bits");
  const StateVector out = run(adder_circuit(), basis_state(3, x | (y << 1)));
  const Index idx = measure_all(out, std::uint64_t{0}).outcome_index;
  return {static_cast<int>(idx & 1), static_cast<int>((idx >> 1) & 1),
          static_cast<int>((idx >> 2) & 1)};
}

}  // namespace qsim
