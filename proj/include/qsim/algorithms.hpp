#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qsim/circuit.hpp"
#include "qsim/state.hpp"

namespace qsim {

// ---------------------------------------------------------------------------
// Walsh-Hadamard and QFT

/// H on every qubit of |0...0>: all 2^n amplitudes equal 2^{-n/2}.
StateVector uniform_superposition(int n);

/// H + controlled-phase(pi / 2^k) ladder followed by order-reversing swaps.
/// Realises |x> -> N^{-1/2} sum_y e^{2 pi i x y / N} |y>, N = 2^n, with
/// n(n+1)/2 rotations and floor(n/2) swaps.
Circuit qft_circuit(int n);

// ---------------------------------------------------------------------------
// Grover search

/// Sign-flip oracle for a set of marked basis indices.
struct GroverOracle {
  int num_qubits;
  std::vector<Index> marked;

  GroverOracle(int num_qubits, std::vector<Index> marked);
  Index search_space() const { return dimension_of(num_qubits); }
};

/// round(pi / (4 theta) - 1/2), at least 1, theta = asin(sqrt(M / N)).
/// N must be a power of two >= 4.
int grover_iterations(Index search_space, Index num_marked = 1);

/// Flips the sign of every marked amplitude.
void apply_oracle(StateVector& state, const GroverOracle& oracle);

/// Inversion about the average: a_i -> 2<a> - a_i, i.e. 2|s><s| - I.
void apply_diffusion(StateVector& state);

/// State after `iterations` oracle + diffusion rounds from the uniform state.
StateVector grover_state(const GroverOracle& oracle, int iterations);

struct GroverResult {
  Index outcome;
  int iterations;
  double success_probability;  ///< total weight on marked items before measurement
};

/// Runs grover_iterations rounds and measures every qubit.
GroverResult grover_search(const GroverOracle& oracle, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Entanglement protocols

enum class BellPair {
  PhiPlus,  ///< (|00> + |11>) / sqrt(2)
  Singlet,  ///< (|01> - |10>) / sqrt(2)
};

StateVector bell_pair(BellPair kind);

struct TeleportResult {
  int b1;  ///< sender's measured input qubit (selects the Z correction)
  int b2;  ///< sender's measured half of the pair (selects the X correction)
  StateVector received;
  double fidelity;          ///< |<psi|received>|^2
  StateVector final_joint;  ///< all three qubits after measurement and correction
};

/// Teleports a one-qubit state through a shared (|00> + |11>)/sqrt(2) pair.
/// Qubit 0 holds psi, qubits 1 and 2 the pair; qubit 2 is the receiver.
TeleportResult teleport(const StateVector& psi, std::uint64_t seed);

/// Sends two classical bits through one qubit of a shared pair: the sender
/// applies Z and/or X to qubit 0, the receiver decodes with CNOT(0,1), H(0)
/// and measures both qubits. Returns the decoded (b1, b2).
std::pair<int, int> dense_code(int b1, int b2, std::uint64_t seed,
                               BellPair resource = BellPair::Singlet);

// ---------------------------------------------------------------------------
// Reversible arithmetic

/// [ccnot 0 1 2; cnot 0 1]: on (x, y, 0) qubit 1 becomes x xor y (sum) and
/// qubit 2 becomes x and y (carry).
Circuit adder_circuit();

struct HalfAdderOutput {
  int x;
  int sum;
  int carry;
};

/// Runs the adder on the basis input (x, y, 0) and reads the result.
HalfAdderOutput run_adder(int x, int y);

}  // namespace qsim
