#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qsim/gates.hpp"
#include "qsim/state.hpp"

namespace qsim {

enum class ChannelKind { BitFlip, PhaseFlip, Depolarizing, Dephasing };

/// Single-qubit Pauli noise. `strength` is the error probability p, or the
/// off-diagonal damping gamma for Dephasing.
struct NoiseChannel {
  ChannelKind kind;
  double strength;

  NoiseChannel(ChannelKind kind, double strength);
};

/// rho -> sum_k p_k P_k rho P_k on qubit q:
///   bit flip      (1-p) rho + p X rho X
///   phase flip    (1-p) rho + p Z rho Z
///   depolarizing  (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z)
///   dephasing     off-diagonal entries across qubit q scaled by (1-gamma)
DensityMatrix apply_channel(const DensityMatrix& rho, const NoiseChannel& ch, int q);

/// U rho U^dagger for a gate on the listed qubits, using the state kernel on
/// rows and columns.
DensityMatrix conjugate(const DensityMatrix& rho, const Gate& g, const QubitList& targets);

/// Independent Pauli error per qubit: identity with probability 1-p, else the
/// channel's Pauli (X, Y, Z equally for depolarizing). Dephasing with
/// strength gamma is sampled as a phase flip with probability gamma/2.
std::vector<Pauli> sample_pauli_error(const NoiseChannel& ch, int num_qubits,
                                      std::uint64_t seed);

// ---------------------------------------------------------------------------
// Three-qubit bit-flip repetition code

/// a|0> + b|1>  ->  a|000> + b|111> via CNOT(0,1), CNOT(0,2).
StateVector encode_bitflip3(const StateVector& psi);

/// Inverse of the encoder; expects a codeword.
StateVector decode_bitflip3(const StateVector& codeword);

struct SyndromeResult {
  int s01;  ///< parity q0 xor q1, read from ancilla qubit 3
  int s12;  ///< parity q1 xor q2, read from ancilla qubit 4
  int corrected_qubit;  ///< -1 when the syndrome is 00
  StateVector state;    ///< the three data qubits after correction
};

/// Which data qubit a syndrome (s01, s12) blames: 00 none, 10 q0, 11 q1,
/// 01 q2.
int syndrome_to_qubit(int s01, int s12);

/// Couples two fresh ancillas to the parities q0^q1 and q1^q2, measures them,
/// flips the identified qubit and discards the ancillas.
SyndromeResult syndrome_correct(const StateVector& state, std::uint64_t seed);

struct QecTrialStats {
  std::int64_t trials;
  double physical_p;
  std::int64_t logical_failures;
  double logical_rate;

  /// 3p^2 - 2p^3: probability of two or more flips among three qubits.
  double predicted_rate() const;
};

/// Monte-Carlo: random logical state, independent bit flips with probability
/// p on each data qubit, syndrome correction, fidelity check against the
/// original codeword. Trial i uses a seed derived from (seed, i).
QecTrialStats logical_error_rate(double p, std::int64_t trials, std::uint64_t seed);

/// Thermal decoherence time hbar / kT ~ 0.76e-11 s / T[K].
double decoherence_timescale(double kelvin);

/// Quoted per-gate error threshold range for fault-tolerant concatenated
/// schemes. Reference values only; nothing here depends on them.
inline constexpr std::array<double, 2> kFaultToleranceThreshold = {1e-5, 1e-4};

}  // namespace qsim
