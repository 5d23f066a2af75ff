#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsim/state.hpp"

namespace qsim {

/// The two conjugate bases: computational {|0>, |1>} and Hadamard {|+>, |->}.
enum class Basis { Computational, Hadamard };

enum class Eavesdropper { None, InterceptResend };

inline char basis_symbol(Basis b) { return b == Basis::Computational ? 'Z' : 'X'; }

struct Bb84Config {
  Index raw_length = 4096;
  Eavesdropper eavesdropper = Eavesdropper::None;
  double qber_sample_fraction = 0.25;  ///< share of the sifted key disclosed
  double detection_threshold = 0.12;   ///< abort when measured QBER exceeds this
  std::uint64_t seed = 0;

  /// Throws DomainError unless raw_length >= 8 and both fractions lie in (0, 1).
  void validate() const;
};

/// Audit record of one transmitted qubit.
struct Bb84Round {
  int bit;                          ///< sender's raw bit
  Basis basis_a;                    ///< sender's preparation basis
  std::optional<Basis> basis_e;     ///< eavesdropper's basis, if present
  Basis basis_b;                    ///< receiver's measurement basis
  int outcome;                      ///< receiver's measured bit
  bool sifted;                      ///< bases matched
  bool disclosed;                   ///< published for QBER estimation
};

struct Bb84Result {
  Index raw_length = 0;
  Index sifted_length = 0;
  Index sample_size = 0;
  Index sample_errors = 0;
  double measured_qber = 0.0;
  bool eavesdropping_detected = false;
  bool privacy_amplified = false;
  std::vector<int> final_key;     ///< sender's key; empty when detected
  std::vector<int> receiver_key;  ///< receiver's key; empty when detected
  std::vector<Bb84Round> transcript;
};

/// Prepares a one-qubit state encoding `bit` in `basis`.
StateVector bb84_prepare(int bit, Basis basis);

/// Single-process BB84 session: random bits and bases, optional
/// intercept-resend attack, sifting, QBER estimation on a random sample and
/// detection against the threshold. When 0 < QBER <= threshold the remaining
/// key is halved by XOR-ing adjacent pairs.
Bb84Result run_bb84(const Bb84Config& cfg);

/// Packs bits MSB-first into lowercase hex; a trailing partial nibble is
/// padded with zeros.
std::string key_hex(const std::vector<int>& bits);

struct DisturbanceReport {
  double overlap;            ///< |<u|v>|
  double p_u;                ///< probability v is found as u
  double p_u_perp;           ///< probability v is found as the state orthogonal to u
  double expected_fidelity;  ///< sum over outcomes of p_k |<v|post_k>|^2
  bool disturbed;            ///< expected_fidelity < 1
};

/// Measures v in the orthonormal basis {u, u_perp} and reports how much the
/// collapse disturbs v. Only orthogonal or identical pairs survive intact.
DisturbanceReport eavesdrop_disturbance_demo(const StateVector& u, const StateVector& v);

}  // namespace qsim
