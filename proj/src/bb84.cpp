#include "qsim/bb84.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qsim/gates.hpp"

namespace qsim {

void Bb84Config::validate() const {
  if (raw_length < 8) throw DomainError("raw_length must be at least 8");
  if (!(qber_sample_fraction > 0.0 && qber_sample_fraction < 1.0)) {
    throw DomainError("qber_sample_fraction must lie in (0, 1)");
  }
  if (!(detection_threshold > 0.0 && detection_threshold < 1.0)) {
    throw DomainError("detection_threshold must lie in (0, 1)");
  }
}

StateVector bb84_prepare(int bit, Basis basis) {
  StateVector s = basis_state(1, bit);
  if (basis == Basis::Hadamard) apply_inplace(s, hadamard(), {0});
  return s;
}

namespace {

struct Reading {
  int bit;
  StateVector collapsed;  ///< post-measurement state in the lab frame
};

/// Measures qubit 0 in `basis` by rotating the basis onto the computational
/// one, sampling, and rotating back.
Reading measure_in(const StateVector& s, Basis basis, std::mt19937_64& gen) {
  if (basis == Basis::Computational) {
    QubitMeasurement m = measure_qubit(s, 0, gen);
    return {m.bit, std::move(m.post_state)};
  }
  const Gate h = hadamard();
  QubitMeasurement m = measure_qubit(apply(s, h, {0}), 0, gen);
  return {m.bit, apply(std::move(m.post_state), h, {0})};
}

Basis random_basis(std::mt19937_64& gen) {
  return std::bernoulli_distribution(0.5)(gen) ? Basis::Hadamard : Basis::Computational;
}

}  // namespace

Bb84Result run_bb84(const Bb84Config& cfg) {
  cfg.validate();
  std::mt19937_64 gen(cfg.seed);
  std::bernoulli_distribution coin(0.5);

  Bb84Result result;
  result.raw_length = cfg.raw_length;
  result.transcript.reserve(static_cast<std::size_t>(cfg.raw_length));

  std::vector<std::size_t> sifted_rounds;
  for (Index i = 0; i < cfg.raw_length; ++i) {
    Bb84Round round{};
    round.bit = coin(gen) ? 1 : 0;
    round.basis_a = random_basis(gen);
    StateVector in_flight = bb84_prepare(round.bit, round.basis_a);

    if (cfg.eavesdropper == Eavesdropper::InterceptResend) {
      round.basis_e = random_basis(gen);
      // Eve forwards whatever her measurement collapsed the qubit to.
      in_flight = measure_in(in_flight, *round.basis_e, gen).collapsed;
    }

    round.basis_b = random_basis(gen);
    round.outcome = measure_in(in_flight, round.basis_b, gen).bit;
    round.sifted = round.basis_a == round.basis_b;
    if (round.sifted) sifted_rounds.push_back(result.transcript.size());
    result.transcript.push_back(round);
  }
  result.sifted_length = static_cast<Index>(sifted_rounds.size());

  // Publicly compare a random sample of the sifted key.
  std::vector<std::size_t> order = sifted_rounds;
  std::shuffle(order.begin(), order.end(), gen);
  const Index sample = sifted_rounds.empty()
                           ? 0
                           : std::clamp<Index>(std::llround(cfg.qber_sample_fraction *
                                                            static_cast<double>(order.size())),
                                               1, static_cast<Index>(order.size()));
  for (Index k = 0; k < sample; ++k) {
    Bb84Round& r = result.transcript[order[static_cast<std::size_t>(k)]];
    r.disclosed = true;
    if (r.bit != r.outcome) ++result.sample_errors;
  }
  result.sample_size = sample;
  result.measured_qber =
      sample > 0 ? static_cast<double>(result.sample_errors) / static_cast<double>(sample) : 0.0;
  result.eavesdropping_detected = result.measured_qber > cfg.detection_threshold;
  if (result.eavesdropping_detected) return result;

  for (std::size_t idx : sifted_rounds) {
    const Bb84Round& r = result.transcript[idx];
    if (r.disclosed) continue;
    result.final_key.push_back(r.bit);
    result.receiver_key.push_back(r.outcome);
  }

  if (result.measured_qber > 0.0) {
    // Parity distillation: keep the XOR of each adjacent pair.
    const auto halve = [](const std::vector<int>& key) {
      std::vector<int> out;
      for (std::size_t i = 0; i + 1 < key.size(); i += 2) out.push_back(key[i] ^ key[i + 1]);
      return out;
    };
    result.final_key = halve(result.final_key);
    result.receiver_key = halve(result.receiver_key);
    result.privacy_amplified = true;
  }
  return result;
}

std::string key_hex(const std::vector<int>& bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int nibble = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      nibble <<= 1;
      if (i + j < bits.size()) nibble |= bits[i + j] & 1;
    }
    out.push_back(kDigits[nibble]);
  }
  return out;
}

DisturbanceReport eavesdrop_disturbance_demo(const StateVector& u, const StateVector& v) {
  if (u.num_qubits() != 1 || v.num_qubits() != 1) {
    throw DomainError("disturbance demo expects single-qubit states");
  }
  // Columns u and u_perp form the measurement basis; W^dagger maps it onto
  // the computational basis.
  ComplexMatrix<double> w(2, 2);
  w << u[0], -std::conj(u[1]), u[1], std::conj(u[0]);
  const Gate basis_change(1, w, "basis");
  const Gate to_computational = dagger(basis_change);

  const StateVector rotated = apply(v, to_computational, {0});
  const double p_perp = probability_of_one(rotated, 0);
  const double probs[2] = {1.0 - p_perp, p_perp};

  double expected = 0.0;
  for (int outcome = 0; outcome < 2; ++outcome) {
    if (probs[outcome] < Tolerance<double>::impossible_branch) continue;
    const StateVector post = apply(project_qubit(rotated, 0, outcome), basis_change, {0});
    expected += probs[outcome] * fidelity(v, post);
  }
  return {std::abs(inner_product(u, v)), probs[0], probs[1], expected,
          expected < 1.0 - Tolerance<double>::algebraic};
}

}  // namespace qsim
