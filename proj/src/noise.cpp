#include "qsim/noise.hpp"

#include <cmath>
#include <random>
#include <span>
#include <string>

namespace qsim {

NoiseChannel::NoiseChannel(ChannelKind k, double s) : kind(k), strength(s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("channel strength must lie in [0, 1], got " + std::to_string(s));
  }
}

namespace {

void apply_to_columns(ComplexMatrix<double>& m, int num_qubits, const Gate& g,
                      const QubitList& targets) {
  for (Index c = 0; c < m.cols(); ++c) {
    apply_matrix(std::span<Complex<double>>(m.col(c).data(), static_cast<std::size_t>(m.rows())),
                 num_qubits, g.matrix(), targets);
  }
}

}  // namespace

DensityMatrix conjugate(const DensityMatrix& rho, const Gate& g, const QubitList& targets) {
  ComplexMatrix<double> m = rho.matrix();
  apply_to_columns(m, rho.num_qubits(), g, targets);  // U rho
  m.adjointInPlace();                                 // rho U^dagger
  apply_to_columns(m, rho.num_qubits(), g, targets);  // U rho U^dagger
  return DensityMatrix(rho.num_qubits(), std::move(m));
}

DensityMatrix apply_channel(const DensityMatrix& rho, const NoiseChannel& ch, int q) {
  detail::check_qubit_index(q, rho.num_qubits());
  const double p = ch.strength;
  switch (ch.kind) {
    case ChannelKind::BitFlip:
      return DensityMatrix(rho.num_qubits(),
                           (1.0 - p) * rho.matrix() +
                               p * conjugate(rho, pauli(Pauli::X), {q}).matrix());
    case ChannelKind::PhaseFlip:
      return DensityMatrix(rho.num_qubits(),
                           (1.0 - p) * rho.matrix() +
                               p * conjugate(rho, pauli(Pauli::Z), {q}).matrix());
    case ChannelKind::Depolarizing: {
      const ComplexMatrix<double> mixed = conjugate(rho, pauli(Pauli::X), {q}).matrix() +
                                          conjugate(rho, pauli(Pauli::Y), {q}).matrix() +
                                          conjugate(rho, pauli(Pauli::Z), {q}).matrix();
      return DensityMatrix(rho.num_qubits(), (1.0 - p) * rho.matrix() + (p / 3.0) * mixed);
    }
    case ChannelKind::Dephasing: {
      const Index mask = Index{1} << q;
      ComplexMatrix<double> m = rho.matrix();
      for (Index c = 0; c < m.cols(); ++c) {
        for (Index r = 0; r < m.rows(); ++r) {
          if ((r & mask) != (c & mask)) m(r, c) *= (1.0 - p);
        }
      }
      return DensityMatrix(rho.num_qubits(), std::move(m));
    }
  }
  throw DomainError("unknown channel kind");
}

std::vector<Pauli> sample_pauli_error(const NoiseChannel& ch, int num_qubits,
                                      std::uint64_t seed) {
  if (num_qubits < 1) throw DomainError("need at least one qubit");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Pauli> out(static_cast<std::size_t>(num_qubits), Pauli::I);
  const double p = ch.kind == ChannelKind::Dephasing ? ch.strength / 2.0 : ch.strength;
  for (Pauli& e : out) {
    const double r = uniform(gen);
    if (r >= p) continue;
    switch (ch.kind) {
      case ChannelKind::BitFlip: e = Pauli::X; break;
      case ChannelKind::PhaseFlip:
      case ChannelKind::Dephasing: e = Pauli::Z; break;
      case ChannelKind::Depolarizing: {
        const double third = r / p;  // uniform on [0, 1) given an error
        e = third < 1.0 / 3.0 ? Pauli::X : third < 2.0 / 3.0 ? Pauli::Y : Pauli::Z;
        break;
      }
    }
  }
  return out;
}

StateVector encode_bitflip3(const StateVector& psi) {
  if (psi.num_qubits() != 1) throw DomainError("encoder expects a one-qubit state");
  StateVector s = tensor(psi, basis_state(2, 0));
  const Gate cx = cnot();
  apply_inplace(s, cx, {0, 1});
  apply_inplace(s, cx, {0, 2});
  return s;
}

StateVector decode_bitflip3(const StateVector& codeword) {
  if (codeword.num_qubits() != 3) throw DomainError("decoder expects three qubits");
  StateVector s = codeword;
  const Gate cx = cnot();
  apply_inplace(s, cx, {0, 2});
  apply_inplace(s, cx, {0, 1});
  if (probability_of_one(s, 1) > 1e-9 || probability_of_one(s, 2) > 1e-9) {
    throw DomainError("state is not a codeword of the bit-flip code");
  }
  AmplitudeVector<double> amps(2);
  amps << s[0], s[1];
  return StateVector::normalized(1, std::move(amps));
}

int syndrome_to_qubit(int s01, int s12) {
  if (s01 && s12) return 1;
  if (s01) return 0;
  if (s12) return 2;
  return -1;
}

SyndromeResult syndrome_correct(const StateVector& state, std::uint64_t seed) {
  if (state.num_qubits() != 3) throw DomainError("syndrome extraction expects three qubits");
  std::mt19937_64 gen(seed);

  StateVector s = tensor(state, basis_state(2, 0));
  const Gate cx = cnot();
  apply_inplace(s, cx, {0, 3});
  apply_inplace(s, cx, {1, 3});
  apply_inplace(s, cx, {1, 4});
  apply_inplace(s, cx, {2, 4});

  const QubitMeasurement m3 = measure_qubit(s, 3, gen);
  const QubitMeasurement m4 = measure_qubit(m3.post_state, 4, gen);
  s = m4.post_state;

  const int target = syndrome_to_qubit(m3.bit, m4.bit);
  if (target >= 0) apply_inplace(s, pauli(Pauli::X), {target});

  // Ancillas are now in a definite basis state; drop them.
  const Index ancilla_offset = (Index{m3.bit} << 3) | (Index{m4.bit} << 4);
  AmplitudeVector<double> data(8);
  for (Index i = 0; i < 8; ++i) data[i] = s[i | ancilla_offset];
  return {m3.bit, m4.bit, target, StateVector::normalized(3, std::move(data))};
}

double QecTrialStats::predicted_rate() const {
  const double p = physical_p;
  return 3.0 * p * p - 2.0 * p * p * p;
}

QecTrialStats logical_error_rate(double p, std::int64_t trials, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("flip probability must lie in [0, 1]");
  if (trials < 1) throw DomainError("need at least one trial");
  const Gate x = pauli(Pauli::X);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  std::int64_t failures = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    std::mt19937_64 gen(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const StateVector codeword = encode_bitflip3(random_state(1, gen));
    StateVector noisy = codeword;
    for (int q = 0; q < 3; ++q) {
      if (uniform(gen) < p) apply_inplace(noisy, x, {q});
    }
    const SyndromeResult fixed = syndrome_correct(noisy, gen());
    if (fidelity(codeword, fixed.state) < 1.0 - 1e-9) ++failures;
  }
  return {trials, p, failures, static_cast<double>(failures) / static_cast<double>(trials)};
}

double decoherence_timescale(double kelvin) {
  if (!(kelvin > 0.0) || !std::isfinite(kelvin)) {
    throw DomainError("temperature must be positive, got " + std::to_string(kelvin));
  }
  return 0.76e-11 / kelvin;
}

}  // namespace qsim
