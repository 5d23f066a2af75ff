#include <gtest/gtest.h>

#include <random>

#include "qsim/algorithms.hpp"
#include "qsim/circuit.hpp"
#include "test_support.hpp"

using namespace qsim;
using qsim::test::max_abs_diff;

namespace {

ParseError parse_error_of(std::string_view text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "expected a parse error for:\n" << text;
  return ParseError(0, 0, "none");
}

}  // namespace

TEST(Parse, bellCircuit) {
  const Circuit c = parse("qubits 2\nh 0\ncnot 0 1\n");
  Circuit expect(2);
  expect.add(GateKind::H, {0});
  expect.add(GateKind::Cnot, {0, 1});
  EXPECT_EQ(c, expect);
}

TEST(Parse, adderSource) {
  EXPECT_EQ(parse("qubits 3\nccnot 0 1 2\ncnot 0 1\n"), adder_circuit());
}

TEST(Parse, commentsCrlfAndParameters) {
  const Circuit c = parse(
      "# header comment\r\n"
      "\r\n"
      "qubits 3   # three qubits\r\n"
      "phase 2 theta=0.5\r\n"
      "u 1 theta=1 phi=-2.5 lam=3e-1\r\n"
      "c phase 0 2 theta=1.5707963267948966\r\n"
      "c c x 0 1 2\r\n"
      "swap 0 2");
  ASSERT_EQ(c.size(), 5u);
  EXPECT_EQ(c.ops()[0].params.theta, 0.5);
  EXPECT_EQ(c.ops()[1].params, (GateParams{1.0, -2.5, 0.3}));
  EXPECT_EQ(c.ops()[2].controls, QubitList{0});
  EXPECT_EQ(c.ops()[2].targets, QubitList{2});
  EXPECT_EQ(c.ops()[3].controls, (QubitList{0, 1}));
  EXPECT_EQ(c.ops()[3].kind, GateKind::X);
  EXPECT_EQ(c.ops()[4].kind, GateKind::Swap);
}

TEST(Parse, errorsCarryPosition) {
  const ParseError range = parse_error_of("qubits 1\nh 5\n");
  EXPECT_EQ(range.line(), 2);
  EXPECT_EQ(range.column(), 3);

  const ParseError unknown = parse_error_of("qubits 2\n  foo 0\n");
  EXPECT_EQ(unknown.line(), 2);
  EXPECT_EQ(unknown.column(), 3);

  const ParseError arity = parse_error_of("qubits 2\ncnot 0\n");
  EXPECT_EQ(arity.line(), 2);

  const ParseError dup = parse_error_of("qubits 2\ncnot 1 1\n");
  EXPECT_EQ(dup.line(), 2);
  EXPECT_EQ(dup.column(), 8);

  const ParseError header = parse_error_of("# nothing\nh 0\n");
  EXPECT_EQ(header.line(), 2);
  EXPECT_EQ(parse_error_of("").line(), 1);
}

TEST(Parse, rejectsMalformedParameters) {
  parse_error_of("qubits 1\nphase 0\n");                     // missing theta
  parse_error_of("qubits 1\nphase 0 theta=abc\n");           // not a number
  parse_error_of("qubits 1\nh 0 theta=1\n");                 // h takes none
  parse_error_of("qubits 1\nphase 0 theta=1 theta=2\n");     // repeated
  parse_error_of("qubits 1\nu 0 theta=1 phi=2\n");           // lam missing
  parse_error_of("qubits 2\nphase theta=1 0\n");             // index after params
  parse_error_of("qubits 0\n");
  parse_error_of("qubits 2\nqubits 2\n");
  parse_error_of("qubits 2\nc\n");
  parse_error_of("qubits 2\nh -1\n");
}

TEST(Render, roundTripsRandomCircuits) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Circuit c = test::random_circuit(1 + trial % 6, 30, gen);
    EXPECT_EQ(parse(render(c)), c) << render(c);
  }
}

TEST(Render, rejectsCustomOps) {
  Circuit c(1);
  c.add(CircuitOp::from_gate(hadamard(), {0}));
  EXPECT_THROW(render(c), DomainError);
}

TEST(Circuit, validatesOps) {
  Circuit c(2);
  EXPECT_THROW(c.add(GateKind::Cnot, {0, 2}), DomainError);
  EXPECT_THROW(c.add(GateKind::H, {0}, {}, {0}), DomainError);
  EXPECT_THROW(c.add(GateKind::Cnot, {0}), DomainError);
}

TEST(Run, adderTruthTable) {
  const Circuit adder = adder_circuit();
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const StateVector out = run(adder, basis_state(3, x | (y << 1)));
      const Index expect = x | ((x ^ y) << 1) | ((x & y) << 2);
      EXPECT_EQ(out[expect], Complex<double>(1)) << x << y;
    }
  }
}

TEST(Run, emptyCircuitIsIdentity) {
  std::mt19937_64 gen(1);
  const StateVector v = random_state(3, gen);
  EXPECT_EQ(run(Circuit(3), v).amplitudes(), v.amplitudes());
  EXPECT_THROW(run(Circuit(2), v), DomainError);
}

TEST(Inverse, examples) {
  Circuit h(1);
  h.add(GateKind::H, {0});
  EXPECT_EQ(inverse(h), h);

  Circuit p(1);
  p.add(GateKind::Phase, {0}, {0.8, 0, 0});
  Circuit p_inv(1);
  p_inv.add(GateKind::Phase, {0}, {-0.8, 0, 0});
  EXPECT_EQ(inverse(p), p_inv);
}

TEST(Inverse, undoesQftOnRandomStates) {
  const Circuit qft = qft_circuit(3);
  const Circuit inv = inverse(qft);
  std::mt19937_64 gen(12);
  for (int i = 0; i < 50; ++i) {
    const StateVector v = random_state(3, gen);
    EXPECT_LT(max_abs_diff(run(inv, run(qft, v)).amplitudes(), v.amplitudes()), 1e-9);
  }
}

TEST(Inverse, undoesRandomCircuitsIncludingCustomGates) {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 6;
    Circuit c = test::random_circuit(n, 60, gen);
    c.add(CircuitOp::from_gate(Gate(2, test::random_unitary(4, gen), "r"),
                               test::random_targets(2, n, gen)));
    const StateVector v = random_state(n, gen);
    EXPECT_LT(max_abs_diff(run(inverse(c), run(c, v)).amplitudes(), v.amplitudes()), 1e-8);
  }
}

TEST(UnitaryOf, smallExamples) {
  Circuit h(1);
  h.add(GateKind::H, {0});
  EXPECT_LT(max_abs_diff(unitary_of(h).matrix(), hadamard().matrix()), 1e-15);

  Circuit cx(2);
  cx.add(GateKind::Cnot, {0, 1});
  EXPECT_TRUE(is_classical_reversible(unitary_of(cx)));
  EXPECT_EQ(unitary_of(cx).matrix(), cnot().matrix());

  EXPECT_THROW(unitary_of(Circuit(11)), ResourceError);
}

TEST(UnitaryOf, matchesDenseProductOracle) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + trial % 5;
    const Circuit c = test::random_circuit(n, 25, gen);
    EXPECT_LT(max_abs_diff(unitary_of(c).matrix(), test::dense_circuit_matrix(c)), 1e-12);
  }
}

TEST(UnitaryOf, qft3IsTheDft) {
  EXPECT_LT(max_abs_diff(unitary_of(qft_circuit(3)).matrix(), test::dft_matrix(3)), 1e-10);
}
