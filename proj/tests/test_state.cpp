#include <gtest/gtest.h>

#include <random>

#include "qsim/gates.hpp"
#include "qsim/serialize.hpp"
#include "qsim/state.hpp"
#include "test_support.hpp"

using namespace qsim;
using qsim::test::Vec;

TEST(BasisState, encodesQubitZeroAsLowBit) {
  const StateVector s1 = basis_state(1, 0);
  EXPECT_EQ(s1[0], Complex<double>(1));
  EXPECT_EQ(s1[1], Complex<double>(0));

  const StateVector s2 = basis_state(2, 3);
  for (Index i = 0; i < 4; ++i) EXPECT_EQ(s2[i], Complex<double>(i == 3 ? 1 : 0));

  // 5 = 0b101: qubit 0 and qubit 2 set.
  const StateVector s3 = basis_state(3, 5);
  EXPECT_EQ(s3[5], Complex<double>(1));
  EXPECT_DOUBLE_EQ(probability_of_one(s3, 0), 1.0);
  EXPECT_DOUBLE_EQ(probability_of_one(s3, 1), 0.0);
  EXPECT_DOUBLE_EQ(probability_of_one(s3, 2), 1.0);
}

TEST(BasisState, rejectsOutOfRangeIndex) {
  EXPECT_THROW(basis_state(2, 4), DomainError);
  EXPECT_THROW(basis_state(2, -1), DomainError);
  EXPECT_THROW(basis_state(0, 0), DomainError);
  EXPECT_THROW(basis_state(25, 0), ResourceError);
}

TEST(StateVector, rejectsUnnormalisedOrWrongLength) {
  Vec v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(StateVector(1, v), DomainError);
  EXPECT_THROW(StateVector(2, Vec::Zero(2)), DomainError);
  EXPECT_NO_THROW(StateVector::normalized(1, v));
}

TEST(InnerProduct, examples) {
  EXPECT_NEAR(std::abs(inner_product(basis_state(1, 0), basis_state(1, 0)) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(inner_product(basis_state(1, 0), basis_state(1, 1)), Complex<double>(0));
  const Complex<double> ip = inner_product(basis_state(1, 0), test::plus_state());
  EXPECT_NEAR(ip.real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(ip.imag(), 0.0, 1e-15);
  EXPECT_THROW(inner_product(basis_state(1, 0), basis_state(2, 0)), DomainError);
}

TEST(InnerProduct, conjugatesLeftArgument) {
  Vec v(2);
  v << Complex<double>(0, 1), 0;
  const StateVector i0(1, v);
  // <i0|0> = conj(i) = -i
  EXPECT_NEAR(std::abs(inner_product(i0, basis_state(1, 0)) - Complex<double>(0, -1)), 0, 1e-15);
}

TEST(ToDensity, examples) {
  const DensityMatrix r0 = to_density(basis_state(1, 0));
  EXPECT_EQ(r0(0, 0), Complex<double>(1));
  EXPECT_EQ(r0(1, 1), Complex<double>(0));

  const DensityMatrix rp = to_density(test::plus_state());
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(rp(i, j) - 0.5), 0.0, 1e-15);

  const DensityMatrix r3 = to_density(basis_state(2, 3));
  EXPECT_EQ(r3.matrix().cwiseAbs().sum(), 1.0);
  EXPECT_EQ(r3(3, 3), Complex<double>(1));
}

TEST(ToDensity, pureStatesHaveUnitPurity) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector v = random_state(1 + trial % 5, gen);
    EXPECT_NEAR(purity(to_density(v)), 1.0, 1e-10);
    EXPECT_TRUE(to_density(v).is_physical());
  }
}

TEST(DensityMatrix, validatesInvariants) {
  ComplexMatrix<double> m(2, 2);
  m << 0.5, 0.1, 0.2, 0.5;  // not Hermitian
  EXPECT_THROW(DensityMatrix(1, m), DomainError);
  m << 0.6, 0, 0, 0.6;  // trace 1.2
  EXPECT_THROW(DensityMatrix(1, m), DomainError);
  m << 1.5, 0, 0, -0.5;  // trace 1, Hermitian, but not PSD
  const DensityMatrix bad(1, m);
  EXPECT_FALSE(bad.is_positive());
  EXPECT_FALSE(bad.is_physical());
  EXPECT_THROW(DensityMatrix::maximally_mixed(13), ResourceError);
}

TEST(Purity, examples) {
  EXPECT_NEAR(purity(to_density(test::plus_state())), 1.0, 1e-15);
  EXPECT_NEAR(purity(DensityMatrix::maximally_mixed(1)), 0.5, 1e-15);
  ComplexMatrix<double> m = ComplexMatrix<double>::Zero(2, 2);
  m(0, 0) = 0.9;
  m(1, 1) = 0.1;
  EXPECT_NEAR(purity(DensityMatrix(1, m)), 0.82, 1e-15);
}

TEST(Purity, boundedByDimension) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector v = random_state(4, gen);
    const DensityMatrix r = partial_trace(to_density(v), {0, 2});
    const double p = purity(r);
    EXPECT_GE(p, 0.25 - 1e-12);
    EXPECT_LE(p, 1.0 + 1e-12);
  }
}

TEST(MeasureAll, deterministicEigenstate) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MeasurementRecord rec = measure_all(basis_state(1, 1), seed);
    EXPECT_EQ(rec.outcome_index, 1);
    EXPECT_DOUBLE_EQ(rec.probability, 1.0);
  }
}

TEST(MeasureAll, plusStateFrequency) {
  std::mt19937_64 gen(1234);
  const StateVector plus = test::plus_state();
  int zeros = 0;
  constexpr int kTrials = 100000;
  for (int t = 0; t < kTrials; ++t) zeros += measure_all(plus, gen).outcome_index == 0;
  const double f = static_cast<double>(zeros) / kTrials;
  EXPECT_GE(f, 0.494);
  EXPECT_LE(f, 0.506);
}

TEST(MeasureAll, bellStateNeverGivesOddParity) {
  Vec v = Vec::Zero(4);
  v[0] = v[3] = 1.0 / std::sqrt(2.0);
  const StateVector bell(2, v);
  std::mt19937_64 gen(3);
  for (int t = 0; t < 2000; ++t) {
    const MeasurementRecord rec = measure_all(bell, gen);
    EXPECT_TRUE(rec.outcome_index == 0 || rec.outcome_index == 3);
    EXPECT_NEAR(rec.probability, 0.5, 1e-12);
    EXPECT_EQ(rec.post_state[rec.outcome_index], Complex<double>(1));
  }
}

TEST(MeasureAll, sameSeedSameOutcome) {
  std::mt19937_64 gen(8);
  const StateVector v = random_state(6, gen);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_EQ(measure_all(v, seed).outcome_index, measure_all(v, seed).outcome_index);
  }
}

TEST(MeasureAll, statisticsMatchBornRule) {
  std::mt19937_64 gen(99);
  const StateVector v = random_state(3, gen);
  constexpr int kTrials = 50000;
  std::vector<int> counts(8, 0);
  for (int t = 0; t < kTrials; ++t) ++counts[measure_all(v, gen).outcome_index];
  for (Index j = 0; j < 8; ++j) {
    const double p = std::norm(v[j]);
    EXPECT_NEAR(static_cast<double>(counts[j]) / kTrials, p, test::four_sigma(p, kTrials) + 1e-12);
  }
}

TEST(MeasureQubit, bellCollapse) {
  Vec v = Vec::Zero(4);
  v[0] = v[3] = 1.0 / std::sqrt(2.0);
  const StateVector bell(2, v);
  bool saw_one = false;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const QubitMeasurement m = measure_qubit(bell, 0, seed);
    EXPECT_NEAR(m.probability, 0.5, 1e-12);
    const Index expect = m.bit ? 3 : 0;
    EXPECT_NEAR(std::abs(m.post_state[expect]), 1.0, 1e-12);
    saw_one |= m.bit == 1;
  }
  EXPECT_TRUE(saw_one);
}

TEST(MeasureQubit, productStateUnchanged) {
  const StateVector s = tensor(test::plus_state(), basis_state(1, 0));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const QubitMeasurement m = measure_qubit(s, 1, seed);
    EXPECT_EQ(m.bit, 0);
    EXPECT_LT(test::max_abs_diff(m.post_state.amplitudes(), s.amplitudes()), 1e-15);
  }
  const QubitMeasurement one = measure_qubit(basis_state(1, 1), 0, std::uint64_t{4});
  EXPECT_EQ(one.bit, 1);
  EXPECT_EQ(one.post_state[1], Complex<double>(1));
}

TEST(MeasureQubit, errors) {
  EXPECT_THROW(measure_qubit(basis_state(2, 0), 2, std::uint64_t{0}), DomainError);
  EXPECT_THROW(project_qubit(basis_state(1, 0), 0, 1), DomainError);
}

TEST(PartialTrace, singletReducesToIdentityOverTwo) {
  const DensityMatrix r = partial_trace(to_density(test::singlet()), {0});
  EXPECT_LT(test::max_abs_diff(r.matrix(), ComplexMatrix<double>::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_NEAR(purity(r), 0.5, 1e-15);
}

TEST(PartialTrace, productStateFactorises) {
  const StateVector s = tensor(basis_state(1, 0), test::plus_state());
  const DensityMatrix r = partial_trace(to_density(s), {1});
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(r(i, j) - 0.5), 0.0, 1e-15);
}

TEST(PartialTrace, randomProductStatesRecoverFactor) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int na = 1 + trial % 3;
    const int nb = 1 + (trial / 3) % 3;
    const StateVector a = random_state(na, gen);
    const StateVector b = random_state(nb, gen);
    const DensityMatrix joint = to_density(tensor(a, b));
    QubitList low, high;
    for (int q = 0; q < na; ++q) low.push_back(q);
    for (int q = 0; q < nb; ++q) high.push_back(na + q);
    EXPECT_LT(test::max_abs_diff(partial_trace(joint, low).matrix(), to_density(a).matrix()),
              1e-12);
    EXPECT_LT(test::max_abs_diff(partial_trace(joint, high).matrix(), to_density(b).matrix()),
              1e-12);
  }
}

TEST(PartialTrace, keepsTraceAndHermiticity) {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = to_density(random_state(4, gen));
    const DensityMatrix r = partial_trace(rho, {3, 1});
    EXPECT_NEAR(r.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(r.is_physical());
  }
}

TEST(PartialTrace, agreesWithReducedDensityFromAmplitudes) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector v = random_state(5, gen);
    const QubitList keep = test::random_targets(1 + trial % 4, 5, gen);
    EXPECT_LT(test::max_abs_diff(partial_trace(to_density(v), keep).matrix(),
                                    reduced_density(v, keep).matrix()),
              1e-12);
  }
}

TEST(PartialTrace, rejectsBadKeepSets) {
  const DensityMatrix rho = to_density(basis_state(2, 0));
  EXPECT_THROW(partial_trace(rho, {}), DomainError);
  EXPECT_THROW(partial_trace(rho, {0, 1}), DomainError);
  EXPECT_THROW(partial_trace(rho, {2}), DomainError);
  EXPECT_THROW(partial_trace(rho, {0, 0}), DomainError);
}

TEST(Serialize, jsonShapeAndRoundTrip) {
  std::mt19937_64 gen(4);
  const StateVector v = random_state(3, gen);
  const nlohmann::json j = state_to_json(v);
  EXPECT_EQ(j.at("n"), 3);
  EXPECT_EQ(j.at("re").size(), 8u);
  EXPECT_EQ(j.at("im").size(), 8u);
  const StateVector back = state_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_LT(test::max_abs_diff(back.amplitudes(), v.amplitudes()), 1e-15);
  EXPECT_THROW(state_from_json(nlohmann::json{{"n", 1}}), DomainError);
}

TEST(FloatScalar, coreTypesInstantiate) {
  const BasicStateVector<float> s = basis_state<float>(2, 0);
  const auto bell = apply(apply(s, hadamard<float>(), {0}), cnot<float>(), {0, 1});
  EXPECT_NEAR(std::norm(bell[3]), 0.5f, 1e-6f);
  const auto r = partial_trace(to_density(bell), {0});
  EXPECT_NEAR(purity(r), 0.5f, 1e-5f);
}
