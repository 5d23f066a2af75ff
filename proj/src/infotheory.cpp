#include "qsim/infotheory.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace qsim {

namespace {

constexpr double kSumTolerance = 1e-10;

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

QubitList complement_of(const QubitList& part, int num_qubits) {
  QubitList rest;
  for (int q = 0; q < num_qubits; ++q) {
    if (std::find(part.begin(), part.end(), q) == part.end()) rest.push_back(q);
  }
  return rest;
}

}  // namespace

ProbDist::ProbDist(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw DomainError("distribution must have at least one outcome");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw DomainError("negative probability " + std::to_string(p));
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw DomainError("probabilities sum to " + std::to_string(total));
  }
}

JointDist::JointDist(Eigen::MatrixXd table) : table_(std::move(table)) {
  if (table_.size() == 0) throw DomainError("joint table is empty");
  if (!(table_.minCoeff() >= 0.0)) throw DomainError("joint table has a negative entry");
  if (std::abs(table_.sum() - 1.0) > kSumTolerance) {
    throw DomainError("joint table sums to " + std::to_string(table_.sum()));
  }
}

ProbDist JointDist::marginal_x() const {
  const Eigen::VectorXd px = table_.rowwise().sum();
  return ProbDist(std::vector<double>(px.data(), px.data() + px.size()));
}

ProbDist JointDist::marginal_y() const {
  const Eigen::VectorXd py = table_.colwise().sum().transpose();
  return ProbDist(std::vector<double>(py.data(), py.data() + py.size()));
}

double shannon_entropy(const ProbDist& d) {
  double s = 0.0;
  for (double p : d.probs()) s -= plogp(p);
  return s;
}

double joint_entropy(const JointDist& j) {
  double s = 0.0;
  for (Index i = 0; i < j.table().size(); ++i) s -= plogp(j.table().data()[i]);
  return s;
}

double mutual_information(const JointDist& j) {
  const auto px = j.marginal_x().probs();
  const auto py = j.marginal_y().probs();
  double mi = 0.0;
  for (Index x = 0; x < j.table().rows(); ++x) {
    for (Index y = 0; y < j.table().cols(); ++y) {
      const double pxy = j.table()(x, y);
      if (pxy > 0.0) mi += pxy * std::log2(pxy / (px[x] * py[y]));
    }
  }
  return mi;
}

double bsc_capacity(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("flip probability must lie in [0, 1], got " + std::to_string(p));
  }
  return 1.0 - shannon_entropy(ProbDist({p, 1.0 - p}));
}

double compression_limit(const ProbDist& d, double num_messages) {
  if (!(num_messages >= 0.0)) throw DomainError("message count must be nonnegative");
  return num_messages * shannon_entropy(d);
}

double entanglement_entropy(const StateVector& v, const QubitList& partition) {
  const QubitList rest = complement_of(partition, v.num_qubits());
  const double sa = von_neumann_entropy(reduced_density(v, partition));
  const double sb = von_neumann_entropy(reduced_density(v, rest));
  return sa + sb;  // S(rho_AB) = 0 for a pure state
}

double entanglement_entropy(const DensityMatrix& rho, const QubitList& partition) {
  const QubitList rest = complement_of(partition, rho.num_qubits());
  const double sa = von_neumann_entropy(partial_trace(rho, partition));
  const double sb = von_neumann_entropy(partial_trace(rho, rest));
  return sa + sb - von_neumann_entropy(rho);
}

}  // namespace qsim
