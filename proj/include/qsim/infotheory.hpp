#pragma once

#include <cmath>
#include <vector>

#include "qsim/state.hpp"

namespace qsim {

/// Probability distribution over a finite alphabet.
class ProbDist {
 public:
  /// Entries must be nonnegative and sum to 1 within 1e-10.
  explicit ProbDist(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

/// Joint distribution p(x, y) stored as rows over x, columns over y.
class JointDist {
 public:
  explicit JointDist(Eigen::MatrixXd table);

  const Eigen::MatrixXd& table() const { return table_; }
  ProbDist marginal_x() const;
  ProbDist marginal_y() const;

 private:
  Eigen::MatrixXd table_;
};

/// -sum p log2 p, with 0 log 0 = 0. Bits.
double shannon_entropy(const ProbDist& d);

/// S(X, Y) of the joint table.
double joint_entropy(const JointDist& j);

/// sum p(x,y) log2[p(x,y) / (p(x) p(y))].
double mutual_information(const JointDist& j);

/// 1 - S({p, 1 - p}): bits per use of a binary symmetric channel.
double bsc_capacity(double flip_probability);

/// n S(X): bits needed to send n messages drawn from d.
double compression_limit(const ProbDist& d, double num_messages);

/// -sum lambda log2 lambda over the eigenvalues of rho; eigenvalues below
/// 1e-12 count as zero.
template <typename Real>
Real von_neumann_entropy(const BasicDensityMatrix<Real>& rho) {
  const auto lambdas = rho.eigenvalues();
  Real s = 0;
  for (Index i = 0; i < lambdas.size(); ++i) {
    const Real l = lambdas[i];
    if (l > Tolerance<Real>::zero_eigenvalue) s -= l * std::log2(l);
  }
  return s;
}

/// E(A:B) = S(rho_A) + S(rho_B) - S(rho_AB) for the cut `partition` versus
/// its complement. For a pure state S(rho_AB) = 0 and E = 2 S(rho_A).
/// The reduced states are built straight from the amplitudes, so n may exceed
/// the density-matrix cap as long as each side fits.
double entanglement_entropy(const StateVector& v, const QubitList& partition);

/// Same quantity for a general (possibly mixed) density matrix, with every
/// term computed by partial trace and diagonalisation.
double entanglement_entropy(const DensityMatrix& rho, const QubitList& partition);

}  // namespace qsim
