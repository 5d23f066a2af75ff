#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace qsim {

using Index = std::int64_t;

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using AmplitudeVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using ComplexMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

/// Raised when an argument lies outside the domain of an operation
/// (bad index, dimension mismatch, invalid probability, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a request would exceed the size caps of the dense types.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr int kMaxStateQubits = 24;
inline constexpr int kMaxDensityQubits = 12;

// Numerical tolerances per scalar type. The double values are the contract;
// float gets looser bounds so the same code paths stay usable.
template <typename Real>
struct Tolerance;

template <>
struct Tolerance<double> {
  static constexpr double algebraic = 1e-10;
  static constexpr double eigenvalue = 1e-9;
  static constexpr double impossible_branch = 1e-12;
  static constexpr double zero_eigenvalue = 1e-12;
};

template <>
struct Tolerance<float> {
  static constexpr float algebraic = 1e-5f;
  static constexpr float eigenvalue = 1e-4f;
  static constexpr float impossible_branch = 1e-7f;
  static constexpr float zero_eigenvalue = 1e-6f;
};

inline constexpr Index dimension_of(int num_qubits) { return Index{1} << num_qubits; }

/// SplitMix64 finalizer, used to derive independent per-trial seeds from a
/// master seed.
inline constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix_seed(master ^ mix_seed(stream + 1));
}

}  // namespace qsim
