#ifndef RIGTFD_RANDOM_HPP
#define RIGTFD_RANDOM_HPP

// Reproducible random matrices.
//
// The generator is splitmix64. Uniform doubles take the top 53 bits
// (u = (x >> 11) * 2^-53); normals use the Box-Muller cosine branch
// sqrt(-2 ln(1 - u1)) cos(2 pi u2), one normal per two uniforms. These
// transforms are fixed here instead of using <random> distributions so
// that a seed reproduces the same matrices on every platform.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "rigtfd/linalg.hpp"

namespace rigtfd {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::complex<double> complex_normal() {
    const double re = normal();
    return {re, normal()};
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream seed from a base seed and a stream index.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mix(seed ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
  return mix();
}

/// Ginibre matrix: iid standard complex normal entries (real and
/// imaginary parts each N(0, 1)), drawn column-major.
inline ComplexMatrix random_ginibre(SplitMix64& rng, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  return m;
}

inline ComplexVector random_vector(SplitMix64& rng, Eigen::Index n) {
  return random_ginibre(rng, n, 1);
}

/// (G + G^H) / 2 for a Ginibre draw G.
inline ComplexMatrix random_hermitian(SplitMix64& rng, Eigen::Index n) {
  const ComplexMatrix g = random_ginibre(rng, n, n);
  return (g + g.adjoint()) / 2.0;
}

/// Haar-distributed unitary: QR of a Ginibre draw with the phases of R's
/// diagonal absorbed into Q.
inline ComplexMatrix random_unitary(SplitMix64& rng, Eigen::Index n) {
  const ComplexMatrix g = random_ginibre(rng, n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace rigtfd

#endif  // RIGTFD_RANDOM_HPP
