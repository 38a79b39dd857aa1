#ifndef RIGTFD_LINALG_HPP
#define RIGTFD_LINALG_HPP

// Dense complex linear algebra on Eigen matrices: Kronecker products,
// adjoints, a cyclic Jacobi eigensolver for Hermitian matrices and the
// spectral matrix functions built on it.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "rigtfd/error.hpp"

namespace rigtfd {

template <typename Real = double>
using Matrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real = double>
using Vector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real = double>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = Matrix<double>;
using ComplexVector = Vector<double>;

/// Inputs whose max |a - a^H| entry exceeds this are rejected as non-Hermitian.
inline constexpr double kHermitianTolerance = 1e-10;
/// Eigenvalues below minus this are rejected by matrix_sqrt_psd.
inline constexpr double kPsdTolerance = 1e-12;

template <typename Derived>
using PlainOf = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what = "matrix") {
  if (a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << what << " is " << a.rows() << "x" << a.cols();
    throw Error(ErrorKind::NonSquare, msg.str());
  }
}

/// Largest entry of |a - a^H|.
template <typename Derived>
auto hermitian_deviation(const Eigen::MatrixBase<Derived>& a) {
  require_square(a);
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (a.size() == 0) return Real(0);
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& a,
                       double tolerance = kHermitianTolerance,
                       ErrorKind kind = ErrorKind::NotHermitian) {
  const auto dev = hermitian_deviation(a);
  if (!(dev <= tolerance)) {
    std::ostringstream msg;
    msg << "max |a - a^H| = " << static_cast<double>(dev) << " exceeds " << tolerance;
    throw Error(kind, msg.str());
  }
}

template <typename DerivedA, typename DerivedB>
PlainOf<DerivedA> kron(const Eigen::MatrixBase<DerivedA>& a,
                       const Eigen::MatrixBase<DerivedB>& b) {
  PlainOf<DerivedA> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Derived>
PlainOf<Derived> adjoint(const Eigen::MatrixBase<Derived>& a) {
  return a.adjoint();
}

template <typename Derived>
typename Derived::Scalar trace(const Eigen::MatrixBase<Derived>& a) {
  require_square(a);
  return a.trace();
}

/// The antilinear conjugation C, fixed to entrywise conjugation in the
/// standard basis.
template <typename Derived>
PlainOf<Derived> conj_c(const Eigen::MatrixBase<Derived>& x) {
  return x.conjugate();
}

template <typename Real = double>
struct HermitianEigen {
  RealVector<Real> eigenvalues;  // ascending
  Matrix<Real> eigenvectors;     // orthonormal columns
};

namespace detail {

/// One (p, q) complex Jacobi rotation A <- G^H A G, V <- V G with
/// G = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on the (p, q) plane.
template <typename Real>
void jacobi_rotate(Matrix<Real>& a, Matrix<Real>& v, Eigen::Index p, Eigen::Index q) {
  using Complex = std::complex<Real>;
  const Complex apq = a(p, q);
  const Real mag = std::abs(apq);
  if (mag == Real(0)) return;
  const Complex phase = apq / mag;
  const Real app = std::real(a(p, p));
  const Real aqq = std::real(a(q, q));
  const Real tau = (aqq - app) / (Real(2) * mag);
  const Real t = (tau >= Real(0) ? Real(1) : Real(-1)) /
                 (std::abs(tau) + std::sqrt(Real(1) + tau * tau));
  const Real c = Real(1) / std::sqrt(Real(1) + t * t);
  const Real s = t * c;
  const Complex g_pq = s * phase;              // G(p, q)
  const Complex g_qp = -s * std::conj(phase);  // G(q, p)

  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp + akq * g_qp;
    a(k, q) = akp * g_pq + c * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk + std::conj(g_qp) * aqk;
    a(q, k) = std::conj(g_pq) * apk + c * aqk;
  }
  a(p, q) = Complex(0);
  a(q, p) = Complex(0);
  a(p, p) = Complex(std::real(a(p, p)), 0);
  a(q, q) = Complex(std::real(a(q, q)), 0);

  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp + vkq * g_qp;
    v(k, q) = vkp * g_pq + c * vkq;
  }
}

template <typename Real>
Real off_diagonal_norm(const Matrix<Real>& a) {
  Real sum = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized as (a + a^H)/2 first. Sweeps stop once the
/// off-diagonal Frobenius norm drops to 1e-14 times the matrix norm (at
/// most 100 sweeps). Eigenvalues are returned ascending; each eigenvector
/// has its largest-magnitude component (first one on ties) made real and
/// positive, so the result is deterministic.
template <typename Derived>
HermitianEigen<typename Eigen::NumTraits<typename Derived::Scalar>::Real>
hermitian_eig(const Eigen::MatrixBase<Derived>& input) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Complex = std::complex<Real>;
  require_square(input);
  require_hermitian(input);

  const Eigen::Index n = input.rows();
  Matrix<Real> a = (input + input.adjoint()) / Real(2);
  Matrix<Real> v = Matrix<Real>::Identity(n, n);

  const Real scale = a.norm();
  constexpr int kMaxSweeps = 100;
  const Real threshold = Real(1e-14) * scale;
  for (int sweep = 0; sweep < kMaxSweeps && scale > Real(0); ++sweep) {
    if (detail::off_diagonal_norm(a) <= threshold) break;
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return std::real(a(x, x)) < std::real(a(y, y));
  });

  HermitianEigen<Real> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    const Eigen::Index src = order[static_cast<std::size_t>(col)];
    out.eigenvalues(col) = std::real(a(src, src));
    Vector<Real> vec = v.col(src);
    Eigen::Index pivot = 0;
    Real best = Real(-1);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(vec(i)) > best) {
        best = std::abs(vec(i));
        pivot = i;
      }
    }
    if (best > Real(0)) vec *= std::conj(vec(pivot)) / best;
    vec(pivot) = Complex(std::real(vec(pivot)), 0);
    out.eigenvectors.col(col) = vec;
  }
  return out;
}

/// V f(diag(lambda)) V^H for a real function f of the eigenvalues.
template <typename Real, typename Fn>
Matrix<Real> spectral_apply(const HermitianEigen<Real>& eig, Fn&& fn) {
  const RealVector<Real> mapped = eig.eigenvalues.unaryExpr(fn);
  Matrix<Real> out = eig.eigenvectors * mapped.template cast<std::complex<Real>>().asDiagonal() *
                     eig.eigenvectors.adjoint();
  return (out + out.adjoint()) / Real(2);
}

/// exp(s a) for Hermitian a.
template <typename Derived>
PlainOf<Derived> matrix_exp_hermitian(
    const Eigen::MatrixBase<Derived>& a,
    typename Eigen::NumTraits<typename Derived::Scalar>::Real s) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  const auto eig = hermitian_eig(a);
  return spectral_apply(eig, [s](Real x) { return std::exp(s * x); });
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [-1e-12, 0) are clamped to zero.
template <typename Derived>
PlainOf<Derived> matrix_sqrt_psd(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  const auto eig = hermitian_eig(a);
  if (eig.eigenvalues.size() > 0 && eig.eigenvalues(0) < Real(-kPsdTolerance)) {
    std::ostringstream msg;
    msg << "smallest eigenvalue " << static_cast<double>(eig.eigenvalues(0))
        << " is below -" << kPsdTolerance;
    throw Error(ErrorKind::NegativeEigenvalue, msg.str());
  }
  return spectral_apply(eig, [](Real x) { return std::sqrt(std::max(x, Real(0))); });
}

}  // namespace rigtfd

#endif  // RIGTFD_LINALG_HPP
