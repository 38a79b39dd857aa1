#ifndef RIGTFD_LIOUVILLE_HPP
#define RIGTFD_LIOUVILLE_HPP

// Liouville space of Hilbert-Schmidt operators and its identification
// with the doubled space H (x) H~.
//
// Vectorization convention: the operator entry (i, j) maps to component
// i*d + j, the ket index living on the physical factor and the bra index on
// the tilde factor. Equivalently |phi><psi| -> phi (x) C psi, which keeps the
// map unitary with respect to Tr(A^H B).

#include <cmath>
#include <sstream>
#include <utility>

#include <Eigen/Dense>

#include "rigtfd/error.hpp"
#include "rigtfd/linalg.hpp"

namespace rigtfd {

/// Operators on H are plain square matrices.
template <typename Real = double>
using HSOperator = Matrix<Real>;

/// Tolerance shared by the three DensityOperator invariants.
inline constexpr double kDensityTolerance = 1e-10;

/// A vector in H (x) H~ with d^2 components, component i*d + j being the
/// coefficient of e_i (x) e~_j.
template <typename Real = double>
class DoubledVector {
 public:
  DoubledVector(Eigen::Index dim, Vector<Real> components)
      : dim_(dim), components_(std::move(components)) {
    if (dim_ < 0 || components_.size() != dim_ * dim_) {
      std::ostringstream msg;
      msg << "doubled vector of dimension " << dim_ << " needs " << dim_ * dim_
          << " components, got " << components_.size();
      throw Error(ErrorKind::BadLength, msg.str());
    }
  }

  /// Infers the factor dimension; the length must be a perfect square.
  explicit DoubledVector(Vector<Real> components)
      : dim_(infer_dim(components.size())), components_(std::move(components)) {}

  Eigen::Index dim() const { return dim_; }
  const Vector<Real>& components() const { return components_; }

  std::complex<Real> inner(const DoubledVector& other) const {
    if (other.dim_ != dim_)
      throw Error(ErrorKind::DimensionMismatch, "doubled vectors of different dimension");
    return components_.dot(other.components_);  // antilinear in *this
  }

  Real norm() const { return components_.norm(); }

 private:
  static Eigen::Index infer_dim(Eigen::Index length) {
    auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(length))));
    while (d * d > length) --d;
    while ((d + 1) * (d + 1) <= length) ++d;
    if (d * d != length) {
      std::ostringstream msg;
      msg << "length " << length << " is not a perfect square";
      throw Error(ErrorKind::BadLength, msg.str());
    }
    return d;
  }

  Eigen::Index dim_;
  Vector<Real> components_;
};

/// A d^2 x d^2 matrix acting on vectorized operators.
template <typename Real = double>
class SuperOperator {
 public:
  SuperOperator(Eigen::Index dim, Matrix<Real> matrix) : dim_(dim), matrix_(std::move(matrix)) {
    if (matrix_.rows() != dim_ * dim_ || matrix_.cols() != dim_ * dim_) {
      std::ostringstream msg;
      msg << "superoperator on dimension " << dim_ << " must be " << dim_ * dim_ << "x"
          << dim_ * dim_ << ", got " << matrix_.rows() << "x" << matrix_.cols();
      throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
  }

  Eigen::Index dim() const { return dim_; }
  const Matrix<Real>& matrix() const { return matrix_; }

  DoubledVector<Real> operator()(const DoubledVector<Real>& v) const {
    if (v.dim() != dim_)
      throw Error(ErrorKind::DimensionMismatch, "superoperator and vector dimensions differ");
    return DoubledVector<Real>(dim_, matrix_ * v.components());
  }

 private:
  Eigen::Index dim_;
  Matrix<Real> matrix_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
///
/// Construction rejects inputs that violate any invariant by more than
/// 1e-10. Accepted inputs are symmetrized; slightly negative eigenvalues
/// are clamped to zero and the result renormalized to unit trace.
template <typename Real = double>
class DensityOperator {
 public:
  explicit DensityOperator(const Matrix<Real>& m) {
    require_square(m, "density operator");
    require_hermitian(m, kDensityTolerance, ErrorKind::NotDensityOperator);
    const std::complex<Real> tr = m.trace();
    if (!(std::abs(tr - std::complex<Real>(1)) <= Real(kDensityTolerance))) {
      std::ostringstream msg;
      msg << "trace " << static_cast<double>(std::real(tr)) << "+"
          << static_cast<double>(std::imag(tr)) << "i differs from 1";
      throw Error(ErrorKind::NotDensityOperator, msg.str());
    }
    Matrix<Real> sym = (m + m.adjoint()) / Real(2);
    const auto eig = hermitian_eig(sym);
    const Real lowest = eig.eigenvalues.size() > 0 ? eig.eigenvalues(0) : Real(0);
    if (lowest < Real(-kDensityTolerance)) {
      std::ostringstream msg;
      msg << "eigenvalue " << static_cast<double>(lowest) << " is negative";
      throw Error(ErrorKind::NotDensityOperator, msg.str());
    }
    if (lowest < Real(0)) {
      const Real total = eig.eigenvalues.unaryExpr([](Real x) { return std::max(x, Real(0)); }).sum();
      sym = spectral_apply(eig, [total](Real x) { return std::max(x, Real(0)) / total; });
    } else {
      sym /= std::real(sym.trace());
    }
    matrix_ = std::move(sym);
  }

  Eigen::Index dim() const { return matrix_.rows(); }
  const Matrix<Real>& matrix() const { return matrix_; }

 private:
  Matrix<Real> matrix_;
};

/// Hilbert-Schmidt inner product Tr(a^H b), antilinear in a.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar hs_inner(const Eigen::MatrixBase<DerivedA>& a,
                                   const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  return (a.adjoint() * b).trace();
}

template <typename Derived>
auto vectorize(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  require_square(a, "operator");
  const Eigen::Index d = a.rows();
  Vector<Real> out(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out(i * d + j) = a(i, j);
  return DoubledVector<Real>(d, std::move(out));
}

/// The literal slot order |phi><psi| -> psi (x) C phi. This map is
/// antiunitary; it exists as a negative control for the vectorization
/// convention and is not used by the rest of the library.
template <typename Derived>
auto vectorize_conjugate_slot(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  require_square(a, "operator");
  const Eigen::Index d = a.rows();
  Vector<Real> out(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out(j * d + i) = std::conj(a(i, j));
  return DoubledVector<Real>(d, std::move(out));
}

template <typename Real>
HSOperator<Real> devectorize(const DoubledVector<Real>& v) {
  const Eigen::Index d = v.dim();
  HSOperator<Real> out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out(i, j) = v.components()(i * d + j);
  return out;
}

template <typename Real>
HSOperator<Real> devectorize(const Vector<Real>& components) {
  return devectorize(DoubledVector<Real>(components));
}

/// The rank-one operator x -> <phi, x> psi, i.e. the matrix psi phi^H.
template <typename DerivedA, typename DerivedB>
PlainOf<DerivedA> rank_one(const Eigen::MatrixBase<DerivedA>& phi,
                           const Eigen::MatrixBase<DerivedB>& psi) {
  if (phi.cols() != 1 || psi.cols() != 1 || phi.rows() != psi.rows()) {
    std::ostringstream msg;
    msg << "rank_one needs two column vectors of equal length, got " << phi.rows() << "x"
        << phi.cols() << " and " << psi.rows() << "x" << psi.cols();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  return psi * phi.adjoint();
}

/// x -> a x, as the matrix a (x) I.
template <typename Derived>
auto left_mult_super(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  require_square(a, "operator");
  const Eigen::Index d = a.rows();
  return SuperOperator<Real>(d, kron(a, Matrix<Real>::Identity(d, d)));
}

/// x -> x a, as the matrix I (x) a^T. This is the tilde-sector operator
/// I (x) tilde(a^H).
template <typename Derived>
auto right_mult_super(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  require_square(a, "operator");
  const Eigen::Index d = a.rows();
  return SuperOperator<Real>(d, kron(Matrix<Real>::Identity(d, d), a.transpose()));
}

/// x -> h x - x h for Hermitian h.
template <typename Derived>
auto commutator_super(const Eigen::MatrixBase<Derived>& h) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  require_square(h, "operator");
  require_hermitian(h);
  const Eigen::Index d = h.rows();
  const Matrix<Real> id = Matrix<Real>::Identity(d, d);
  return SuperOperator<Real>(d, kron(h, id) - kron(id, h.transpose()));
}

/// Reduced operator of |v><v| over the tilde factor:
/// out(i, k) = sum_j v(i*d + j) conj(v(k*d + j)).
template <typename Real>
HSOperator<Real> partial_trace_tilde(const DoubledVector<Real>& v) {
  const Eigen::Index d = v.dim();
  const auto& c = v.components();
  HSOperator<Real> out = HSOperator<Real>::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index j = 0; j < d; ++j) out(i, k) += c(i * d + j) * std::conj(c(k * d + j));
  return out;
}

}  // namespace rigtfd

#endif  // RIGTFD_LIOUVILLE_HPP
