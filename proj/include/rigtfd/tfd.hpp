#ifndef RIGTFD_TFD_HPP
#define RIGTFD_TFD_HPP

// Thermo field dynamics on H (x) H~: Gibbs states, the thermal vacuum as
// a purification, thermal averages along the operator and doubled-space
// routes, tilde conjugation, and the map between Liouville-side and
// doubled-space test vectors.

#include <cmath>
#include <limits>
#include <sstream>

#include "rigtfd/error.hpp"
#include "rigtfd/linalg.hpp"
#include "rigtfd/liouville.hpp"
#include "rigtfd/rigged.hpp"

namespace rigtfd {

/// Imaginary parts of thermal averages above this (scaled by max(1, |a|))
/// mean the observable was not Hermitian.
inline constexpr double kAverageImagTolerance = 1e-12;

template <typename Real = double>
struct ThermalState {
  Matrix<Real> hamiltonian;
  Real beta;
  Real partition;
  DensityOperator<Real> rho;
};

template <typename Real = double>
struct ThermalVacuum {
  DoubledVector<Real> state;
  Real beta;
};

template <typename Real = double>
class Observable {
 public:
  explicit Observable(const Matrix<Real>& m) {
    require_square(m, "observable");
    require_hermitian(m, kHermitianTolerance, ErrorKind::NonHermitianObservable);
    matrix_ = (m + m.adjoint()) / Real(2);
  }

  Eigen::Index dim() const { return matrix_.rows(); }
  const Matrix<Real>& matrix() const { return matrix_; }

 private:
  Matrix<Real> matrix_;
};

/// rho = exp(-beta h)/Z. The exponential is taken after shifting h by its
/// lowest eigenvalue, so large beta does not overflow; Z is rescaled back.
template <typename Derived>
auto gibbs(const Eigen::MatrixBase<Derived>& h,
           typename Eigen::NumTraits<typename Derived::Scalar>::Real beta) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  require_square(h, "hamiltonian");
  if (!(beta >= Real(0)) || !std::isfinite(static_cast<double>(beta))) {
    std::ostringstream msg;
    msg << "beta = " << static_cast<double>(beta) << " must be finite and nonnegative";
    throw Error(ErrorKind::NegativeBeta, msg.str());
  }
  const auto eig = hermitian_eig(h);
  const Eigen::Index d = h.rows();
  const Real lowest = d > 0 ? eig.eigenvalues(0) : Real(0);
  const RealVector<Real> weights =
      eig.eigenvalues.unaryExpr([&](Real e) { return std::exp(-beta * (e - lowest)); });
  const Real shifted = weights.sum();
  const Real partition = std::exp(-beta * lowest) * shifted;
  Matrix<Real> rho = spectral_apply(eig, [&](Real e) { return std::exp(-beta * (e - lowest)) / shifted; });
  return ThermalState<Real>{Matrix<Real>((h + h.adjoint()) / Real(2)), beta, partition,
                            DensityOperator<Real>(rho)};
}

/// The purification vectorize(sqrt(rho)). For rho = sum_n p_n |n><n| this
/// is sum_n sqrt(p_n) |n> (x) |n~> for any eigenbasis.
template <typename Real>
ThermalVacuum<Real> thermal_vacuum(const ThermalState<Real>& s) {
  return {vectorize(matrix_sqrt_psd(s.rho.matrix())), s.beta};
}

namespace detail {

template <typename Real>
Real real_average(std::complex<Real> value, const Matrix<Real>& a) {
  const Real scale = std::max(Real(1), a.cwiseAbs().maxCoeff());
  if (!(std::abs(std::imag(value)) <= Real(kAverageImagTolerance) * scale)) {
    std::ostringstream msg;
    msg << "thermal average has imaginary part " << static_cast<double>(std::imag(value));
    throw Error(ErrorKind::NonHermitianObservable, msg.str());
  }
  return std::real(value);
}

template <typename Real>
void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension " << a << " vs " << b;
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
}

}  // namespace detail

/// <A> = Tr(rho A).
template <typename Real>
Real thermal_average_operator(const Observable<Real>& a, const ThermalState<Real>& s) {
  detail::require_same_dim<Real>(a.dim(), s.rho.dim(), "observable and state");
  const std::complex<Real> value = (s.rho.matrix() * a.matrix()).trace();
  return detail::real_average(value, a.matrix());
}

/// The physical-sector operator a (x) I on H (x) H~.
template <typename Real>
Matrix<Real> doubled_observable(const Observable<Real>& a, Eigen::Index d) {
  detail::require_same_dim<Real>(a.dim(), d, "observable");
  return kron(a.matrix(), Matrix<Real>::Identity(d, d));
}

/// Tilde conjugation C a C, entrywise conjugation in the standard basis.
template <typename Derived>
PlainOf<Derived> tilde(const Eigen::MatrixBase<Derived>& a) {
  require_square(a, "operator");
  return conj_c(a);
}

/// The tilde-sector operator I (x) tilde(b). Under devectorize it acts as
/// x -> x b^H.
template <typename Derived>
PlainOf<Derived> tilde_sector(const Eigen::MatrixBase<Derived>& b) {
  require_square(b, "operator");
  const Eigen::Index d = b.rows();
  return kron(PlainOf<Derived>::Identity(d, d), tilde(b));
}

/// <0(beta)| a (x) I |0(beta)>.
template <typename Real>
Real thermal_average_tfd(const Observable<Real>& a, const ThermalVacuum<Real>& v) {
  detail::require_same_dim<Real>(a.dim(), v.state.dim(), "observable and vacuum");
  const auto& c = v.state.components();
  const std::complex<Real> value = c.dot(doubled_observable(a, v.state.dim()) * c);
  return detail::real_average(value, a.matrix());
}

/// Image of a Liouville-side test operator in the doubled space. The
/// coefficient sequence of the operator is its row-major entry list, the
/// same enumeration the doubled space uses, so the carrying unitary is the
/// identity on the d^2 truncation and the class is pulled back through it.
struct LambdaImage {
  DoubledVector<double> vector;
  TransportedElement element;

  DecayClass decay_class() const { return element.decay_class(); }
};

struct LambdaPreimage {
  ComplexMatrix op;
  DecayClass decay_class;
};

/// Throws NotTestSpace unless the profile classifies as TestSpace, and
/// ProfileViolation if it does not bound the operator's coefficients.
inline LambdaImage lambda_map(const ComplexMatrix& op, const DecayProfile& profile) {
  require_square(op, "operator");
  if (classify(profile) != DecayClass::TestSpace) {
    throw Error(ErrorKind::NotTestSpace,
                std::string("coefficient profile classifies as ") +
                    std::string(to_string(classify(profile))));
  }
  DoubledVector<double> vec = vectorize(op);
  const Eigen::Index n = vec.components().size();
  SequenceVector coefficients(vec.components(), profile);
  TransportedElement element = transport(ComplexMatrix::Identity(n, n), coefficients);
  return {DoubledVector<double>(vec.dim(), element.coefficients()), std::move(element)};
}

inline LambdaPreimage lambda_inverse(const LambdaImage& image) {
  return {devectorize(image.vector), image.decay_class()};
}

}  // namespace rigtfd

#endif  // RIGTFD_TFD_HPP
