#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "rigtfd/random.hpp"
#include "rigtfd/tfd.hpp"

using namespace rigtfd;
using cd = std::complex<double>;

namespace {

const double kLn2 = std::log(2.0);

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

ComplexMatrix diag2(double a, double b) { return Eigen::Vector2cd(cd(a), cd(b)).asDiagonal(); }

ComplexVector basis(int d, int i) {
  ComplexVector e = ComplexVector::Zero(d);
  e(i) = 1.0;
  return e;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no rigtfd::Error thrown";
  return ErrorKind::BadLength;
}

}  // namespace

TEST(Gibbs, InfiniteTemperature) {
  SplitMix64 rng(51);
  for (int d = 1; d <= 6; ++d) {
    const auto s = gibbs(random_hermitian(rng, d), 0.0);
    EXPECT_NEAR(s.partition, d, 1e-12);
    EXPECT_LE(max_abs(s.rho.matrix() - ComplexMatrix::Identity(d, d) / double(d)), 1e-15);
  }
}

TEST(Gibbs, QubitLn2) {
  const auto s = gibbs(diag2(0, 1), kLn2);
  // Z = e^0 + e^{-ln 2} = 3/2
  EXPECT_NEAR(s.partition, 1.5, 1e-15);
  EXPECT_LE(max_abs(s.rho.matrix() - diag2(2.0 / 3.0, 1.0 / 3.0)), 1e-15);
  EXPECT_EQ(s.beta, kLn2);
}

TEST(Gibbs, LargeBetaSuppression) {
  const auto s = gibbs(diag2(0, 1), 50.0);
  // e^{-50} / (1 + e^{-50}) ~ 1.9e-22
  EXPECT_LT(std::abs(s.rho.matrix()(1, 1)), 1e-20);
  EXPECT_NEAR(s.rho.matrix()(0, 0).real(), 1.0, 1e-15);
  EXPECT_EQ(s.rho.matrix()(0, 1), cd(0.0));
}

TEST(Gibbs, NoOverflowForLargeSpectrum) {
  const auto s = gibbs(diag2(-800, -799), 1.0);
  EXPECT_TRUE(std::isfinite(s.rho.matrix()(0, 0).real()));
  const double p1 = 1.0 / (1.0 + std::exp(1.0));
  EXPECT_NEAR(s.rho.matrix()(1, 1).real(), p1, 1e-15);
}

TEST(Gibbs, InvariantsAgainstDirectExponential) {
  SplitMix64 rng(52);
  for (int d = 2; d <= 8; ++d) {
    for (double beta : {0.1, 1.0, 3.0}) {
      const ComplexMatrix h = random_hermitian(rng, d);
      const auto s = gibbs(h, beta);
      const ComplexMatrix e = matrix_exp_hermitian(h, -beta);
      const double z = trace(e).real();
      EXPECT_NEAR(s.partition, z, 1e-10 * z);
      EXPECT_LE(max_abs(s.rho.matrix() - e / z), 1e-10);
    }
  }
}

TEST(Gibbs, Errors) {
  EXPECT_EQ(kind_of([] { gibbs(diag2(0, 1), -1.0); }), ErrorKind::NegativeBeta);
  EXPECT_EQ(kind_of([] { gibbs(diag2(0, 1), std::numeric_limits<double>::infinity()); }), ErrorKind::NegativeBeta);
  EXPECT_EQ(kind_of([] { gibbs(diag2(0, 1), std::nan("")); }), ErrorKind::NegativeBeta);
  ComplexMatrix a(2, 2);
  a << 0, 1, 0, 0;
  EXPECT_EQ(kind_of([&] { gibbs(a, 1.0); }), ErrorKind::NotHermitian);
}

TEST(Vacuum, MaximallyMixedQubit) {
  const auto v = thermal_vacuum(gibbs(diag2(0.3, -2), 0.0));
  const ComplexVector expected = (kron(basis(2, 0), basis(2, 0)) + kron(basis(2, 1), basis(2, 1))) / std::sqrt(2.0);
  EXPECT_LE(max_abs(v.state.components() - expected), 1e-15);
}

TEST(Vacuum, QubitLn2Components) {
  const auto v = thermal_vacuum(gibbs(diag2(0, 1), kLn2));
  const ComplexVector c = v.state.components();
  EXPECT_NEAR(c(0).real(), std::sqrt(2.0 / 3.0), 1e-15);
  EXPECT_EQ(c(1), cd(0.0));
  EXPECT_EQ(c(2), cd(0.0));
  EXPECT_NEAR(c(3).real(), std::sqrt(1.0 / 3.0), 1e-15);
  EXPECT_LE(max_abs(devectorize(v.state) - diag2(std::sqrt(2.0 / 3.0), std::sqrt(1.0 / 3.0))), 1e-15);
}

TEST(Vacuum, DegenerateBasisIndependence) {
  SplitMix64 rng(53);
  const auto v = thermal_vacuum(gibbs(ComplexMatrix(ComplexMatrix::Zero(3, 3)), 1.0));
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix f = random_unitary(rng, 3);
    ComplexVector sum = ComplexVector::Zero(9);
    for (int j = 0; j < 3; ++j) sum += std::sqrt(1.0 / 3.0) * kron(ComplexVector(f.col(j)), conj_c(ComplexVector(f.col(j))));
    EXPECT_LE(max_abs(sum - v.state.components()), 1e-12);
  }
}

TEST(Vacuum, EigenbasisOracleAndInvariants) {
  SplitMix64 rng(54);
  for (int d = 2; d <= 8; ++d) {
    const auto s = gibbs(random_hermitian(rng, d), 0.8);
    const auto v = thermal_vacuum(s);
    EXPECT_NEAR(v.state.norm(), 1.0, 1e-12);
    EXPECT_LE(max_abs(partial_trace_tilde(v.state) - s.rho.matrix()), 1e-10);
    // Oracle: sum_n sqrt(p_n) f_n (x) C f_n from the eigen-decomposition.
    const auto eig = hermitian_eig(s.rho.matrix());
    ComplexVector sum = ComplexVector::Zero(d * d);
    for (int n = 0; n < d; ++n) {
      const ComplexVector f = eig.eigenvectors.col(n);
      sum += std::sqrt(std::max(0.0, eig.eigenvalues(n))) * kron(f, conj_c(f));
    }
    EXPECT_LE(max_abs(sum - v.state.components()), 1e-12);
  }
}

TEST(Average, Examples) {
  const auto s = gibbs(diag2(0, 1), kLn2);
  const Observable<double> id(ComplexMatrix::Identity(2, 2));
  const Observable<double> z(diag2(1, -1));
  EXPECT_NEAR(thermal_average_operator(id, s), 1.0, 1e-15);
  EXPECT_NEAR(thermal_average_tfd(id, thermal_vacuum(s)), 1.0, 1e-15);
  EXPECT_NEAR(thermal_average_operator(z, s), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(thermal_average_tfd(z, thermal_vacuum(s)), 1.0 / 3.0, 1e-12);
  SplitMix64 rng(55);
  const ComplexMatrix a = random_hermitian(rng, 4);
  const auto s0 = gibbs(random_hermitian(rng, 4), 0.0);
  EXPECT_NEAR(thermal_average_operator(Observable<double>(a), s0), trace(a).real() / 4.0, 1e-12);
}

TEST(Average, RoutesAgreeOnRandomSystems) {
  SplitMix64 rng(56);
  for (double beta : {0.1, 1.0, 5.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = gibbs(random_hermitian(rng, 5), beta);
      const Observable<double> a(random_hermitian(rng, 5));
      EXPECT_LE(std::abs(thermal_average_operator(a, s) - thermal_average_tfd(a, thermal_vacuum(s))), 1e-10);
    }
  }
}

TEST(Average, Errors) {
  ComplexMatrix a(2, 2);
  a << 0, 1, 0, 0;
  EXPECT_EQ(kind_of([&] { Observable<double>{a}; }), ErrorKind::NonHermitianObservable);
  const auto s = gibbs(diag2(0, 1), 1.0);
  const Observable<double> three(ComplexMatrix::Identity(3, 3));
  EXPECT_EQ(kind_of([&] { thermal_average_operator(three, s); }), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of([&] { thermal_average_tfd(three, thermal_vacuum(s)); }), ErrorKind::DimensionMismatch);
}

TEST(Tilde, Examples) {
  ComplexMatrix real(2, 2);
  real << 1, 2, -3, 4;
  EXPECT_EQ(tilde(real), real);
  const ComplexMatrix i_id = cd(0, 1) * ComplexMatrix::Identity(3, 3);
  EXPECT_EQ(tilde(i_id), ComplexMatrix(cd(0, -1) * ComplexMatrix::Identity(3, 3)));
  EXPECT_EQ(kind_of([] { tilde(ComplexMatrix(ComplexMatrix::Zero(2, 3))); }), ErrorKind::NonSquare);
}

TEST(Tilde, Algebra) {
  SplitMix64 rng(57);
  for (int d = 2; d <= 6; ++d) {
    const ComplexMatrix a = random_ginibre(rng, d, d);
    const ComplexMatrix b = random_ginibre(rng, d, d);
    const cd alpha = rng.complex_normal();
    EXPECT_EQ(tilde(tilde(a)), a);
    EXPECT_LE(max_abs(tilde(ComplexMatrix(a * b)) - tilde(a) * tilde(b)), 1e-12);
    EXPECT_LE(max_abs(tilde(ComplexMatrix(alpha * a + b)) - (std::conj(alpha) * tilde(a) + tilde(b))), 1e-12);
  }
}

TEST(Doubled, ObservableCorrespondence) {
  EXPECT_EQ(doubled_observable(Observable<double>(ComplexMatrix::Identity(3, 3)), 3),
            ComplexMatrix(ComplexMatrix::Identity(9, 9)));
  SplitMix64 rng(58);
  const ComplexMatrix a = random_hermitian(rng, 4);
  const ComplexMatrix x = random_ginibre(rng, 4, 4);
  const ComplexVector out = doubled_observable(Observable<double>(a), 4) * vectorize(x).components();
  EXPECT_LE(max_abs(devectorize(out) - a * x), 1e-12);
  EXPECT_EQ(kind_of([&] { doubled_observable(Observable<double>(a), 3); }), ErrorKind::DimensionMismatch);
}

TEST(Doubled, TildeSectorIsRightMultiplicationByAdjoint) {
  SplitMix64 rng(59);
  for (int d = 2; d <= 6; ++d) {
    const ComplexMatrix b = random_ginibre(rng, d, d);
    const ComplexMatrix x = random_ginibre(rng, d, d);
    const ComplexVector out = tilde_sector(b) * vectorize(x).components();
    EXPECT_LE(max_abs(devectorize(out) - x * b.adjoint()), 1e-12);
  }
}

TEST(Doubled, SectorsCommute) {
  SplitMix64 rng(60);
  const ComplexMatrix a = random_hermitian(rng, 4);
  const ComplexMatrix b = random_ginibre(rng, 4, 4);
  const ComplexMatrix l = doubled_observable(Observable<double>(a), 4);
  const ComplexMatrix r = tilde_sector(b);
  EXPECT_LE(max_abs(l * r - r * l), 1e-12);
}

TEST(Lambda, FiniteRankZeroTail) {
  const ComplexMatrix op = basis(2, 0) * basis(2, 0).adjoint();
  const auto image = lambda_map(op, DecayProfile::power(0.0, 1.0, 1));
  EXPECT_EQ(image.vector.components(), kron(basis(2, 0), basis(2, 0)));
  EXPECT_EQ(image.decay_class(), DecayClass::TestSpace);
}

TEST(Lambda, GeometricHalfProfile) {
  // Entry (i, j) sits at doubled index i d + j; bounded by 2^-(i d + j).
  const int d = 4;
  SplitMix64 rng(61);
  ComplexMatrix op(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) op(i, j) = std::polar(std::pow(0.5, i * d + j) * rng.uniform(), 6.28 * rng.uniform());
  const auto image = lambda_map(op, DecayProfile::geometric(0.5));
  EXPECT_EQ(image.decay_class(), DecayClass::TestSpace);
  // Row and column factors each geometric(1/2): the product profile is a
  // test profile as well.
  EXPECT_EQ(classify(tensor_profile(DecayProfile::geometric(0.5), DecayProfile::geometric(0.5))),
            DecayClass::TestSpace);
  const auto back = lambda_inverse(image);
  EXPECT_EQ(back.op, op);
  EXPECT_EQ(back.decay_class, DecayClass::TestSpace);
}

TEST(Lambda, Errors) {
  const ComplexMatrix op = ComplexMatrix::Identity(2, 2);
  EXPECT_EQ(kind_of([&] { lambda_map(op, DecayProfile::power(-1.0)); }), ErrorKind::NotTestSpace);
  EXPECT_EQ(kind_of([&] { lambda_map(op, DecayProfile::power(1.0)); }), ErrorKind::NotTestSpace);
  EXPECT_EQ(kind_of([&] { lambda_map(op, DecayProfile::geometric(0.5)); }), ErrorKind::ProfileViolation);
}

TEST(Lambda, PreservesPairings) {
  SplitMix64 rng(62);
  const DecayProfile profile = DecayProfile::geometric(0.9, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix x = random_ginibre(rng, 3, 3) * 0.3;
    const ComplexMatrix y = random_ginibre(rng, 3, 3) * 0.3;
    const cd lhs = hs_inner(x, y);
    const cd rhs = lambda_map(x, profile).vector.inner(lambda_map(y, profile).vector);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12);
  }
}
