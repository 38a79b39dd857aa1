#include "rigtfd/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>

#include "rigtfd/linalg.hpp"
#include "rigtfd/liouville.hpp"
#include "rigtfd/random.hpp"
#include "rigtfd/tfd.hpp"

namespace rigtfd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::array<double, 5> kBetas{0.0, 0.1, 1.0, 5.0, 20.0};

using Trial = std::function<double(SplitMix64&, int, int)>;

struct Property {
  const char* name;
  double tolerance;
  Trial trial;  // (rng, dim, trial index) -> error
};

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Random density operator with a degenerate spectrum: eigenvalue blocks
/// of size up to 3 with a random unitary eigenbasis. Returns rho and an
/// eigenbasis rotated by random unitaries inside each degenerate block.
struct DegenerateState {
  ComplexMatrix rho;
  ComplexMatrix basis;
  Eigen::VectorXd weights;
};

DegenerateState degenerate_state(SplitMix64& rng, int d) {
  Eigen::VectorXd weights(d);
  std::vector<std::pair<int, int>> blocks;
  for (int start = 0; start < d;) {
    const int size = std::min(d - start, 1 + static_cast<int>(rng.uniform() * 3.0));
    const double w = 0.1 + rng.uniform();
    weights.segment(start, size).setConstant(w);
    blocks.emplace_back(start, size);
    start += size;
  }
  weights /= weights.sum();
  const ComplexMatrix u = random_unitary(rng, d);
  const ComplexMatrix rho = u * weights.cast<std::complex<double>>().asDiagonal() * u.adjoint();
  ComplexMatrix basis = u;
  for (const auto& [start, size] : blocks)
    basis.middleCols(start, size) = u.middleCols(start, size) * random_unitary(rng, size);
  return {(rho + rho.adjoint()) / 2.0, basis, weights};
}

std::vector<Property> properties(bool inject_fault) {
  std::vector<Property> out;

  out.push_back({"kron_mixed_product", 1e-12, [](SplitMix64& rng, int d, int) {
                   const ComplexMatrix a = random_ginibre(rng, d, d);
                   const ComplexMatrix b = random_ginibre(rng, d, d);
                   const ComplexMatrix v = random_vector(rng, d);
                   const ComplexMatrix w = random_vector(rng, d);
                   return max_abs(kron(a, b) * kron(v, w) - kron(a * v, b * w));
                 }});

  out.push_back({"eig_reconstruction", 1e-11, [](SplitMix64& rng, int d, int) {
                   const ComplexMatrix h = random_hermitian(rng, d);
                   const auto eig = hermitian_eig(h);
                   const ComplexMatrix back = eig.eigenvectors *
                                              eig.eigenvalues.cast<std::complex<double>>().asDiagonal() *
                                              eig.eigenvectors.adjoint();
                   return max_abs(back - h);
                 }});

  out.push_back({"eig_orthonormality", 1e-12, [](SplitMix64& rng, int d, int) {
                   const auto eig = hermitian_eig(random_hermitian(rng, d));
                   return max_abs(eig.eigenvectors.adjoint() * eig.eigenvectors -
                                  ComplexMatrix::Identity(d, d));
                 }});

  out.push_back({"exp_inverse", 1e-10, [](SplitMix64& rng, int d, int) {
                   const ComplexMatrix h = random_hermitian(rng, d);
                   const double s = 2.0 * rng.uniform() - 1.0;
                   return max_abs(matrix_exp_hermitian(h, s) * matrix_exp_hermitian(h, -s) -
                                  ComplexMatrix::Identity(d, d));
                 }});

  out.push_back({"trace_frobenius", 1e-12, [](SplitMix64& rng, int d, int) {
                   const ComplexMatrix a = random_ginibre(rng, d, d);
                   const std::complex<double> t = trace(adjoint(a) * a);
                   double frob = 0.0;
                   for (Eigen::Index i = 0; i < a.size(); ++i) frob += std::norm(a(i));
                   return std::abs(t - frob) + std::max(0.0, -t.real());
                 }});

  out.push_back({"vectorize_isometry", 1e-12, [](SplitMix64& rng, int d, int) {
                   const ComplexMatrix a = random_ginibre(rng, d, d);
                   const ComplexMatrix b = random_ginibre(rng, d, d);
                   return std::abs(vectorize(a).inner(vectorize(b)) - hs_inner(a, b));
                 }});

  out.push_back({"vectorize_homomorphism", 1e-12, [](SplitMix64& rng, int d, int) {
                   const ComplexMatrix a = random_ginibre(rng, d, d);
                   const ComplexMatrix x = random_ginibre(rng, d, d);
                   const ComplexMatrix b = random_ginibre(rng, d, d);
                   return max_abs(vectorize(ComplexMatrix(a * x * b)).components() -
                                  kron(a, b.transpose()) * vectorize(x).components());
                 }});

  out.push_back({"rank_one_factorization", 1e-12, [](SplitMix64& rng, int d, int) {
                   const ComplexVector phi = random_vector(rng, d);
                   const ComplexVector psi = random_vector(rng, d);
                   const ComplexVector expected = kron(psi, conj_c(phi));
                   return max_abs(vectorize(rank_one(phi, psi)).components() - expected);
                 }});

  out.push_back({"superoperator_transport", 1e-12, [](SplitMix64& rng, int d, int) {
                   const ComplexMatrix a = random_ginibre(rng, d, d);
                   const ComplexMatrix x = random_ginibre(rng, d, d);
                   const auto vx = vectorize(x);
                   const double left = max_abs(devectorize(left_mult_super(a)(vx)) - a * x);
                   const DoubledVector<double> tv(d, tilde_sector(a) * vx.components());
                   const double right = max_abs(devectorize(tv) - x * a.adjoint());
                   const double right_super = max_abs(devectorize(right_mult_super(a)(vx)) - x * a);
                   return std::max({left, right, right_super});
                 }});

  out.push_back({"sector_commutation", 1e-12, [](SplitMix64& rng, int d, int) {
                   const ComplexMatrix a = random_ginibre(rng, d, d);
                   const ComplexMatrix b = random_ginibre(rng, d, d);
                   const ComplexMatrix phys = kron(a, ComplexMatrix::Identity(d, d));
                   const ComplexMatrix tild = tilde_sector(b);
                   return max_abs(phys * tild - tild * phys);
                 }});

  out.push_back({"tilde_algebra", 1e-12, [](SplitMix64& rng, int d, int) {
                   const ComplexMatrix a = random_ginibre(rng, d, d);
                   const ComplexMatrix b = random_ginibre(rng, d, d);
                   const std::complex<double> alpha = rng.complex_normal();
                   const double involution = max_abs(tilde(tilde(a)) - a);
                   const double product = max_abs(tilde(ComplexMatrix(a * b)) - tilde(a) * tilde(b));
                   const double antilinear = max_abs(tilde(ComplexMatrix(alpha * a + b)) -
                                                     (std::conj(alpha) * tilde(a) + tilde(b)));
                   return std::max({involution, product, antilinear});
                 }});

  out.push_back({"route_equivalence", 1e-10, [inject_fault](SplitMix64& rng, int d, int t) {
                   const double beta = kBetas[static_cast<std::size_t>(t) % kBetas.size()];
                   const ComplexMatrix h = random_hermitian(rng, d);
                   const Observable<double> a(random_hermitian(rng, d));
                   const auto state = gibbs(h, beta);
                   const auto vacuum = thermal_vacuum(state);
                   const double op = thermal_average_operator(a, state);
                   if (!inject_fault) return std::abs(op - thermal_average_tfd(a, vacuum));
                   const auto& c = vacuum.state.components();
                   const ComplexMatrix wrong_slot = kron(ComplexMatrix::Identity(d, d), a.matrix());
                   return std::abs(op - c.dot(wrong_slot * c).real());
                 }});

  out.push_back({"purification", 1e-10, [](SplitMix64& rng, int d, int t) {
                   const double beta = kBetas[static_cast<std::size_t>(t) % kBetas.size()];
                   const auto state = gibbs(random_hermitian(rng, d), beta);
                   const auto vacuum = thermal_vacuum(state);
                   return max_abs(partial_trace_tilde(vacuum.state) - state.rho.matrix()) +
                          std::abs(vacuum.state.norm() - 1.0);
                 }});

  out.push_back({"spectral_independence", 1e-12, [](SplitMix64& rng, int d, int) {
                   const auto s = degenerate_state(rng, d);
                   ComplexVector built = ComplexVector::Zero(d * d);
                   for (int j = 0; j < d; ++j) {
                     const ComplexVector f = s.basis.col(j);
                     built += std::sqrt(s.weights(j)) * kron(f, conj_c(f));
                   }
                   return max_abs(built - vectorize(matrix_sqrt_psd(s.rho)).components());
                 }});

  out.push_back({"lambda_pairing", 1e-12, [](SplitMix64& rng, int d, int) {
                   const ComplexMatrix x = random_ginibre(rng, d, d);
                   const ComplexMatrix y = random_ginibre(rng, d, d);
                   const auto support = static_cast<std::size_t>(d * d);
                   const auto px = DecayProfile::power(0.0, max_abs(x), support);
                   const auto py = DecayProfile::power(0.0, max_abs(y), support);
                   const auto ix = lambda_map(x, px);
                   const auto iy = lambda_map(y, py);
                   const double round_trip = std::max(max_abs(lambda_inverse(ix).op - x),
                                                      max_abs(lambda_inverse(iy).op - y));
                   return std::abs(hs_inner(x, y) - ix.vector.inner(iy.vector)) + round_trip;
                 }});

  out.push_back({"pairing_truncation", 1.0, [](SplitMix64& rng, int d, int) {
                   // Error is |<f,v>_2N - <f,v>_N| over tail_bound(N) plus the
                   // rounding bounds of both sums; below 1 means the bound holds.
                   const auto n = static_cast<std::size_t>(8 * d);
                   const double a = -1.0 + 3.0 * rng.uniform();
                   const double r = 0.3 + 0.6 * rng.uniform();
                   const auto fp = DecayProfile::power(a, 1.0);
                   const auto vp = DecayProfile::geometric(r, 1.0);
                   ComplexVector fc(2 * n), vc(2 * n);
                   for (std::size_t i = 0; i < 2 * n; ++i) {
                     const auto k = static_cast<Eigen::Index>(i);
                     fc(k) = fp.bound_at_index(i) * std::polar(rng.uniform(), 6.283185307179586 * rng.uniform());
                     vc(k) = vp.bound_at_index(i) * std::polar(rng.uniform(), 6.283185307179586 * rng.uniform());
                   }
                   const auto k = static_cast<Eigen::Index>(n);
                   const auto shortp = pair(SequenceVector(fc.head(k), fp), SequenceVector(vc.head(k), vp));
                   const auto longp = pair(SequenceVector(fc, fp), SequenceVector(vc, vp));
                   return std::abs(longp.value - shortp.value) /
                          (shortp.tail_bound + shortp.rounding_bound + longp.rounding_bound);
                 }});

  out.push_back({"transport_composition", 1e-12, [](SplitMix64& rng, int d, int) {
                   const Eigen::Index n = 4 * d;
                   const auto profile = DecayProfile::power(1.0, 1.0);
                   ComplexVector c(n);
                   for (Eigen::Index i = 0; i < n; ++i)
                     c(i) = profile.bound_at_index(static_cast<std::size_t>(i)) * rng.uniform();
                   const SequenceVector v(c, profile);
                   const ComplexMatrix u1 = random_unitary(rng, n);
                   const ComplexMatrix u2 = random_unitary(rng, n);
                   const auto twice = transport(u2, transport(u1, v));
                   const auto once = transport(ComplexMatrix(u2 * u1), v);
                   const double cls = twice.decay_class() == once.decay_class() ? 0.0 : kInf;
                   return max_abs(twice.coefficients() - once.coefficients()) + cls;
                 }});

  out.push_back({"classification_oracle", 0.0, [](SplitMix64&, int, int t) {
                   const auto fixtures = classification_fixtures();
                   const auto& p = fixtures[static_cast<std::size_t>(t) % fixtures.size()];
                   return classify(p) == brute_force_class(p) ? 0.0 : 1.0;
                 }});

  return out;
}

double log_bound(const DecayProfile& p, std::size_t n) {
  const std::size_t s = shell_of(n, p.factors());
  if (p.constant() == 0.0) return -kInf;
  if (p.support() && s >= *p.support()) return -kInf;
  if (p.kind() == DecayKind::Geometric) {
    if (p.rate() == 0.0) return s == 0 ? std::log(p.constant()) : -kInf;
    return std::log(p.constant()) + static_cast<double>(s) * std::log(p.rate());
  }
  return std::log(p.constant()) + p.rate() * std::log1p(static_cast<double>(s));
}

double log_sum_exp(double acc, double x) {
  if (x == -kInf) return acc;
  if (acc == -kInf) return x;
  const double hi = std::max(acc, x);
  return hi + std::log(std::exp(acc - hi) + std::exp(x - hi));
}

}  // namespace

DecayClass brute_force_class(const DecayProfile& profile) {
  constexpr std::size_t kEnd = 10'000;
  constexpr std::size_t kMid = kEnd / 2;
  const double l_end = log_bound(profile, kEnd);
  const double l_mid = log_bound(profile, kMid);
  const double log_end = std::log1p(static_cast<double>(kEnd));
  const double log_mid = std::log1p(static_cast<double>(kMid));

  // Every weighted grid (1 + n)^k |x_n|, k <= 16, is falling at the end.
  bool test = true;
  for (int k = 0; k <= kMaxSeminormOrder; ++k) {
    const bool falling = l_end == -kInf || k * log_end + l_end < k * log_mid + l_mid;
    test = test && falling;
  }
  if (test) return DecayClass::TestSpace;

  // Cauchy condensation on the dyadic blocks [2^j, 2^(j+1)) of |x_n|^2.
  std::array<double, 3> blocks{};
  for (int j = 10; j <= 12; ++j) {
    double acc = -kInf;
    for (std::size_t n = std::size_t{1} << j; n < (std::size_t{1} << (j + 1)); ++n)
      acc = log_sum_exp(acc, 2.0 * log_bound(profile, n));
    blocks[static_cast<std::size_t>(j - 10)] = acc;
  }
  const double shrink = std::log(0.95);
  const bool summable = blocks[2] == -kInf ||
                        (blocks[1] - blocks[0] < shrink && blocks[2] - blocks[1] < shrink);
  if (summable) return DecayClass::HilbertOnly;

  // Dominated by some (1 + n)^k, k <= 16.
  for (int k = 0; k <= kMaxSeminormOrder; ++k)
    if (l_end - k * log_end <= l_mid - k * log_mid) return DecayClass::DualOnly;
  return DecayClass::OutsideDual;
}

std::vector<DecayProfile> classification_fixtures() {
  std::vector<DecayProfile> out;
  for (double r : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99, 1.0, 1.01, 1.05, 1.5, 2.0})
    out.push_back(DecayProfile::geometric(r, 1.0));
  for (double a : {-12.0, -8.0, -4.0, -2.0, -1.5, -1.0, -0.75, -0.6, -0.5, -0.25, 0.0, 0.5, 1.0, 2.0, 5.0})
    out.push_back(DecayProfile::power(a, 2.0));
  out.push_back(DecayProfile::power(3.0, 1.0, 10));
  out.push_back(DecayProfile::geometric(2.0, 1.0, 5));
  return out;
}

VerificationReport run_verification(const VerifyOptions& options) {
  VerificationReport report;
  report.suite = "rigtfd-properties";
  report.seed = options.seed;
  const auto props = properties(options.inject_fault);
  for (std::size_t index = 0; index < props.size(); ++index) {
    const Property& prop = props[index];
    SplitMix64 rng(derive_seed(options.seed, index));
    VerificationCase c;
    c.property = prop.name;
    c.dims = options.dims;
    c.trials = options.trials;
    c.tolerance = prop.tolerance;
    try {
      for (int d : options.dims)
        for (int t = 0; t < options.trials; ++t) {
          const double err = prop.trial(rng, d, t);
          c.max_error = std::isnan(err) ? kInf : std::max(c.max_error, err);
        }
    } catch (const std::exception&) {
      c.max_error = kInf;
    }
    c.passed = c.max_error <= c.tolerance;
    report.cases.push_back(std::move(c));
  }
  report.overall = std::all_of(report.cases.begin(), report.cases.end(),
                               [](const VerificationCase& c) { return c.passed; });
  return report;
}

io::Json report_to_json(const VerificationReport& report) {
  io::Json cases = io::Json::array();
  for (const auto& c : report.cases) {
    io::Json entry{{"property", c.property},
                   {"dims", c.dims},
                   {"trials", c.trials},
                   {"tolerance", c.tolerance},
                   {"passed", c.passed}};
    entry["max_error"] = std::isfinite(c.max_error) ? io::Json(c.max_error) : io::Json(nullptr);
    cases.push_back(std::move(entry));
  }
  return io::Json{{"suite", report.suite},
                  {"seed", report.seed},
                  {"overall", report.overall},
                  {"cases", std::move(cases)}};
}

VerificationReport report_from_json(const io::Json& j) {
  try {
    VerificationReport r;
    r.suite = j.at("suite").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.overall = j.at("overall").get<bool>();
    for (const auto& e : j.at("cases")) {
      VerificationCase c;
      c.property = e.at("property").get<std::string>();
      c.dims = e.at("dims").get<std::vector<int>>();
      c.trials = e.at("trials").get<int>();
      c.tolerance = e.at("tolerance").get<double>();
      c.passed = e.at("passed").get<bool>();
      c.max_error = e.at("max_error").is_null() ? kInf : e.at("max_error").get<double>();
      r.cases.push_back(std::move(c));
    }
    return r;
  } catch (const io::Json::exception& e) {
    throw io::FormatError(e.what());
  }
}

}  // namespace rigtfd
