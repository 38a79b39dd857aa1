#include "rigtfd/rigged.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "rigtfd/error.hpp"

namespace rigtfd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kProfileSlack = 1e-12;
// Longest stretch summed or scanned term by term before falling back to
// a closed-form bound.
constexpr std::size_t kExplicitLimit = 1'000'000;

/// C(s + f - 1, f - 1): tuples of f nonnegative integers summing to s.
double shell_count(std::size_t shell, int factors) {
  double out = 1.0;
  for (int i = 1; i < factors; ++i) out *= static_cast<double>(shell + i) / i;
  return out;
}

/// Number of shells that can be nonzero, if finite. Geometric rate 0 is
/// supported on shell 0 only.
std::optional<std::size_t> effective_support(const DecayProfile& p) {
  std::optional<std::size_t> s = p.support();
  if (p.kind() == DecayKind::Geometric && p.rate() == 0.0) s = std::min<std::size_t>(s.value_or(1), 1);
  return s;
}

bool outside_dual(const DecayProfile& p) {
  return !effective_support(p) && p.kind() == DecayKind::Geometric && p.rate() > 1.0;
}

/// Bound written as constant * (1 + s)^exponent * ratio^s.
struct Shape {
  double constant;
  double exponent;
  double ratio;
};

Shape shape_of(const DecayProfile& p) {
  if (p.kind() == DecayKind::Geometric) return {p.constant(), 0.0, p.rate()};
  return {p.constant(), p.rate(), 1.0};
}

double pow0(double base, std::size_t e) { return e == 0 ? 1.0 : std::pow(base, static_cast<double>(e)); }

/// sum_{s >= s0} (1 + s)^b * rho^s for 0 <= rho < 1.
double tail_sum(double b, double rho, std::size_t s0) {
  if (rho == 0.0) return s0 == 0 ? 1.0 : 0.0;
  auto term = [&](std::size_t s) { return std::pow(1.0 + static_cast<double>(s), b) * pow0(rho, s); };
  if (b <= 0.0) return term(s0) / (1.0 - rho);
  // The term ratio q(s) = ((s + 2)/(s + 1))^b rho decreases in s; sum
  // explicitly until it drops below (1 + rho)/2, then close with a
  // geometric series.
  const double target = 0.5 * (1.0 + rho);
  double sum = 0.0;
  std::size_t s = s0;
  for (std::size_t steps = 0; steps < kExplicitLimit; ++steps, ++s) {
    const double q = std::pow((s + 2.0) / (s + 1.0), b) * rho;
    if (q <= target) return sum + term(s) / (1.0 - q);
    sum += term(s);
  }
  return kInf;
}

/// max_{j >= 0} (1 + j)^e * r^j for e >= 0 and 0 <= r < 1.
double peak_weight(double e, double r) {
  if (r == 0.0 || e == 0.0) return 1.0;
  const double star = e / -std::log(r) - 1.0;
  if (star <= 0.0) return 1.0;
  auto w = [&](double j) { return std::pow(1.0 + j, e) * std::pow(r, j); };
  return std::max(w(std::floor(star)), w(std::ceil(star)));
}

void validate(double rate, double constant, int factors, DecayKind kind) {
  if (!std::isfinite(rate) || (kind == DecayKind::Geometric && rate < 0.0))
    throw Error(ErrorKind::InvalidProfile, "rate must be finite (and nonnegative for geometric)");
  if (!std::isfinite(constant) || constant < 0.0)
    throw Error(ErrorKind::InvalidProfile, "constant must be finite and nonnegative");
  if (factors < 1) throw Error(ErrorKind::InvalidProfile, "factors must be at least 1");
}

}  // namespace

std::string_view to_string(DecayKind kind) {
  return kind == DecayKind::Geometric ? "geometric" : "power";
}

std::string_view to_string(DecayClass cls) {
  switch (cls) {
    case DecayClass::TestSpace: return "TestSpace";
    case DecayClass::HilbertOnly: return "HilbertOnly";
    case DecayClass::DualOnly: return "DualOnly";
    case DecayClass::OutsideDual: return "OutsideDual";
  }
  return "Unknown";
}

std::optional<DecayKind> parse_decay_kind(std::string_view name) {
  if (name == "geometric") return DecayKind::Geometric;
  if (name == "power") return DecayKind::Power;
  return std::nullopt;
}

std::optional<DecayClass> parse_decay_class(std::string_view name) {
  for (auto c : {DecayClass::TestSpace, DecayClass::HilbertOnly, DecayClass::DualOnly,
                 DecayClass::OutsideDual})
    if (to_string(c) == name) return c;
  return std::nullopt;
}

DecayProfile::DecayProfile(DecayKind kind, double rate, double constant,
                           std::optional<std::size_t> support, int factors)
    : kind_(kind), rate_(rate), constant_(constant), support_(support), factors_(factors) {
  validate(rate, constant, factors, kind);
}

DecayProfile DecayProfile::geometric(double rate, double constant,
                                     std::optional<std::size_t> support, int factors) {
  return {DecayKind::Geometric, rate, constant, support, factors};
}

DecayProfile DecayProfile::power(double exponent, double constant,
                                 std::optional<std::size_t> support, int factors) {
  return {DecayKind::Power, exponent, constant, support, factors};
}

double DecayProfile::bound_at_shell(std::size_t shell) const {
  if (support_ && shell >= *support_) return 0.0;
  if (kind_ == DecayKind::Geometric) return constant_ * pow0(rate_, shell);
  return constant_ * std::pow(1.0 + static_cast<double>(shell), rate_);
}

double DecayProfile::bound_at_index(std::size_t index) const {
  return bound_at_shell(shell_of(index, factors_));
}

double shell_offset(std::size_t shell, int factors) {
  // C(s + f - 1, f)
  double out = 1.0;
  for (int i = 1; i <= factors; ++i) out *= static_cast<double>(shell + i - 1) / i;
  return out;
}

std::size_t shell_of(std::size_t index, int factors) {
  if (factors <= 1) return index;
  const auto target = static_cast<double>(index);
  std::size_t s = 0;
  while (shell_offset(s + 1, factors) <= target) ++s;
  return s;
}

SequenceVector::SequenceVector(ComplexVector coefficients, DecayProfile profile)
    : coefficients_(std::move(coefficients)), profile_(profile) {
  for (Eigen::Index n = 0; n < coefficients_.size(); ++n) {
    const double mag = std::abs(coefficients_(n));
    const double bound = profile_.bound_at_index(static_cast<std::size_t>(n));
    if (!std::isfinite(mag) || mag > bound + kProfileSlack) {
      std::ostringstream msg;
      msg << "|x_" << n << "| = " << mag << " exceeds profile bound " << bound;
      throw Error(ErrorKind::ProfileViolation, msg.str());
    }
  }
}

SequenceVector SequenceVector::extremal(const DecayProfile& profile, std::size_t length) {
  ComplexVector c(static_cast<Eigen::Index>(length));
  for (std::size_t n = 0; n < length; ++n) c(static_cast<Eigen::Index>(n)) = profile.bound_at_index(n);
  return {std::move(c), profile};
}

double SeminormValue::value() const { return divergent ? kInf : std::max(stored, tail); }

SeminormValue seminorm(const SequenceVector& v, int k) {
  if (k < 0 || k > kMaxSeminormOrder)
    throw std::out_of_range("seminorm order must lie in [0, 16]");
  const DecayProfile& p = v.profile();
  const int f = p.factors();
  SeminormValue out;
  const auto& c = v.coefficients();
  for (Eigen::Index n = 0; n < c.size(); ++n)
    out.stored = std::max(out.stored, std::pow(1.0 + static_cast<double>(n), k) * std::abs(c(n)));

  const std::size_t first = v.size();
  if (p.constant() == 0.0) return out;

  if (const auto support = effective_support(p)) {
    const double end = shell_offset(*support, f);
    if (end <= static_cast<double>(first)) return out;
    if (end - static_cast<double>(first) <= static_cast<double>(kExplicitLimit)) {
      for (auto n = first; static_cast<double>(n) < end; ++n)
        out.tail = std::max(out.tail, std::pow(1.0 + static_cast<double>(n), k) * p.bound_at_index(n));
      return out;
    }
  }

  const std::size_t s0 = shell_of(first, f);
  if (p.kind() == DecayKind::Geometric && p.rate() < 1.0) {
    // h(s) = C(s + f, f)^k C r^s bounds (1 + n)^k |x_n| on shell s; it is
    // unimodal because h(s + 1)/h(s) decreases in s.
    const double log_r = std::log(p.rate());
    auto log_h = [&](std::size_t s) {
      double lb = 0.0;
      for (int i = 1; i <= f; ++i) lb += std::log(static_cast<double>(s + i) / i);
      return k * lb + std::log(p.constant()) + static_cast<double>(s) * log_r;
    };
    std::size_t s = s0;
    while (k * std::log(static_cast<double>(s + f + 1) / static_cast<double>(s + 1)) + log_r > 0.0) ++s;
    out.tail = std::exp(log_h(s));
    return out;
  }
  if (p.kind() == DecayKind::Geometric && p.rate() > 1.0) {
    out.divergent = true;
    return out;
  }
  const double a = p.kind() == DecayKind::Power ? p.rate() : 0.0;
  const double growth = f * k + a;
  if (growth > 0.0) {
    out.divergent = true;
    return out;
  }
  // (1 + n) <= (1 + s)^f on shell s, so (1 + n)^k C (1 + s)^a <= C (1 + s)^growth.
  out.tail = p.constant() * std::pow(1.0 + static_cast<double>(s0), growth);
  return out;
}

DecayClass classify(const DecayProfile& p) {
  if (effective_support(p)) return DecayClass::TestSpace;
  double a = p.rate();
  if (p.kind() == DecayKind::Geometric) {
    if (p.rate() < 1.0) return DecayClass::TestSpace;
    if (p.rate() > 1.0) return DecayClass::OutsideDual;
    a = 0.0;
  }
  // Shell s holds about s^(f-1) entries, so sum (1 + s)^(2a) s^(f-1)
  // converges iff a < -f/2.
  return a < -0.5 * p.factors() ? DecayClass::HilbertOnly : DecayClass::DualOnly;
}

PairingResult pair(const SequenceVector& f, const SequenceVector& v) {
  const DecayProfile& fp = f.profile();
  const DecayProfile& vp = v.profile();
  if (fp.factors() != vp.factors())
    throw Error(ErrorKind::UndefinedPairing, "sequences enumerate different tensor factors");
  if (classify(fp) == DecayClass::OutsideDual)
    throw Error(ErrorKind::UndefinedPairing, "functional profile lies outside the dual");
  if (classify(vp) != DecayClass::TestSpace)
    throw Error(ErrorKind::UndefinedPairing, "second argument is not a test vector");

  const int factors = fp.factors();
  const std::size_t nmin = std::min(f.size(), v.size());
  const std::size_t nmax = std::max(f.size(), v.size());
  PairingResult out;
  out.value = 0.0;
  double magnitude = 0.0;
  for (std::size_t n = 0; n < nmin; ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    out.value += std::conj(f.coefficients()(i)) * v.coefficients()(i);
    magnitude += std::abs(f.coefficients()(i)) * std::abs(v.coefficients()(i));
  }
  // Complex inner product: |fl(x^H y) - x^H y| <= sqrt(2) gamma_{n+2} |x|^T |y|,
  // one more unit absorbs the rounding of `magnitude` itself.
  const double ku = static_cast<double>(nmin + 3) * std::numeric_limits<double>::epsilon() / 2.0;
  out.rounding_bound = std::sqrt(2.0) * ku / (1.0 - ku) * magnitude;

  double tail = 0.0;
  for (std::size_t n = nmin; n < nmax; ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    tail += f.size() > v.size() ? std::abs(f.coefficients()(i)) * vp.bound_at_index(n)
                                : fp.bound_at_index(n) * std::abs(v.coefficients()(i));
  }

  // Past both truncations. Shell s0 is counted in full, which only
  // over-counts.
  const std::size_t s0 = shell_of(nmax, factors);
  const auto sf = effective_support(fp);
  const auto sv = effective_support(vp);
  std::optional<std::size_t> support;
  if (sf || sv) support = std::min(sf.value_or(SIZE_MAX), sv.value_or(SIZE_MAX));
  if (support && (*support <= s0 || *support - s0 <= kExplicitLimit)) {
    for (std::size_t s = s0; s < *support; ++s)
      tail += shell_count(s, factors) * fp.bound_at_shell(s) * vp.bound_at_shell(s);
  } else {
    const Shape a = shape_of(fp);
    const Shape b = shape_of(vp);
    const double constant = a.constant * b.constant;
    // shell_count(s) <= (1 + s)^(f - 1)
    if (constant > 0.0)
      tail += constant * tail_sum(a.exponent + b.exponent + factors - 1, a.ratio * b.ratio, s0);
  }
  out.tail_bound = tail;
  out.converged = tail < kPairingConvergence;
  return out;
}

DecayProfile tensor_profile(const DecayProfile& p, const DecayProfile& q) {
  const int factors = p.factors() + q.factors();

  if (outside_dual(p) || outside_dual(q)) {
    const bool p_out = outside_dual(p);
    const DecayProfile& big = p_out ? p : q;
    const DecayProfile& other = p_out ? q : p;
    double rate = big.rate();
    double constant = big.constant() * other.constant();
    if (other.kind() == DecayKind::Geometric) {
      rate = std::max(rate, other.rate());
    } else if (other.rate() > 0.0 && !effective_support(other)) {
      // (1 + s)^a <= K 2^s with K = max_s (1 + s)^a 2^-s.
      constant *= peak_weight(other.rate(), 0.5);
      rate *= 2.0;
    } else if (const auto s = effective_support(other); s && other.rate() > 0.0) {
      constant *= std::pow(static_cast<double>(*s), other.rate());
    }
    return DecayProfile::geometric(rate, constant, std::nullopt, factors);
  }

  if (p.constant() == 0.0 || q.constant() == 0.0)
    return DecayProfile::geometric(0.0, 0.0, std::nullopt, factors);

  const auto sp = effective_support(p);
  const auto sq = effective_support(q);

  if (sp.has_value() != sq.has_value()) {
    // One factor lives on shells below S; its partner's shell n is at
    // least s - S + 1.
    const DecayProfile& fin = sp ? p : q;
    const DecayProfile& inf = sp ? q : p;
    const std::size_t support = sp ? *sp : *sq;
    double peak = 0.0;
    for (std::size_t s = 0; s < support; ++s) peak = std::max(peak, fin.bound_at_shell(s));
    const double shift = static_cast<double>(support) - 1.0;
    if (inf.kind() == DecayKind::Geometric && inf.rate() < 1.0)
      return DecayProfile::geometric(inf.rate(), peak * inf.constant() * std::pow(inf.rate(), -shift),
                                     std::nullopt, factors);
    const double a = inf.kind() == DecayKind::Power ? inf.rate() : 0.0;
    const double widen = a < 0.0 ? std::pow(static_cast<double>(support), -a) : 1.0;
    return DecayProfile::power(a, peak * inf.constant() * widen, std::nullopt, factors);
  }

  std::optional<std::size_t> support;
  if (sp && sq) support = *sp + *sq - 1;
  const double constant = p.constant() * q.constant();

  if (p.kind() == DecayKind::Geometric && q.kind() == DecayKind::Geometric)
    return DecayProfile::geometric(std::max(p.rate(), q.rate()), constant, support, factors);

  if (p.kind() == DecayKind::Power && q.kind() == DecayKind::Power) {
    const double a1 = p.rate();
    const double a2 = q.rate();
    const double a = (a1 > 0.0 || a2 > 0.0) ? std::max(a1, 0.0) + std::max(a2, 0.0) : std::max(a1, a2);
    return DecayProfile::power(a, constant, support, factors);
  }

  const DecayProfile& geo = p.kind() == DecayKind::Geometric ? p : q;
  const DecayProfile& pw = p.kind() == DecayKind::Geometric ? q : p;
  const double r = geo.rate();
  const double a = pw.rate();
  if (r > 1.0) {
    // Only reachable with both supports finite, where 1 + s <= support.
    const double widen = a > 0.0 ? std::pow(static_cast<double>(*support), a) : 1.0;
    return DecayProfile::geometric(r, constant * widen, support, factors);
  }
  if (a >= 0.0) return DecayProfile::power(a, constant, support, factors);
  if (r == 1.0) return DecayProfile::power(0.0, constant, support, factors);
  // (1 + m)^a r^n <= M (1 + s)^a with M = max_j (1 + j)^|a| r^j.
  return DecayProfile::power(a, constant * peak_weight(-a, r), support, factors);
}

TransportedElement::TransportedElement(ComplexVector coefficients, SequenceVector source)
    : coefficients_(std::move(coefficients)), source_(std::move(source)) {}

namespace {

void require_unitary(const ComplexMatrix& u, Eigen::Index n) {
  if (u.rows() != n || u.cols() != n) {
    std::ostringstream msg;
    msg << "unitary is " << u.rows() << "x" << u.cols() << " but the truncation has length " << n;
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  if (n == 0) return;
  const double dev = (u.adjoint() * u - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(dev <= kUnitaryTolerance)) {
    std::ostringstream msg;
    msg << "max |u^H u - I| = " << dev << " exceeds " << kUnitaryTolerance;
    throw Error(ErrorKind::NotUnitary, msg.str());
  }
}

}  // namespace

TransportedElement transport(const ComplexMatrix& u, const SequenceVector& v) {
  require_unitary(u, v.coefficients().size());
  return {u * v.coefficients(), v};
}

TransportedElement transport(const ComplexMatrix& u, const TransportedElement& t) {
  require_unitary(u, t.coefficients().size());
  return {u * t.coefficients(), t.source()};
}

SeminormValue seminorm(const TransportedElement& t, int k) { return seminorm(t.source(), k); }

}  // namespace rigtfd
