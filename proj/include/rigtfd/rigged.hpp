#ifndef RIGTFD_RIGGED_HPP
#define RIGTFD_RIGGED_HPP

// Truncated weighted-sequence model of a Gelfand triplet s ⊂ l2 ⊂ s'.
//
// A sequence is stored as its first N coefficients together with a
// DecayProfile that certifies a bound on every coefficient, stored or not.
// Membership questions (test space, Hilbert space, dual) are answered from
// the profile alone; the stored coefficients only ever tighten numbers.
//
// Tensor products are enumerated shell by shell: a multi-index
// (m_1, ..., m_f) lies on shell m_1 + ... + m_f, and the flat index runs
// through shell 0, then shell 1, and so on (Cantor's diagonal order when
// f = 2). Profiles bound coefficients as a function of the shell.

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>

#include "rigtfd/linalg.hpp"

namespace rigtfd {

enum class DecayKind { Geometric, Power };

enum class DecayClass { TestSpace, HilbertOnly, DualOnly, OutsideDual };

std::string_view to_string(DecayKind kind);
std::string_view to_string(DecayClass cls);
std::optional<DecayKind> parse_decay_kind(std::string_view name);
std::optional<DecayClass> parse_decay_class(std::string_view name);

/// Bound |x| <= constant * rate^s (geometric) or constant * (1 + s)^rate
/// (power) on shell s. An optional support makes every shell at or beyond
/// it vanish; finitely supported profiles always describe test vectors.
class DecayProfile {
 public:
  static DecayProfile geometric(double rate, double constant = 1.0,
                                std::optional<std::size_t> support = std::nullopt,
                                int factors = 1);
  static DecayProfile power(double exponent, double constant = 1.0,
                            std::optional<std::size_t> support = std::nullopt,
                            int factors = 1);

  DecayKind kind() const { return kind_; }
  /// Geometric ratio, or the power-law exponent.
  double rate() const { return rate_; }
  double constant() const { return constant_; }
  /// Number of shells that may be nonzero; nullopt when unbounded.
  std::optional<std::size_t> support() const { return support_; }
  /// Number of tensor factors in the enumeration.
  int factors() const { return factors_; }

  double bound_at_shell(std::size_t shell) const;
  double bound_at_index(std::size_t index) const;

  bool operator==(const DecayProfile&) const = default;

 private:
  DecayProfile(DecayKind kind, double rate, double constant,
               std::optional<std::size_t> support, int factors);

  DecayKind kind_;
  double rate_;
  double constant_;
  std::optional<std::size_t> support_;
  int factors_;
};

/// Shell of a flat index in the graded enumeration of f-tuples.
std::size_t shell_of(std::size_t index, int factors);
/// Number of f-tuples on shells below `shell`.
double shell_offset(std::size_t shell, int factors);

class SequenceVector {
 public:
  /// Throws ProfileViolation if a stored coefficient exceeds the profile
  /// bound by more than 1e-12.
  SequenceVector(ComplexVector coefficients, DecayProfile profile);

  /// The profile's extremal sequence: coefficient n equals the bound.
  static SequenceVector extremal(const DecayProfile& profile, std::size_t length);

  const ComplexVector& coefficients() const { return coefficients_; }
  const DecayProfile& profile() const { return profile_; }
  std::size_t size() const { return static_cast<std::size_t>(coefficients_.size()); }

 private:
  ComplexVector coefficients_;
  DecayProfile profile_;
};

inline constexpr int kMaxSeminormOrder = 16;
inline constexpr std::size_t kDefaultTruncation = 256;

/// p_k(x) = sup_n (1 + n)^k |x_n|.
struct SeminormValue {
  bool divergent = false;
  /// Supremum over the stored coefficients.
  double stored = 0.0;
  /// Profile bound on the supremum over indices past the truncation.
  double tail = 0.0;

  /// Upper bound on the full supremum (infinite when divergent).
  double value() const;
};

/// Throws std::out_of_range for k outside [0, 16].
SeminormValue seminorm(const SequenceVector& v, int k);

DecayClass classify(const DecayProfile& p);

struct PairingResult {
  std::complex<double> value;
  /// Bound on the terms the truncated sum leaves out.
  double tail_bound = 0.0;
  /// Bound on the floating-point error of `value` against the exact
  /// truncated sum.
  double rounding_bound = 0.0;
  bool converged = false;
};

inline constexpr double kPairingConvergence = 1e-9;

/// <f, v> = sum_n conj(f_n) v_n for a dual element f and a test vector v.
/// |<f, v> - value| <= tail_bound + rounding_bound.
PairingResult pair(const SequenceVector& f, const SequenceVector& v);

/// Profile of the product sequence x_{(m, n)} = p_m q_n in the shell
/// enumeration of the combined factors.
DecayProfile tensor_profile(const DecayProfile& p, const DecayProfile& q);

/// The image of a sequence under a unitary on its truncation. The image
/// carries the topology induced from its source, so its class and
/// seminorms are those of the source.
class TransportedElement {
 public:
  TransportedElement(ComplexVector coefficients, SequenceVector source);

  const ComplexVector& coefficients() const { return coefficients_; }
  const SequenceVector& source() const { return source_; }
  DecayClass decay_class() const { return classify(source_.profile()); }

 private:
  ComplexVector coefficients_;
  SequenceVector source_;
};

inline constexpr double kUnitaryTolerance = 1e-10;

TransportedElement transport(const ComplexMatrix& u, const SequenceVector& v);
TransportedElement transport(const ComplexMatrix& u, const TransportedElement& t);
SeminormValue seminorm(const TransportedElement& t, int k);

}  // namespace rigtfd

#endif  // RIGTFD_RIGGED_HPP
