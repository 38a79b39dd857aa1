#ifndef RIGTFD_VERIFY_HPP
#define RIGTFD_VERIFY_HPP

// Seeded property suites behind `rigtfd verify`.

#include <cstdint>
#include <string>
#include <vector>

#include "rigtfd/json_io.hpp"
#include "rigtfd/rigged.hpp"

namespace rigtfd {

struct VerificationCase {
  std::string property;
  std::vector<int> dims;
  int trials = 0;  // per dimension
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerificationReport {
  std::string suite;
  std::vector<VerificationCase> cases;
  std::uint64_t seed = 0;
  bool overall = false;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::vector<int> dims{2, 3, 4};
  int trials = 100;
  /// Negative control: places the observable on the tilde factor in the
  /// doubled-space route, which breaks route equivalence.
  bool inject_fault = false;
};

/// Runs every property. Each case draws from its own stream derived from
/// the seed and the case index, so results do not depend on run order.
VerificationReport run_verification(const VerifyOptions& options);

io::Json report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const io::Json& j);

/// Triplet tier read off a profile's extremal sequence on n < 10^4 with no
/// reference to classify(): seminorm grids for k <= 16, Cauchy condensation
/// of sum |x_n|^2 over dyadic blocks, and polynomial domination.
DecayClass brute_force_class(const DecayProfile& profile);

/// Thirty profiles spanning all four tiers, kept away from the tier
/// boundaries that a finite grid cannot resolve (the exact boundary
/// a = -1/2 is included).
std::vector<DecayProfile> classification_fixtures();

}  // namespace rigtfd

#endif  // RIGTFD_VERIFY_HPP
