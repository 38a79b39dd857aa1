#ifndef RIGTFD_ERROR_HPP
#define RIGTFD_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace rigtfd {

/// Domain error categories. The name of each enumerator is also the
/// leading token of the exception message.
enum class ErrorKind {
  NonSquare,
  NotHermitian,
  NegativeEigenvalue,
  DimensionMismatch,
  BadLength,
  NotDensityOperator,
  NegativeBeta,
  NonHermitianObservable,
  NotUnitary,
  UndefinedPairing,
  NotTestSpace,
  InvalidProfile,
  ProfileViolation,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BadLength: return "BadLength";
    case ErrorKind::NotDensityOperator: return "NotDensityOperator";
    case ErrorKind::NegativeBeta: return "NegativeBeta";
    case ErrorKind::NonHermitianObservable: return "NonHermitianObservable";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::UndefinedPairing: return "UndefinedPairing";
    case ErrorKind::NotTestSpace: return "NotTestSpace";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::ProfileViolation: return "ProfileViolation";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rigtfd

#endif  // RIGTFD_ERROR_HPP
