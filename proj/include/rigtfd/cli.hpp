#ifndef RIGTFD_CLI_HPP
#define RIGTFD_CLI_HPP

#include <iosfwd>

namespace rigtfd::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailure = 1,
  kParseError = 2,
  kDomainError = 3,
};

/// Entry point of the `rigtfd` tool. JSON goes to `out`, diagnostics to
/// `err`; `in` is read when no --input is given.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace rigtfd::cli

#endif  // RIGTFD_CLI_HPP
