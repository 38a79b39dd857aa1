#ifndef RIGTFD_JSON_IO_HPP
#define RIGTFD_JSON_IO_HPP

// JSON forms of the library types. Complex numbers are always [re, im].
//
//   operator       {"dim": d, "entries": [[re, im], ...]}        d*d, row-major
//   superoperator  {"dim": d, "entries": [[re, im], ...]}        d^4, row-major
//   doubled vector {"dim": d, "components": [[re, im], ...]}     d*d
//   thermal state  {"hamiltonian": op, "beta": b, "partition": z, "rho": op}
//   profile        {"kind": "geometric"|"power", "rate": r, "constant": c}
//                  plus optional "support" and "factors"
//   sequence       {"profile": profile, "coefficients": [[re, im], ...]}

#include <complex>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rigtfd/linalg.hpp"
#include "rigtfd/liouville.hpp"
#include "rigtfd/rigged.hpp"
#include "rigtfd/tfd.hpp"

namespace rigtfd::io {

using Json = nlohmann::json;

/// Malformed or schema-violating input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(std::complex<double> z);
std::complex<double> complex_from_json(const Json& j);

Json operator_to_json(const ComplexMatrix& m);
ComplexMatrix operator_from_json(const Json& j);

Json superoperator_to_json(const SuperOperator<double>& s);
SuperOperator<double> superoperator_from_json(const Json& j);

Json doubled_to_json(const DoubledVector<double>& v);
DoubledVector<double> doubled_from_json(const Json& j);

Json thermal_state_to_json(const ThermalState<double>& s);
/// Rebuilds the state from its hamiltonian and beta, then checks the
/// stored partition and rho against it.
ThermalState<double> thermal_state_from_json(const Json& j);

Json profile_to_json(const DecayProfile& p);
DecayProfile profile_from_json(const Json& j);

Json sequence_to_json(const SequenceVector& v);
SequenceVector sequence_from_json(const Json& j);

/// Parses text, mapping nlohmann parse errors to FormatError.
Json parse(const std::string& text);

}  // namespace rigtfd::io

#endif  // RIGTFD_JSON_IO_HPP
