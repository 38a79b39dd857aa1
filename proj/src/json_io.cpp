#include "rigtfd/json_io.hpp"

#include <cmath>
#include <sstream>

namespace rigtfd::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object with key \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing key \"") + key + "\"");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(std::string(what) + " must be finite");
  return x;
}

Eigen::Index dimension(const Json& j) {
  const Json& d = field(j, "dim");
  if (!d.is_number_integer() || d.get<long long>() < 0) fail("\"dim\" must be a nonnegative integer");
  return static_cast<Eigen::Index>(d.get<long long>());
}

ComplexVector complex_list(const Json& j, Eigen::Index expected, const char* key) {
  if (!j.is_array()) fail(std::string("\"") + key + "\" must be an array");
  if (static_cast<Eigen::Index>(j.size()) != expected) {
    std::ostringstream msg;
    msg << "\"" << key << "\" has " << j.size() << " elements, expected " << expected;
    fail(msg.str());
  }
  ComplexVector out(expected);
  for (Eigen::Index i = 0; i < expected; ++i) out(i) = complex_from_json(j[static_cast<std::size_t>(i)]);
  return out;
}

Json complex_array(const auto& values) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < values.size(); ++i) out.push_back(to_json(values(i)));
  return out;
}

ComplexMatrix square_from_entries(const ComplexVector& flat, Eigen::Index n) {
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = flat(i * n + k);
  return m;
}

Json row_major(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) out.push_back(to_json(m(i, k)));
  return out;
}

}  // namespace

Json to_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) fail("complex numbers must be [re, im] pairs");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

Json operator_to_json(const ComplexMatrix& m) {
  require_square(m);
  return Json{{"dim", m.rows()}, {"entries", row_major(m)}};
}

ComplexMatrix operator_from_json(const Json& j) {
  const Eigen::Index d = dimension(j);
  return square_from_entries(complex_list(field(j, "entries"), d * d, "entries"), d);
}

Json superoperator_to_json(const SuperOperator<double>& s) {
  return Json{{"dim", s.dim()}, {"entries", row_major(s.matrix())}};
}

SuperOperator<double> superoperator_from_json(const Json& j) {
  const Eigen::Index d = dimension(j);
  const Eigen::Index n = d * d;
  return {d, square_from_entries(complex_list(field(j, "entries"), n * n, "entries"), n)};
}

Json doubled_to_json(const DoubledVector<double>& v) {
  return Json{{"dim", v.dim()}, {"components", complex_array(v.components())}};
}

DoubledVector<double> doubled_from_json(const Json& j) {
  const Eigen::Index d = dimension(j);
  return {d, complex_list(field(j, "components"), d * d, "components")};
}

Json thermal_state_to_json(const ThermalState<double>& s) {
  return Json{{"hamiltonian", operator_to_json(s.hamiltonian)},
              {"beta", s.beta},
              {"partition", s.partition},
              {"rho", operator_to_json(s.rho.matrix())}};
}

ThermalState<double> thermal_state_from_json(const Json& j) {
  const ComplexMatrix h = operator_from_json(field(j, "hamiltonian"));
  const double beta = number(field(j, "beta"), "\"beta\"");
  const double partition = number(field(j, "partition"), "\"partition\"");
  const ComplexMatrix rho = operator_from_json(field(j, "rho"));
  ThermalState<double> s = gibbs(h, beta);
  if (rho.rows() != h.rows()) fail("\"rho\" and \"hamiltonian\" differ in dimension");
  if (std::abs(partition - s.partition) > 1e-10 * std::abs(s.partition))
    fail("\"partition\" disagrees with the hamiltonian and beta");
  if ((rho - s.rho.matrix()).cwiseAbs().maxCoeff() > 1e-10)
    fail("\"rho\" disagrees with the hamiltonian and beta");
  return ThermalState<double>{h, beta, partition, DensityOperator<double>(rho)};
}

Json profile_to_json(const DecayProfile& p) {
  Json out{{"kind", std::string(to_string(p.kind()))}, {"rate", p.rate()}, {"constant", p.constant()}};
  if (p.support()) out["support"] = *p.support();
  if (p.factors() != 1) out["factors"] = p.factors();
  return out;
}

DecayProfile profile_from_json(const Json& j) {
  const Json& kind_json = field(j, "kind");
  if (!kind_json.is_string()) fail("\"kind\" must be a string");
  const auto kind = parse_decay_kind(kind_json.get<std::string>());
  if (!kind) fail("\"kind\" must be \"geometric\" or \"power\"");
  const double rate = number(field(j, "rate"), "\"rate\"");
  const double constant = number(field(j, "constant"), "\"constant\"");
  std::optional<std::size_t> support;
  if (const auto it = j.find("support"); it != j.end() && !it->is_null()) {
    if (!it->is_number_unsigned()) fail("\"support\" must be a nonnegative integer");
    support = it->get<std::size_t>();
  }
  int factors = 1;
  if (const auto it = j.find("factors"); it != j.end()) {
    if (!it->is_number_integer()) fail("\"factors\" must be an integer");
    factors = it->get<int>();
  }
  return *kind == DecayKind::Geometric ? DecayProfile::geometric(rate, constant, support, factors)
                                       : DecayProfile::power(rate, constant, support, factors);
}

Json sequence_to_json(const SequenceVector& v) {
  return Json{{"profile", profile_to_json(v.profile())},
              {"coefficients", complex_array(v.coefficients())}};
}

SequenceVector sequence_from_json(const Json& j) {
  const DecayProfile profile = profile_from_json(field(j, "profile"));
  const Json& coeffs = field(j, "coefficients");
  if (!coeffs.is_array()) fail("\"coefficients\" must be an array");
  return {complex_list(coeffs, static_cast<Eigen::Index>(coeffs.size()), "coefficients"), profile};
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(e.what());
  }
}

}  // namespace rigtfd::io
