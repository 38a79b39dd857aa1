#include "rigtfd/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rigtfd/error.hpp"
#include "rigtfd/json_io.hpp"
#include "rigtfd/liouville.hpp"
#include "rigtfd/rigged.hpp"
#include "rigtfd/tfd.hpp"
#include "rigtfd/verify.hpp"

namespace rigtfd::cli {

namespace {

using io::Json;

constexpr double kRouteTolerance = 1e-10;
constexpr int kSeminormTableOrders = 5;

struct Options {
  std::string input;
  double beta = 0.0;
  std::string route = "both";
  std::string kind = "left";
  std::uint64_t seed = 42;
  std::vector<int> dims{2, 3, 4};
  int trials = 100;
  bool inject_fault = false;
};

Json read_input(const Options& opt, std::istream& in) {
  std::string text;
  if (opt.input.empty() || opt.input == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream file(opt.input);
    if (!file) throw io::FormatError("cannot open " + opt.input);
    text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  return io::parse(text);
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw io::FormatError(std::string("input needs key \"") + key + "\"");
  return j.at(key);
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

int cmd_gibbs(const Options& opt, std::istream& in, std::ostream& out) {
  const ComplexMatrix h = io::operator_from_json(read_input(opt, in));
  emit(out, io::thermal_state_to_json(gibbs(h, opt.beta)));
  return kOk;
}

int cmd_average(const Options& opt, std::istream& in, std::ostream& out, std::ostream& err) {
  const Json input = read_input(opt, in);
  const ComplexMatrix h = io::operator_from_json(member(input, "hamiltonian"));
  const Observable<double> a(io::operator_from_json(member(input, "observable")));
  const auto state = gibbs(h, opt.beta);

  Json routes = Json::object();
  double value = 0.0;
  const bool want_op = opt.route != "tfd";
  const bool want_tfd = opt.route != "operator";
  double op = 0.0;
  double tfd = 0.0;
  if (want_op) {
    op = thermal_average_operator(a, state);
    routes["operator"] = op;
    value = op;
  }
  if (want_tfd) {
    tfd = thermal_average_tfd(a, thermal_vacuum(state));
    routes["tfd"] = tfd;
    if (!want_op) value = tfd;
  }
  Json result{{"value", value}, {"route_values", routes}};
  int code = kOk;
  if (want_op && want_tfd) {
    const double delta = std::abs(op - tfd);
    result["delta"] = delta;
    if (!(delta <= kRouteTolerance)) {
      err << "routes disagree: delta = " << delta << " exceeds " << kRouteTolerance << '\n';
      code = kVerificationFailure;
    }
  } else {
    result["delta"] = nullptr;
  }
  emit(out, result);
  return code;
}

int cmd_vacuum(const Options& opt, std::istream& in, std::ostream& out) {
  const ComplexMatrix h = io::operator_from_json(read_input(opt, in));
  emit(out, io::doubled_to_json(thermal_vacuum(gibbs(h, opt.beta)).state));
  return kOk;
}

int cmd_super(const Options& opt, std::istream& in, std::ostream& out) {
  const ComplexMatrix a = io::operator_from_json(read_input(opt, in));
  if (opt.kind == "left") {
    emit(out, io::superoperator_to_json(left_mult_super(a)));
  } else if (opt.kind == "right") {
    emit(out, io::superoperator_to_json(right_mult_super(a)));
  } else {
    emit(out, io::superoperator_to_json(commutator_super(a)));
  }
  return kOk;
}

/// Accepts a bare profile or a sequence vector. A bare profile is
/// represented by its extremal sequence on the default truncation.
int cmd_classify(const Options& opt, std::istream& in, std::ostream& out) {
  const Json input = read_input(opt, in);
  const SequenceVector seq = input.is_object() && input.contains("profile")
                                 ? io::sequence_from_json(input)
                                 : SequenceVector::extremal(io::profile_from_json(input), kDefaultTruncation);
  Json table = Json::array();
  for (int k = 0; k < kSeminormTableOrders; ++k) {
    const SeminormValue s = seminorm(seq, k);
    Json row{{"k", k}, {"divergent", s.divergent}};
    row["value"] = s.divergent ? Json(nullptr) : Json(s.value());
    table.push_back(std::move(row));
  }
  emit(out, Json{{"class", std::string(to_string(classify(seq.profile())))},
                 {"profile", io::profile_to_json(seq.profile())},
                 {"truncation", seq.size()},
                 {"seminorms", std::move(table)}});
  return kOk;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  VerifyOptions vo;
  vo.seed = opt.seed;
  vo.dims = opt.dims;
  vo.trials = opt.trials;
  vo.inject_fault = opt.inject_fault;
  const VerificationReport report = run_verification(vo);
  emit(out, report_to_json(report));
  return report.overall ? kOk : kVerificationFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermo field dynamics and Liouville-space toolkit", "rigtfd"};
  app.require_subcommand(1);
  Options opt;

  auto add_input = [&opt](CLI::App* sub) {
    sub->add_option("--input", opt.input, "JSON input file (default: standard input)");
  };
  auto add_beta = [&opt](CLI::App* sub) {
    sub->add_option("--beta", opt.beta, "Inverse temperature")->required();
  };

  auto* gibbs_cmd = app.add_subcommand("gibbs", "Gibbs state of a Hamiltonian");
  add_input(gibbs_cmd);
  add_beta(gibbs_cmd);

  auto* average_cmd = app.add_subcommand("average", "Thermal average of an observable");
  add_input(average_cmd);
  add_beta(average_cmd);
  average_cmd->add_option("--route", opt.route, "operator, tfd or both")
      ->check(CLI::IsMember({"operator", "tfd", "both"}));

  auto* vacuum_cmd = app.add_subcommand("vacuum", "Thermal vacuum in the doubled space");
  add_input(vacuum_cmd);
  add_beta(vacuum_cmd);

  auto* super_cmd = app.add_subcommand("super", "Superoperator of an operator");
  add_input(super_cmd);
  super_cmd->add_option("--kind", opt.kind, "left, right or commutator")
      ->check(CLI::IsMember({"left", "right", "commutator"}));

  auto* classify_cmd = app.add_subcommand("classify", "Triplet tier and seminorms of a profile");
  add_input(classify_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Run the seeded property suites");
  verify_cmd->add_option("--seed", opt.seed, "PRNG seed");
  verify_cmd->add_option("--dims", opt.dims, "Comma-separated dimensions")
      ->delimiter(',')
      ->check(CLI::Range(1, 64));
  verify_cmd->add_option("--trials", opt.trials, "Trials per dimension")->check(CLI::Range(1, 1000000));
  verify_cmd->add_flag("--inject-fault", opt.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (gibbs_cmd->parsed()) return cmd_gibbs(opt, in, out);
    if (average_cmd->parsed()) return cmd_average(opt, in, out, err);
    if (vacuum_cmd->parsed()) return cmd_vacuum(opt, in, out);
    if (super_cmd->parsed()) return cmd_super(opt, in, out);
    if (classify_cmd->parsed()) return cmd_classify(opt, in, out);
    if (verify_cmd->parsed()) return cmd_verify(opt, out);
  } catch (const io::FormatError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kParseError;
}

}  // namespace rigtfd::cli
