#include "jetmech/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jetmech/report.hpp"
#include "jetmech/sampling.hpp"
#include "jetmech/scenarios.hpp"

namespace jetmech::cli {
namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

// Raised for anything the user has to fix on the command line.
class BadInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioOptions {
  std::string scenario;
  std::string config;
  int n = 1;
  bool n_given = false;
};

void add_scenario_options(CLI::App* cmd, ScenarioOptions& o) {
  cmd->add_option("--scenario", o.scenario, "built-in scenario name");
  cmd->add_option("--config", o.config, "scenario JSON file");
  cmd->add_option("--n", o.n, "fiber dimension")->check(CLI::PositiveNumber);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

Scenario resolve_scenario(const ScenarioOptions& o) {
  if (!o.scenario.empty() && !o.config.empty()) throw BadInput("--scenario and --config are exclusive");
  try {
    if (!o.config.empty()) {
      ScenarioConfig c = parse_scenario_config(read_file(o.config));
      if (o.n_given && o.n != c.n) throw BadInput("--n disagrees with the config file");
      return make_scenario(c);
    }
    if (o.scenario.empty()) throw BadInput("a scenario is required (--scenario or --config)");
    return builtin_scenario(o.scenario, o.n);
  } catch (const Error& e) {
    throw BadInput(e.what());
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    double x = 0.0;
    const char* first = item.data();
    const char* last = first + item.size();
    if (!item.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, x);
    if (item.empty() || ec != std::errc() || ptr != last || !std::isfinite(x)) {
      throw BadInput("malformed number list '" + text + "'");
    }
    values.push_back(x);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

Vec to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("JETMECH_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t seed = 0;
  const char* last = env + std::char_traits<char>::length(env);
  auto [ptr, ec] = std::from_chars(env, last, seed);
  if (ec != std::errc() || ptr != last) throw BadInput("JETMECH_SEED is not an unsigned integer");
  return seed;
}

void require_positive_tol(double tol) {
  if (!(tol > 0.0)) throw BadInput("tolerance must be positive");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text << '\n';
    return;
  }
  std::ofstream file(path);
  if (!file) throw BadInput("cannot write " + path);
  file << text << '\n';
}

std::vector<Vec> sample_params(int dim, int count, std::uint64_t seed) {
  UniformSampler sampler(seed);
  std::vector<Vec> params;
  params.reserve(count);
  for (int i = 0; i < count; ++i) params.push_back(sampler.box(dim));
  return params;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  ScenarioOptions scenario;
  std::string route;
  double t0 = 0.0;
  double t1 = 1.0;
  double step = 1e-3;
  std::string out;
  std::string x0;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
  const Scenario s = resolve_scenario(o.scenario);
  const int n = s.n;
  IntegratorConfig cfg{o.t0, o.t1, o.step};
  try {
    (void)cfg.steps();
  } catch (const Error& e) {
    throw BadInput(e.what());
  }

  SpaceId space{Space::J1PI, n};
  VectorField field;
  std::optional<HamiltonianSystem> ham;
  if (o.route == "lagrangian") {
    if (!s.lagrangian) throw BadInput("scenario " + s.name + " has no Lagrangian");
    const LagrangianSystem sys = *s.lagrangian;
    field = [sys](const SpacePoint& j) { return euler_lagrange_field(sys, j); };
  } else {
    ham = s.hamiltonian_or_dual();
    const HamiltonianSystem sys = *ham;
    if (o.route == "hamiltonian") {
      space = {Space::VSTAR, n};
      field = [sys](const SpacePoint& v) { return reeb_field(sys, v); };
    } else {
      space = {Space::TSTARM, n};
      field = [sys](const SpacePoint& a) { return extended_field(sys, a); };
    }
  }

  Vec x0 = Vec::Zero(space.dim());
  if (!o.x0.empty()) {
    const std::vector<double> values = parse_list(o.x0);
    if (static_cast<int>(values.size()) != space.dim() - 1) {
      throw BadInput("--x0 needs " + std::to_string(space.dim() - 1) + " values (all coordinates but t)");
    }
    x0.tail(space.dim() - 1) = to_vec(values);
  }
  x0[0] = o.t0;

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out.empty() && o.out != "-") {
    file.open(o.out);
    if (!file) throw BadInput("cannot write " + o.out);
    sink = &file;
  }
  try {
    write_csv(*sink, integrate(field, SpacePoint(space, x0), cfg));
  } catch (const IntegrationAborted& e) {
    write_csv(*sink, e.partial());
    *sink << "# aborted: " << e.what() << '\n';
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kOk;
}

// ------------------------------------------------------------------ verify

struct VerifyOptions {
  ScenarioOptions scenario;
  std::string suite;
  int samples = 100;
  std::optional<std::uint64_t> seed;
  double tol = 1e-12;
  double t0 = 0.0;
  double t1 = 5.0;
  double step = 1e-3;
  std::string x0;
  std::string out;
};

constexpr double kEqualityTol = 1e-10;
constexpr double kFlowTol = 1e-6;
constexpr double kLemmaTol = 1e-12;

// The scenarios a suite runs on: the one requested, or every built-in that
// exists in dimension n (one-dimensional built-ins fall back to n = 1).
std::vector<Scenario> suite_scenarios(const ScenarioOptions& o, bool hyperregular_only) {
  if (!o.scenario.empty() || !o.config.empty()) return {resolve_scenario(o)};
  std::vector<Scenario> out;
  const auto names = hyperregular_only ? hyperregular_scenario_names() : builtin_scenario_names();
  for (const auto& name : names) {
    try {
      out.push_back(builtin_scenario(name, o.n));
    } catch (const InvalidArgument&) {
      out.push_back(builtin_scenario(name, 1));
    }
  }
  return out;
}

Json named(SubmanifoldReport r, const std::string& object, const std::string& scenario) {
  r.object = object;
  r.scenario = scenario;
  return to_json(r);
}

Json run_maps(int n, int samples, std::uint64_t seed, double tol, bool& pass) {
  Json list = Json::array();
  for (MapId id : {MapId::A_PI, MapId::B_PI, MapId::A_TILDE, MapId::B_TILDE}) {
    const StructureMapReport r = verify_structure_map(id, n, samples, seed, tol);
    pass = pass && r.pass;
    list.push_back(to_json(r));
  }
  return list;
}

void run_submanifolds(const Scenario& s, int samples, std::uint64_t seed, double tol, Json& checks,
                      Json& equalities, bool& pass) {
  const int n = s.n;
  auto record = [&](const SubmanifoldReport& r, const std::string& object) {
    pass = pass && r.pass;
    checks.push_back(named(r, object, s.name));
  };
  const std::vector<Vec> jet_params = sample_params(1 + 2 * n, samples, seed);
  const std::vector<Vec> ext_params = sample_params(2 + 2 * n, samples, seed);

  if (s.lagrangian) {
    const LagrangianSystem& L = *s.lagrangian;
    record(poisson_lagrangian_check(dl_tilde_immersion(L),
                                    canonical_structure(StructureId::LAMBDA_TILDE_J1PI, n), jet_params, tol),
           "dl_tilde");
    record(presymplectic_lagrangian_check(s_l_tilde_immersion(L),
                                          canonical_structure(StructureId::OMEGA_J1TILDE, n), ext_params, tol),
           "s_l_tilde");
  }
  if (s.hamiltonian || (s.lagrangian && s.hyperregular)) {
    const HamiltonianSystem H = s.hamiltonian_or_dual();
    record(poisson_lagrangian_check(dh_tilde_immersion(H),
                                    canonical_structure(StructureId::LAMBDA_TILDE_PMU, n), jet_params, tol),
           "dh_tilde");
    record(presymplectic_lagrangian_check(dfh_immersion(H), canonical_structure(StructureId::PHI_VHAT1, n),
                                          ext_params, tol),
           "dfh");
  }
  if (s.lagrangian && s.hyperregular) {
    for (Variant v : {Variant::restricted, Variant::extended}) {
      const EqualityReport r = equality_check(*s.lagrangian, v, samples, seed, kEqualityTol);
      pass = pass && r.pass;
      equalities.push_back(to_json(r));
    }
  }
}

bool flow_passes(const EquivalenceReport& r) {
  const bool order_ok = !r.order_estimate || (*r.order_estimate >= 8.0 && *r.order_estimate <= 32.0);
  return r.sup_gap <= kFlowTol && r.ec2_residual_max <= kFlowTol && r.lemma_l1_max <= kLemmaTol &&
         order_ok;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  require_positive_tol(o.tol);
  if (o.samples < 1) throw BadInput("--samples must be positive");
  const std::uint64_t seed = resolve_seed(o.seed);
  const bool all = o.suite == "all";
  const int n = o.scenario.n;

  Json report = {{"suite", o.suite}, {"seed", seed}, {"n", n}, {"samples", o.samples}, {"tol", o.tol}};
  bool pass = true;
  try {
    if (all || o.suite == "maps") report["maps"] = run_maps(n, o.samples, seed, o.tol, pass);
    if (all || o.suite == "submanifolds") {
      Json checks = Json::array();
      Json equalities = Json::array();
      for (const Scenario& s : suite_scenarios(o.scenario, false)) {
        run_submanifolds(s, o.samples, seed, o.tol, checks, equalities, pass);
      }
      report["submanifolds"] = checks;
      report["equality"] = equalities;
    }
    if (all || o.suite == "equivalence") {
      IntegratorConfig cfg{o.t0, o.t1, o.step};
      try {
        (void)cfg.steps();
      } catch (const InvalidArgument& e) {
        throw BadInput(e.what());
      }
      Json flows = Json::array();
      for (const Scenario& s : suite_scenarios(o.scenario, true)) {
        if (!s.lagrangian) throw BadInput("scenario " + s.name + " has no Lagrangian");
        const int dim = 1 + 2 * s.n;
        Vec x0(dim);
        if (o.x0.empty()) {
          x0.segment(1, s.n).setOnes();
          x0.tail(s.n).setConstant(0.5);
        } else {
          const std::vector<double> values = parse_list(o.x0);
          if (static_cast<int>(values.size()) != dim - 1) throw BadInput("--x0 has the wrong length");
          x0.tail(dim - 1) = to_vec(values);
        }
        x0[0] = o.t0;
        const EquivalenceReport r = equivalence_report(*s.lagrangian, cfg, SpacePoint(s.lagrangian->jet_space(), x0));
        Json entry = to_json(r);
        entry["pass"] = flow_passes(r);
        pass = pass && flow_passes(r);
        flows.push_back(entry);
      }
      report["equivalence"] = flows;
    }
  } catch (const IntegrationAborted& e) {
    err << "error: " << e.what() << '\n';
    pass = false;
    report["error"] = e.what();
  } catch (const RankDeficient& e) {
    err << "error: " << e.what() << '\n';
    pass = false;
    report["error"] = e.what();
  }
  report["pass"] = pass;
  emit(dump_json(report, 2), o.out, out);
  return pass ? kOk : kFailed;
}

// ---------------------------------------------------------------- legendre

struct LegendreOptions {
  ScenarioOptions scenario;
  std::string point;
};

int cmd_legendre(const LegendreOptions& o, std::ostream& out) {
  const Scenario s = resolve_scenario(o.scenario);
  if (!s.lagrangian) throw BadInput("scenario " + s.name + " has no Lagrangian");
  const LagrangianSystem& L = *s.lagrangian;
  const std::vector<double> values = parse_list(o.point);
  if (static_cast<int>(values.size()) != L.jet_space().dim()) {
    throw BadInput("point needs " + std::to_string(L.jet_space().dim()) + " values (t, q, qdot)");
  }
  const SpacePoint j(L.jet_space(), to_vec(values));
  const Json report = {{"restricted", to_json(legendre_restricted(L, j).coords())},
                       {"extended", to_json(legendre_extended(L, j).coords())},
                       {"regular", regularity(L, j).regular}};
  out << dump_json(report) << '\n';
  return kOk;
}

// ------------------------------------------------------- check-submanifold

struct CheckOptions {
  ScenarioOptions scenario;
  std::string object;
  int samples = 50;
  std::optional<std::uint64_t> seed;
  double tol = 1e-12;
  std::string out;
};

int cmd_check(const CheckOptions& o, std::ostream& out, std::ostream& err) {
  require_positive_tol(o.tol);
  if (o.samples < 1) throw BadInput("--samples must be positive");
  const std::uint64_t seed = resolve_seed(o.seed);

  // Objects that need no mechanical system.
  std::optional<Scenario> s;
  const bool standalone = o.object == "non_closed_section" || o.object == "vhat1";
  if (!standalone) s = resolve_scenario(o.scenario);
  const int n = s ? s->n : o.scenario.n;

  auto lagrangian = [&]() -> const LagrangianSystem& {
    if (!s->lagrangian) throw BadInput("scenario " + s->name + " has no Lagrangian");
    return *s->lagrangian;
  };
  auto hamiltonian = [&]() {
    if (!s->hamiltonian && !s->hyperregular) throw BadInput("scenario " + s->name + " has no Hamiltonian");
    return s->hamiltonian_or_dual();
  };

  ParamImmersion C;
  StructureId structure;
  if (o.object == "dl_tilde") {
    C = dl_tilde_immersion(lagrangian());
    structure = StructureId::LAMBDA_TILDE_J1PI;
  } else if (o.object == "dh_tilde") {
    C = dh_tilde_immersion(hamiltonian());
    structure = StructureId::LAMBDA_TILDE_PMU;
  } else if (o.object == "dfh") {
    C = dfh_immersion(hamiltonian());
    structure = StructureId::PHI_VHAT1;
  } else if (o.object == "s_l") {
    C = s_l_immersion(lagrangian());
    structure = StructureId::LAMBDA_J1PI1STAR;
  } else if (o.object == "s_h") {
    C = s_h_immersion(hamiltonian());
    structure = StructureId::LAMBDA_J1PI1STAR;
  } else if (o.object == "s_l_tilde") {
    C = s_l_tilde_immersion(lagrangian());
    structure = StructureId::OMEGA_J1TILDE;
  } else if (o.object == "s_h_tilde") {
    C = s_h_tilde_immersion(hamiltonian());
    structure = StructureId::OMEGA_J1TILDE;
  } else if (o.object == "non_closed_section") {
    C = non_closed_section_immersion(n);
    structure = StructureId::LAMBDA_TILDE_J1PI;
  } else {
    C = identity_immersion({Space::VHAT1, n});
    structure = StructureId::PHI_VHAT1;
  }

  const std::vector<Vec> params = sample_params(C.param_dim, o.samples, seed);
  const SkewTensor tensor = canonical_structure(structure, n);
  SubmanifoldReport r;
  try {
    r = structure_kind(structure) == TensorKind::bivector
            ? poisson_lagrangian_check(C, tensor, params, o.tol)
            : presymplectic_lagrangian_check(C, tensor, params, o.tol);
  } catch (const RankDeficient& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  r.object = o.object;
  r.scenario = s ? s->name : "";
  emit(dump_json(to_json(r), 2), o.out, out);
  return r.pass ? kOk : kFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lagrangian and Hamiltonian mechanics on jet bundles: simulation and structural checks"};
  app.name("jetmech");
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "integrate a scenario and write a trajectory CSV");
  add_scenario_options(simulate, sim.scenario);
  simulate->add_option("--route", sim.route, "lagrangian | hamiltonian | extended")
      ->required()
      ->check(CLI::IsMember({"lagrangian", "hamiltonian", "extended"}));
  simulate->add_option("--t0", sim.t0);
  simulate->add_option("--t1", sim.t1);
  simulate->add_option("--step", sim.step);
  simulate->add_option("--x0", sim.x0, "initial coordinates except t, comma separated");
  simulate->add_option("--out", sim.out, "CSV path (default: standard output)");

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "run a verification suite and print a JSON report");
  add_scenario_options(verify, ver.scenario);
  verify->add_option("--suite", ver.suite)
      ->required()
      ->check(CLI::IsMember({"maps", "submanifolds", "equivalence", "all"}));
  verify->add_option("--samples", ver.samples);
  verify->add_option("--seed", ver.seed);
  verify->add_option("--tol", ver.tol);
  verify->add_option("--t0", ver.t0);
  verify->add_option("--t1", ver.t1);
  verify->add_option("--step", ver.step);
  verify->add_option("--x0", ver.x0, "initial (q, qdot) for the equivalence suite");
  verify->add_option("--out", ver.out, "report path (default: standard output)");

  LegendreOptions leg;
  auto* legendre = app.add_subcommand("legendre", "restricted and extended Legendre images of a point");
  add_scenario_options(legendre, leg.scenario);
  legendre->add_option("--point", leg.point, "t,q1..qn,v1..vn")->required();

  CheckOptions chk;
  auto* check = app.add_subcommand("check-submanifold", "pointwise Lagrangian-submanifold check");
  add_scenario_options(check, chk.scenario);
  check->add_option("--object", chk.object)
      ->required()
      ->check(CLI::IsMember({"dl_tilde", "dh_tilde", "dfh", "s_l", "s_h", "s_l_tilde", "s_h_tilde",
                             "non_closed_section", "vhat1"}));
  check->add_option("--samples", chk.samples);
  check->add_option("--seed", chk.seed);
  check->add_option("--tol", chk.tol);
  check->add_option("--out", chk.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadInput;
  }

  try {
    for (auto* cmd : {simulate, verify, legendre, check}) {
      if (cmd->count("--n") > 0) {
        sim.scenario.n_given = ver.scenario.n_given = leg.scenario.n_given = chk.scenario.n_given = true;
      }
    }
    if (*simulate) return cmd_simulate(sim, out, err);
    if (*verify) return cmd_verify(ver, out, err);
    if (*legendre) return cmd_legendre(leg, out);
    return cmd_check(chk, out, err);
  } catch (const BadInput& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const SingularLagrangian& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
}

}  // namespace jetmech::cli
