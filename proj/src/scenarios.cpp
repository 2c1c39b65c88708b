#include "jetmech/scenarios.hpp"

#include <cmath>

#include "json.hpp"

#include "jetmech/errors.hpp"

namespace jetmech {
namespace {

using std::cos;
using std::exp;
using std::sin;

// Native fields take x = (t, q1..qn, w1..wn) where w is v or p.

ScalarField free_particle_L(int n) {
  return ScalarField::native(1 + 2 * n, [n](const auto* x) {
    using T = std::decay_t<decltype(*x)>;
    T acc(0.0);
    for (int i = 0; i < n; ++i) acc += 0.5 * x[1 + n + i] * x[1 + n + i];
    return acc;
  });
}

ScalarField harmonic_L() {
  return ScalarField::native(3, [](const auto* x) { return 0.5 * x[2] * x[2] - 0.5 * x[1] * x[1]; });
}

ScalarField harmonic_H() {
  return ScalarField::native(3, [](const auto* x) { return 0.5 * x[2] * x[2] + 0.5 * x[1] * x[1]; });
}

ScalarField driven_L() {
  return ScalarField::native(3, [](const auto* x) {
    return 0.5 * x[2] * x[2] - 0.5 * x[1] * x[1] + x[1] * sin(x[0]);
  });
}

ScalarField driven_H() {
  return ScalarField::native(3, [](const auto* x) {
    return 0.5 * x[2] * x[2] + 0.5 * x[1] * x[1] - x[1] * sin(x[0]);
  });
}

ScalarField caldirola_kanai_L() {
  return ScalarField::native(3, [](const auto* x) {
    const auto w = exp(x[0]);
    return 0.5 * w * x[2] * x[2] - 0.5 * w * x[1] * x[1];
  });
}

ScalarField caldirola_kanai_H() {
  return ScalarField::native(3, [](const auto* x) {
    return 0.5 * exp(-x[0]) * x[2] * x[2] + 0.5 * exp(x[0]) * x[1] * x[1];
  });
}

ScalarField linear_velocity_L() {
  return ScalarField::native(3, [](const auto* x) { return x[2]; });
}

void require_n1(const std::string& name, int n) {
  if (n != 1) throw InvalidArgument("scenario " + name + " is one-dimensional (n=1)");
}

}  // namespace

HamiltonianSystem Scenario::hamiltonian_or_dual() const {
  if (hamiltonian) return *hamiltonian;
  return legendre_dual(require_lagrangian());
}

const LagrangianSystem& Scenario::require_lagrangian() const {
  if (!lagrangian) throw InvalidArgument("scenario " + name + " has no Lagrangian");
  return *lagrangian;
}

std::vector<std::string> builtin_scenario_names() {
  return {"free_particle", "harmonic", "driven_oscillator", "caldirola_kanai", "linear_velocity"};
}

std::vector<std::string> hyperregular_scenario_names() {
  return {"free_particle", "harmonic", "driven_oscillator", "caldirola_kanai"};
}

Scenario builtin_scenario(const std::string& name, int n) {
  if (n < 1) throw InvalidArgument("fiber dimension must be positive");
  Scenario s;
  s.name = name;
  s.n = n;
  if (name == "free_particle") {
    s.lagrangian.emplace(n, free_particle_L(n), name);
    s.hamiltonian.emplace(n, free_particle_L(n), name);  // same quadratic form in p
    s.hyperregular = true;
  } else if (name == "harmonic") {
    require_n1(name, n);
    s.lagrangian.emplace(1, harmonic_L(), name);
    s.hamiltonian.emplace(1, harmonic_H(), name);
    s.hyperregular = true;
  } else if (name == "driven_oscillator") {
    require_n1(name, n);
    s.lagrangian.emplace(1, driven_L(), name);
    s.hamiltonian.emplace(1, driven_H(), name);
    s.hyperregular = true;
  } else if (name == "caldirola_kanai") {
    require_n1(name, n);
    s.lagrangian.emplace(1, caldirola_kanai_L(), name);
    s.hamiltonian.emplace(1, caldirola_kanai_H(), name);
    s.hyperregular = true;
  } else if (name == "linear_velocity") {
    require_n1(name, n);
    s.lagrangian.emplace(1, linear_velocity_L(), name);
    s.hyperregular = false;
  } else {
    throw InvalidArgument("unknown scenario '" + name + "'");
  }
  return s;
}

ScenarioConfig builtin_config(const std::string& name, int n) {
  ScenarioConfig c;
  c.name = name;
  c.n = n;
  if (name == "free_particle") {
    std::string L;
    std::string H;
    for (int i = 1; i <= n; ++i) {
      const std::string s = std::to_string(i);
      L += (i > 1 ? " + " : "") + std::string("0.5*v") + s + "*v" + s;
      H += (i > 1 ? " + " : "") + std::string("0.5*p") + s + "*p" + s;
    }
    c.lagrangian = L;
    c.hamiltonian = H;
    c.hyperregular = true;
    return c;
  }
  require_n1(name, n);
  if (name == "harmonic") {
    c.lagrangian = "0.5*v1*v1 - 0.5*q1*q1";
    c.hamiltonian = "0.5*p1*p1 + 0.5*q1*q1";
    c.hyperregular = true;
  } else if (name == "driven_oscillator") {
    c.lagrangian = "0.5*v1*v1 - 0.5*q1*q1 + q1*sin(t)";
    c.hamiltonian = "0.5*p1*p1 + 0.5*q1*q1 - q1*sin(t)";
    c.hyperregular = true;
  } else if (name == "caldirola_kanai") {
    c.lagrangian = "0.5*exp(t)*v1*v1 - 0.5*exp(t)*q1*q1";
    c.hamiltonian = "0.5*exp(-t)*p1*p1 + 0.5*exp(t)*q1*q1";
    c.hyperregular = true;
  } else if (name == "linear_velocity") {
    c.lagrangian = "v1";
    c.hyperregular = false;
  } else {
    throw InvalidArgument("unknown scenario '" + name + "'");
  }
  return c;
}

ScenarioConfig parse_scenario_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("scenario config must be a JSON object");
  ScenarioConfig c;
  try {
    c.name = j.value("name", std::string("custom"));
    c.n = j.value("n", 1);
    if (j.contains("lagrangian")) c.lagrangian = j.at("lagrangian").get<std::string>();
    if (j.contains("hamiltonian")) c.hamiltonian = j.at("hamiltonian").get<std::string>();
    if (j.contains("parameters")) c.parameters = j.at("parameters").get<std::map<std::string, double>>();
    if (j.contains("hyperregular")) c.hyperregular = j.at("hyperregular").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario config has a malformed field: ") + e.what());
  }
  if (c.n < 1) throw ParseError("scenario config: n must be positive");
  if (!c.lagrangian && !c.hamiltonian) {
    throw ParseError("scenario config needs a lagrangian or a hamiltonian");
  }
  return c;
}

Scenario make_scenario(const ScenarioConfig& config) {
  Scenario s;
  s.name = config.name;
  s.n = config.n;
  if (config.lagrangian) {
    s.lagrangian.emplace(config.n,
                         ScalarField::from_expression(Expression::parse(
                             *config.lagrangian, VariableSet::lagrangian, config.n, config.parameters)),
                         config.name);
  }
  if (config.hamiltonian) {
    s.hamiltonian.emplace(config.n,
                          ScalarField::from_expression(Expression::parse(
                              *config.hamiltonian, VariableSet::hamiltonian, config.n, config.parameters)),
                          config.name);
  }
  s.hyperregular = config.hyperregular.value_or(config.lagrangian.has_value());
  return s;
}

}  // namespace jetmech
