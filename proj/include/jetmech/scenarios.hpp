#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetmech/mechanics.hpp"

namespace jetmech {

/// A named mechanical system with a Lagrangian, a Hamiltonian, or both.
struct Scenario {
  std::string name;
  int n = 1;
  std::optional<LagrangianSystem> lagrangian;
  std::optional<HamiltonianSystem> hamiltonian;
  /// leg_L is a global diffeomorphism (false for singular Lagrangians).
  bool hyperregular = false;

  /// The explicit Hamiltonian if present, otherwise the Legendre dual of L.
  [[nodiscard]] HamiltonianSystem hamiltonian_or_dual() const;
  [[nodiscard]] const LagrangianSystem& require_lagrangian() const;
};

/// Scenario description as read from a JSON config file.
struct ScenarioConfig {
  std::string name;
  int n = 1;
  std::optional<std::string> lagrangian;
  std::optional<std::string> hamiltonian;
  std::map<std::string, double> parameters;
  std::optional<bool> hyperregular;
};

/// Built-ins: free_particle (any n), harmonic, driven_oscillator,
/// caldirola_kanai, linear_velocity. Throws InvalidArgument for unknown names.
Scenario builtin_scenario(const std::string& name, int n = 1);
std::vector<std::string> builtin_scenario_names();
/// The built-ins whose Lagrangian is hyperregular.
std::vector<std::string> hyperregular_scenario_names();

/// Expression text of the built-in Lagrangian / Hamiltonian (n = 1 forms, or
/// the n-dimensional free particle).
ScenarioConfig builtin_config(const std::string& name, int n = 1);

ScenarioConfig parse_scenario_config(const std::string& json_text);
Scenario make_scenario(const ScenarioConfig& config);

}  // namespace jetmech
