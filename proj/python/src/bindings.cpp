#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "jetmech/cli.hpp"
#include "jetmech/report.hpp"
#include "jetmech/sampling.hpp"
#include "jetmech/scenarios.hpp"
#include "jetmech/simulate.hpp"
#include "jetmech/submanifolds.hpp"
#include "jetmech/triples.hpp"

namespace py = pybind11;
using namespace jetmech;

namespace {

py::object to_python(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case Json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(to_python(item));
      return out;
    }
    default: {
      py::dict out;
      for (const auto& [key, value] : j.items()) out[py::str(key)] = to_python(value);
      return out;
    }
  }
}

Mat trajectory_matrix(const Trajectory& traj) {
  Mat out(traj.size(), traj.space().dim());
  for (int k = 0; k < traj.size(); ++k) out.row(k) = traj.sample(k).transpose();
  return out;
}

Mat integrate_route(const VectorField& field, SpaceId space, const Vec& x0, double t0, double t1, double step) {
  Vec start(space.dim());
  if (x0.size() != space.dim() - 1) throw ShapeError("x0 needs every coordinate except t");
  start[0] = t0;
  start.tail(space.dim() - 1) = x0;
  return trajectory_matrix(integrate(field, SpacePoint(space, start), {t0, t1, step}));
}

std::vector<Vec> box_params(int dim, int samples, std::uint64_t seed) {
  UniformSampler sampler(seed);
  std::vector<Vec> params;
  for (int i = 0; i < samples; ++i) params.push_back(sampler.box(dim));
  return params;
}

}  // namespace

PYBIND11_MODULE(_jetmech, m) {
  m.doc() = "Lagrangian and Hamiltonian mechanics on jet bundles";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<SpaceMismatch>(m, "SpaceMismatch", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SingularLagrangian>(m, "SingularLagrangian", base.ptr());
  py::register_exception<NoConvergence>(m, "NoConvergence", base.ptr());
  py::register_exception<IndexOutOfRange>(m, "IndexOutOfRange", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<RankDeficient>(m, "RankDeficient", base.ptr());
  py::register_exception<IntegrationAborted>(m, "IntegrationAborted", base.ptr());

  py::class_<LagrangianSystem>(m, "Lagrangian")
      .def_static("builtin", [](const std::string& name, int n) { return builtin_scenario(name, n).require_lagrangian(); },
                  py::arg("name"), py::arg("n") = 1)
      .def_static(
          "from_expression",
          [](const std::string& text, int n, const std::map<std::string, double>& parameters) {
            return LagrangianSystem(
                n, ScalarField::from_expression(Expression::parse(text, VariableSet::lagrangian, n, parameters)), text);
          },
          py::arg("text"), py::arg("n") = 1, py::arg("parameters") = std::map<std::string, double>{})
      .def_readonly("n", &LagrangianSystem::n)
      .def_readonly("name", &LagrangianSystem::name)
      .def("__call__", [](const LagrangianSystem& s, const Vec& j) { return s.L(j); })
      .def("jet2", [](const LagrangianSystem& s, const Vec& j) {
        const Jet2 d = jet2(s.L, j);
        return py::make_tuple(d.value, d.gradient, d.hessian);
      })
      .def("legendre_restricted",
           [](const LagrangianSystem& s, const Vec& j) { return legendre_restricted(s, SpacePoint(s.jet_space(), j)).coords(); })
      .def("legendre_extended",
           [](const LagrangianSystem& s, const Vec& j) { return legendre_extended(s, SpacePoint(s.jet_space(), j)).coords(); })
      .def("is_regular",
           [](const LagrangianSystem& s, const Vec& j) { return regularity(s, SpacePoint(s.jet_space(), j)).regular; })
      .def("euler_lagrange_field",
           [](const LagrangianSystem& s, const Vec& j) { return euler_lagrange_field(s, SpacePoint(s.jet_space(), j)); })
      .def("invert_legendre",
           [](const LagrangianSystem& s, const Vec& v) {
             return invert_restricted_legendre(s, SpacePoint({Space::VSTAR, s.n}, v)).coords();
           })
      .def("hamiltonian", [](const LagrangianSystem& s) { return legendre_dual(s); },
           "The Legendre-dual Hamiltonian.");

  py::class_<HamiltonianSystem>(m, "Hamiltonian")
      .def_static("builtin", [](const std::string& name, int n) { return builtin_scenario(name, n).hamiltonian_or_dual(); },
                  py::arg("name"), py::arg("n") = 1)
      .def_static(
          "from_expression",
          [](const std::string& text, int n, const std::map<std::string, double>& parameters) {
            return HamiltonianSystem(
                n, ScalarField::from_expression(Expression::parse(text, VariableSet::hamiltonian, n, parameters)), text);
          },
          py::arg("text"), py::arg("n") = 1, py::arg("parameters") = std::map<std::string, double>{})
      .def_readonly("n", &HamiltonianSystem::n)
      .def_readonly("name", &HamiltonianSystem::name)
      .def("__call__", [](const HamiltonianSystem& s, const Vec& v) { return s.H(v); })
      .def("reeb_field",
           [](const HamiltonianSystem& s, const Vec& v) { return reeb_field(s, SpacePoint(s.phase_space(), v)); })
      .def("extended_field",
           [](const HamiltonianSystem& s, const Vec& a) { return extended_field(s, SpacePoint({Space::TSTARM, s.n}, a)); })
      .def("fh", [](const HamiltonianSystem& s, const Vec& a) { return fh(s, SpacePoint({Space::TSTARM, s.n}, a)); });

  m.def("builtin_scenarios", &builtin_scenario_names);

  m.def(
      "simulate",
      [](const LagrangianSystem& L, const std::string& route, const Vec& x0, double t0, double t1, double step) {
        const int n = L.n;
        if (route == "lagrangian") {
          return integrate_route([&](const SpacePoint& x) { return euler_lagrange_field(L, x); }, L.jet_space(), x0, t0,
                                 t1, step);
        }
        const HamiltonianSystem H = legendre_dual(L);
        if (route == "hamiltonian") {
          return integrate_route([&](const SpacePoint& x) { return reeb_field(H, x); }, {Space::VSTAR, n}, x0, t0, t1,
                                 step);
        }
        if (route == "extended") {
          return integrate_route([&](const SpacePoint& x) { return extended_field(H, x); }, {Space::TSTARM, n}, x0, t0,
                                 t1, step);
        }
        throw InvalidArgument("route must be lagrangian, hamiltonian or extended");
      },
      py::arg("lagrangian"), py::arg("route"), py::arg("x0"), py::arg("t0") = 0.0, py::arg("t1") = 1.0,
      py::arg("step") = 1e-3, "Rows are nodes, columns the chart coordinates starting with t.");

  m.def("canonical_structure",
        [](const std::string& id, int n) { return canonical_structure(parse_structure(id), n).mat(); },
        py::arg("structure"), py::arg("n") = 1);
  m.def("apply_map",
        [](const std::string& id, int n, const Vec& x) {
          const MapId map = parse_map(id);
          return apply_map(map, SpacePoint(map_source(map, n), x)).coords();
        },
        py::arg("map"), py::arg("n"), py::arg("x"));
  m.def("verify_structure_map",
        [](const std::string& id, int n, int samples, std::uint64_t seed, double tol) {
          return to_python(to_json(verify_structure_map(parse_map(id), n, samples, seed, tol)));
        },
        py::arg("map"), py::arg("n") = 1, py::arg("samples") = 100, py::arg("seed") = 0, py::arg("tol") = 1e-12);

  m.def("equality_check",
        [](const LagrangianSystem& L, const std::string& variant, int samples, std::uint64_t seed, double tol) {
          Variant v;
          if (variant == "restricted") v = Variant::restricted;
          else if (variant == "extended") v = Variant::extended;
          else throw InvalidArgument("variant must be restricted or extended");
          return to_python(to_json(equality_check(L, v, samples, seed, tol)));
        },
        py::arg("lagrangian"), py::arg("variant") = "restricted", py::arg("samples") = 100, py::arg("seed") = 0,
        py::arg("tol") = 1e-10);

  m.def("equivalence_report",
        [](const LagrangianSystem& L, const Vec& x0, double t0, double t1, double step) {
          Vec start(L.jet_space().dim());
          if (x0.size() != start.size() - 1) throw ShapeError("x0 needs (q, qdot)");
          start[0] = t0;
          start.tail(start.size() - 1) = x0;
          return to_python(to_json(equivalence_report(L, {t0, t1, step}, SpacePoint(L.jet_space(), start))));
        },
        py::arg("lagrangian"), py::arg("x0"), py::arg("t0") = 0.0, py::arg("t1") = 5.0, py::arg("step") = 1e-3);

  m.def("check_dl_tilde",
        [](const LagrangianSystem& L, int samples, std::uint64_t seed, double tol) {
          const SubmanifoldReport r =
              poisson_lagrangian_check(dl_tilde_immersion(L), canonical_structure(StructureId::LAMBDA_TILDE_J1PI, L.n),
                                       box_params(1 + 2 * L.n, samples, seed), tol);
          return to_python(to_json(r));
        },
        py::arg("lagrangian"), py::arg("samples") = 50, py::arg("seed") = 0, py::arg("tol") = 1e-12);
  m.def("check_dfh",
        [](const HamiltonianSystem& H, int samples, std::uint64_t seed, double tol) {
          const SubmanifoldReport r =
              presymplectic_lagrangian_check(dfh_immersion(H), canonical_structure(StructureId::PHI_VHAT1, H.n),
                                             box_params(2 + 2 * H.n, samples, seed), tol);
          return to_python(to_json(r));
        },
        py::arg("hamiltonian"), py::arg("samples") = 50, py::arg("seed") = 0, py::arg("tol") = 1e-12);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"jetmech"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in process; returns (exit code, stdout, stderr).");
}
