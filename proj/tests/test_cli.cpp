#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "jetmech/cli.hpp"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "jetmech");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = jetmech::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("jetmech_test_" + name);
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("simulate writes one row per node") {
  const Result r = run({"simulate", "--scenario", "driven_oscillator", "--route", "lagrangian", "--t0", "0", "--t1",
                        "10", "--step", "1e-3", "--x0", "1,0.5"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 10002);
  CHECK(rows[0] == "t,q1,v1");
  CHECK(rows[1] == "0,1,0.5");
  CHECK(rows.back().rfind("10,", 0) == 0);

  const auto path = temp_file("traj.csv");
  const Result to_file = run({"simulate", "--scenario", "harmonic", "--route", "hamiltonian", "--t1", "0.5",
                              "--step", "0.1", "--out", path.string()});
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(lines(body.str()).size() == 7);
  std::filesystem::remove(path);
}

TEST_CASE("simulate failures") {
  const Result aborted = run({"simulate", "--scenario", "linear_velocity", "--route", "lagrangian", "--x0", "0,1"});
  CHECK(aborted.code == 1);
  const auto rows = lines(aborted.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1] == "0,0,1");
  CHECK(rows[2].rfind("# aborted: ", 0) == 0);

  CHECK(run({"simulate", "--scenario", "nope", "--route", "lagrangian"}).code == 2);
  CHECK(run({"simulate", "--scenario", "harmonic"}).code == 2);
  CHECK(run({"simulate", "--scenario", "harmonic", "--route", "sideways"}).code == 2);
  CHECK(run({"simulate", "--scenario", "harmonic", "--route", "lagrangian", "--step", "0.3"}).code == 2);
  CHECK(run({"simulate", "--scenario", "harmonic", "--route", "lagrangian", "--x0", "1"}).code == 2);
  CHECK(run({"simulate", "--scenario", "harmonic", "--route", "lagrangian", "--x0", "1,x"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("legendre") {
  const Result r = run({"legendre", "--scenario", "free_particle", "--point", "0,0,2"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["restricted"] == nlohmann::json({0, 0, 2}));
  CHECK(j["extended"] == nlohmann::json({0, 0, -2, 2}));
  CHECK(j["regular"] == true);
  CHECK(r.out == "{\"extended\":[0,0,-2,2],\"regular\":true,\"restricted\":[0,0,2]}\n");

  CHECK(run({"legendre", "--scenario", "free_particle", "--point", "0,0"}).code == 2);
  CHECK(run({"legendre", "--scenario", "free_particle", "--point", "0,,2"}).code == 2);
  CHECK(run({"legendre", "--scenario", "free_particle"}).code == 2);
  const Result singular = run({"legendre", "--scenario", "linear_velocity", "--point", "0,1,1"});
  CHECK(singular.code == 0);
  CHECK(nlohmann::json::parse(singular.out)["regular"] == false);
}

TEST_CASE("verify maps") {
  const Result r = run({"verify", "--suite", "maps", "--n", "2", "--samples", "20", "--seed", "7"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["maps"].size() == 4);
  for (const auto& m : j["maps"]) CHECK(m["pass"] == true);
  CHECK(j["seed"] == 7);
  CHECK(j["pass"] == true);

  CHECK(run({"verify", "--suite", "maps", "--tol", "0"}).code == 2);
  CHECK(run({"verify", "--suite", "maps", "--tol", "-1"}).code == 2);
  CHECK(run({"verify", "--suite", "maps", "--samples", "0"}).code == 2);
  CHECK(run({"verify", "--suite", "nothing"}).code == 2);
}

TEST_CASE("verify submanifolds on one scenario") {
  const Result r = run({"verify", "--suite", "submanifolds", "--scenario", "harmonic", "--samples", "20"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["submanifolds"].size() == 4);
  CHECK(j["equality"].size() == 2);
  CHECK(j["pass"] == true);
  for (const auto& r : j["submanifolds"]) {
    const std::string object = r["object"];
    // Poisson checks: dim(TC ∩ im sharp) = 2n; presymplectic: dim(TC ∩ ker) = 1
    const int expected = object == "dl_tilde" || object == "dh_tilde" ? 2 : 1;
    for (const auto& d : r["intersection_dims"]) CHECK(d == expected);
    CHECK(r["intersection_dims"] == r["expected_dims"]);
  }
}

TEST_CASE("verify equivalence") {
  const Result r = run({"verify", "--suite", "equivalence", "--scenario", "driven_oscillator", "--t1", "1"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["equivalence"].size() == 1);
  CHECK(j["equivalence"][0]["sup_gap"].get<double>() <= 1e-6);
  CHECK(run({"verify", "--suite", "equivalence", "--scenario", "harmonic", "--step", "0.3", "--t1", "1"}).code == 2);
  CHECK(run({"verify", "--suite", "equivalence", "--scenario", "harmonic", "--x0", "1,2,3"}).code == 2);
}

TEST_CASE("seed from the environment") {
  const Result flag = run({"verify", "--suite", "maps", "--samples", "5", "--seed", "11"});
  setenv("JETMECH_SEED", "11", 1);
  const Result env = run({"verify", "--suite", "maps", "--samples", "5"});
  const Result both = run({"verify", "--suite", "maps", "--samples", "5", "--seed", "3"});
  setenv("JETMECH_SEED", "eleven", 1);
  const Result bad = run({"verify", "--suite", "maps", "--samples", "5"});
  unsetenv("JETMECH_SEED");
  const Result none = run({"verify", "--suite", "maps", "--samples", "5"});

  CHECK(env.out == flag.out);
  CHECK(nlohmann::json::parse(both.out)["seed"] == 3);
  CHECK(bad.code == 2);
  CHECK(nlohmann::json::parse(none.out)["seed"] == 0);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::string> args = {"verify", "--suite", "submanifolds", "--scenario", "caldirola_kanai",
                                         "--samples", "10", "--seed", "5"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("scenario config files") {
  const auto path = temp_file("spring.json");
  {
    std::ofstream f(path);
    f << R"({"name": "spring", "n": 1, "lagrangian": "0.5*m*v1*v1 - 0.5*k*q1*q1", "parameters": {"m": 2, "k": 8}})";
  }
  const Result r = run({"legendre", "--config", path.string(), "--point", "0,1,3"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["restricted"] == nlohmann::json({0, 1, 6}));
  CHECK(run({"legendre", "--config", path.string(), "--n", "2", "--point", "0,1,3"}).code == 2);
  CHECK(run({"legendre", "--config", path.string(), "--scenario", "harmonic", "--point", "0,1,3"}).code == 2);
  {
    std::ofstream f(path);
    f << "{\"name\": ";
  }
  CHECK(run({"legendre", "--config", path.string(), "--point", "0,1,3"}).code == 2);
  std::filesystem::remove(path);
  CHECK(run({"legendre", "--config", path.string(), "--point", "0,1,3"}).code == 2);
}

TEST_CASE("check-submanifold") {
  const Result ok = run({"check-submanifold", "--scenario", "harmonic", "--object", "dh_tilde", "--samples", "10"});
  CHECK(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out)["pass"] == true);
  const Result bad = run({"check-submanifold", "--object", "non_closed_section", "--samples", "10"});
  CHECK(bad.code == 1);
  CHECK(nlohmann::json::parse(bad.out)["pass"] == false);
  CHECK(run({"check-submanifold", "--object", "vhat1", "--samples", "3"}).code == 1);
  CHECK(run({"check-submanifold", "--scenario", "harmonic", "--object", "circle"}).code == 2);
}

}  // TEST_SUITE
