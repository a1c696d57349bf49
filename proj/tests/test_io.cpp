#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "g2lab/suites.hpp"
#include "oracles.hpp"

using namespace g2lab;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("ambient round trip keeps the rotation") {
  Rng rng(127);
  const AmbientSpace amb = rotate_triple(build_ambient(4), TripleRotation::random(rng));
  const Json j = ambient_to_json(amb);
  CHECK(j["m"] == 4);
  CHECK(j["convention"] == kCoordinateConvention);
  const AmbientSpace back = ambient_from_json(parse_json_text(j.dump(), "test"));
  CHECK(back.m == 4);
  CHECK((back.rotation.matrix() - amb.rotation.matrix()).cwiseAbs().maxCoeff() == 0.0);
  for (int a = 0; a < 3; ++a) CHECK(oracle::max_abs(back.triple[a] - amb.triple[a]) == 0.0);
}

TEST_CASE("hyperpoint round trip reproduces the induced structure") {
  Rng rng(131);
  const AmbientSpace amb = build_ambient(3);
  const HypersurfacePoint hp = induce(amb, rng.unit_vector(amb.dim));
  const HypersurfacePoint back = hyperpoint_from_json(parse_json_text(hyperpoint_to_json(hp).dump(), "t"));
  CHECK((back.normal - hp.normal).norm() == 0.0);
  CHECK(oracle::max_abs(back.phi - hp.phi) == 0.0);
  CHECK((back.xi - hp.xi).norm() == 0.0);
}

TEST_CASE("shape operator round trip is exact") {
  Rng rng(137);
  const LinOp a = rng.symmetric(11);
  const Json j = parse_json_text(shape_to_json(a).dump(), "t");
  CHECK(j["dim"] == 11);
  CHECK(j["entries"].size() == 121);
  CHECK(oracle::max_abs(shape_from_json(j) - a) == 0.0);
}

TEST_CASE("malformed documents are Parse errors") {
  CHECK(kind_of([] { parse_json_text("{\"dim\": 3, \"entries\": [1, 2", "t"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { shape_from_json(Json::parse(R"({"dim": 2, "entries": [1, 2, 3]})")); }) ==
        ErrorKind::Parse);
  CHECK(kind_of([] { shape_from_json(Json::parse(R"({"entries": [1]})")); }) == ErrorKind::Parse);
  CHECK(kind_of([] {
          ambient_from_json(Json::parse(R"({"m": 3, "convention": "other", "triple_rotation": [[1,0,0],[0,1,0],[0,0,1]]})"));
        }) == ErrorKind::Parse);
  CHECK(kind_of([] { hyperpoint_from_json(Json::parse(R"({"N": [1]})")); }) == ErrorKind::Parse);

  Json hp = hyperpoint_to_json(induce(build_ambient(3), Vector::Unit(12, 0)));
  hp["N"].erase(hp["N"].size() - 1);
  CHECK(kind_of([&] { hyperpoint_from_json(hp); }) == ErrorKind::Parse);
  CHECK(kind_of([] { read_json_file("/nonexistent/g2lab.json"); }) == ErrorKind::Parse);
}

TEST_CASE("semantic errors in documents keep their own kinds") {
  Json amb = ambient_to_json(build_ambient(3));
  amb["triple_rotation"] = Json::parse("[[1,0,0],[0,1,0],[0,0,-1]]");
  CHECK(kind_of([&] { ambient_from_json(amb); }) == ErrorKind::NotRotation);

  Json hp = hyperpoint_to_json(induce(build_ambient(3), Vector::Unit(12, 0)));
  hp["N"][0] = 2.0;
  CHECK(kind_of([&] { hyperpoint_from_json(hp); }) == ErrorKind::NotUnit);

  Json small = hyperpoint_to_json(induce(build_ambient(3), Vector::Unit(12, 0)));
  small["ambient"]["m"] = 2;
  CHECK(kind_of([&] { hyperpoint_from_json(small); }) == ErrorKind::InvalidM);
}

TEST_CASE("certificate JSON layout") {
  const TypeAModel model = build_type_a(3, 0.3);
  const Json ok = certificate_to_json(certify_hopf(model.hp, model.shape, {}));
  CHECK(ok["schema"] == kSchemaVersion);
  CHECK(ok["status"] == "CERTIFIED");
  CHECK(ok["failing_step"].is_null());
  CHECK(ok["chosen_a"] == 1);
  CHECK(ok["rotation"].size() == 3);
  CHECK(ok["eta_xi"].size() == 3);
  CHECK(ok.contains("alpha"));
  CHECK(ok["step_residuals"].contains("hopf.residual_hopf"));

  const LinOp id = LinOp::Identity(model.hp.tangent_dim(), model.hp.tangent_dim());
  const Json bad = certificate_to_json(certify_hopf(model.hp, id, {}));
  CHECK(bad["status"] == "STEP_FAILED");
  CHECK(bad["failing_step"] == "eq7");
}

TEST_CASE("structure report JSON") {
  StructureReport rep;
  rep.add("x", 1e-3);
  rep.add("y", 0.0);
  rep.finalize(Tolerance{});
  const Json j = report_to_json(rep);
  CHECK(j["pass"] == false);
  CHECK(j["residuals"]["x"] == 1e-3);
}

TEST_CASE("spectrum CSV header and precision") {
  std::ostringstream os;
  write_spectrum_csv(os, {spectrum_type_a(0.3)});
  const std::string text = os.str();
  CHECK(text.rfind("r,alpha,beta,lambda,mu,distinct_count\n", 0) == 0);
  std::istringstream in(text);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  const double alpha = std::stod(row.substr(row.find(',') + 1));
  CHECK(alpha == spectrum_type_a(0.3).alpha);
}

TEST_CASE("suite reports are deterministic for a fixed seed") {
  RunConfig cfg;
  cfg.m = 3;
  cfg.trials = 20;
  cfg.seed = 7;
  const std::string a = run_ambient_check(cfg).to_json().dump();
  const std::string b = run_ambient_check(cfg).to_json().dump();
  CHECK(a == b);
  CHECK(a.find("wall") == std::string::npos);
  const std::string h1 = run_hypersurface_check(cfg).to_json().dump();
  const std::string h2 = run_hypersurface_check(cfg).to_json().dump();
  CHECK(h1 == h2);
  cfg.seed = 8;
  CHECK(run_hypersurface_check(cfg).to_json().dump() != h1);
}

TEST_CASE("ambient suite reports the curvature normalization") {
  RunConfig cfg;
  cfg.m = 3;
  cfg.trials = 50;
  const SuiteReport rep = run_ambient_check(cfg);
  CHECK(rep.pass());
  CHECK(rep.cases == 51);
  CHECK(rep.details["g(R(X,JX)JX,X)"].get<double>() == doctest::Approx(8.0));
  CHECK(rep.details["g(R(X,Y)Y,X)"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("hypersurface suite passes and catches injected jitter") {
  RunConfig cfg;
  cfg.m = 4;
  cfg.trials = 30;
  cfg.seed = 1;
  const SuiteReport ok = run_hypersurface_check(cfg);
  CHECK(ok.pass());
  CHECK(ok.details["singular_case"]["dim_hperp"] == 3);

  cfg.inject_jitter = 1e-3;
  const SuiteReport bad = run_hypersurface_check(cfg);
  CHECK_FALSE(bad.pass());
  REQUIRE_FALSE(bad.details["failures"].empty());
  const std::string name = bad.details["failures"][0]["identity"];
  CHECK(name.find("phi1") != std::string::npos);
}

TEST_CASE("type-a suite flags three distinct curvatures near the midpoint") {
  RunConfig cfg;
  cfg.m = 3;
  cfg.r = 0.5553603;
  const TypeAOutputs out = run_type_a(cfg);
  CHECK(out.report.pass());
  CHECK(out.report.details["three_distinct"] == true);
  CHECK(out.spectrum_grid.size() == 64);
  cfg.r = 0.3;
  CHECK(run_type_a(cfg).report.details["three_distinct"] == false);
}

TEST_CASE("run configuration validation") {
  RunConfig cfg;
  cfg.m = 2;
  CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidM);
  cfg.m = 3;
  cfg.r = 2.0;
  CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::RadiusOutOfRange);
  cfg.r = 5e-7;
  CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::RadiusOutOfRange);
  cfg.r = 0.3;
  cfg.tol.identity_tol = -1.0;
  CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidTolerance);
}

TEST_CASE("radius grid stays inside the interval") {
  const std::vector<double> grid = radius_grid(10);
  REQUIRE(grid.size() == 10);
  CHECK(grid.front() > 0.0);
  CHECK(grid.back() < kMaxRadius);
  CHECK(grid[0] == doctest::Approx(kMaxRadius / 11.0));
}

TEST_CASE("G2LAB_TOL overrides the default identity tolerance") {
  ::setenv("G2LAB_TOL", "1e-9", 1);
  CHECK(default_tolerance().identity_tol == 1e-9);
  ::setenv("G2LAB_TOL", "garbage", 1);
  CHECK(default_tolerance().identity_tol == 1e-10);
  ::unsetenv("G2LAB_TOL");
  CHECK(default_tolerance().identity_tol == 1e-10);
}
