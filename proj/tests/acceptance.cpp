// Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "g2lab/suites.hpp"
#include "oracles.hpp"

using namespace g2lab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Worst {
 public:
  void add(double v) {
    if (!(v <= value_)) value_ = v;
  }
  double value() const { return value_; }

 private:
  double value_ = 0.0;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double worst_of(const NamedResiduals& rs) {
  double w = 0.0;
  for (const auto& r : rs) {
    if (!(r.second <= w)) w = r.second;
  }
  return w;
}

std::vector<double> ten_radii() { return radius_grid(10); }

Outcome ambient_axioms() {
  Worst w;
  for (int m = 3; m <= 8; ++m) w.add(worst_of(axiom_residuals(build_ambient(m))));
  return {w.value() <= 1e-12, fmt("m=3..8, worst axiom residual %.3e (<= 1e-12)", w.value())};
}

Outcome curvature_symmetries() {
  Worst sym, rot;
  for (int m : {3, 4, 5}) {
    Rng rng(1000 + static_cast<std::uint64_t>(m));
    const AmbientSpace amb = build_ambient(m);
    for (int trial = 0; trial < 100; ++trial) {
      const Vector x = rng.unit_vector(amb.dim);
      const Vector y = rng.unit_vector(amb.dim);
      const Vector z = rng.unit_vector(amb.dim);
      const Vector u = rng.unit_vector(amb.dim);
      const Vector rxyz = curvature(amb, x, y, z);
      sym.add((rxyz + curvature(amb, y, x, z)).norm());
      sym.add(std::abs(rxyz.dot(u) + curvature(amb, x, y, u).dot(z)));
      sym.add(std::abs(rxyz.dot(u) - curvature(amb, z, u, x).dot(y)));
      sym.add((rxyz + curvature(amb, y, z, x) + curvature(amb, z, x, y)).norm());
      const AmbientSpace rotated = rotate_triple(amb, TripleRotation::random(rng));
      rot.add((rxyz - curvature(rotated, x, y, z)).norm());
      rot.add((rxyz - oracle::curvature_operator(amb, x, y) * z).norm());
    }
  }
  return {sym.value() <= 1e-10 && rot.value() <= 1e-10,
          fmt("300 quadruples, symmetries %.3e, rotation invariance %.3e (<= 1e-10)", sym.value(),
              rot.value())};
}

template <class Check>
Outcome random_normal_suite(Check check, const char* what) {
  Worst w;
  int failures = 0;
  for (int m : {3, 4, 5}) {
    Rng rng(2000 + static_cast<std::uint64_t>(m));
    const AmbientSpace amb = build_ambient(m);
    for (int trial = 0; trial < 100; ++trial) {
      const StructureReport rep = check(induce(amb, rng.unit_vector(amb.dim)));
      w.add(rep.worst());
      if (!rep.pass) ++failures;
    }
  }
  return {failures == 0 && w.value() <= 1e-10,
          fmt("%s: 300 normals, %d failing, worst residual %.3e (<= 1e-10)", what, failures, w.value())};
}

Outcome structure_relations() {
  return random_normal_suite(
      [](const HypersurfacePoint& hp) {
        StructureReport rep = verify_structure_relations(hp);
        const StructureReport l24 = verify_lemma24(hp);
        for (const auto& r : l24.residuals) rep.add(r.first, r.second);
        rep.finalize(Tolerance{});
        return rep;
      },
      "structure relations and (a)-(g)");
}

Outcome theta_eigenspace_suite() {
  return random_normal_suite([](const HypersurfacePoint& hp) { return verify_lemma25(hp); },
                             "theta_a on H");
}

Outcome spectrum_closed_form() {
  const SpectrumA s = spectrum_type_a(std::numbers::pi / (2.0 * kSqrt8));
  const double mid = std::max({std::abs(s.alpha), std::abs(s.beta - std::sqrt(2.0)),
                               std::abs(s.lambda + std::sqrt(2.0)), std::abs(s.mu)});
  Rng rng(3000);
  Worst ident;
  for (int trial = 0; trial < 100; ++trial) {
    const double r = rng.uniform(0.05, kMaxRadius - 0.05);
    const SpectrumA t = spectrum_type_a(r);
    ident.add(std::abs(t.alpha - (t.beta + t.lambda)));
    ident.add(std::abs(t.beta * t.lambda + 2.0));
    ident.add(std::abs(t.alpha - oracle::alpha_from_half_angle(r)));
  }
  return {mid <= 1e-12 && s.distinct_count == 3 && ident.value() <= 1e-12,
          fmt("midpoint error %.3e, distinct=%d, identities on 100 radii %.3e (<= 1e-12)", mid,
              s.distinct_count, ident.value())};
}

Outcome type_a_multiplicities() {
  int bad = 0;
  int total = 0;
  for (int m = 3; m <= 8; ++m) {
    for (double r : ten_radii()) {
      const TypeAModel model = build_type_a(m, r);
      const Eigen::Index k = 2 * m - 2;
      ++total;
      if (!(model.t_alpha.dim() == 1 && model.t_beta.dim() == 2 && model.t_lambda.dim() == k &&
            model.t_mu.dim() == k)) {
        ++bad;
      }
    }
  }
  return {bad == 0, fmt("%d models, %d with wrong multiplicities", total, bad)};
}

Outcome identity_chain() {
  Worst eq7, l33, eq5;
  for (int m : {3, 4, 5}) {
    for (double r : ten_radii()) {
      const TypeAModel model = build_type_a(m, r);
      const BetaTriple betas = principal_betas(model.hp, model.shape);
      for (double v : verify_eq7(model.hp, model.shape, betas)) eq7.add(v);
      for (double v : verify_lemma33(model.hp, model.shape)) l33.add(v);
      eq5.add(fit_qforms(model.hp, model.shape, betas).residual);
    }
  }
  return {eq7.value() <= 1e-10 && l33.value() <= 1e-10 && eq5.value() <= 1e-8,
          fmt("eq7 %.3e, commutator %.3e (<= 1e-10), fitted q-forms %.3e (<= 1e-8)", eq7.value(),
              l33.value(), eq5.value())};
}

Outcome hopf_certification() {
  Worst alpha, eta, eps;
  double slowest = 0.0;
  int not_certified = 0;
  for (int m : {3, 4, 5}) {
    for (double r : ten_radii()) {
      const TypeAModel model = build_type_a(m, r);
      const auto start = std::chrono::steady_clock::now();
      const HopfCertificate cert = certify_hopf(model.hp, model.shape, {});
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      slowest = std::max(slowest, secs);
      if (cert.status != HopfStatus::Certified) ++not_certified;
      alpha.add(std::abs(cert.alpha - kSqrt8 / std::tan(kSqrt8 * r)));
      eta.add(std::abs(cert.eta_xi[1]));
      eta.add(std::abs(cert.eta_xi[2]));
      for (const EpsilonValue& e : cert.epsilons) eps.add(e.distance);
    }
  }
  return {not_certified == 0 && alpha.value() <= 1e-8 && eta.value() <= 1e-10 && eps.value() <= 1e-8 &&
              slowest <= 1.0,
          fmt("30 models, %d not certified, alpha %.3e (<= 1e-8), eta %.3e (<= 1e-10), "
              "eps %.3e (<= 1e-8), slowest %.3f s (<= 1 s)",
              not_certified, alpha.value(), eta.value(), eps.value(), slowest)};
}

Outcome negative_controls() {
  std::string detail;
  bool ok = true;
  const TypeAModel model = build_type_a(3, 0.3);
  const LinOp id = LinOp::Identity(model.hp.tangent_dim(), model.hp.tangent_dim());
  const HopfCertificate ci = certify_hopf(model.hp, id, {});
  ok = ok && ci.status == HopfStatus::StepFailed && ci.failing_step == std::string("eq7");
  detail += fmt("identity: %s at %s", std::string(to_string(ci.status)).c_str(),
                ci.failing_step ? ci.failing_step->c_str() : "-");

  Rng rng(4000);
  for (double delta : {1e-6, 1e-4, 1e-3, 1e-2}) {
    const HopfCertificate cj = certify_hopf(model.hp, jitter_on_d(model.hp, model.shape, delta, rng), {});
    double step = 0.0;
    if (cj.failing_step) {
      for (const auto& [name, value] : cj.step_residuals) {
        if (name.rfind(*cj.failing_step + ".", 0) == 0) step = std::max(step, value);
      }
    }
    const bool named = cj.status == HopfStatus::StepFailed && cj.failing_step.has_value();
    const bool scaled = step >= delta / 100.0 && step <= delta * 100.0;
    ok = ok && named && scaled;
    detail += fmt("; delta %.0e: %s at %s, residual %.2e", delta, std::string(to_string(cj.status)).c_str(),
                  cj.failing_step ? cj.failing_step->c_str() : "-", step);
  }
  return {ok, detail};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(G2LAB_CLI_PATH) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("g2lab_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string hp = (dir / "hp.json").string();
  const std::string shape = (dir / "A.json").string();
  if (run_cli("type-a --m 4 --r 0.4 --emit-hyperpoint " + hp + " --emit-shape " + shape +
              " --out /dev/null") != 0) {
    return {false, "could not emit the type-A model"};
  }
  const std::vector<std::pair<std::string, std::string>> commands{
      {"ambient-check", "ambient-check --m 4 --trials 50 --seed 42"},
      {"hypersurface-check", "hypersurface-check --m 4 --trials 50 --seed 42"},
      {"type-a", "type-a --m 4 --r 0.4"},
      {"hopf-certify", "hopf-certify --input " + hp + " --shape " + shape},
  };
  int identical = 0;
  std::string mismatched;
  for (const auto& [name, args] : commands) {
    const fs::path a = dir / (name + ".1.json");
    const fs::path b = dir / (name + ".2.json");
    run_cli(args + " --out " + a.string());
    run_cli(args + " --out " + b.string());
    const std::string ta = slurp(a);
    if (!ta.empty() && ta == slurp(b)) {
      ++identical;
    } else {
      mismatched += " " + name;
    }
  }
  fs::remove_all(dir);
  return {identical == static_cast<int>(commands.size()),
          fmt("%d/%zu subcommands byte-identical across two runs%s%s", identical, commands.size(),
              mismatched.empty() ? "" : "; differing:", mismatched.c_str())};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"ambient axioms", ambient_axioms},
      {"curvature symmetries", curvature_symmetries},
      {"structure relations", structure_relations},
      {"theta eigenspaces on H", theta_eigenspace_suite},
      {"type-A spectrum", spectrum_closed_form},
      {"type-A multiplicities", type_a_multiplicities},
      {"identity chain on type-A", identity_chain},
      {"Hopf certification", hopf_certification},
      {"negative controls", negative_controls},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome out;
    try {
      out = check();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    if (!out.pass) ++failed;
    std::printf("[%s] %2d %s: %s\n", out.pass ? "PASS" : "FAIL", index, name.c_str(), out.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
