// g2lab: verification suites and the Hopf certifier.
//
// Exit codes: 0 pass, 1 certification failure, 2 suite failure,
// 64 usage or parse error.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "g2lab/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitNotCertified = 1;
constexpr int kExitSuiteFailed = 2;
constexpr int kExitUsage = 64;

void emit(const g2lab::Json& doc, const std::string& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    g2lab::write_text_file(path, text);
  }
}

int finish_suite(const g2lab::SuiteReport& rep, const std::string& out_path) {
  emit(rep.to_json(), out_path);
  std::fprintf(stderr, "%s: %d/%d cases passed (%.3f s)\n", rep.suite_name.c_str(), rep.passes,
               rep.cases, rep.wall_seconds);
  return rep.pass() ? kExitPass : kExitSuiteFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pointwise verification of real hypersurfaces in G2(C^{m+2})"};
  app.require_subcommand(1);

  g2lab::RunConfig cfg;
  cfg.tol = g2lab::default_tolerance();
  std::optional<double> tol_override;
  std::optional<double> gap_override;
  double radius = 0.0;
  std::string input_path;
  std::string shape_path;
  std::string emit_hyperpoint;
  std::string emit_shape;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", tol_override, "identity residual threshold (default 1e-10 or $G2LAB_TOL)");
    sub->add_option("--eig-gap", gap_override, "relative eigenvalue clustering gap (default 1e-8)");
    sub->add_option("--out", cfg.out_path, "output JSON path (default stdout)");
  };
  auto add_suite = [&](CLI::App* sub) {
    sub->add_option("--m", cfg.m, "Grassmannian parameter, m >= 3")->required();
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--trials", cfg.trials, "number of random cases");
    add_common(sub);
  };

  auto* ambient = app.add_subcommand("ambient-check", "ambient axioms and curvature symmetries");
  add_suite(ambient);

  auto* hyper = app.add_subcommand("hypersurface-check", "induced structures on random normals");
  add_suite(hyper);
  hyper->add_option("--inject-jitter", cfg.inject_jitter,
                    "negative control: perturb phi_1 entries by this amount");

  auto* type_a = app.add_subcommand("type-a", "type-A model spectrum and identities");
  type_a->add_option("--m", cfg.m, "Grassmannian parameter, m >= 3")->required();
  type_a->add_option("--r", radius, "tube radius in (0, pi/sqrt(8))")->required();
  type_a->add_option("--csv", cfg.csv_path, "write the spectrum over a radius grid as CSV");
  type_a->add_option("--emit-hyperpoint", emit_hyperpoint, "write the model point as hyperpoint.json");
  type_a->add_option("--emit-shape", emit_shape, "write the model shape operator as JSON");
  add_common(type_a);

  auto* hopf = app.add_subcommand("hopf-certify", "certify that A xi = alpha xi");
  hopf->add_option("--input", input_path, "hyperpoint.json")->required();
  hopf->add_option("--shape", shape_path, "shape_operator.json")->required();
  add_common(hopf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (tol_override) cfg.tol.identity_tol = *tol_override;
  if (gap_override) cfg.tol.eig_gap = *gap_override;

  try {
    if (*ambient) return finish_suite(g2lab::run_ambient_check(cfg), cfg.out_path);
    if (*hyper) return finish_suite(g2lab::run_hypersurface_check(cfg), cfg.out_path);
    if (*type_a) {
      cfg.r = radius;
      const g2lab::TypeAOutputs out = g2lab::run_type_a(cfg);
      if (!emit_hyperpoint.empty()) {
        g2lab::write_text_file(emit_hyperpoint, g2lab::hyperpoint_to_json(out.model.hp).dump(2) + "\n");
      }
      if (!emit_shape.empty()) {
        g2lab::write_text_file(emit_shape, g2lab::shape_to_json(out.model.shape).dump(2) + "\n");
      }
      return finish_suite(out.report, cfg.out_path);
    }
    if (*hopf) {
      cfg.tol.validate();
      const g2lab::HypersurfacePoint hp = g2lab::hyperpoint_from_json(g2lab::read_json_file(input_path));
      const g2lab::LinOp shape = g2lab::shape_from_json(g2lab::read_json_file(shape_path));
      if (shape.rows() != hp.tangent_dim()) {
        throw g2lab::Error(g2lab::ErrorKind::Parse,
                           "shape dim " + std::to_string(shape.rows()) + " differs from 4m-1 = " +
                               std::to_string(hp.tangent_dim()));
      }
      if ((shape - shape.transpose()).norm() > cfg.tol.identity_tol * std::max(1.0, shape.norm())) {
        throw g2lab::Error(g2lab::ErrorKind::NotSymmetric, "shape operator is not symmetric");
      }
      const g2lab::HopfCertificate cert = g2lab::certify_hopf(hp, shape, cfg.tol);
      emit(g2lab::certificate_to_json(cert), cfg.out_path);
      std::fprintf(stderr, "hopf-certify: %s%s\n", std::string(g2lab::to_string(cert.status)).c_str(),
                   cert.failing_step ? (" at " + *cert.failing_step).c_str() : "");
      return cert.status == g2lab::HopfStatus::Certified ? kExitPass : kExitNotCertified;
    }
  } catch (const g2lab::Error& e) {
    std::fprintf(stderr, "g2lab: %s\n", e.what());
    switch (e.kind()) {
      case g2lab::ErrorKind::DegenerateEigenspace:
      case g2lab::ErrorKind::SpectrumLeak:
      case g2lab::ErrorKind::NotCommuting:
      case g2lab::ErrorKind::HypothesisViolated:
        return kExitSuiteFailed;
      default:
        return kExitUsage;
    }
  }
  return kExitUsage;
}
