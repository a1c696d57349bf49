#include "g2lab/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>

namespace g2lab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// The model satisfies the axioms exactly; this only absorbs rotated-triple roundoff.
constexpr double kAxiomTol = 1e-12;

Json config_json(const RunConfig& cfg) {
  Json j;
  j["m"] = cfg.m;
  j["r"] = cfg.r ? Json(*cfg.r) : Json(nullptr);
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["identity_tol"] = cfg.tol.identity_tol;
  j["eig_gap"] = cfg.tol.eig_gap;
  if (cfg.inject_jitter > 0.0) j["inject_jitter"] = cfg.inject_jitter;
  return j;
}

bool all_within(const NamedResiduals& rs, double threshold) {
  for (const auto& r : rs) {
    if (!(r.second <= threshold)) return false;
  }
  return true;
}

}  // namespace

void RunConfig::validate() const {
  if (m < 3) throw Error(ErrorKind::InvalidM, "m must be at least 3, got " + std::to_string(m));
  if (trials < 1) throw Error(ErrorKind::Parse, "trials must be at least 1");
  tol.validate();
  if (r && !(*r >= kRadiusMargin && *r <= kMaxRadius - kRadiusMargin)) {
    throw Error(ErrorKind::RadiusOutOfRange,
                "r = " + std::to_string(*r) + " outside (0, pi/sqrt(8)) with margin 1e-6");
  }
}

Tolerance default_tolerance() {
  Tolerance tol;
  if (const char* env = std::getenv("G2LAB_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) tol.identity_tol = v;
  }
  return tol;
}

void WorstResiduals::update(const std::string& name, double value) {
  auto it = index_.find(name);
  if (it == index_.end()) {
    index_.emplace(name, values_.size());
    values_.emplace_back(name, value);
    return;
  }
  double& current = values_[it->second].second;
  if (value > current || std::isnan(value)) current = value;
}

void WorstResiduals::update(const NamedResiduals& rs, const std::string& prefix) {
  for (const auto& [name, value] : rs) update(prefix + name, value);
}

Json SuiteReport::to_json() const {
  Json j;
  j["schema"] = kSchemaVersion;
  j["suite"] = suite_name;
  j["config"] = config_json(config);
  j["cases"] = cases;
  j["passes"] = passes;
  j["pass"] = pass();
  Json worst_json = Json::object();
  for (const auto& [name, value] : worst.values()) worst_json[name] = value;
  j["worst_residuals"] = std::move(worst_json);
  j["details"] = details;
  return j;
}

std::vector<double> radius_grid(int n) {
  std::vector<double> out;
  for (int k = 1; k <= n; ++k) out.push_back(k * kMaxRadius / (n + 1));
  return out;
}

SuiteReport run_ambient_check(const RunConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  SuiteReport rep;
  rep.suite_name = "ambient-check";
  rep.config = cfg;

  const AmbientSpace amb = build_ambient(cfg.m);
  const NamedResiduals axioms = axiom_residuals(amb);
  rep.worst.update(axioms, "axiom ");
  ++rep.cases;
  if (all_within(axioms, kAxiomTol)) ++rep.passes;

  // Diagnostic sectional curvatures at X = e1 f1 (real part).
  Vector x = Vector::Zero(amb.dim);
  x(0) = 1.0;
  Vector y = Vector::Zero(amb.dim);
  y(4) = 1.0;
  const Vector jx = amb.J * x;
  rep.details["g(R(X,JX)JX,X)"] = curvature(amb, x, jx, jx).dot(x);
  rep.details["g(R(X,Y)Y,X)"] = curvature(amb, x, y, y).dot(x);

  Rng rng(cfg.seed);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const Vector a = rng.unit_vector(amb.dim);
    const Vector b = rng.unit_vector(amb.dim);
    const Vector c = rng.unit_vector(amb.dim);
    const Vector d = rng.unit_vector(amb.dim);
    const AmbientSpace rotated = rotate_triple(amb, TripleRotation::random(rng));

    const Vector rabc = curvature(amb, a, b, c);
    NamedResiduals rs;
    rs.emplace_back("antisymmetry", (rabc + curvature(amb, b, a, c)).norm());
    rs.emplace_back("skew-adjointness", std::abs(rabc.dot(d) + curvature(amb, a, b, d).dot(c)));
    rs.emplace_back("first Bianchi",
                    (rabc + curvature(amb, b, c, a) + curvature(amb, c, a, b)).norm());
    rs.emplace_back("pair symmetry", std::abs(rabc.dot(d) - curvature(amb, c, d, a).dot(b)));
    rs.emplace_back("SO(3) rotation invariance", (rabc - curvature(rotated, a, b, c)).norm());
    const NamedResiduals raxioms = axiom_residuals(rotated);
    double rotated_axioms = 0.0;
    for (const auto& r : raxioms) rotated_axioms = std::max(rotated_axioms, r.second);
    rs.emplace_back("rotated triple axioms", rotated_axioms);

    rep.worst.update(rs);
    ++rep.cases;
    if (all_within(rs, cfg.tol.identity_tol)) ++rep.passes;
  }
  rep.wall_seconds = seconds_since(start);
  return rep;
}

SuiteReport run_hypersurface_check(const RunConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  SuiteReport rep;
  rep.suite_name = "hypersurface-check";
  rep.config = cfg;

  const AmbientSpace amb = build_ambient(cfg.m);
  Rng rng(cfg.seed);
  Json failures = Json::array();
  Json hperp_dims = Json::object();

  for (int k = 0; k <= cfg.trials; ++k) {
    Vector normal;
    if (k == 0) {
      normal = Vector::Zero(amb.dim);
      normal(0) = 1.0;
    } else {
      normal = rng.unit_vector(amb.dim);
    }
    HypersurfacePoint hp = induce(amb, normal);
    if (cfg.inject_jitter > 0.0) hp = with_jittered_phi(hp, 0, cfg.inject_jitter, rng);

    NamedResiduals rs;
    const StructureReport sr = verify_structure_relations(hp, cfg.tol);
    const StructureReport l24 = verify_lemma24(hp, cfg.tol);
    const StructureReport l25 = verify_lemma25(hp, cfg.tol);
    for (const auto& r : sr.residuals) rs.emplace_back("structure " + r.first, r.second);
    for (const auto& r : l24.residuals) rs.emplace_back("lemma2.4 " + r.first, r.second);
    for (const auto& r : l25.residuals) rs.emplace_back("lemma2.5 " + r.first, r.second);
    const HperpClass hc = classify_hperp(hp, cfg.tol);
    rs.emplace_back("dim Hperp = 3 <=> xi in Dperp", hc.consistent ? 0.0 : 1.0);

    const std::string key = std::to_string(hc.dim);
    hperp_dims[key] = hperp_dims.value(key, 0) + 1;
    if (k == 0) {
      rep.details["singular_case"] = {{"N", "e1 f1"},
                                      {"dim_hperp", hc.dim},
                                      {"xi_in_dperp", hc.xi_in_d_perp},
                                      {"xi_dperp_gap", hc.xi_gap}};
    }

    rep.worst.update(rs);
    ++rep.cases;
    bool ok = true;
    for (const auto& r : rs) {
      if (!(r.second <= cfg.tol.identity_tol)) {
        if (failures.size() < 20) failures.push_back({{"case", k}, {"identity", r.first}, {"residual", r.second}});
        ok = false;
        break;
      }
    }
    if (ok) ++rep.passes;
  }
  rep.details["dim_hperp_histogram"] = std::move(hperp_dims);
  rep.details["failures"] = std::move(failures);
  rep.wall_seconds = seconds_since(start);
  return rep;
}

TypeAOutputs run_type_a(const RunConfig& cfg) {
  cfg.validate();
  if (!cfg.r) throw Error(ErrorKind::Parse, "type-a needs --r");
  const auto start = Clock::now();
  TypeAOutputs out;
  SuiteReport& rep = out.report;
  rep.suite_name = "type-a";
  rep.config = cfg;

  out.model = build_type_a(cfg.m, *cfg.r, cfg.tol);
  const TypeAModel& model = out.model;
  const SpectrumA& s = model.spectrum;
  for (double r : radius_grid(64)) out.spectrum_grid.push_back(spectrum_type_a(r));

  rep.details["spectrum"] = {{"r", s.r},         {"alpha", s.alpha}, {"beta", s.beta},
                             {"lambda", s.lambda}, {"mu", s.mu},     {"distinct_count", s.distinct_count}};
  rep.details["three_distinct"] = s.distinct_count == 3;
  rep.details["dims"] = {model.t_alpha.dim(), model.t_beta.dim(), model.t_lambda.dim(),
                         model.t_mu.dim()};

  const BetaTriple betas = principal_betas(model.hp, model.shape);
  rep.details["betas"] = {betas[0], betas[1], betas[2]};

  const Eigen::Index expect = 2 * cfg.m - 2;
  const bool dims_ok = model.t_alpha.dim() == 1 && model.t_beta.dim() == 2 &&
                       model.t_lambda.dim() == expect && model.t_mu.dim() == expect;

  NamedResiduals rs;
  rs.emplace_back("spectrum alpha-(beta+lambda)", std::abs(s.alpha - (s.beta + s.lambda)));
  rs.emplace_back("spectrum beta*lambda+2", std::abs(s.beta * s.lambda + 2.0));
  rs.emplace_back("A xi - alpha xi", (model.shape * model.hp.xi - s.alpha * model.hp.xi).norm());
  const auto eq7 = verify_eq7(model.hp, model.shape, betas, cfg.tol);
  const auto l33 = verify_lemma33(model.hp, model.shape, cfg.tol);
  for (int a = 0; a < 3; ++a) rs.emplace_back("eq7 a=" + std::to_string(a + 1), eq7[a]);
  for (int a = 0; a < 3; ++a) rs.emplace_back("lemma3.3 a=" + std::to_string(a + 1), l33[a]);
  const bool identities_ok = all_within(rs, cfg.tol.identity_tol);

  const QFit fit = fit_qforms(model.hp, model.shape, betas, cfg.tol);
  rs.emplace_back("eq5 fitted", fit.residual);
  const bool fit_ok = fit.residual <= std::max(kEq5FitTol, cfg.tol.identity_tol);

  rep.worst.update(rs);
  rep.cases = 1;
  rep.passes = (dims_ok && identities_ok && fit_ok) ? 1 : 0;

  if (!cfg.csv_path.empty()) {
    std::ofstream csv(cfg.csv_path, std::ios::binary);
    if (!csv) throw Error(ErrorKind::Parse, "cannot write " + cfg.csv_path);
    write_spectrum_csv(csv, out.spectrum_grid);
  }
  rep.wall_seconds = seconds_since(start);
  return out;
}

}  // namespace g2lab
