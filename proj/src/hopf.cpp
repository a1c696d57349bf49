#include "g2lab/hopf.hpp"

#include <algorithm>
#include <cmath>

namespace g2lab {

std::string_view to_string(HopfStatus status) {
  switch (status) {
    case HopfStatus::Certified: return "CERTIFIED";
    case HopfStatus::HypothesisFailed: return "HYPOTHESIS_FAILED";
    case HopfStatus::StepFailed: return "STEP_FAILED";
  }
  return "UNKNOWN";
}

HypothesisReport check_hypotheses(const HypersurfacePoint& hp, const LinOp& shape,
                                  const Tolerance& tol) {
  HypothesisReport rep;
  rep.ad_in_d_leak = subspace_image_contained(shape, hp.d, hp.d, tol).max_leak;
  rep.adperp_in_dperp_leak = subspace_image_contained(shape, hp.d_perp, hp.d_perp, tol).max_leak;
  rep.xi_in_dperp_gap = hp.d_perp.distance(hp.xi);
  const double bound = std::sqrt(static_cast<double>(std::max<Eigen::Index>(hp.d.dim(), 1)));
  rep.leaks_consistent =
      rep.adperp_in_dperp_leak <= bound * rep.ad_in_d_leak * (1.0 + 1e-9) + tol.identity_tol;
  rep.pass = rep.ad_in_d_leak <= tol.identity_tol && rep.adperp_in_dperp_leak <= tol.identity_tol &&
             rep.xi_in_dperp_gap <= tol.identity_tol;
  return rep;
}

Principalized principalize_triple(const HypersurfacePoint& hp, const LinOp& shape,
                                  const Tolerance& tol) {
  const HypothesisReport hyp = check_hypotheses(hp, shape, tol);
  if (!hyp.pass) {
    throw Error(ErrorKind::HypothesisViolated, "A D in D, A D^perp in D^perp, xi in D^perp");
  }
  LinOp frame(hp.tangent_dim(), 3);
  for (int a = 0; a < 3; ++a) frame.col(a) = hp.xi_a[a];
  const EigenDecomposition eig = sym_eig(frame.transpose() * shape * frame, tol);

  Eigen::Matrix3d v = eig.basis.basis();
  if (v.determinant() < 0.0) v.col(0) = -v.col(0);
  // xi'_a = sum_b R_ab xi_b must be the a-th eigenvector.
  Principalized out;
  out.rotation = TripleRotation(v.transpose(), 1e-10);
  out.hp = induce(rotate_triple(hp.ambient, out.rotation), hp.normal);
  for (int a = 0; a < 3; ++a) {
    out.betas[a] = eig.values[static_cast<std::size_t>(a)];
    out.residual = std::max(out.residual,
                            (shape * out.hp.xi_a[a] - out.betas[a] * out.hp.xi_a[a]).norm());
  }
  return out;
}

namespace {

class Run {
 public:
  Run(HopfCertificate& cert, const Tolerance& tol) : cert_(cert), tol_(tol) {}

  void record(const std::string& name, double value) { cert_.step_residuals.emplace_back(name, value); }

  /// Records `value` under step.name and reports whether it is within threshold.
  bool check(const std::string& step, const std::string& name, double value, double threshold) {
    record(step + "." + name, value);
    if (value <= threshold) return true;
    fail(step, name + " = " + std::to_string(value));
    return false;
  }
  bool check(const std::string& step, const std::string& name, double value) {
    return check(step, name, value, tol_.identity_tol);
  }

  void fail(const std::string& step, const std::string& reason,
            HopfStatus status = HopfStatus::StepFailed) {
    cert_.status = status;
    cert_.failing_step = step;
    cert_.reason = reason;
  }

 private:
  HopfCertificate& cert_;
  const Tolerance& tol_;
};

struct PairedBasis {
  std::vector<Vector> vectors;  // on T
  std::vector<double> a_values;
  std::vector<double> b_values;
};

// Common eigenvectors of A and phi_b A phi_b inside `space`.
PairedBasis paired_eigenvectors(const LinOp& shape, const LinOp& twisted, const Subspace& space,
                                const Tolerance& tol) {
  const SimultaneousDecomposition sd =
      simultaneous_diag(space.compress(shape), space.compress(twisted), tol);
  PairedBasis out;
  for (Eigen::Index j = 0; j < sd.basis.dim(); ++j) {
    out.vectors.push_back(space.basis() * sd.basis.vector(j));
    out.a_values.push_back(sd.a_values[static_cast<std::size_t>(j)]);
    out.b_values.push_back(sd.b_values[static_cast<std::size_t>(j)]);
  }
  return out;
}

// Steps index2 / index3: on H_1(+1), the identity for index b forces eta(xi_b) = 0.
bool run_secondary_index(Run& run, const HypersurfacePoint& hp, const LinOp& shape,
                         const BetaTriple& betas, const Subspace& plus, int b, const Tolerance& tol) {
  const std::string step = "index" + std::to_string(b + 1);
  const LinOp& pb = hp.phi_a[b];
  const LinOp twisted = pb * shape * pb;

  if (!run.check(step, "invariance_leak", subspace_image_contained(twisted, plus, plus, tol).max_leak))
    return false;

  PairedBasis pairs;
  try {
    pairs = paired_eigenvectors(shape, twisted, plus, tol);
  } catch (const Error& e) {
    run.fail(step, e.what());
    return false;
  }

  const LinOp p_plus = plus.projector();
  const double eta_b = hp.eta(hp.xi_a[b]);
  double swap_leak = 0.0;
  double mu_check = 0.0;
  double pair_residual = 0.0;
  double eta_derived = 0.0;
  for (std::size_t j = 0; j < pairs.vectors.size(); ++j) {
    const Vector& x = pairs.vectors[j];
    const double lam = pairs.a_values[j];
    const double mu = 0.0 - pairs.b_values[j];
    const Vector pbx = pb * x;
    const Vector px = hp.phi * x;
    const double c = 2.0 + betas[b] * (lam + mu) - 2.0 * lam * mu;
    swap_leak = std::max(swap_leak, (p_plus * pbx).norm());
    mu_check = std::max(mu_check, (shape * pbx - mu * pbx).norm());
    pair_residual = std::max(pair_residual, (2.0 * eta_b * px + c * pbx).norm());
    eta_derived = std::max(eta_derived, std::abs(c * pbx.dot(px)) / 2.0);
  }
  return run.check(step, "swap_leak", swap_leak) && run.check(step, "mu_postcheck", mu_check) &&
         run.check(step, "eq7_pair_residual", pair_residual) &&
         run.check(step, "eta_derived", eta_derived) &&
         run.check(step, "abs_eta_xi" + std::to_string(b + 1), std::abs(eta_b));
}

}  // namespace

HopfCertificate certify_hopf(const HypersurfacePoint& input, const LinOp& shape,
                             const Tolerance& tol) {
  HopfCertificate cert;
  Run run(cert, tol);

  // (1) hypotheses
  const HypothesisReport hyp = check_hypotheses(input, shape, tol);
  run.record("hypotheses.ad_in_d_leak", hyp.ad_in_d_leak);
  run.record("hypotheses.adperp_in_dperp_leak", hyp.adperp_in_dperp_leak);
  run.record("hypotheses.xi_in_dperp_gap", hyp.xi_in_dperp_gap);
  if (!hyp.pass) {
    run.fail("hypotheses",
             hyp.xi_in_dperp_gap > tol.identity_tol ? "xi not in D^perp" : "A does not preserve D",
             HopfStatus::HypothesisFailed);
    return cert;
  }
  if (!hyp.leaks_consistent) {
    run.fail("hypotheses", "leak bound violated for symmetric A", HopfStatus::HypothesisFailed);
    return cert;
  }

  // (2) principalize
  Principalized pr;
  try {
    pr = principalize_triple(input, shape, tol);
  } catch (const Error& e) {
    run.fail("principalize", e.what());
    return cert;
  }
  cert.rotation = pr.rotation;
  if (!run.check("principalize", "max_principal_residual", pr.residual)) return cert;

  // (3) select_index
  int chosen = 0;
  for (int a = 1; a < 3; ++a) {
    if (std::abs(pr.hp.eta(pr.hp.xi_a[a])) > std::abs(pr.hp.eta(pr.hp.xi_a[chosen]))) chosen = a;
  }
  cert.chosen_a = chosen;
  const double max_eta = std::abs(pr.hp.eta(pr.hp.xi_a[chosen]));
  run.record("select_index.max_abs_eta", max_eta);
  if (max_eta <= 10.0 * tol.identity_tol) {
    run.fail("select_index", "xi not in D^perp numerically");
    return cert;
  }
  const TripleRotation shift = TripleRotation::cyclic_shift(chosen);
  const HypersurfacePoint hp = induce(rotate_triple(pr.hp.ambient, shift), input.normal);
  cert.rotation = pr.rotation.then(shift);
  for (int a = 0; a < 3; ++a) {
    cert.betas[a] = pr.betas[next(a, chosen)];
    cert.eta_xi[a] = hp.eta(hp.xi_a[a]);
  }
  const BetaTriple& betas = cert.betas;

  // (4) eq7
  std::array<double, 3> eq7{};
  try {
    eq7 = verify_eq7(hp, shape, betas, tol);
  } catch (const Error& e) {
    run.fail("eq7", e.what());
    return cert;
  }
  for (int a = 0; a < 3; ++a) {
    if (!run.check("eq7", "a" + std::to_string(a + 1), eq7[a])) return cert;
  }

  // (5) lemma33
  std::array<double, 3> l33{};
  try {
    l33 = verify_lemma33(hp, shape, tol);
  } catch (const Error& e) {
    run.fail("lemma33", e.what());
    return cert;
  }
  for (int a = 0; a < 3; ++a) {
    if (!run.check("lemma33", "a" + std::to_string(a + 1), l33[a])) return cert;
  }

  // (6) simultaneous_diag on H (= D here)
  if (hp.h.empty()) {
    run.fail("simultaneous_diag", "empty H");
    return cert;
  }
  if (!run.check("simultaneous_diag", "h_equals_d",
                 static_cast<double>(std::abs(hp.h.dim() - hp.d.dim()))))
    return cert;
  const LinOp& p1 = hp.phi_a[0];
  PairedBasis pairs;
  try {
    pairs = paired_eigenvectors(shape, p1 * shape * p1, hp.h, tol);
  } catch (const Error& e) {
    run.fail("simultaneous_diag", e.what());
    return cert;
  }
  double eig_residual = 0.0;
  double mu_check = 0.0;
  for (std::size_t j = 0; j < pairs.vectors.size(); ++j) {
    const Vector& x = pairs.vectors[j];
    const double lam = pairs.a_values[j];
    const double mu = 0.0 - pairs.b_values[j];
    cert.eigenpairs.push_back({lam, mu});
    eig_residual = std::max(eig_residual, (shape * x - lam * x).norm() +
                                              (p1 * shape * p1 * x + mu * x).norm());
    mu_check = std::max(mu_check, (shape * (p1 * x) - mu * (p1 * x)).norm());
  }
  if (!run.check("simultaneous_diag", "max_eigen_residual", eig_residual) ||
      !run.check("simultaneous_diag", "mu_postcheck", mu_check))
    return cert;

  // (7) epsilon
  const double eta1 = cert.eta_xi[0];
  const double window = std::max(tol.gap_for(1.0), 100.0 * tol.identity_tol);
  double eps_distance = 0.0;
  double theta_residual = 0.0;
  std::vector<Vector> plus_vectors;
  for (std::size_t j = 0; j < pairs.vectors.size(); ++j) {
    const EigenPair& ep = cert.eigenpairs[j];
    const double eps = (2.0 + betas[0] * (ep.lambda + ep.mu) - 2.0 * ep.lambda * ep.mu) / (2.0 * eta1);
    const double sign = eps >= 0.0 ? 1.0 : -1.0;
    const double dist = std::abs(eps - sign);
    cert.epsilons.push_back({eps, dist});
    eps_distance = std::max(eps_distance, dist);
    const Vector& x = pairs.vectors[j];
    theta_residual = std::max(theta_residual, (hp.theta_a[0] * x - sign * x).norm());
    if (sign > 0.0) plus_vectors.push_back(x);
  }
  if (!run.check("epsilon", "max_distance_to_pm1", eps_distance, window) ||
      !run.check("epsilon", "theta1_residual", theta_residual))
    return cert;

  // (8) partition
  const Subspace plus = orthonormalize(plus_vectors, hp.tangent_dim(), 0.5);
  run.record("partition.dim_plus", static_cast<double>(plus.dim()));
  if (plus.empty()) {
    run.fail("partition", "empty H1(+1)");
    return cert;
  }
  if (!run.check("partition", "a_invariance_leak",
                 subspace_image_contained(shape, plus, plus, tol).max_leak))
    return cert;

  // (9) index2, index3
  for (int b = 1; b < 3; ++b) {
    if (!run_secondary_index(run, hp, shape, betas, plus, b, tol)) return cert;
  }

  // (10) hopf
  const double xi_vs_xi1 =
      std::min((hp.xi - hp.xi_a[0]).norm(), (hp.xi + hp.xi_a[0]).norm());
  if (!run.check("hopf", "xi_minus_pm_xi1", xi_vs_xi1)) return cert;
  cert.alpha = betas[0];
  cert.residual_hopf = (shape * hp.xi - cert.alpha * hp.xi).norm();
  if (!run.check("hopf", "residual_hopf", cert.residual_hopf)) return cert;

  cert.status = HopfStatus::Certified;
  cert.failing_step.reset();
  return cert;
}

}  // namespace g2lab
