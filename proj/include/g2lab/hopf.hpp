#pragma once

// Decision procedure for the Hopf property: given A with A D in D and
// xi in D^perp at a point, certify A xi = alpha xi with alpha = beta_1,
// or report the first step of the argument that fails numerically.
//
// Steps, in order:
//   hypotheses        A D in D, A D^perp in D^perp, xi in D^perp
//   principalize      rotate the triple so that A xi_a = beta_a xi_a
//   select_index      relabel so that |eta(xi_1)| is maximal
//   eq7               the pointwise identity on D for a = 1, 2, 3
//   lemma33           phi_a A phi_a A = A phi_a A phi_a on D
//   simultaneous_diag common eigenvectors X_j of A and phi_1 A phi_1 on H
//   epsilon           eps_j in {+1, -1} and theta_1 X_j = eps_j X_j
//   partition         A H_1(+1) in H_1(+1)
//   index2, index3    eta(xi_2) = eta(xi_3) = 0 from the same identity on H_1(+1)
//   hopf              xi = +-xi_1 and A xi = beta_1 xi

#include <optional>
#include <string>
#include <vector>

#include "g2lab/type_a.hpp"

namespace g2lab {

struct HypothesisReport {
  double ad_in_d_leak = 0.0;
  double adperp_in_dperp_leak = 0.0;
  double xi_in_dperp_gap = 0.0;
  /// For symmetric A the two leaks bound each other up to sqrt(dim D).
  bool leaks_consistent = true;
  bool pass = false;
};

HypothesisReport check_hypotheses(const HypersurfacePoint& hp, const LinOp& shape,
                                  const Tolerance& tol = {});

struct Principalized {
  HypersurfacePoint hp;
  BetaTriple betas{};
  TripleRotation rotation;
  double residual = 0.0;  // max_a || A xi'_a - beta_a xi'_a ||
};

/// Diagonalizes A on D^perp in the frame {xi_a} and rotates the triple to
/// that eigenframe. Throws HypothesisViolated when check_hypotheses fails.
Principalized principalize_triple(const HypersurfacePoint& hp, const LinOp& shape,
                                  const Tolerance& tol = {});

enum class HopfStatus { Certified, HypothesisFailed, StepFailed };

std::string_view to_string(HopfStatus status);

struct EigenPair {
  double lambda = 0.0;
  double mu = 0.0;
};

struct EpsilonValue {
  double value = 0.0;
  double distance = 0.0;  // to the nearer of +1, -1
};

struct HopfCertificate {
  HopfStatus status = HopfStatus::StepFailed;
  std::optional<std::string> failing_step;
  std::string reason;
  TripleRotation rotation;
  BetaTriple betas{};
  int chosen_a = 0;  // 0-based, in the principalized labelling
  std::vector<EigenPair> eigenpairs;
  std::vector<EpsilonValue> epsilons;
  std::array<double, 3> eta_xi{};
  double alpha = 0.0;
  double residual_hopf = 0.0;
  NamedResiduals step_residuals;
};

/// Never throws on numerical failure; every failure is encoded in the certificate.
HopfCertificate certify_hopf(const HypersurfacePoint& hp, const LinOp& shape,
                             const Tolerance& tol = {});

}  // namespace g2lab
