#pragma once

// Model shape operators of tubes around a totally geodesic G2(C^{m+1}) and
// the pointwise identities satisfied by shape operators with A D in D and
// xi in D^perp.

#include <array>
#include <numbers>

#include "g2lab/hypersurface.hpp"

namespace g2lab {

inline const double kSqrt2 = std::numbers::sqrt2;
inline const double kSqrt8 = 2.0 * std::numbers::sqrt2;
/// Tube radii live in (0, kMaxRadius).
inline const double kMaxRadius = std::numbers::pi / kSqrt8;
/// Values closer than this count as one principal curvature.
inline constexpr double kDistinctMergeTol = 1e-6;

struct SpectrumA {
  double r = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  int distinct_count = 4;
};

/// Throws RadiusOutOfRange unless 0 < r < pi / sqrt(8).
SpectrumA spectrum_type_a(double r, double merge_tol = kDistinctMergeTol);

struct TypeAModel {
  HypersurfacePoint hp;
  LinOp shape;
  SpectrumA spectrum;
  Subspace t_alpha;
  Subspace t_beta;
  Subspace t_lambda;
  Subspace t_mu;
};

/// Principal curvatures of xi_1, xi_2, xi_3.
using BetaTriple = std::array<double, 3>;
/// Connection one-forms q_1, q_2, q_3 as covectors on T.
using QForms = std::array<Vector, 3>;

/// Builds the model at the normal N = e1 f1 (real part), for which
/// J_1 N = J N. Throws InvalidM, RadiusOutOfRange or DegenerateEigenspace.
TypeAModel build_type_a(int m, double r, const Tolerance& tol = {});

/// Rayleigh quotients g(A xi_a, xi_a).
BetaTriple principal_betas(const HypersurfacePoint& hp, const LinOp& shape);

/// Throws HypothesisViolated (naming the hypothesis) unless A D in D,
/// xi in D^perp and A xi_a = beta_a xi_a hold within tol.
void require_d_hypotheses(const HypersurfacePoint& hp, const LinOp& shape, const BetaTriple& betas,
                          const Tolerance& tol);

/// The operator X -> 2 eta(xi_a) phi X + 2 phi_a X + beta_a (phi_a A + A phi_a) X - 2 A phi_a A X.
LinOp eq7_operator(const HypersurfacePoint& hp, const LinOp& shape, double beta_a, int a);

/// Per a, max over an orthonormal basis {X} of D of the norm of eq7_operator X.
std::array<double, 3> verify_eq7(const HypersurfacePoint& hp, const LinOp& shape,
                                 const BetaTriple& betas, const Tolerance& tol = {});

/// Per a, || (phi_a A phi_a A - A phi_a A phi_a) P_D ||.
std::array<double, 3> verify_lemma33(const HypersurfacePoint& hp, const LinOp& shape,
                                     const Tolerance& tol = {});

/// Sign of the q_{a+1}(xi_a), q_{a+2}(xi_a) terms in the pointwise form of
/// the Codazzi identity along xi_a. Both are accepted by the least-squares
/// fit; AsPrinted is the default.
enum class QConstantSign { AsPrinted, Flipped };

/// Max over T x T (orthonormal basis) of |LHS - RHS| for the identity along
/// xi_a, with q read from `q`. Throws HypothesisViolated unless A xi_a = beta_a xi_a.
double eq5_residual(const HypersurfacePoint& hp, const LinOp& shape, const BetaTriple& betas,
                    const QForms& q, int a, const Tolerance& tol = {},
                    QConstantSign sign = QConstantSign::AsPrinted);

struct QFit {
  QForms q;
  double residual = 0.0;  // max over a of eq5_residual at q
};

/// Minimum-norm least-squares q for all three identities at once. Components
/// multiplied only by vanishing (beta_a - beta_b) come back as zero.
QFit fit_qforms(const HypersurfacePoint& hp, const LinOp& shape, const BetaTriple& betas,
                const Tolerance& tol = {}, QConstantSign sign = QConstantSign::AsPrinted);

/// Adds a symmetric perturbation of spectral size delta supported on D x D,
/// so A D in D and the principal directions xi_a survive.
LinOp jitter_on_d(const HypersurfacePoint& hp, const LinOp& shape, double delta, Rng& rng);

}  // namespace g2lab
