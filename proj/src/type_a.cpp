#include "g2lab/type_a.hpp"

#include <algorithm>
#include <cmath>

namespace g2lab {

SpectrumA spectrum_type_a(double r, double merge_tol) {
  if (!(r > 0.0 && r < kMaxRadius)) {
    throw Error(ErrorKind::RadiusOutOfRange,
                "r = " + std::to_string(r) + " outside (0, pi/sqrt(8))");
  }
  SpectrumA s;
  s.r = r;
  s.alpha = kSqrt8 / std::tan(kSqrt8 * r);
  s.beta = kSqrt2 / std::tan(kSqrt2 * r);
  s.lambda = -kSqrt2 * std::tan(kSqrt2 * r);
  s.mu = 0.0;
  s.distinct_count = count_distinct({s.alpha, s.beta, s.lambda, s.mu}, merge_tol);
  return s;
}

namespace {

// Kernel of M restricted to `within`, for symmetric positive semidefinite M.
Subspace kernel_within(const LinOp& psd, const Subspace& within, const Tolerance& tol) {
  const Eigen::Index t = within.ambient_dim();
  if (within.empty()) return Subspace(t);
  const EigenDecomposition eig = sym_eig(within.compress(psd), tol);
  double rho = 0.0;
  for (double v : eig.values) rho = std::max(rho, std::abs(v));
  std::vector<Vector> kernel;
  for (std::size_t i = 0; i < eig.values.size(); ++i) {
    if (eig.values[i] <= tol.gap_for(rho)) {
      kernel.push_back(within.basis() * eig.basis.vector(static_cast<Eigen::Index>(i)));
    }
  }
  return orthonormalize(kernel, t, 0.5);
}

}  // namespace

TypeAModel build_type_a(int m, double r, const Tolerance& tol) {
  const AmbientSpace amb = build_ambient(m);
  TypeAModel model;
  model.spectrum = spectrum_type_a(r);

  Vector normal = Vector::Zero(amb.dim);
  normal(0) = 1.0;
  model.hp = induce(amb, normal);
  const HypersurfacePoint& hp = model.hp;
  const Eigen::Index t = hp.tangent_dim();

  if ((hp.xi - hp.xi_a[0]).norm() > tol.identity_tol) {
    throw Error(ErrorKind::DegenerateEigenspace, "model normal does not satisfy J1 N = J N");
  }

  model.t_alpha = orthonormalize(std::array<Vector, 1>{hp.xi}, t);
  model.t_beta = orthonormalize(std::array<Vector, 2>{hp.xi_a[1], hp.xi_a[2]}, t);

  const LinOp j_minus = amb.J - amb.triple[0];
  const LinOp j_plus = amb.J + amb.triple[0];
  const LinOp& f = hp.frame;
  model.t_lambda = kernel_within(f.transpose() * (j_minus.transpose() * j_minus) * f, hp.h, tol);
  model.t_mu = kernel_within(f.transpose() * (j_plus.transpose() * j_plus) * f, hp.h, tol);

  const Eigen::Index expect = 2 * m - 2;
  if (model.t_alpha.dim() != 1 || model.t_beta.dim() != 2 || model.t_lambda.dim() != expect ||
      model.t_mu.dim() != expect) {
    throw Error(ErrorKind::DegenerateEigenspace,
                "eigenspace dimensions (" + std::to_string(model.t_alpha.dim()) + ", " +
                    std::to_string(model.t_beta.dim()) + ", " + std::to_string(model.t_lambda.dim()) +
                    ", " + std::to_string(model.t_mu.dim()) + ")");
  }

  const SpectrumA& s = model.spectrum;
  model.shape = s.alpha * model.t_alpha.projector() + s.beta * model.t_beta.projector() +
                s.lambda * model.t_lambda.projector() + s.mu * model.t_mu.projector();

  const std::array<const Subspace*, 4> spaces{&model.t_alpha, &model.t_beta, &model.t_lambda,
                                              &model.t_mu};
  double overlap = 0.0;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    for (std::size_t j = i + 1; j < spaces.size(); ++j) {
      overlap = std::max(overlap, (spaces[i]->basis().transpose() * spaces[j]->basis())
                                      .cwiseAbs()
                                      .maxCoeff());
    }
  }
  const double hopf = (model.shape * hp.xi - s.alpha * hp.xi).norm();
  if (overlap > tol.identity_tol || hopf > tol.identity_tol * std::max(1.0, std::abs(s.alpha))) {
    throw Error(ErrorKind::DegenerateEigenspace, "eigenspaces are not orthogonal");
  }
  return model;
}

BetaTriple principal_betas(const HypersurfacePoint& hp, const LinOp& shape) {
  BetaTriple betas{};
  for (int a = 0; a < 3; ++a) betas[a] = hp.xi_a[a].dot(shape * hp.xi_a[a]);
  return betas;
}

void require_d_hypotheses(const HypersurfacePoint& hp, const LinOp& shape, const BetaTriple& betas,
                          const Tolerance& tol) {
  const ContainmentResult ad = subspace_image_contained(shape, hp.d, hp.d, tol);
  if (!ad.contained) {
    throw Error(ErrorKind::HypothesisViolated, "A D in D (leak " + std::to_string(ad.max_leak) + ")");
  }
  const double gap = hp.d_perp.distance(hp.xi);
  if (gap > tol.identity_tol) {
    throw Error(ErrorKind::HypothesisViolated, "xi in D^perp (gap " + std::to_string(gap) + ")");
  }
  for (int a = 0; a < 3; ++a) {
    const double res = (shape * hp.xi_a[a] - betas[a] * hp.xi_a[a]).norm();
    if (res > tol.identity_tol) {
      throw Error(ErrorKind::HypothesisViolated,
                  "A xi" + std::to_string(a + 1) + " = beta" + std::to_string(a + 1) + " xi" +
                      std::to_string(a + 1) + " (residual " + std::to_string(res) + ")");
    }
  }
}

LinOp eq7_operator(const HypersurfacePoint& hp, const LinOp& shape, double beta_a, int a) {
  const LinOp& pa = hp.phi_a[a];
  return 2.0 * hp.eta(hp.xi_a[a]) * hp.phi + 2.0 * pa + beta_a * (pa * shape + shape * pa) -
         2.0 * shape * pa * shape;
}

std::array<double, 3> verify_eq7(const HypersurfacePoint& hp, const LinOp& shape,
                                 const BetaTriple& betas, const Tolerance& tol) {
  require_d_hypotheses(hp, shape, betas, tol);
  std::array<double, 3> out{};
  for (int a = 0; a < 3; ++a) {
    const LinOp image = eq7_operator(hp, shape, betas[a], a) * hp.d.basis();
    out[a] = image.cols() == 0 ? 0.0 : image.colwise().norm().maxCoeff();
  }
  return out;
}

std::array<double, 3> verify_lemma33(const HypersurfacePoint& hp, const LinOp& shape,
                                     const Tolerance& tol) {
  require_d_hypotheses(hp, shape, principal_betas(hp, shape), tol);
  const LinOp pd = hp.d.projector();
  std::array<double, 3> out{};
  for (int a = 0; a < 3; ++a) {
    const LinOp& pa = hp.phi_a[a];
    out[a] = operator_norm((pa * shape * pa * shape - shape * pa * shape * pa) * pd);
  }
  return out;
}

namespace {

LinOp wedge(const Vector& u, const Vector& v) { return u * v.transpose() - v * u.transpose(); }

// Bilinear forms are stored as matrices M with F(X, Y) = X^T M Y.

LinOp eq5_q_free(const HypersurfacePoint& hp, const LinOp& shape, const BetaTriple& betas, int a) {
  const int b = next(a, 1);
  const int c = next(a, 2);
  const Vector& xa = hp.xi_a[a];
  const Vector& xb = hp.xi_a[b];
  const Vector& xc = hp.xi_a[c];
  // eta_k(phi X) = u_k . X
  const Vector ua = hp.phi.transpose() * xa;
  const Vector ub = hp.phi.transpose() * xb;
  const Vector uc = hp.phi.transpose() * xc;
  const Vector s = 2.0 * hp.eta(xa) * ua - hp.eta(xb) * ub - hp.eta(xc) * uc;

  const LinOp lhs = eq7_operator(hp, shape, betas[a], a).transpose();
  const LinOp rhs = 2.0 * wedge(hp.xi, ua) + 2.0 * wedge(xb, xc) + 2.0 * wedge(ub, uc) +
                    2.0 * wedge(s, xa);
  return lhs - rhs;
}

LinOp eq5_q_terms(const HypersurfacePoint& hp, const BetaTriple& betas, const QForms& q, int a,
                  QConstantSign sign) {
  const int b = next(a, 1);
  const int c = next(a, 2);
  const Vector& xa = hp.xi_a[a];
  const Vector& xb = hp.xi_a[b];
  const Vector& xc = hp.xi_a[c];
  const double dab = betas[a] - betas[b];
  const double dac = betas[a] - betas[c];
  const double s = sign == QConstantSign::AsPrinted ? 1.0 : -1.0;
  return s * dab * q[c].dot(xa) * wedge(xa, xb) + s * dac * q[b].dot(xa) * wedge(xc, xa) -
         dab * wedge(q[c], xb) + dac * wedge(q[b], xc);
}

void require_principal(const HypersurfacePoint& hp, const LinOp& shape, const BetaTriple& betas,
                       int a, const Tolerance& tol) {
  const double res = (shape * hp.xi_a[a] - betas[a] * hp.xi_a[a]).norm();
  if (res > tol.identity_tol) {
    throw Error(ErrorKind::HypothesisViolated,
                "A xi" + std::to_string(a + 1) + " = beta" + std::to_string(a + 1) + " xi" +
                    std::to_string(a + 1) + " (residual " + std::to_string(res) + ")");
  }
}

}  // namespace

double eq5_residual(const HypersurfacePoint& hp, const LinOp& shape, const BetaTriple& betas,
                    const QForms& q, int a, const Tolerance& tol, QConstantSign sign) {
  require_principal(hp, shape, betas, a, tol);
  return (eq5_q_free(hp, shape, betas, a) - eq5_q_terms(hp, betas, q, a, sign)).cwiseAbs().maxCoeff();
}

QFit fit_qforms(const HypersurfacePoint& hp, const LinOp& shape, const BetaTriple& betas,
                const Tolerance& tol, QConstantSign sign) {
  for (int a = 0; a < 3; ++a) require_principal(hp, shape, betas, a, tol);
  const Eigen::Index t = hp.tangent_dim();
  const Eigen::Index block = t * t;

  // The q-terms are linear in q; assemble their matrix column by column.
  LinOp system(3 * block, 3 * t);
  Vector target(3 * block);
  for (int a = 0; a < 3; ++a) {
    const LinOp free = eq5_q_free(hp, shape, betas, a);
    target.segment(a * block, block) = Eigen::Map<const Vector>(free.data(), block);
  }
  for (int k = 0; k < 3; ++k) {
    for (Eigen::Index i = 0; i < t; ++i) {
      QForms unit{Vector::Zero(t), Vector::Zero(t), Vector::Zero(t)};
      unit[k](i) = 1.0;
      for (int a = 0; a < 3; ++a) {
        const LinOp terms = eq5_q_terms(hp, betas, unit, a, sign);
        system.col(k * t + i).segment(a * block, block) = Eigen::Map<const Vector>(terms.data(), block);
      }
    }
  }

  Eigen::CompleteOrthogonalDecomposition<LinOp> cod;
  cod.setThreshold(1e-10);
  cod.compute(system);
  const Vector solution = cod.solve(target);

  QFit fit;
  for (int k = 0; k < 3; ++k) fit.q[k] = solution.segment(k * t, t);
  for (int a = 0; a < 3; ++a) {
    fit.residual = std::max(fit.residual, eq5_residual(hp, shape, betas, fit.q, a, tol, sign));
  }
  return fit;
}

LinOp jitter_on_d(const HypersurfacePoint& hp, const LinOp& shape, double delta, Rng& rng) {
  const Eigen::Index k = hp.d.dim();
  if (k == 0 || delta == 0.0) return shape;
  LinOp s = rng.symmetric(k);
  s *= delta / operator_norm(s);
  return shape + hp.d.basis() * s * hp.d.basis().transpose();
}

}  // namespace g2lab
