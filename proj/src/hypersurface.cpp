#include "g2lab/hypersurface.hpp"

#include <algorithm>
#include <cmath>

namespace g2lab {

namespace {

std::string idx(int a) { return std::to_string(a + 1); }

void compute_thetas(HypersurfacePoint& hp) {
  for (int a = 0; a < 3; ++a) {
    hp.theta_a[a] = hp.phi_a[a] * hp.phi - hp.xi_a[a] * hp.xi.transpose();
    hp.theta_alt_a[a] = hp.phi * hp.phi_a[a] - hp.xi * hp.xi_a[a].transpose();
  }
}

}  // namespace

HypersurfacePoint induce(const AmbientSpace& amb, const Vector& normal) {
  if (normal.size() != amb.dim) {
    throw Error(ErrorKind::DimensionMismatch, "normal must have length 4m");
  }
  if (std::abs(normal.norm() - 1.0) > 1e-12) {
    throw Error(ErrorKind::NotUnit, "||N|| = " + std::to_string(normal.norm()));
  }
  HypersurfacePoint hp;
  hp.ambient = amb;
  hp.normal = normal;
  hp.frame = orthocomplement(Subspace(amb.dim, normal)).basis();

  const LinOp& f = hp.frame;
  // J and J_a are skew, so JN and J_aN are already tangent.
  hp.phi = f.transpose() * amb.J * f;
  hp.xi = -(f.transpose() * (amb.J * normal));
  for (int a = 0; a < 3; ++a) {
    hp.phi_a[a] = f.transpose() * amb.triple[a] * f;
    hp.xi_a[a] = -(f.transpose() * (amb.triple[a] * normal));
  }
  compute_thetas(hp);

  const Eigen::Index t = hp.tangent_dim();
  hp.d_perp = orthonormalize(hp.xi_a, t);
  hp.d = orthocomplement(hp.d_perp);
  const std::array<Vector, 7> spanning{hp.xi,        hp.xi_a[0],  hp.xi_a[1], hp.xi_a[2],
                                       hp.phi_xi(0), hp.phi_xi(1), hp.phi_xi(2)};
  hp.h_perp = orthonormalize(spanning, t, kHperpRankTol);
  hp.h = orthocomplement(hp.h_perp);
  return hp;
}

void StructureReport::finalize(const Tolerance& tol) {
  pass = std::all_of(residuals.begin(), residuals.end(),
                     [&](const auto& r) { return r.second <= tol.identity_tol; });
}

double StructureReport::worst() const {
  double w = 0.0;
  for (const auto& r : residuals) w = std::max(w, r.second);
  return w;
}

std::string StructureReport::first_failure(double threshold) const {
  for (const auto& r : residuals) {
    if (!(r.second <= threshold)) return r.first;
  }
  return {};
}

StructureReport verify_structure_relations(const HypersurfacePoint& hp, const Tolerance& tol) {
  const Eigen::Index t = hp.tangent_dim();
  const LinOp id = LinOp::Identity(t, t);
  StructureReport rep;

  rep.add("eta(xi)=1", std::abs(hp.eta(hp.xi) - 1.0));
  rep.add("phi xi=0", (hp.phi * hp.xi).norm());
  rep.add("phi^2=-I+xi(x)eta",
          operator_norm(hp.phi * hp.phi - (-id + hp.xi * hp.xi.transpose())));

  for (int a = 0; a < 3; ++a) {
    const int b = next(a, 1);
    const int c = next(a, 2);
    const std::string sa = idx(a), sb = idx(b), sc = idx(c);
    const LinOp& pa = hp.phi_a[a];
    const LinOp& pb = hp.phi_a[b];
    const LinOp& pc = hp.phi_a[c];
    const Vector& xa = hp.xi_a[a];
    const Vector& xb = hp.xi_a[b];
    const Vector& xc = hp.xi_a[c];

    for (int k = a; k < 3; ++k) {
      const double expect = (k == a) ? 1.0 : 0.0;
      rep.add("g(xi" + sa + ",xi" + idx(k) + ")", std::abs(xa.dot(hp.xi_a[k]) - expect));
    }
    rep.add("phi" + sa + " xi" + sa + "=0", (pa * xa).norm());
    rep.add("phi" + sa + "^2=-I+xi" + sa + "(x)eta" + sa,
            operator_norm(pa * pa - (-id + xa * xa.transpose())));
    rep.add("phi" + sa + "phi" + sb + "-xi" + sa + "(x)eta" + sb + "=phi" + sc,
            operator_norm(pa * pb - xa * xb.transpose() - pc));
    rep.add("-phi" + sb + "phi" + sa + "+xi" + sb + "(x)eta" + sa + "=phi" + sc,
            operator_norm(-pb * pa + xb * xa.transpose() - pc));
    rep.add("phi" + sa + " xi" + sb + "=xi" + sc, (pa * xb - xc).norm());
    rep.add("-phi" + sb + " xi" + sa + "=xi" + sc, (-pb * xa - xc).norm());
    rep.add("phi" + sa + "phi-xi" + sa + "(x)eta=phi phi" + sa + "-xi(x)eta" + sa,
            operator_norm(pa * hp.phi - xa * hp.xi.transpose() -
                          (hp.phi * pa - hp.xi * xa.transpose())));
    rep.add("phi xi" + sa + "=phi" + sa + " xi", (hp.phi * xa - pa * hp.xi).norm());
    rep.add("theta" + sa + " formulas agree", operator_norm(hp.theta_a[a] - hp.theta_alt_a[a]));
  }
  rep.finalize(tol);
  return rep;
}

StructureReport verify_lemma24(const HypersurfacePoint& hp, const Tolerance& tol) {
  const Eigen::Index t = hp.tangent_dim();
  const LinOp id = LinOp::Identity(t, t);
  StructureReport rep;

  for (int a = 0; a < 3; ++a) {
    const int b = next(a, 1);
    const int c = next(a, 2);
    const std::string sa = idx(a);
    const LinOp& th = hp.theta_a[a];
    const Vector psi_a = hp.phi_xi(a);
    const Vector psi_b = hp.phi_xi(b);
    const Vector psi_c = hp.phi_xi(c);
    const Vector& xa = hp.xi_a[a];
    const Vector& xb = hp.xi_a[b];
    const Vector& xc = hp.xi_a[c];

    rep.add("(a) theta" + sa + " symmetric", operator_norm(th - th.transpose()));
    rep.add("(b) Trace(theta" + sa + ")=eta(xi" + sa + ")", std::abs(th.trace() - hp.eta(xa)));
    rep.add("(c) theta" + sa + "^2=I-phixi" + sa + "(x)phixi" + sa,
            operator_norm(th * th - (id - psi_a * psi_a.transpose())));
    rep.add("(d) theta" + sa + " xi=-xi" + sa, (th * hp.xi + xa).norm());
    rep.add("(d) theta" + sa + " xi" + sa + "=-xi", (th * xa + hp.xi).norm());
    rep.add("(d) theta" + sa + " phixi" + sa + "=eta(xi" + sa + ")phixi" + sa,
            (th * psi_a - hp.eta(xa) * psi_a).norm());
    rep.add("(e) theta" + sa + " xi" + idx(b) + "=phixi" + idx(c), (th * xb - psi_c).norm());
    rep.add("(e) theta" + idx(b) + " xi" + sa + "=-phixi" + idx(c),
            (hp.theta_a[b] * xa + psi_c).norm());
    rep.add("(f) theta" + sa + " phixi" + idx(b) + "=-xi" + idx(c) + "+eta(xi" + idx(b) + ")phixi" + sa,
            (th * psi_b - (-xc + hp.eta(xb) * psi_a)).norm());
    rep.add("(g) theta" + idx(b) + " phixi" + sa + "=xi" + idx(c) + "+eta(xi" + sa + ")phixi" + idx(b),
            (hp.theta_a[b] * psi_a - (xc + hp.eta(xa) * psi_b)).norm());
  }
  rep.finalize(tol);
  return rep;
}

ThetaSplit theta_eigenspaces(const HypersurfacePoint& hp, int a, const Tolerance& tol) {
  const Eigen::Index t = hp.tangent_dim();
  ThetaSplit split{Subspace(t), Subspace(t)};
  if (hp.h.empty()) return split;

  const EigenDecomposition eig = sym_eig(hp.h.compress(hp.theta_a[a]), tol);
  const double window = tol.gap_for(1.0);
  std::vector<Vector> plus;
  std::vector<Vector> minus;
  for (std::size_t i = 0; i < eig.values.size(); ++i) {
    const double v = eig.values[i];
    const Vector x = hp.h.basis() * eig.basis.vector(static_cast<Eigen::Index>(i));
    if (std::abs(v - 1.0) <= window) {
      plus.push_back(x);
    } else if (std::abs(v + 1.0) <= window) {
      minus.push_back(x);
    } else {
      throw Error(ErrorKind::SpectrumLeak,
                  "theta" + idx(a) + "|_H has eigenvalue " + std::to_string(v));
    }
  }
  split.plus = orthonormalize(plus, t, 0.5);
  split.minus = orthonormalize(minus, t, 0.5);
  return split;
}

StructureReport verify_lemma25(const HypersurfacePoint& hp, const Tolerance& tol) {
  StructureReport rep;
  for (int a = 0; a < 3; ++a) {
    const std::string sa = idx(a);

    double spectrum_leak = 0.0;
    double asymmetry = 0.0;
    if (!hp.h.empty()) {
      const LinOp block = hp.h.compress(hp.theta_a[a]);
      asymmetry = operator_norm(block - block.transpose());
      const EigenDecomposition eig = sym_eig(0.5 * (block + block.transpose()), tol);
      for (double v : eig.values) spectrum_leak = std::max(spectrum_leak, std::abs(std::abs(v) - 1.0));
    }
    rep.add("(a) theta" + sa + "|H symmetric", asymmetry);
    rep.add("(a) spec theta" + sa + "|H in {+1,-1}", spectrum_leak);
    if (asymmetry > tol.identity_tol || spectrum_leak > tol.gap_for(1.0)) continue;

    const ThetaSplit split = theta_eigenspaces(hp, a, tol);
    rep.add("(d) dim H" + sa + "(+1)=dim H" + sa + "(-1)",
            static_cast<double>(std::abs(split.plus.dim() - split.minus.dim())));
    rep.add("(d) dim H" + sa + "(+1) even", static_cast<double>(split.plus.dim() % 2));

    rep.add("(b) phi H" + sa + "(+1) in H" + sa + "(+1)",
            subspace_image_contained(hp.phi, split.plus, split.plus, tol).max_leak);
    rep.add("(b) phi H" + sa + "(-1) in H" + sa + "(-1)",
            subspace_image_contained(hp.phi, split.minus, split.minus, tol).max_leak);
    for (int k = 1; k <= 2; ++k) {
      const int b = next(a, k);
      const std::string sb = idx(b);
      rep.add("(c) theta" + sb + " H" + sa + "(+1) in H" + sa + "(-1)",
              subspace_image_contained(hp.theta_a[b], split.plus, split.minus, tol).max_leak);
      rep.add("(c) theta" + sb + " H" + sa + "(-1) in H" + sa + "(+1)",
              subspace_image_contained(hp.theta_a[b], split.minus, split.plus, tol).max_leak);
      rep.add("(e) phi" + sb + " H" + sa + "(+1) in H" + sa + "(-1)",
              subspace_image_contained(hp.phi_a[b], split.plus, split.minus, tol).max_leak);
      rep.add("(e) phi" + sb + " H" + sa + "(-1) in H" + sa + "(+1)",
              subspace_image_contained(hp.phi_a[b], split.minus, split.plus, tol).max_leak);
    }
  }
  rep.finalize(tol);
  return rep;
}

HperpClass classify_hperp(const HypersurfacePoint& hp, const Tolerance& tol) {
  HperpClass c;
  c.dim = hp.h_perp.dim();
  c.xi_gap = hp.d_perp.distance(hp.xi);
  c.xi_in_d_perp = c.xi_gap <= tol.identity_tol;
  c.consistent = (c.dim == 3) == c.xi_in_d_perp;
  return c;
}

Vector gauss_curvature(const HypersurfacePoint& hp, const LinOp& shape, const Vector& x,
                       const Vector& y, const Vector& z) {
  const Eigen::Index t = hp.tangent_dim();
  if (x.size() != t || y.size() != t || z.size() != t || shape.rows() != t || shape.cols() != t) {
    throw Error(ErrorKind::DimensionMismatch, "Gauss equation arguments must live on T");
  }
  Vector out = y.dot(z) * x - x.dot(z) * y;

  const Vector ax = shape * x;
  const Vector ay = shape * y;
  out += ay.dot(z) * ax - ax.dot(z) * ay;

  const Vector px = hp.phi * x;
  const Vector py = hp.phi * y;
  out += py.dot(z) * px - px.dot(z) * py - 2.0 * px.dot(y) * (hp.phi * z);

  for (int a = 0; a < 3; ++a) {
    const Vector pax = hp.phi_a[a] * x;
    const Vector pay = hp.phi_a[a] * y;
    out += pay.dot(z) * pax - pax.dot(z) * pay - 2.0 * pax.dot(y) * (hp.phi_a[a] * z);

    const Vector tx = hp.theta_a[a] * x;
    const Vector ty = hp.theta_a[a] * y;
    out += ty.dot(z) * tx - tx.dot(z) * ty;
  }
  return out;
}

Vector codazzi_rhs(const HypersurfacePoint& hp, const Vector& x, const Vector& y) {
  const Eigen::Index t = hp.tangent_dim();
  if (x.size() != t || y.size() != t) {
    throw Error(ErrorKind::DimensionMismatch, "Codazzi arguments must live on T");
  }
  const Vector px = hp.phi * x;
  const Vector py = hp.phi * y;
  Vector out = hp.eta(x) * py - hp.eta(y) * px - 2.0 * px.dot(y) * hp.xi;
  for (int a = 0; a < 3; ++a) {
    out += hp.eta_a(a, x) * (hp.phi_a[a] * y) - hp.eta_a(a, y) * (hp.phi_a[a] * x) -
           2.0 * (hp.phi_a[a] * x).dot(y) * hp.xi_a[a] +
           hp.eta_a(a, px) * (hp.theta_a[a] * y) - hp.eta_a(a, py) * (hp.theta_a[a] * x);
  }
  return out;
}

HypersurfacePoint with_jittered_phi(const HypersurfacePoint& hp, int a, double delta, Rng& rng) {
  HypersurfacePoint out = hp;
  out.phi_a[a] += rng.jitter(hp.tangent_dim(), hp.tangent_dim(), delta);
  compute_thetas(out);
  return out;
}

}  // namespace g2lab
