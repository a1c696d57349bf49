#include "g2lab/ambient.hpp"

#include <cmath>
#include <complex>

namespace g2lab {

TripleRotation::TripleRotation(const Eigen::Matrix3d& r, double tol) : r_(r) {
  const double orth = (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  const double det = r.determinant();
  if (orth > tol || std::abs(det - 1.0) > tol) {
    throw Error(ErrorKind::NotRotation, "R^T R - I = " + std::to_string(orth) +
                                            ", det R = " + std::to_string(det));
  }
}

TripleRotation TripleRotation::about_axis(int axis, double angle) {
  // Turns J_{axis+1} towards J_{axis+2}.
  const int b = next(axis, 1);
  const int c = next(axis, 2);
  Eigen::Matrix3d r = Eigen::Matrix3d::Zero();
  r(axis, axis) = 1.0;
  r(b, b) = std::cos(angle);
  r(b, c) = std::sin(angle);
  r(c, b) = -std::sin(angle);
  r(c, c) = std::cos(angle);
  return TripleRotation(r);
}

TripleRotation TripleRotation::cyclic_shift(int k) {
  Eigen::Matrix3d r = Eigen::Matrix3d::Zero();
  for (int a = 0; a < 3; ++a) r(a, next(a, ((k % 3) + 3) % 3)) = 1.0;
  return TripleRotation(r);
}

TripleRotation TripleRotation::random(Rng& rng) {
  Eigen::Quaterniond q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
  q.normalize();
  return TripleRotation(q.toRotationMatrix(), 1e-10);
}

TripleRotation TripleRotation::then(const TripleRotation& later) const {
  TripleRotation out;
  out.r_ = later.r_ * r_;
  return out;
}

namespace {

// Realifies a complex-linear map with the interleaved (re, im) layout.
LinOp realify(const Eigen::MatrixXcd& c) {
  LinOp r(2 * c.rows(), 2 * c.cols());
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      const double re = c(i, j).real();
      const double im = c(i, j).imag();
      r(2 * i, 2 * j) = re;
      r(2 * i, 2 * j + 1) = -im;
      r(2 * i + 1, 2 * j) = im;
      r(2 * i + 1, 2 * j + 1) = re;
    }
  }
  return r;
}

// (block on C^2) (x) I_m with the C^2 index running fastest.
LinOp on_c2_factor(const Eigen::Matrix2cd& block, int m) {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) c.block<2, 2>(2 * k, 2 * k) = block;
  return realify(c);
}

}  // namespace

AmbientSpace build_ambient(int m) {
  if (m < 3) throw Error(ErrorKind::InvalidM, "m must be at least 3, got " + std::to_string(m));
  using namespace std::complex_literals;
  AmbientSpace amb;
  amb.m = m;
  amb.dim = 4 * m;
  amb.J = realify(1.0i * Eigen::MatrixXcd::Identity(2 * m, 2 * m));
  Eigen::Matrix2cd j1;
  j1 << 1.0i, 0.0, 0.0, -1.0i;
  Eigen::Matrix2cd j2;
  j2 << 0.0, 1.0, -1.0, 0.0;
  amb.triple[0] = on_c2_factor(j1, m);
  amb.triple[1] = on_c2_factor(j2, m);
  amb.triple[2] = amb.triple[0] * amb.triple[1];
  return amb;
}

AmbientSpace rotate_triple(const AmbientSpace& amb, const TripleRotation& rot) {
  AmbientSpace out = amb;
  const Eigen::Matrix3d& r = rot.matrix();
  for (int a = 0; a < 3; ++a) {
    out.triple[a] = r(a, 0) * amb.triple[0] + r(a, 1) * amb.triple[1] + r(a, 2) * amb.triple[2];
  }
  out.rotation = amb.rotation.then(rot);
  return out;
}

Vector curvature(const AmbientSpace& amb, const Vector& x, const Vector& y, const Vector& z) {
  if (x.size() != amb.dim || y.size() != amb.dim || z.size() != amb.dim) {
    throw Error(ErrorKind::DimensionMismatch, "curvature arguments must have length 4m");
  }
  // Constant-curvature part.
  Vector out = y.dot(z) * x - x.dot(z) * y;

  const Vector jx = amb.J * x;
  const Vector jy = amb.J * y;
  out += jy.dot(z) * jx - jx.dot(z) * jy - 2.0 * jx.dot(y) * (amb.J * z);

  for (int a = 0; a < 3; ++a) {
    const LinOp& ja = amb.triple[a];
    const Vector jax = ja * x;
    const Vector jay = ja * y;
    out += jay.dot(z) * jax - jax.dot(z) * jay - 2.0 * jax.dot(y) * (ja * z);

    const LinOp jja = amb.j_ja(a);
    const Vector jjax = jja * x;
    const Vector jjay = jja * y;
    out += jjay.dot(z) * jjax - jjax.dot(z) * jjay;
  }
  return out;
}

NamedResiduals axiom_residuals(const AmbientSpace& amb) {
  const auto n = amb.dim;
  const LinOp id = LinOp::Identity(n, n);
  auto maxabs = [](const LinOp& m) { return m.cwiseAbs().maxCoeff(); };

  NamedResiduals out;
  out.emplace_back("J^2=-1", maxabs(amb.J * amb.J + id));
  out.emplace_back("J_isometry", maxabs(amb.J.transpose() * amb.J - id));
  for (int a = 0; a < 3; ++a) {
    const std::string s = std::to_string(a + 1);
    const LinOp& ja = amb.triple[a];
    const LinOp& jb = amb.triple[next(a, 1)];
    const LinOp& jc = amb.triple[next(a, 2)];
    out.emplace_back("J" + s + "^2=-1", maxabs(ja * ja + id));
    out.emplace_back("J" + s + "_isometry", maxabs(ja.transpose() * ja - id));
    out.emplace_back("J" + s + "J" + std::to_string(next(a, 1) + 1) + "=J" +
                         std::to_string(next(a, 2) + 1),
                     maxabs(ja * jb - jc));
    out.emplace_back("J" + std::to_string(next(a, 1) + 1) + "J" + s + "=-J" +
                         std::to_string(next(a, 2) + 1),
                     maxabs(jb * ja + jc));
    out.emplace_back("JJ" + s + "=J" + s + "J", maxabs(amb.J * ja - ja * amb.J));
    out.emplace_back("Trace(JJ" + s + ")=0", std::abs(amb.j_ja(a).trace()));
  }
  return out;
}

}  // namespace g2lab
