#pragma once

// Structures induced on a real hypersurface at one point by its unit normal.
//
// Operators and vectors live in an orthonormal frame of the tangent space
// T = N^perp (dimension 4m - 1); `frame` maps frame coordinates to ambient
// coordinates. eta and eta_a are not stored; they are g(., xi) and g(., xi_a).

#include <array>
#include <string>

#include "g2lab/ambient.hpp"
#include "g2lab/numeric.hpp"
#include "g2lab/random.hpp"

namespace g2lab {

struct HypersurfacePoint {
  AmbientSpace ambient;
  Vector normal;  // ambient coordinates
  LinOp frame;    // 4m x (4m - 1)

  Vector xi;
  LinOp phi;
  std::array<Vector, 3> xi_a;
  std::array<LinOp, 3> phi_a;
  std::array<LinOp, 3> theta_a;      // phi_a phi - xi_a (x) eta
  std::array<LinOp, 3> theta_alt_a;  // phi phi_a - xi (x) eta_a

  Subspace d_perp;  // span{xi_1, xi_2, xi_3}
  Subspace d;
  Subspace h_perp;  // span{xi, xi_a, phi xi_a}, rank-detected
  Subspace h;

  Eigen::Index tangent_dim() const { return frame.cols(); }
  double eta(const Vector& x) const { return xi.dot(x); }
  double eta_a(int a, const Vector& x) const { return xi_a[a].dot(x); }
  Vector phi_xi(int a) const { return phi * xi_a[a]; }
  Vector lift(const Vector& x) const { return frame * x; }
};

/// Rank threshold used when orthonormalizing the spanning list of H^perp.
inline constexpr double kHperpRankTol = 1e-8;

/// Throws NotUnit when | ||N|| - 1 | > 1e-12, DimensionMismatch on length.
HypersurfacePoint induce(const AmbientSpace& amb, const Vector& normal);

struct StructureReport {
  NamedResiduals residuals;
  bool pass = true;

  void add(std::string name, double residual) { residuals.emplace_back(std::move(name), residual); }
  /// Sets pass from every residual against tol.identity_tol.
  void finalize(const Tolerance& tol);
  double worst() const;
  /// Name of the first residual above threshold, or "" when none.
  std::string first_failure(double threshold) const;
};

StructureReport verify_structure_relations(const HypersurfacePoint& hp, const Tolerance& tol = {});

/// Items (a)-(g) for the symmetric tensors theta_a, with phi xi_a read as
/// the tangential part of J xi_a.
StructureReport verify_lemma24(const HypersurfacePoint& hp, const Tolerance& tol = {});

struct ThetaSplit {
  Subspace plus;   // H_a(+1)
  Subspace minus;  // H_a(-1)
};

/// +1 / -1 eigenspaces of theta_a restricted to H. Throws SpectrumLeak if
/// theta_a|_H has an eigenvalue further than eig_gap from +-1.
ThetaSplit theta_eigenspaces(const HypersurfacePoint& hp, int a, const Tolerance& tol = {});

/// The eigenspace properties on H: spectrum {+-1}, equal even dimensions,
/// phi preserves H_a(eps), phi_b and theta_b (b != a) swap H_a(+-1).
StructureReport verify_lemma25(const HypersurfacePoint& hp, const Tolerance& tol = {});

struct HperpClass {
  Eigen::Index dim = 0;
  double xi_gap = 0.0;  // || xi - proj_{D^perp} xi ||
  bool xi_in_d_perp = false;
  bool consistent = false;  // (dim == 3) == xi_in_d_perp
};

HperpClass classify_hperp(const HypersurfacePoint& hp, const Tolerance& tol = {});

/// Gauss equation R(X, Y)Z on T for a symmetric shape operator A.
Vector gauss_curvature(const HypersurfacePoint& hp, const LinOp& shape, const Vector& x,
                       const Vector& y, const Vector& z);

/// Right-hand side of the Codazzi equation, (nabla_X A)Y - (nabla_Y A)X.
Vector codazzi_rhs(const HypersurfacePoint& hp, const Vector& x, const Vector& y);

/// Copy of hp with uniform [-delta, delta] noise added to phi_a (and theta_a
/// recomputed from it). Used as a negative control.
HypersurfacePoint with_jittered_phi(const HypersurfacePoint& hp, int a, double delta, Rng& rng);

}  // namespace g2lab
