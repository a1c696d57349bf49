#pragma once

// Tangent-space model of G2(C^{m+2}) at one point.
//
// The model is the realification of C^2 (x) C^m. Complex basis order is
// (e1 f1, e2 f1, e1 f2, e2 f2, ...) and each complex coordinate occupies an
// adjacent (re, im) pair of real coordinates. J is multiplication by i, the
// quaternionic triple acts on the C^2 factor:
//   J1 = i diag(1, -1),  J2 = [[0, 1], [-1, 0]],  J3 = J1 J2.
// Everything downstream relies only on the algebraic relations among
// (J, J1, J2, J3), never on these particular entries.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "g2lab/numeric.hpp"
#include "g2lab/random.hpp"

namespace g2lab {

inline constexpr const char* kCoordinateConvention = "c2-tensor-cm/interleaved-re-im";

/// Triple indices are 0-based internally; next(a, k) is (a + k) mod 3.
constexpr int next(int a, int k = 1) { return (a + k) % 3; }

class TripleRotation {
 public:
  TripleRotation() : r_(Eigen::Matrix3d::Identity()) {}
  /// Throws NotRotation unless R^T R = I and det R = 1 within tol.
  explicit TripleRotation(const Eigen::Matrix3d& r, double tol = 1e-12);

  static TripleRotation about_axis(int axis, double angle);
  static TripleRotation cyclic_shift(int k);
  static TripleRotation random(Rng& rng);

  const Eigen::Matrix3d& matrix() const { return r_; }
  TripleRotation then(const TripleRotation& later) const;

 private:
  Eigen::Matrix3d r_;
};

struct AmbientSpace {
  int m = 0;
  Eigen::Index dim = 0;
  LinOp J;
  std::array<LinOp, 3> triple;
  /// Accumulated rotation of the triple relative to the canonical model.
  TripleRotation rotation;

  /// J J_a, the symmetric involution paired with J_a.
  LinOp j_ja(int a) const { return J * triple[a]; }
};

AmbientSpace build_ambient(int m);

/// J'_a = sum_b R_ab J_b; J is unchanged.
AmbientSpace rotate_triple(const AmbientSpace& amb, const TripleRotation& rot);

/// Ambient curvature tensor R(X, Y)Z.
Vector curvature(const AmbientSpace& amb, const Vector& x, const Vector& y, const Vector& z);

using NamedResiduals = std::vector<std::pair<std::string, double>>;

/// Residuals of J^2 = -1, J_a^2 = -1, the quaternion relations, J J_a = J_a J,
/// Trace(J J_a) = 0 and orthogonality of J, J_a. All vanish exactly on the
/// canonical model.
NamedResiduals axiom_residuals(const AmbientSpace& amb);

}  // namespace g2lab
