#pragma once

#include <cstdint>
#include <random>

#include "g2lab/numeric.hpp"

namespace g2lab {

/// The single seeded generator every randomized suite draws from.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

  Vector normal_vector(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  /// Uniform on the unit sphere (normalized Gaussian).
  Vector unit_vector(Eigen::Index n) {
    Vector v = normal_vector(n);
    while (v.norm() == 0.0) v = normal_vector(n);
    return v / v.norm();
  }

  LinOp symmetric(Eigen::Index n) {
    LinOp g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) g(i, j) = normal();
    return 0.5 * (g + g.transpose());
  }

  /// Entries uniform in [-delta, delta].
  LinOp jitter(Eigen::Index rows, Eigen::Index cols, double delta) {
    LinOp g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = uniform(-delta, delta);
    return g;
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace g2lab
