#include "g2lab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace g2lab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidM: return "InvalidM";
    case ErrorKind::NotRotation: return "NotRotation";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::SpectrumLeak: return "SpectrumLeak";
    case ErrorKind::RadiusOutOfRange: return "RadiusOutOfRange";
    case ErrorKind::DegenerateEigenspace: return "DegenerateEigenspace";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::InvalidTolerance: return "InvalidTolerance";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

void Tolerance::validate() const {
  if (!(identity_tol > 0.0) || !(eig_gap > 0.0) || !std::isfinite(identity_tol) ||
      !std::isfinite(eig_gap)) {
    throw Error(ErrorKind::InvalidTolerance, "tolerances must be finite and strictly positive");
  }
}

Subspace::Subspace(Eigen::Index ambient_dim) : ambient_dim_(ambient_dim), basis_(ambient_dim, 0) {}

Subspace::Subspace(Eigen::Index ambient_dim, LinOp basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  if (basis_.rows() != ambient_dim_) {
    throw Error(ErrorKind::DimensionMismatch, "subspace basis rows differ from ambient dimension");
  }
}

Subspace Subspace::span_of(const LinOp& columns, double rank_tol) {
  std::vector<Vector> vs;
  vs.reserve(static_cast<std::size_t>(columns.cols()));
  for (Eigen::Index i = 0; i < columns.cols(); ++i) vs.emplace_back(columns.col(i));
  return orthonormalize(vs, columns.rows(), rank_tol);
}

Subspace Subspace::full(Eigen::Index ambient_dim) {
  return Subspace(ambient_dim, LinOp::Identity(ambient_dim, ambient_dim));
}

double Subspace::orthonormality_defect() const {
  if (empty()) return 0.0;
  const LinOp gram = basis_.transpose() * basis_;
  return (gram - LinOp::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

double spectral_radius_sym(const LinOp& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<LinOp> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double operator_norm(const LinOp& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<LinOp> svd(a);
  return svd.singularValues()(0);
}

namespace {

void normalize_sign(Eigen::Ref<Vector> v) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12 * scale) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

// Orders columns by value, breaking exact ties lexicographically.
void sort_pairs(std::vector<double>& values, LinOp& vectors) {
  std::vector<Eigen::Index> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    if (values[i] != values[j]) return values[i] < values[j];
    for (Eigen::Index k = 0; k < vectors.rows(); ++k) {
      if (vectors(k, i) != vectors(k, j)) return vectors(k, i) > vectors(k, j);
    }
    return false;
  });
  std::vector<double> sorted_values(values.size());
  LinOp sorted_vectors(vectors.rows(), vectors.cols());
  for (std::size_t n = 0; n < order.size(); ++n) {
    sorted_values[n] = values[order[n]];
    sorted_vectors.col(static_cast<Eigen::Index>(n)) = vectors.col(order[n]);
  }
  values = std::move(sorted_values);
  vectors = std::move(sorted_vectors);
}

}  // namespace

EigenDecomposition sym_eig(const LinOp& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "sym_eig needs a square operator");
  const Eigen::Index n = a.rows();
  if (n == 0) return {{}, Subspace(0)};
  const double asym = (a - a.transpose()).norm();
  if (asym > tol.identity_tol * a.norm()) {
    throw Error(ErrorKind::NotSymmetric, "||A - A^T|| = " + std::to_string(asym));
  }
  const LinOp sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<LinOp> es(sym);
  LinOp vectors = es.eigenvectors();
  for (Eigen::Index i = 0; i < n; ++i) normalize_sign(vectors.col(i));
  std::vector<double> values(es.eigenvalues().data(), es.eigenvalues().data() + n);
  sort_pairs(values, vectors);
  return {std::move(values), Subspace(n, std::move(vectors))};
}

SimultaneousDecomposition simultaneous_diag(const LinOp& a, const LinOp& b, const Tolerance& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "simultaneous_diag operands differ in shape");
  }
  const double comm = (a * b - b * a).norm();
  if (comm > tol.identity_tol * a.norm() * b.norm()) {
    throw Error(ErrorKind::NotCommuting, "||AB - BA|| = " + std::to_string(comm));
  }
  const EigenDecomposition ea = sym_eig(a, tol);
  const Eigen::Index n = a.rows();
  if (n == 0) return {Subspace(0), {}, {}};

  double rho = 0.0;
  for (double v : ea.values) rho = std::max(rho, std::abs(v));
  const double gap = tol.gap_for(rho);

  LinOp basis(n, n);
  std::vector<double> a_values;
  std::vector<double> b_values;
  a_values.reserve(static_cast<std::size_t>(n));
  b_values.reserve(static_cast<std::size_t>(n));

  Eigen::Index begin = 0;
  while (begin < n) {
    Eigen::Index end = begin + 1;
    while (end < n && ea.values[end] - ea.values[end - 1] <= gap) ++end;
    const LinOp cluster = ea.basis.basis().middleCols(begin, end - begin);
    const EigenDecomposition eb = sym_eig(cluster.transpose() * b * cluster, tol);
    for (Eigen::Index k = 0; k < eb.basis.dim(); ++k) {
      Vector v = cluster * eb.basis.vector(k);
      normalize_sign(v);
      basis.col(begin + k) = v;
      a_values.push_back(v.dot(a * v));
      b_values.push_back(v.dot(b * v));
    }
    begin = end;
  }
  return {Subspace(n, std::move(basis)), std::move(a_values), std::move(b_values)};
}

Subspace orthocomplement(const Subspace& s) {
  const Eigen::Index n = s.ambient_dim();
  const Eigen::Index k = s.dim();
  if (k == 0) return Subspace::full(n);
  if (k >= n) return Subspace(n);
  Eigen::HouseholderQR<LinOp> qr(s.basis());
  const LinOp q = qr.householderQ() * LinOp::Identity(n, n);
  LinOp complement = q.rightCols(n - k);
  // One projection pass removes the O(eps) overlap left by the factorization.
  complement -= s.basis() * (s.basis().transpose() * complement);
  Eigen::HouseholderQR<LinOp> clean(complement);
  LinOp basis = clean.householderQ() * LinOp::Identity(n, n - k);
  for (Eigen::Index i = 0; i < basis.cols(); ++i) normalize_sign(basis.col(i));
  return Subspace(n, std::move(basis));
}

ContainmentResult subspace_image_contained(const LinOp& a, const Subspace& s, const Subspace& t,
                                           const Tolerance& tol) {
  if (a.rows() != s.ambient_dim() || a.cols() != s.ambient_dim() ||
      t.ambient_dim() != s.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "operator and subspaces must share a dimension");
  }
  ContainmentResult result;
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    result.max_leak = std::max(result.max_leak, t.distance(a * s.vector(i)));
  }
  result.contained = result.max_leak <= tol.identity_tol;
  return result;
}

Subspace orthonormalize(std::span<const Vector> vectors, Eigen::Index ambient_dim, double rank_tol) {
  std::vector<Vector> kept;
  for (const Vector& v : vectors) {
    if (v.size() != ambient_dim) {
      throw Error(ErrorKind::DimensionMismatch, "vector length differs from ambient dimension");
    }
    Vector w = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& q : kept) w -= q.dot(w) * q;
    }
    const double norm = w.norm();
    if (norm > rank_tol) kept.push_back(w / norm);
  }
  LinOp basis(ambient_dim, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) basis.col(static_cast<Eigen::Index>(i)) = kept[i];
  return Subspace(ambient_dim, std::move(basis));
}

int count_distinct(std::vector<double> values, double merge_tol) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  int count = 1;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] - values[i - 1] > merge_tol) ++count;
  }
  return count;
}

}  // namespace g2lab
