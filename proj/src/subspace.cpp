#include "drgsplit/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "drgsplit/errors.hpp"

namespace drgsplit {

namespace {

void check_ambient(const Subspace& u, const Subspace& w) {
  if (u.ambient() != w.ambient())
    throw Error(ErrorCode::AmbientMismatch, "ambient dimensions " + std::to_string(u.ambient()) +
                                                " and " + std::to_string(w.ambient()) + " differ");
}

// Last (rows - k) columns of the Q factor of an n x k matrix with orthonormal
// (or nearly orthonormal) columns: an orthonormal basis of their complement.
Matrix householder_complement(const Matrix& b) {
  const Eigen::Index n = b.rows(), k = b.cols();
  if (k == 0) return Matrix::Identity(n, n);
  Eigen::HouseholderQR<Matrix> qr(b);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - k);
}

}  // namespace

Subspace Subspace::zero(int ambient, const ToleranceProfile& tol) {
  return Subspace(Matrix::Zero(ambient, 0), tol);
}

Subspace Subspace::full(int ambient, const ToleranceProfile& tol) {
  return Subspace(Matrix::Identity(ambient, ambient), tol);
}

Subspace Subspace::from_orthonormal(Matrix basis, const ToleranceProfile& tol) {
  return Subspace(std::move(basis), tol);
}

int numerical_rank(const Matrix& m, const ToleranceProfile& tol) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cutoff = tol.eps_rank * s(0);
  return static_cast<int>((s.array() > cutoff).count());
}

Subspace span(const Matrix& vectors, const ToleranceProfile& tol, double scale) {
  const Eigen::Index n = vectors.rows();
  if (vectors.cols() == 0) return Subspace::zero(static_cast<int>(n), tol);
  Eigen::JacobiSVD<Matrix> svd(vectors, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double ref = scale > 0 ? scale : (s.size() ? s(0) : 0.0);
  if (ref == 0.0) return Subspace::zero(static_cast<int>(n), tol);
  const double cutoff = tol.eps_rank * ref;
  const Eigen::Index rank = (s.array() > cutoff).count();
  return Subspace::from_orthonormal(svd.matrixU().leftCols(rank), tol);
}

Subspace sum(const Subspace& u, const Subspace& w) {
  check_ambient(u, w);
  if (u.is_zero()) return Subspace::from_orthonormal(w.basis(), u.tol());
  if (w.is_zero()) return u;
  Matrix cat(u.ambient(), u.dim() + w.dim());
  cat << u.basis(), w.basis();
  return span(cat, u.tol());
}

Subspace complement(const Subspace& u) {
  return Subspace::from_orthonormal(householder_complement(u.basis()), u.tol());
}

Subspace intersect(const Subspace& u, const Subspace& w) {
  check_ambient(u, w);
  if (u.is_zero() || w.is_zero()) return Subspace::zero(u.ambient(), u.tol());
  return complement(sum(complement(u), complement(w)));
}

double containment_residual(const Subspace& parent, const Subspace& inner) {
  check_ambient(parent, inner);
  if (inner.is_zero()) return 0.0;
  const Matrix residual =
      inner.basis() - parent.basis() * (parent.basis().transpose() * inner.basis());
  return residual.colwise().norm().maxCoeff();
}

Subspace complement_within(const Subspace& parent, const Subspace& inner) {
  check_ambient(parent, inner);
  const double residual = containment_residual(parent, inner);
  if (residual > parent.tol().guard())
    throw Error(ErrorCode::NotContained,
                "inner subspace leaves parent by " + std::to_string(residual));
  if (inner.dim() > parent.dim())
    throw Error(ErrorCode::NotContained, "inner subspace larger than parent");
  if (inner.is_zero()) return parent;
  // Coordinates of inner inside parent, then their complement in R^{dim parent}.
  const Matrix coords = parent.basis().transpose() * inner.basis();
  return Subspace::from_orthonormal(parent.basis() * householder_complement(coords), parent.tol());
}

Subspace apply(const Matrix& op, const Subspace& u) {
  if (op.cols() != u.ambient())
    throw Error(ErrorCode::AmbientMismatch, "operator size does not match subspace ambient");
  return span(op * u.basis(), u.tol(), 1.0);
}

double max_inner_product(const Subspace& u, const Subspace& w) {
  check_ambient(u, w);
  if (u.is_zero() || w.is_zero()) return 0.0;
  return (u.basis().transpose() * w.basis()).cwiseAbs().maxCoeff();
}

std::pair<bool, double> is_orthogonal(const Subspace& u, const Subspace& w) {
  const double m = max_inner_product(u, w);
  return {m <= u.tol().eps_orth, m};
}

double subspace_distance(const Subspace& u, const Subspace& w) {
  check_ambient(u, w);
  return (u.projector() - w.projector()).norm();
}

}  // namespace drgsplit
