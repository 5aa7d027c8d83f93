#pragma once

#include <utility>

#include "drgsplit/linalg.hpp"
#include "drgsplit/tolerance.hpp"

namespace drgsplit {

/// Subspace of R^n held as an n x k column-orthonormal basis. The zero
/// subspace has k = 0. Values are immutable; every operation returns a new
/// subspace carrying the tolerance profile of its (left) argument.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(int ambient, const ToleranceProfile& tol);
  static Subspace full(int ambient, const ToleranceProfile& tol);
  /// Adopts `basis` as-is; the caller guarantees orthonormal columns.
  static Subspace from_orthonormal(Matrix basis, const ToleranceProfile& tol);

  int ambient() const noexcept { return static_cast<int>(basis_.rows()); }
  int dim() const noexcept { return static_cast<int>(basis_.cols()); }
  bool is_zero() const noexcept { return dim() == 0; }
  const Matrix& basis() const noexcept { return basis_; }
  const ToleranceProfile& tol() const noexcept { return tol_; }
  Matrix projector() const { return basis_ * basis_.transpose(); }

 private:
  Subspace(Matrix basis, const ToleranceProfile& tol) : basis_(std::move(basis)), tol_(tol) {}
  Matrix basis_;
  ToleranceProfile tol_;
};

/// Column space of `vectors`. Singular values below eps_rank * scale are
/// dropped, where scale defaults to the largest singular value. Pass an
/// explicit scale (e.g. 1 for images of an orthonormal basis) when the input
/// may be pure round-off.
Subspace span(const Matrix& vectors, const ToleranceProfile& tol, double scale = 0.0);

Subspace sum(const Subspace& u, const Subspace& w);

/// Orthogonal complement in R^n.
Subspace complement(const Subspace& u);

/// U cap W computed as (U^perp + W^perp)^perp.
Subspace intersect(const Subspace& u, const Subspace& w);

/// Orthogonal complement of `inner` inside `parent`. Throws NotContained when
/// inner is not inside parent up to the guard tolerance.
Subspace complement_within(const Subspace& parent, const Subspace& inner);

/// Image of the basis under `op`, spanned with scale 1.
Subspace apply(const Matrix& op, const Subspace& u);

/// max |B_U^T B_W|; orthogonal when that is <= eps_orth.
std::pair<bool, double> is_orthogonal(const Subspace& u, const Subspace& w);

/// max |B_U^T B_W| without the verdict.
double max_inner_product(const Subspace& u, const Subspace& w);

/// ||P_U - P_W||_F.
double subspace_distance(const Subspace& u, const Subspace& w);

/// Largest column residual ||(I - P_parent) b|| over the basis of `inner`.
double containment_residual(const Subspace& parent, const Subspace& inner);

/// Numerical rank of the concatenated bases (eps_rank relative to sigma_max).
int numerical_rank(const Matrix& m, const ToleranceProfile& tol);

}  // namespace drgsplit
