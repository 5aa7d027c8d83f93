#pragma once

#include <vector>

#include "drgsplit/graph.hpp"
#include "drgsplit/linalg.hpp"
#include "drgsplit/tolerance.hpp"

namespace drgsplit {

using Permutation = std::vector<int>;

/// Krein parameters q^h_{ij}, 0 <= h,i,j <= D.
struct KreinTable {
  int diameter = 0;
  std::vector<double> table;  // index [h][i][j]

  double q(int h, int i, int j) const {
    const int m = diameter + 1;
    return table[(static_cast<std::size_t>(h) * m + i) * m + j];
  }
  double& q(int h, int i, int j) {
    const int m = diameter + 1;
    return table[(static_cast<std::size_t>(h) * m + i) * m + j];
  }
  double max_abs() const;
  /// Table relabeled by sigma: result.q(h,i,j) = q(sigma[h], sigma[i], sigma[j]).
  KreinTable permuted(const Permutation& sigma) const;
};

/// Result of the Q-polynomial search. The margin fields expose how close the
/// zero/nonzero split came to the eps_zero threshold.
struct QPolyOrderings {
  std::vector<Permutation> orderings;  // sorted lexicographically
  double zero_threshold = 0;
  double largest_zero = 0;      // max |q| classified as zero
  double smallest_nonzero = 0;  // min |q| classified as nonzero
};

/// Bose-Mesner algebra of a distance-regular graph.
///
/// Idempotents, eigenvalues, multiplicities and the Krein table are stored in
/// the order given by `order`, a permutation of the descending-eigenvalue
/// labeling (order[i] = descending index of the i-th idempotent). The
/// Q-polynomial orderings are always expressed relative to descending order.
struct AssociationScheme {
  int n = 0;
  int diameter = 0;
  std::vector<Matrix> distance;     // A_0..A_D
  std::vector<double> theta;        // eigenvalues
  std::vector<Matrix> idempotents;  // E_0..E_D
  std::vector<int> mult;
  KreinTable krein;
  QPolyOrderings qpoly;
  Permutation order;

  const Matrix& adjacency() const { return distance.at(1); }
};

std::vector<Matrix> distance_matrices(const Graph& g, const DistanceData& d);

/// Spectrum of the tridiagonal quotient matrix with rows (c_i, a_i, b_i),
/// sorted descending. Throws EigenvalueCollision when two values are closer
/// than eps_eig * k.
std::vector<double> eigenvalues(const IntersectionNumbers& p, const ToleranceProfile& tol);

/// E_i = prod_{j != i} (A - theta_j I) / (theta_i - theta_j), symmetrized.
/// Throws ConditioningFailure if ||E_i^2 - E_i||_F exceeds the guard tolerance.
std::vector<Matrix> primitive_idempotents(const Matrix& adjacency, const std::vector<double>& theta,
                                          const ToleranceProfile& tol);

/// m_i = rank E_i, read as the rounded trace.
std::vector<int> multiplicities(const std::vector<Matrix>& idempotents);

/// q^h_{ij} = n * trace((E_i o E_j) E_h) / m_h.
KreinTable krein_parameters(const std::vector<Matrix>& idempotents, const std::vector<int>& mult);

/// Does the table (in its current labeling) satisfy the full triangle rule?
bool is_qpolynomial(const KreinTable& krein, double zero_threshold);

/// All permutations sigma with sigma[0] = 0 under which the relabeled table is
/// Q-polynomial. Empty result means the scheme is not Q-polynomial.
QPolyOrderings find_qpoly_orderings(const KreinTable& krein, const ToleranceProfile& tol);

/// Full pipeline: distance matrices, quotient eigenvalues, idempotents,
/// multiplicities, Krein table, orderings. Result is in descending order.
AssociationScheme build_scheme(const Graph& g, const DistanceData& d, const IntersectionNumbers& p,
                               const ToleranceProfile& tol);

/// Rebuild from previously computed eigenvalues/Krein data (cache path).
AssociationScheme build_scheme_from_cache(const Graph& g, const DistanceData& d,
                                          std::vector<double> theta, KreinTable krein,
                                          QPolyOrderings qpoly, const ToleranceProfile& tol);

/// Copy of a descending-order scheme relabeled by sigma.
AssociationScheme with_ordering(const AssociationScheme& s, const Permutation& sigma);

}  // namespace drgsplit
