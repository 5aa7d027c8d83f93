#pragma once

#include <vector>

#include "drgsplit/graph.hpp"
#include "drgsplit/linalg.hpp"
#include "drgsplit/scheme.hpp"
#include "drgsplit/tolerance.hpp"

namespace drgsplit {

/// Dual Bose-Mesner data at a base vertex. Every matrix here is diagonal and
/// is stored as its diagonal.
struct DualStructure {
  int base = 0;
  std::vector<Vector> estar;      // E*_0..E*_D, 0/1 diagonals
  std::vector<Vector> astar_all;  // A*_0..A*_D
  std::vector<double> theta_star;
  std::vector<int> subconstituent;  // d(base, y) per vertex y

  const Vector& astar() const { return astar_all.at(1); }
  Matrix astar_matrix() const { return astar().asDiagonal(); }
  int diameter() const { return static_cast<int>(estar.size()) - 1; }
};

std::vector<Vector> dual_idempotents(const Graph& g, const DistanceData& d, int base);

struct DualDistance {
  std::vector<Vector> astar_all;
  std::vector<double> theta_star;
};

/// (A*_i)_yy = n (E_i)_{base,y}. Reads theta*_i off A*_1 on each
/// subconstituent; throws NonConstantOnSubconstituent if the values on one
/// subconstituent spread more than the guard tolerance.
DualDistance dual_distance_matrices(const AssociationScheme& scheme, const DistanceData& d, int base,
                                    const ToleranceProfile& tol);

DualStructure build_dual(const Graph& g, const DistanceData& d, const AssociationScheme& scheme,
                         int base, const ToleranceProfile& tol);

struct TridiagonalReport {
  double max_astar_violation = 0;  // max ||E*_j A E*_i||_F, |i-j| > 1
  double max_a_violation = 0;      // max ||E_j A* E_i||_F, |i-j| > 1
  bool passed = false;
};

TridiagonalReport verify_tridiagonal_relations(const AssociationScheme& scheme,
                                               const DualStructure& dual,
                                               const ToleranceProfile& tol);

}  // namespace drgsplit
