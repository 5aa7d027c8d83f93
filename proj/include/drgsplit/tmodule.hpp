#pragma once

#include <cstdint>
#include <vector>

#include "drgsplit/dual.hpp"
#include "drgsplit/linalg.hpp"
#include "drgsplit/scheme.hpp"
#include "drgsplit/subspace.hpp"
#include "drgsplit/tolerance.hpp"

namespace drgsplit {

enum class Direction { Down, Up };

/// "dd", "du", "ud", "uu": first letter is the E* side, second the E side.
const char* split_label(Direction mu, Direction nu) noexcept;

/// Frobenius-orthonormal basis of {M : MA = AM, MA* = A*M}.
///
/// M must be block diagonal over the eigenspaces of A*, so the unknowns are
/// the diagonal blocks X_i and the remaining equations are
/// X_i A_ij - A_ij X_j = 0 on the blocks of A in A*'s eigenbasis.
std::vector<Matrix> commutant(const Matrix& a, const Matrix& astar, const ToleranceProfile& tol);

/// Span of all words in {A, A*} applied to the columns of `start`.
Subspace closure(const Matrix& a, const Matrix& astar, const Matrix& start,
                 const ToleranceProfile& tol);

struct Decomposition {
  std::vector<Subspace> modules;
  std::uint64_t seed = 0;
  int attempts = 0;
  int commutant_dim = 0;
};

/// Splits R^n into irreducible modules for the algebra generated by A and A*
/// using the eigenspaces of a pseudo-random symmetric commutant element.
/// Attempt k (k = 0..7) draws its coefficients from splitmix64(seed + k).
/// Throws DecompositionFailed when every attempt yields a candidate that is
/// not invariant or not irreducible.
Decomposition decompose_standard_module(const Matrix& a, const Matrix& astar, std::uint64_t seed,
                                        const ToleranceProfile& tol);

struct ModuleParameters {
  int rho = 0;
  int tau = 0;
  int d = 0;
  int dual_d = 0;
};

struct TModuleRecord {
  Subspace basis;
  int rho = 0;
  int tau = 0;
  int d = 0;
  int dual_d = 0;
  std::vector<Subspace> estar_slices;  // E*_{rho+h} W, h = 0..d
  std::vector<Subspace> e_slices;      // E_{tau+h} W, h = 0..dual_d

  int dim() const noexcept { return basis.dim(); }
};

/// Throws NonContiguousSupport when either support has a hole.
ModuleParameters module_parameters(const Subspace& w, const std::vector<Vector>& estar,
                                   const std::vector<Matrix>& e, const ToleranceProfile& tol);

TModuleRecord make_module_record(const Subspace& w, const std::vector<Vector>& estar,
                                 const std::vector<Matrix>& e, const ToleranceProfile& tol);

/// Decompose and describe every module, sorted by (rho, tau, d, dim).
struct ModuleSet {
  std::vector<TModuleRecord> modules;
  std::uint64_t seed = 0;
  int attempts = 0;
  int commutant_dim = 0;
};

ModuleSet extract_modules(const AssociationScheme& scheme, const DualStructure& dual,
                          std::uint64_t seed, const ToleranceProfile& tol);

struct TdPairReport {
  double max_estar_violation = 0;  // A on E*-slices, |i-j| > 1
  double max_e_violation = 0;      // A* on E-slices, |i-j| > 1
  double invariance_residual = 0;  // AW, A*W inside W
  double slice_sum_distance = 0;   // W vs sum of E*-slices and vs sum of E-slices
  bool closure_spans = false;      // random vector generates W
  int restricted_commutant_dim = 0;
  bool irreducible = false;        // closure_spans && commutant is scalars
  bool diameter_matches = false;   // d == dual diameter
  bool contiguous = false;         // rho + d <= D, tau + d <= D
  bool passed = false;

  double max_violation() const;
};

TdPairReport verify_td_pair(const TModuleRecord& w, const Matrix& a, const Matrix& astar,
                            int diameter, const ToleranceProfile& tol);

struct ModuleSplit {
  Direction mu = Direction::Down;
  Direction nu = Direction::Down;
  std::vector<Subspace> pieces;  // W^{mu nu}_0..W^{mu nu}_d
};

/// Throws DirectSumViolation when the pieces do not add up to W.
ModuleSplit module_split(const TModuleRecord& w, Direction mu, Direction nu);

struct ModuleOrthogonalityReport {
  double max_dd_uu = 0;
  double max_du_ud = 0;
  bool passed = false;
};

ModuleOrthogonalityReport verify_module_orthogonality(const TModuleRecord& w,
                                                      const ToleranceProfile& tol);

}  // namespace drgsplit
