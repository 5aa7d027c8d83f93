#pragma once

#include <optional>
#include <vector>

#include "drgsplit/dual.hpp"
#include "drgsplit/scheme.hpp"
#include "drgsplit/subspace.hpp"
#include "drgsplit/tmodule.hpp"

namespace drgsplit {

/// Prefix and suffix sums of the subconstituents E*_iV and eigenspaces E_iV,
/// built once per (scheme, base vertex).
class SplitContext {
 public:
  SplitContext(const AssociationScheme& scheme, const DualStructure& dual,
               const ToleranceProfile& tol);

  int diameter() const noexcept { return diameter_; }
  int ambient() const noexcept { return n_; }
  const ToleranceProfile& tol() const noexcept { return tol_; }

  /// E*_0V + ... + E*_iV (Down) or E*_DV + ... + E*_{D-i}V (Up), 0 <= i <= D.
  const Subspace& star_sum(Direction dir, int i) const;
  /// E_0V + ... + E_jV (Down) or E_DV + ... + E_{D-j}V (Up), 0 <= j <= D.
  const Subspace& eigen_sum(Direction dir, int j) const;

 private:
  int n_ = 0;
  int diameter_ = 0;
  ToleranceProfile tol_;
  std::vector<Subspace> star_prefix_, star_suffix_, eigen_prefix_, eigen_suffix_;
};

/// V^{mu nu}_{i,j} for -1 <= i,j <= D; zero when i or j is -1.
Subspace v_munu(Direction mu, Direction nu, int i, int j, const SplitContext& ctx);

/// Orthogonal complement of V_{i-1,j} + V_{i,j-1} inside V_{i,j}.
Subspace tilde_v(Direction mu, Direction nu, int i, int j, const SplitContext& ctx);

struct SplitGrid {
  Direction mu = Direction::Down;
  Direction nu = Direction::Down;
  int diameter = 0;
  std::vector<Subspace> tilde;  // row-major (D+1) x (D+1)
  std::vector<int> dims;

  const Subspace& at(int i, int j) const { return tilde[static_cast<std::size_t>(i) * (diameter + 1) + j]; }
  int dim(int i, int j) const { return dims[static_cast<std::size_t>(i) * (diameter + 1) + j]; }
  int total_dim() const;
};

/// Builds every cell and checks the direct sum: dimensions add up to n and
/// the concatenated bases have rank n. Throws DirectSumViolation otherwise.
SplitGrid split_grid(Direction mu, Direction nu, const SplitContext& ctx);

/// Numerical rank of all cell bases side by side.
int grid_rank(const SplitGrid& grid, const ToleranceProfile& tol);

enum class DualPair { DdUu, DuUd };
const char* dual_pair_label(DualPair p) noexcept;

struct DualityReport {
  DualPair pair = DualPair::DdUu;
  double worst_offdiagonal = 0;  // over quadruples with i+r != D or j+s != D
  int witness[4] = {-1, -1, -1, -1};
  double exempt_max = 0;  // over quadruples with i+r = D and j+s = D
  int exempt_witness[4] = {-1, -1, -1, -1};
  long checked = 0;
  bool orthogonal = false;
  bool dim_corollary_ok = false;
};

/// grid_a must be (dd) or (du) and grid_b its partner (uu) or (ud); the
/// arguments may also be given in the other order. Throws PairMismatch.
DualityReport verify_duality(const SplitGrid& grid_a, const SplitGrid& grid_b,
                             const ToleranceProfile& tol);

/// Which piece h of a module (rho, tau, d) lands in cell (i, j) of the (mu, nu)
/// grid, by the module-sum index rules; nullopt when none does.
std::optional<int> module_piece_for_cell(Direction mu, Direction nu, int i, int j, int rho, int tau,
                                         int d, int diameter);

/// Cell that piece h of a module lands in (inverse of the above).
std::pair<int, int> cell_for_module_piece(Direction mu, Direction nu, int h, int rho, int tau, int d,
                                          int diameter);

struct ReconstructionReport {
  Direction mu = Direction::Down;
  Direction nu = Direction::Down;
  double worst_distance = 0;
  int worst_cell[2] = {-1, -1};
  bool passed = false;
};

/// Rebuilds each cell as the sum of the module pieces assigned to it and
/// compares with the grid cell (projector Frobenius distance).
ReconstructionReport verify_module_reconstruction(const SplitGrid& grid,
                                                  const std::vector<TModuleRecord>& modules,
                                                  double tolerance);

}  // namespace drgsplit
