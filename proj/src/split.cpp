#include "drgsplit/split.hpp"

#include <algorithm>

#include "drgsplit/errors.hpp"

namespace drgsplit {

namespace {

Matrix concat(const std::vector<const Subspace*>& parts, int ambient) {
  int cols = 0;
  for (const auto* p : parts) cols += p->dim();
  Matrix cat(ambient, cols);
  int at = 0;
  for (const auto* p : parts) {
    cat.middleCols(at, p->dim()) = p->basis();
    at += p->dim();
  }
  return cat;
}

std::vector<Subspace> running_sums(const std::vector<Subspace>& pieces, bool reverse,
                                   const ToleranceProfile& tol) {
  const int m = static_cast<int>(pieces.size());
  const int n = pieces.front().ambient();
  std::vector<Subspace> out;
  std::vector<const Subspace*> acc;
  for (int t = 0; t < m; ++t) {
    acc.push_back(&pieces[reverse ? m - 1 - t : t]);
    out.push_back(span(concat(acc, n), tol));
  }
  return out;
}

bool is_direction_pair(const SplitGrid& a, const SplitGrid& b, Direction mu, Direction nu) {
  auto flip = [](Direction d) { return d == Direction::Down ? Direction::Up : Direction::Down; };
  return a.mu == mu && a.nu == nu && b.mu == flip(mu) && b.nu == flip(nu);
}

}  // namespace

SplitContext::SplitContext(const AssociationScheme& scheme, const DualStructure& dual,
                           const ToleranceProfile& tol)
    : n_(scheme.n), diameter_(scheme.diameter), tol_(tol) {
  if (dual.diameter() != diameter_)
    throw Error(ErrorCode::InvalidArgument, "dual structure does not match scheme diameter");
  std::vector<Subspace> subconstituents, eigenspaces;
  for (int i = 0; i <= diameter_; ++i) {
    Matrix coords(n_, 0);
    std::vector<int> members;
    for (int y = 0; y < n_; ++y)
      if (dual.estar[i](y) != 0.0) members.push_back(y);
    coords = Matrix::Zero(n_, static_cast<Eigen::Index>(members.size()));
    for (std::size_t c = 0; c < members.size(); ++c) coords(members[c], static_cast<Eigen::Index>(c)) = 1.0;
    subconstituents.push_back(Subspace::from_orthonormal(std::move(coords), tol));
    eigenspaces.push_back(span(scheme.idempotents[i], tol, 1.0));
  }
  star_prefix_ = running_sums(subconstituents, false, tol);
  star_suffix_ = running_sums(subconstituents, true, tol);
  eigen_prefix_ = running_sums(eigenspaces, false, tol);
  eigen_suffix_ = running_sums(eigenspaces, true, tol);
}

const Subspace& SplitContext::star_sum(Direction dir, int i) const {
  if (i < 0 || i > diameter_) throw Error(ErrorCode::IndexOutOfRange, "star_sum index out of range");
  return dir == Direction::Down ? star_prefix_[i] : star_suffix_[i];
}

const Subspace& SplitContext::eigen_sum(Direction dir, int j) const {
  if (j < 0 || j > diameter_) throw Error(ErrorCode::IndexOutOfRange, "eigen_sum index out of range");
  return dir == Direction::Down ? eigen_prefix_[j] : eigen_suffix_[j];
}

Subspace v_munu(Direction mu, Direction nu, int i, int j, const SplitContext& ctx) {
  const int D = ctx.diameter();
  if (i < -1 || j < -1 || i > D || j > D)
    throw Error(ErrorCode::IndexOutOfRange,
                "V index (" + std::to_string(i) + "," + std::to_string(j) + ") outside -1.." + std::to_string(D));
  if (i == -1 || j == -1) return Subspace::zero(ctx.ambient(), ctx.tol());
  return intersect(ctx.star_sum(mu, i), ctx.eigen_sum(nu, j));
}

Subspace tilde_v(Direction mu, Direction nu, int i, int j, const SplitContext& ctx) {
  const int D = ctx.diameter();
  if (i < 0 || j < 0 || i > D || j > D)
    throw Error(ErrorCode::IndexOutOfRange, "tilde V index out of range");
  const Subspace inner = sum(v_munu(mu, nu, i - 1, j, ctx), v_munu(mu, nu, i, j - 1, ctx));
  return complement_within(v_munu(mu, nu, i, j, ctx), inner);
}

int SplitGrid::total_dim() const {
  int t = 0;
  for (int v : dims) t += v;
  return t;
}

int grid_rank(const SplitGrid& grid, const ToleranceProfile& tol) {
  std::vector<const Subspace*> parts;
  for (const auto& s : grid.tilde) parts.push_back(&s);
  const int n = grid.tilde.empty() ? 0 : grid.tilde.front().ambient();
  return numerical_rank(concat(parts, n), tol);
}

SplitGrid split_grid(Direction mu, Direction nu, const SplitContext& ctx) {
  const int D = ctx.diameter();
  const int m = D + 1;
  // v[(i+1)*(m+1) + (j+1)] holds V_{i,j} for -1 <= i,j <= D.
  std::vector<Subspace> v(static_cast<std::size_t>(m + 1) * (m + 1));
  auto at = [&](int i, int j) -> Subspace& { return v[static_cast<std::size_t>(i + 1) * (m + 1) + (j + 1)]; };
  for (int i = -1; i <= D; ++i)
    for (int j = -1; j <= D; ++j) at(i, j) = v_munu(mu, nu, i, j, ctx);

  SplitGrid grid;
  grid.mu = mu;
  grid.nu = nu;
  grid.diameter = D;
  for (int i = 0; i <= D; ++i)
    for (int j = 0; j <= D; ++j) {
      const Subspace inner = sum(at(i - 1, j), at(i, j - 1));
      grid.tilde.push_back(complement_within(at(i, j), inner));
      grid.dims.push_back(grid.tilde.back().dim());
    }
  const int total = grid.total_dim();
  const int rank = grid_rank(grid, ctx.tol());
  if (total != ctx.ambient() || rank != ctx.ambient())
    throw Error(ErrorCode::DirectSumViolation,
                std::string("split grid ") + split_label(mu, nu) + ": dimensions sum to " +
                    std::to_string(total) + " with rank " + std::to_string(rank) + ", expected " +
                    std::to_string(ctx.ambient()));
  return grid;
}

const char* dual_pair_label(DualPair p) noexcept { return p == DualPair::DdUu ? "dd_uu" : "du_ud"; }

DualityReport verify_duality(const SplitGrid& grid_a, const SplitGrid& grid_b,
                             const ToleranceProfile& tol) {
  const SplitGrid* a = &grid_a;
  const SplitGrid* b = &grid_b;
  if (a->mu == Direction::Up) std::swap(a, b);
  DualityReport r;
  if (is_direction_pair(*a, *b, Direction::Down, Direction::Down))
    r.pair = DualPair::DdUu;
  else if (is_direction_pair(*a, *b, Direction::Down, Direction::Up))
    r.pair = DualPair::DuUd;
  else
    throw Error(ErrorCode::PairMismatch, std::string("grids ") + split_label(grid_a.mu, grid_a.nu) +
                                             " and " + split_label(grid_b.mu, grid_b.nu) +
                                             " are not a dual pair");
  if (a->diameter != b->diameter) throw Error(ErrorCode::PairMismatch, "grids differ in diameter");
  const int D = a->diameter;
  for (int i = 0; i <= D; ++i)
    for (int j = 0; j <= D; ++j)
      for (int rr = 0; rr <= D; ++rr)
        for (int s = 0; s <= D; ++s) {
          const double value = max_inner_product(a->at(i, j), b->at(rr, s));
          if (i + rr == D && j + s == D) {
            if (value > r.exempt_max) {
              r.exempt_max = value;
              r.exempt_witness[0] = i, r.exempt_witness[1] = j, r.exempt_witness[2] = rr, r.exempt_witness[3] = s;
            }
            continue;
          }
          ++r.checked;
          if (r.witness[0] < 0 || value > r.worst_offdiagonal) {
            r.worst_offdiagonal = value;
            r.witness[0] = i, r.witness[1] = j, r.witness[2] = rr, r.witness[3] = s;
          }
        }
  r.orthogonal = r.worst_offdiagonal <= tol.eps_orth;
  r.dim_corollary_ok = true;
  for (int i = 0; i <= D; ++i)
    for (int j = 0; j <= D; ++j)
      if (a->dim(i, j) != b->dim(D - i, D - j)) r.dim_corollary_ok = false;
  return r;
}

std::optional<int> module_piece_for_cell(Direction mu, Direction nu, int i, int j, int rho, int tau,
                                         int d, int diameter) {
  const int D = diameter;
  if (mu == Direction::Down) {
    const int h = i - rho;
    const int want_tau = nu == Direction::Down ? i + j - rho - d : rho + D - i - j;
    if (rho <= i && d >= i - rho && tau == want_tau) return h;
  } else {
    const int h = rho + d - D + i;
    const int want_tau = nu == Direction::Down ? i + j + rho - D : 2 * D - rho - d - i - j;
    if (rho <= D - i && d >= D - rho - i && tau == want_tau) return h;
  }
  return std::nullopt;
}

std::pair<int, int> cell_for_module_piece(Direction mu, Direction nu, int h, int rho, int tau, int d,
                                          int diameter) {
  const int i = mu == Direction::Down ? rho + h : diameter - rho - d + h;
  const int j = nu == Direction::Down ? tau + d - h : diameter - tau - h;
  return {i, j};
}

ReconstructionReport verify_module_reconstruction(const SplitGrid& grid,
                                                  const std::vector<TModuleRecord>& modules,
                                                  double tolerance) {
  ReconstructionReport r;
  r.mu = grid.mu;
  r.nu = grid.nu;
  const int D = grid.diameter;
  const int n = grid.tilde.front().ambient();
  const ToleranceProfile& tol = grid.tilde.front().tol();
  std::vector<ModuleSplit> splits;
  splits.reserve(modules.size());
  for (const auto& w : modules) splits.push_back(module_split(w, grid.mu, grid.nu));
  for (int i = 0; i <= D; ++i)
    for (int j = 0; j <= D; ++j) {
      std::vector<const Subspace*> parts;
      for (std::size_t k = 0; k < modules.size(); ++k) {
        const auto& w = modules[k];
        if (auto h = module_piece_for_cell(grid.mu, grid.nu, i, j, w.rho, w.tau, w.d, D))
          parts.push_back(&splits[k].pieces[*h]);
      }
      const Subspace predicted = span(concat(parts, n), tol);
      const double dist = subspace_distance(predicted, grid.at(i, j));
      if (r.worst_cell[0] < 0 || dist > r.worst_distance) {
        r.worst_distance = dist;
        r.worst_cell[0] = i, r.worst_cell[1] = j;
      }
    }
  r.passed = r.worst_distance <= tolerance;
  return r;
}

}  // namespace drgsplit
