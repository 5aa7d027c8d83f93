#include "drgsplit/tmodule.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "drgsplit/errors.hpp"
#include "drgsplit/random.hpp"

namespace drgsplit {

namespace {

constexpr int kMaxAttempts = 8;

// Eigenvectors of a symmetric matrix grouped into clusters whose consecutive
// eigenvalues differ by at most `gap`.
struct Cluster {
  Matrix vectors;
  double value = 0;
};

std::vector<Cluster> eigen_clusters(const Matrix& sym, double eps_eig) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  const Vector& values = solver.eigenvalues();
  const Matrix& vectors = solver.eigenvectors();
  const Eigen::Index n = values.size();
  std::vector<Cluster> out;
  if (n == 0) return out;
  const double gap = eps_eig * std::max(std::abs(values(0)), std::abs(values(n - 1)));
  Eigen::Index start = 0;
  for (Eigen::Index t = 1; t <= n; ++t) {
    if (t == n || values(t) - values(t - 1) > gap) {
      out.push_back({vectors.middleCols(start, t - start), values.segment(start, t - start).mean()});
      start = t;
    }
  }
  return out;
}

double operator_scale(const Matrix& a, const Matrix& astar) {
  return std::max({1.0, a.cwiseAbs().maxCoeff(), astar.cwiseAbs().maxCoeff()});
}

// max column norm of (I - BB^T) M B, relative to the operator scale.
double invariance_residual(const Matrix& b, const Matrix& a, const Matrix& astar) {
  if (b.cols() == 0) return 0.0;
  double worst = 0;
  for (const Matrix* op : {&a, &astar}) {
    const Matrix image = (*op) * b;
    const Matrix residual = image - b * (b.transpose() * image);
    worst = std::max(worst, residual.colwise().norm().maxCoeff());
  }
  return worst / operator_scale(a, astar);
}

Vector random_unit(int k, SplitMix64& rng) {
  Vector v(k);
  for (int t = 0; t < k; ++t) v(t) = rng.symmetric();
  return v / v.norm();
}

bool is_irreducible(const Matrix& b, const Matrix& a, const Matrix& astar, SplitMix64& rng,
                    const ToleranceProfile& tol, bool* closure_spans = nullptr,
                    int* commutant_dim = nullptr) {
  const Matrix ra = b.transpose() * a * b;
  const Matrix rs = b.transpose() * astar * b;
  const int k = static_cast<int>(b.cols());
  const Subspace reach = closure(ra, rs, random_unit(k, rng), tol);
  const int cdim = static_cast<int>(commutant(ra, rs, tol).size());
  if (closure_spans) *closure_spans = reach.dim() == k;
  if (commutant_dim) *commutant_dim = cdim;
  return reach.dim() == k && cdim == 1;
}

Subspace sum_range(const std::vector<Subspace>& slices, int first, int last, int ambient,
                   const ToleranceProfile& tol) {
  if (first > last) return Subspace::zero(ambient, tol);
  int cols = 0;
  for (int t = first; t <= last; ++t) cols += slices[t].dim();
  Matrix cat(ambient, cols);
  int at = 0;
  for (int t = first; t <= last; ++t) {
    cat.middleCols(at, slices[t].dim()) = slices[t].basis();
    at += slices[t].dim();
  }
  return span(cat, tol);
}

}  // namespace

const char* split_label(Direction mu, Direction nu) noexcept {
  if (mu == Direction::Down) return nu == Direction::Down ? "dd" : "du";
  return nu == Direction::Down ? "ud" : "uu";
}

std::vector<Matrix> commutant(const Matrix& a, const Matrix& astar, const ToleranceProfile& tol) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || astar.rows() != n || astar.cols() != n)
    throw Error(ErrorCode::InvalidArgument, "commutant: operators must be square and equal size");
  if (n == 0) return {};

  const std::vector<Cluster> blocks = eigen_clusters(astar, tol.eps_eig);
  Matrix u(n, n);
  std::vector<Eigen::Index> offset, size;
  Eigen::Index unknowns = 0, at = 0;
  std::vector<Eigen::Index> var_offset;
  for (const auto& c : blocks) {
    u.middleCols(at, c.vectors.cols()) = c.vectors;
    offset.push_back(at);
    size.push_back(c.vectors.cols());
    var_offset.push_back(unknowns);
    at += c.vectors.cols();
    unknowns += c.vectors.cols() * c.vectors.cols();
  }
  const Matrix ar = u.transpose() * a * u;
  const double skip = tol.eps_rank * std::max(1.0, ar.cwiseAbs().maxCoeff());

  // Rows for X_i A_ij - A_ij X_j = 0 with vec() column-major:
  //   vec(X_i A_ij) = (A_ij^T kron I_ki) vec(X_i)
  //   vec(A_ij X_j) = (I_kj kron A_ij) vec(X_j)
  const int m = static_cast<int>(blocks.size());
  Eigen::Index rows = 0;
  std::vector<std::pair<int, int>> active;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const auto block = ar.block(offset[i], offset[j], size[i], size[j]);
      if (block.cwiseAbs().maxCoeff() > skip) {
        active.emplace_back(i, j);
        rows += size[i] * size[j];
      }
    }
  Matrix system = Matrix::Zero(std::max<Eigen::Index>(rows, 1), unknowns);
  Eigen::Index row = 0;
  for (auto [i, j] : active) {
    const Matrix aij = ar.block(offset[i], offset[j], size[i], size[j]);
    const Eigen::Index ki = size[i], kj = size[j];
    // entry (r, c) of X_i A_ij - A_ij X_j, r < ki, c < kj
    for (Eigen::Index c = 0; c < kj; ++c)
      for (Eigen::Index r = 0; r < ki; ++r) {
        const Eigen::Index eq = row + c * ki + r;
        for (Eigen::Index s = 0; s < ki; ++s)  // (X_i)_{r s} (A_ij)_{s c}
          system(eq, var_offset[i] + s * ki + r) += aij(s, c);
        for (Eigen::Index s = 0; s < kj; ++s)  // (A_ij)_{r s} (X_j)_{s c}
          system(eq, var_offset[j] + c * kj + s) -= aij(r, s);
      }
    row += ki * kj;
  }

  Vector sv;
  Matrix v;
  {
    Eigen::BDCSVD<Matrix> svd(system, Eigen::ComputeFullV);
    sv = svd.singularValues();
    v = svd.matrixV();
  }
  // BDCSVD occasionally returns NaN on highly degenerate spectra.
  if (!sv.allFinite() || !v.allFinite()) {
    Eigen::JacobiSVD<Matrix> svd(system, Eigen::ComputeFullV);
    sv = svd.singularValues();
    v = svd.matrixV();
  }
  const double cutoff = tol.eps_rank * std::max(sv.size() ? sv(0) : 0.0, 1.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;

  std::vector<Matrix> basis;
  basis.reserve(unknowns - rank);
  for (Eigen::Index col = rank; col < unknowns; ++col) {
    Matrix blockdiag = Matrix::Zero(n, n);
    for (int i = 0; i < m; ++i)
      blockdiag.block(offset[i], offset[i], size[i], size[i]) =
          Eigen::Map<const Matrix>(v.col(col).data() + var_offset[i], size[i], size[i]);
    basis.push_back(u * blockdiag * u.transpose());
  }
  return basis;
}

Subspace closure(const Matrix& a, const Matrix& astar, const Matrix& start,
                 const ToleranceProfile& tol) {
  const Eigen::Index n = a.rows();
  const double threshold = tol.eps_rank * operator_scale(a, astar);
  Matrix q(n, 0);
  std::vector<Vector> frontier;
  auto absorb = [&](Vector w) {
    const double before = w.norm();
    if (before == 0.0) return;
    for (int pass = 0; pass < 2; ++pass)
      if (q.cols() > 0) w -= q * (q.transpose() * w);
    if (w.norm() <= threshold * std::max(before, 1.0)) return;
    if (q.cols() == n) return;
    w.normalize();
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = w;
    frontier.push_back(std::move(w));
  };
  for (Eigen::Index c = 0; c < start.cols(); ++c) absorb(start.col(c));
  while (!frontier.empty()) {
    const Vector v = std::move(frontier.back());
    frontier.pop_back();
    absorb(a * v);
    absorb(astar * v);
  }
  return Subspace::from_orthonormal(std::move(q), tol);
}

Decomposition decompose_standard_module(const Matrix& a, const Matrix& astar, std::uint64_t seed,
                                        const ToleranceProfile& tol) {
  const std::vector<Matrix> basis = commutant(a, astar, tol);
  Decomposition out;
  out.seed = seed;
  out.commutant_dim = static_cast<int>(basis.size());
  std::string last_reason = "empty commutant";
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    SplitMix64 rng(seed + static_cast<std::uint64_t>(attempt));
    Matrix s = Matrix::Zero(a.rows(), a.cols());
    for (const auto& m : basis) s += rng.symmetric() * m;
    s = 0.5 * (s + s.transpose()).eval();

    std::vector<Subspace> modules;
    bool ok = !basis.empty();
    for (const auto& c : eigen_clusters(s, tol.eps_eig)) {
      const double residual = invariance_residual(c.vectors, a, astar);
      if (residual > tol.guard()) {
        last_reason = "candidate not invariant (residual " + std::to_string(residual) + ")";
        ok = false;
        break;
      }
      if (!is_irreducible(c.vectors, a, astar, rng, tol)) {
        last_reason = "candidate of dimension " + std::to_string(c.vectors.cols()) + " is reducible";
        ok = false;
        break;
      }
      modules.push_back(Subspace::from_orthonormal(c.vectors, tol));
    }
    if (ok) {
      out.modules = std::move(modules);
      out.attempts = attempt + 1;
      return out;
    }
  }
  throw Error(ErrorCode::DecompositionFailed,
              "module decomposition failed after " + std::to_string(kMaxAttempts) +
                  " attempts: " + last_reason + "; tighten eps_eig or change the seed");
}

ModuleParameters module_parameters(const Subspace& w, const std::vector<Vector>& estar,
                                   const std::vector<Matrix>& e, const ToleranceProfile& tol) {
  auto support = [&](auto&& slice_dim, int count, const char* what) {
    std::vector<int> idx;
    for (int i = 0; i < count; ++i)
      if (slice_dim(i) > 0) idx.push_back(i);
    if (idx.empty()) throw Error(ErrorCode::NonContiguousSupport, std::string(what) + " support is empty");
    if (idx.back() - idx.front() + 1 != static_cast<int>(idx.size()))
      throw Error(ErrorCode::NonContiguousSupport, std::string(what) + " support has a gap");
    return std::pair{idx.front(), static_cast<int>(idx.size()) - 1};
  };
  const int m = static_cast<int>(estar.size());
  auto [rho, d] = support(
      [&](int i) { return span(estar[i].asDiagonal() * w.basis(), tol, 1.0).dim(); }, m, "E*");
  auto [tau, dual_d] =
      support([&](int i) { return span(e[i] * w.basis(), tol, 1.0).dim(); }, m, "E");
  return {rho, tau, d, dual_d};
}

TModuleRecord make_module_record(const Subspace& w, const std::vector<Vector>& estar,
                                 const std::vector<Matrix>& e, const ToleranceProfile& tol) {
  const ModuleParameters p = module_parameters(w, estar, e, tol);
  TModuleRecord r;
  r.basis = w;
  r.rho = p.rho;
  r.tau = p.tau;
  r.d = p.d;
  r.dual_d = p.dual_d;
  for (int h = 0; h <= p.d; ++h)
    r.estar_slices.push_back(span(estar[p.rho + h].asDiagonal() * w.basis(), tol, 1.0));
  for (int h = 0; h <= p.dual_d; ++h)
    r.e_slices.push_back(span(e[p.tau + h] * w.basis(), tol, 1.0));
  return r;
}

ModuleSet extract_modules(const AssociationScheme& scheme, const DualStructure& dual,
                          std::uint64_t seed, const ToleranceProfile& tol) {
  const Matrix astar = dual.astar_matrix();
  Decomposition dec = decompose_standard_module(scheme.adjacency(), astar, seed, tol);
  ModuleSet out;
  out.seed = dec.seed;
  out.attempts = dec.attempts;
  out.commutant_dim = dec.commutant_dim;
  for (const auto& w : dec.modules)
    out.modules.push_back(make_module_record(w, dual.estar, scheme.idempotents, tol));
  std::stable_sort(out.modules.begin(), out.modules.end(), [](const auto& x, const auto& y) {
    return std::tuple(x.rho, x.tau, x.d, x.dim()) < std::tuple(y.rho, y.tau, y.d, y.dim());
  });
  return out;
}

double TdPairReport::max_violation() const {
  return std::max({max_estar_violation, max_e_violation, invariance_residual, slice_sum_distance});
}

TdPairReport verify_td_pair(const TModuleRecord& w, const Matrix& a, const Matrix& astar,
                            int diameter, const ToleranceProfile& tol) {
  TdPairReport r;
  const int n = w.basis.ambient();
  auto tridiagonal = [](const std::vector<Subspace>& slices, const Matrix& op) {
    double worst = 0;
    for (std::size_t i = 0; i < slices.size(); ++i)
      for (std::size_t j = 0; j < slices.size(); ++j) {
        if ((i > j ? i - j : j - i) <= 1 || slices[i].is_zero() || slices[j].is_zero()) continue;
        worst = std::max(worst, (slices[j].basis().transpose() * op * slices[i].basis()).norm());
      }
    return worst;
  };
  r.max_estar_violation = tridiagonal(w.estar_slices, a);
  r.max_e_violation = tridiagonal(w.e_slices, astar);
  r.invariance_residual = invariance_residual(w.basis.basis(), a, astar);
  r.slice_sum_distance = std::max(
      subspace_distance(w.basis, sum_range(w.estar_slices, 0, static_cast<int>(w.estar_slices.size()) - 1, n, tol)),
      subspace_distance(w.basis, sum_range(w.e_slices, 0, static_cast<int>(w.e_slices.size()) - 1, n, tol)));
  SplitMix64 rng(0x7d5a3c1e9b2f4086ULL + static_cast<std::uint64_t>(w.dim()));
  r.irreducible = is_irreducible(w.basis.basis(), a, astar, rng, tol, &r.closure_spans,
                                 &r.restricted_commutant_dim);
  r.diameter_matches = w.d == w.dual_d;
  r.contiguous = w.rho + w.d <= diameter && w.tau + w.dual_d <= diameter;
  r.passed = r.max_violation() <= tol.eps_orth && r.irreducible && r.diameter_matches && r.contiguous;
  return r;
}

ModuleSplit module_split(const TModuleRecord& w, Direction mu, Direction nu) {
  if (w.d != w.dual_d)
    throw Error(ErrorCode::NonContiguousSupport, "module diameter differs from dual diameter");
  const int d = w.d;
  const int n = w.basis.ambient();
  const ToleranceProfile& tol = w.basis.tol();
  ModuleSplit out{mu, nu, {}};
  for (int h = 0; h <= d; ++h) {
    const Subspace star = mu == Direction::Down ? sum_range(w.estar_slices, 0, h, n, tol)
                                                : sum_range(w.estar_slices, d - h, d, n, tol);
    const Subspace eig = nu == Direction::Down ? sum_range(w.e_slices, 0, d - h, n, tol)
                                               : sum_range(w.e_slices, h, d, n, tol);
    out.pieces.push_back(intersect(star, eig));
  }
  int total = 0;
  for (const auto& p : out.pieces) total += p.dim();
  Matrix cat(n, total);
  int at = 0;
  for (const auto& p : out.pieces) {
    cat.middleCols(at, p.dim()) = p.basis();
    at += p.dim();
  }
  if (total != w.dim() || numerical_rank(cat, tol) != w.dim())
    throw Error(ErrorCode::DirectSumViolation,
                std::string("module split ") + split_label(mu, nu) + " has pieces of total dimension " +
                    std::to_string(total) + " for a module of dimension " + std::to_string(w.dim()));
  return out;
}

ModuleOrthogonalityReport verify_module_orthogonality(const TModuleRecord& w,
                                                      const ToleranceProfile& tol) {
  ModuleOrthogonalityReport r;
  const int d = w.d;
  const auto dd = module_split(w, Direction::Down, Direction::Down);
  const auto uu = module_split(w, Direction::Up, Direction::Up);
  const auto du = module_split(w, Direction::Down, Direction::Up);
  const auto ud = module_split(w, Direction::Up, Direction::Down);
  for (int h = 0; h <= d; ++h)
    for (int l = 0; l <= d; ++l) {
      if (h + l == d) continue;
      r.max_dd_uu = std::max(r.max_dd_uu, max_inner_product(dd.pieces[h], uu.pieces[l]));
      r.max_du_ud = std::max(r.max_du_ud, max_inner_product(du.pieces[h], ud.pieces[l]));
    }
  r.passed = std::max(r.max_dd_uu, r.max_du_ud) <= tol.eps_orth;
  return r;
}

}  // namespace drgsplit
