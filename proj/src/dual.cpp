#include "drgsplit/dual.hpp"

#include <algorithm>
#include <cmath>

#include "drgsplit/errors.hpp"

namespace drgsplit {

namespace {

void check_base(int base, int n) {
  if (base < 0 || base >= n)
    throw Error(ErrorCode::VertexOutOfRange,
                "base vertex " + std::to_string(base) + " outside 0.." + std::to_string(n - 1));
}

}  // namespace

std::vector<Vector> dual_idempotents(const Graph& g, const DistanceData& d, int base) {
  const int n = g.size();
  check_base(base, n);
  std::vector<Vector> out(d.diameter + 1, Vector::Zero(n));
  for (int y = 0; y < n; ++y) out[d(base, y)](y) = 1.0;
  return out;
}

DualDistance dual_distance_matrices(const AssociationScheme& scheme, const DistanceData& d, int base,
                                    const ToleranceProfile& tol) {
  const int n = scheme.n;
  const int m = scheme.diameter + 1;
  check_base(base, n);
  DualDistance out;
  out.astar_all.reserve(m);
  for (int i = 0; i < m; ++i)
    out.astar_all.push_back(static_cast<double>(n) * scheme.idempotents[i].row(base).transpose());
  // n E_0 = J, so A*_0 is exactly I once rounded.
  for (int y = 0; y < n; ++y) {
    double& v = out.astar_all[0](y);
    if (std::abs(v - 1.0) <= tol.guard()) v = 1.0;
  }

  const Vector& a1 = out.astar_all[1];
  std::vector<double> lo(m, INFINITY), hi(m, -INFINITY), sum(m, 0.0);
  std::vector<int> count(m, 0);
  for (int y = 0; y < n; ++y) {
    const int i = d(base, y);
    lo[i] = std::min(lo[i], a1(y));
    hi[i] = std::max(hi[i], a1(y));
    sum[i] += a1(y);
    ++count[i];
  }
  out.theta_star.resize(m);
  for (int i = 0; i < m; ++i) {
    if (hi[i] - lo[i] > tol.guard())
      throw Error(ErrorCode::NonConstantOnSubconstituent,
                  "A*_1 spreads by " + std::to_string(hi[i] - lo[i]) + " on subconstituent " +
                      std::to_string(i));
    out.theta_star[i] = sum[i] / count[i];
  }
  return out;
}

DualStructure build_dual(const Graph& g, const DistanceData& d, const AssociationScheme& scheme,
                         int base, const ToleranceProfile& tol) {
  DualStructure s;
  s.base = base;
  s.estar = dual_idempotents(g, d, base);
  auto dd = dual_distance_matrices(scheme, d, base, tol);
  s.astar_all = std::move(dd.astar_all);
  s.theta_star = std::move(dd.theta_star);
  s.subconstituent.resize(g.size());
  for (int y = 0; y < g.size(); ++y) s.subconstituent[y] = d(base, y);
  return s;
}

TridiagonalReport verify_tridiagonal_relations(const AssociationScheme& scheme,
                                               const DualStructure& dual,
                                               const ToleranceProfile& tol) {
  const int m = scheme.diameter + 1;
  const Matrix& a = scheme.adjacency();
  TridiagonalReport r;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (std::abs(i - j) <= 1) continue;
      const Matrix block = dual.estar[j].asDiagonal() * a * dual.estar[i].asDiagonal();
      r.max_astar_violation = std::max(r.max_astar_violation, block.norm());
      const Matrix dual_block =
          scheme.idempotents[j] * dual.astar().asDiagonal() * scheme.idempotents[i];
      r.max_a_violation = std::max(r.max_a_violation, dual_block.norm());
    }
  r.passed = r.max_astar_violation <= tol.eps_orth && r.max_a_violation <= tol.eps_orth;
  return r;
}

}  // namespace drgsplit
