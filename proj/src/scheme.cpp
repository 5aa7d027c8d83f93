#include "drgsplit/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "drgsplit/errors.hpp"

namespace drgsplit {

double KreinTable::max_abs() const {
  double m = 0;
  for (double v : table) m = std::max(m, std::abs(v));
  return m;
}

KreinTable KreinTable::permuted(const Permutation& sigma) const {
  KreinTable out;
  out.diameter = diameter;
  out.table.resize(table.size());
  for (int h = 0; h <= diameter; ++h)
    for (int i = 0; i <= diameter; ++i)
      for (int j = 0; j <= diameter; ++j) out.q(h, i, j) = q(sigma[h], sigma[i], sigma[j]);
  return out;
}

std::vector<Matrix> distance_matrices(const Graph& g, const DistanceData& d) {
  const int n = g.size();
  std::vector<Matrix> out(d.diameter + 1, Matrix::Zero(n, n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) out[d(x, y)](x, y) = 1.0;
  return out;
}

std::vector<double> eigenvalues(const IntersectionNumbers& p, const ToleranceProfile& tol) {
  // The quotient matrix is diagonally similar to the symmetric tridiagonal
  // matrix with off-diagonal sqrt(b_i c_{i+1}).
  const int m = p.diameter + 1;
  Matrix sym = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    sym(i, i) = static_cast<double>(p.a(i));
    if (i + 1 < m) {
      const double off = std::sqrt(static_cast<double>(p.b(i)) * static_cast<double>(p.c(i + 1)));
      sym(i, i + 1) = off;
      sym(i + 1, i) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  std::vector<double> theta(solver.eigenvalues().data(), solver.eigenvalues().data() + m);
  std::sort(theta.begin(), theta.end(), std::greater<>());
  const double gap = tol.eps_eig * static_cast<double>(p.valency());
  for (int i = 0; i + 1 < m; ++i)
    if (theta[i] - theta[i + 1] <= gap)
      throw Error(ErrorCode::EigenvalueCollision,
                  "eigenvalues " + std::to_string(theta[i]) + " and " + std::to_string(theta[i + 1]) +
                      " closer than eps_eig * k");
  return theta;
}

std::vector<Matrix> primitive_idempotents(const Matrix& adjacency, const std::vector<double>& theta,
                                          const ToleranceProfile& tol) {
  const Eigen::Index n = adjacency.rows();
  const Matrix identity = Matrix::Identity(n, n);
  std::vector<Matrix> out;
  out.reserve(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    Matrix e = identity;
    for (std::size_t j = 0; j < theta.size(); ++j) {
      if (j == i) continue;
      e = (e * (adjacency - theta[j] * identity)) / (theta[i] - theta[j]);
    }
    e = 0.5 * (e + e.transpose()).eval();
    const double defect = (e * e - e).norm();
    if (!(defect <= tol.guard()))
      throw Error(ErrorCode::ConditioningFailure,
                  "||E_" + std::to_string(i) + "^2 - E_" + std::to_string(i) +
                      "|| = " + std::to_string(defect));
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<int> multiplicities(const std::vector<Matrix>& idempotents) {
  std::vector<int> mult;
  mult.reserve(idempotents.size());
  for (const auto& e : idempotents) mult.push_back(static_cast<int>(std::lround(e.trace())));
  return mult;
}

KreinTable krein_parameters(const std::vector<Matrix>& idempotents, const std::vector<int>& mult) {
  const int m = static_cast<int>(idempotents.size());
  const double n = static_cast<double>(idempotents.front().rows());
  KreinTable k;
  k.diameter = m - 1;
  k.table.assign(static_cast<std::size_t>(m) * m * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      const Matrix hadamard = idempotents[i].cwiseProduct(idempotents[j]);
      for (int h = 0; h < m; ++h) {
        // trace(X E_h) with E_h symmetric is the Frobenius inner product.
        const double value = n * hadamard.cwiseProduct(idempotents[h]).sum() / mult[h];
        k.q(h, i, j) = value;
        k.q(h, j, i) = value;
      }
    }
  return k;
}

bool is_qpolynomial(const KreinTable& krein, double zero_threshold) {
  const int D = krein.diameter;
  for (int h = 0; h <= D; ++h)
    for (int i = 0; i <= D; ++i)
      for (int j = 0; j <= D; ++j) {
        const bool zero = std::abs(krein.q(h, i, j)) <= zero_threshold;
        const int largest = std::max({h, i, j});
        const int others = h + i + j - largest;
        if (largest > others && !zero) return false;
        if (largest == others && zero) return false;
      }
  return true;
}

QPolyOrderings find_qpoly_orderings(const KreinTable& krein, const ToleranceProfile& tol) {
  const int D = krein.diameter;
  QPolyOrderings result;
  result.zero_threshold = tol.eps_zero * krein.max_abs();
  result.smallest_nonzero = std::numeric_limits<double>::infinity();
  for (double v : krein.table) {
    const double a = std::abs(v);
    if (a <= result.zero_threshold)
      result.largest_zero = std::max(result.largest_zero, a);
    else
      result.smallest_nonzero = std::min(result.smallest_nonzero, a);
  }
  auto nonzero = [&](int h, int i, int j) { return std::abs(krein.q(h, i, j)) > result.zero_threshold; };

  Permutation sigma(D + 1, -1);
  std::vector<bool> used(D + 1, false);
  sigma[0] = 0;
  used[0] = true;
  // Chain positions: sigma[t+1] must satisfy q^{sigma[t+1]}_{sigma[1], sigma[t]} != 0.
  std::function<void(int)> extend = [&](int t) {
    if (t == D) {
      if (is_qpolynomial(krein.permuted(sigma), result.zero_threshold))
        result.orderings.push_back(sigma);
      return;
    }
    for (int b = 1; b <= D; ++b) {
      if (used[b]) continue;
      if (t >= 1 && !nonzero(b, sigma[1], sigma[t])) continue;
      sigma[t + 1] = b;
      used[b] = true;
      extend(t + 1);
      used[b] = false;
      sigma[t + 1] = -1;
    }
  };
  extend(0);
  std::sort(result.orderings.begin(), result.orderings.end());
  return result;
}

namespace {

AssociationScheme assemble(const Graph& g, const DistanceData& d, std::vector<double> theta,
                           const ToleranceProfile& tol) {
  AssociationScheme s;
  s.n = g.size();
  s.diameter = d.diameter;
  s.distance = distance_matrices(g, d);
  s.theta = std::move(theta);
  s.idempotents = primitive_idempotents(s.adjacency(), s.theta, tol);
  s.mult = multiplicities(s.idempotents);
  s.order.resize(s.diameter + 1);
  std::iota(s.order.begin(), s.order.end(), 0);
  return s;
}

}  // namespace

AssociationScheme build_scheme(const Graph& g, const DistanceData& d, const IntersectionNumbers& p,
                               const ToleranceProfile& tol) {
  AssociationScheme s = assemble(g, d, eigenvalues(p, tol), tol);
  s.krein = krein_parameters(s.idempotents, s.mult);
  s.qpoly = find_qpoly_orderings(s.krein, tol);
  return s;
}

AssociationScheme build_scheme_from_cache(const Graph& g, const DistanceData& d,
                                          std::vector<double> theta, KreinTable krein,
                                          QPolyOrderings qpoly, const ToleranceProfile& tol) {
  if (static_cast<int>(theta.size()) != d.diameter + 1 || krein.diameter != d.diameter)
    throw Error(ErrorCode::Parse, "cached scheme does not match graph diameter");
  AssociationScheme s = assemble(g, d, std::move(theta), tol);
  s.krein = std::move(krein);
  s.qpoly = std::move(qpoly);
  return s;
}

AssociationScheme with_ordering(const AssociationScheme& s, const Permutation& sigma) {
  const int m = s.diameter + 1;
  if (static_cast<int>(sigma.size()) != m)
    throw Error(ErrorCode::InvalidArgument, "ordering has wrong length");
  AssociationScheme out = s;
  for (int i = 0; i < m; ++i) {
    out.theta[i] = s.theta[sigma[i]];
    out.idempotents[i] = s.idempotents[sigma[i]];
    out.mult[i] = s.mult[sigma[i]];
    out.order[i] = s.order[sigma[i]];
  }
  out.krein = s.krein.permuted(sigma);
  return out;
}

}  // namespace drgsplit
