#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "drgsplit/errors.hpp"
#include "drgsplit/scheme.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace drgsplit;

TEST_CASE("distance matrices") {
  const auto s = fixture::q3();
  const auto& A = s->scheme.distance;
  const Eigen::Index n = s->scheme.n;
  CHECK(A[0] == Matrix::Identity(n, n));
  Matrix total = Matrix::Zero(n, n);
  for (const auto& a : A) total += a;
  CHECK(total == Matrix::Ones(n, n));
  // A_3 of Q_3 maps each word to its complement.
  const auto fw = oracle::floyd_warshall(s->graph);
  for (int x = 0; x < n; ++x) {
    CHECK(A[3].row(x).sum() == 1.0);
    for (int y = 0; y < n; ++y) CHECK(A[3](x, y) == (fw[x][y] == 3 ? 1.0 : 0.0));
    CHECK(A[3](x, 7 - x) == 1.0);
  }
}

TEST_CASE("eigenvalues match a dense eigensolve") {
  const auto q3 = fixture::q3();
  const std::vector<double> expect_q3 = {3, 1, -1, -3};
  for (int i = 0; i <= 3; ++i) CHECK(q3->scheme.theta[i] == doctest::Approx(expect_q3[i]).epsilon(1e-12));

  const auto c8 = fixture::make(Family::Cycle, {8});
  const auto spaces = oracle::eigenspaces(oracle::adjacency(c8->graph));
  REQUIRE(spaces.size() == c8->scheme.theta.size());
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    CHECK(std::abs(c8->scheme.theta[i] - spaces[i].value) < 1e-10);
    CHECK(std::abs(c8->scheme.theta[i] - 2 * std::cos(std::numbers::pi * static_cast<double>(i) / 4)) < 1e-10);
  }
}

TEST_CASE("multiplicities") {
  const auto q4 = fixture::make(Family::Hypercube, {4});
  CHECK(q4->scheme.mult == std::vector<int>{1, 4, 6, 4, 1});
  const auto spaces = oracle::eigenspaces(oracle::adjacency(q4->graph));
  for (std::size_t i = 0; i < spaces.size(); ++i) CHECK(spaces[i].vectors.cols() == q4->scheme.mult[i]);
  CHECK(fixture::q3()->scheme.mult[1] == 3);
}

TEST_CASE("interpolated idempotents agree with dense-eigensolve projectors") {
  for (const auto& c : fixture::small_corpus()) {
    CAPTURE(c.name);
    const auto s = fixture::make(c.family, c.params);
    const auto oracle_e = oracle::spectral_projectors(oracle::adjacency(s->graph));
    REQUIRE(oracle_e.size() == s->scheme.idempotents.size());
    const Eigen::Index n = s->scheme.n;
    Matrix total = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < oracle_e.size(); ++i) {
      CHECK((s->scheme.idempotents[i] - oracle_e[i]).norm() <= 1e-10);
      total += s->scheme.idempotents[i];
    }
    CHECK((s->scheme.idempotents[0] - Matrix::Constant(n, n, 1.0 / n)).norm() <= 1e-10);
    CHECK((total - Matrix::Identity(n, n)).norm() <= 1e-10);
  }
}

TEST_CASE("eigenvalue collisions are reported") {
  // Quotient with b_1 = c_2 = 0 splits into two copies of [[0,1],[1,0]], so
  // +1 and -1 both appear twice. No graph has this array; it exercises the
  // gap check directly.
  IntersectionNumbers p;
  p.diameter = 3;
  const int m = 4;
  p.table.assign(m * m * m, 0);
  auto set = [&](int h, int i, int j, long v) { p.table[(h * m + i) * m + j] = v; };
  set(0, 1, 1, 1);  // b_0
  set(1, 1, 0, 1);  // c_1
  set(2, 1, 3, 1);  // b_2
  set(3, 1, 2, 1);  // c_3
  ErrorCode code = ErrorCode::Ok;
  try {
    eigenvalues(p, ToleranceProfile{});
  } catch (const Error& e) {
    code = e.code();
  }
  CHECK(code == ErrorCode::EigenvalueCollision);
}

TEST_CASE("Krein parameters") {
  for (const auto& c : fixture::small_corpus()) {
    CAPTURE(c.name);
    const auto s = fixture::make(c.family, c.params);
    const auto& k = s->scheme.krein;
    const int D = s->scheme.diameter;
    for (int h = 0; h <= D; ++h)
      for (int i = 0; i <= D; ++i)
        for (int j = 0; j <= D; ++j) {
          CHECK(k.q(h, i, j) >= -1e-8);
          CHECK(std::abs(k.q(h, i, j) - k.q(h, j, i)) <= 1e-9);
          if (s->scheme.n <= 27)
            CHECK(std::abs(k.q(h, i, j) -
                           oracle::krein_entry(s->scheme.idempotents, s->scheme.mult, h, i, j)) <= 1e-9);
        }
  }
  const auto q3 = fixture::q3();
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j)
      CHECK(std::abs(q3->scheme.krein.q(0, i, j) - (i == j ? q3->scheme.mult[i] : 0.0)) <= 1e-10);
}

TEST_CASE("Q-polynomial orderings match a brute-force permutation search") {
  for (const auto& c : fixture::small_corpus()) {
    CAPTURE(c.name);
    const auto s = fixture::make(c.family, c.params);
    const auto& k = s->scheme.krein;
    const double zero = s->tol.eps_zero * k.max_abs();
    const auto brute = oracle::brute_force_qpoly(
        s->scheme.diameter, [&](int h, int i, int j) { return k.q(h, i, j); }, zero);
    CHECK(s->scheme.qpoly.orderings == brute);
    CHECK(!brute.empty());
    for (const auto& sigma : brute) CHECK(is_qpolynomial(k.permuted(sigma), zero));
    CHECK(s->scheme.qpoly.largest_zero <= zero);
    CHECK(s->scheme.qpoly.smallest_nonzero > zero);
  }
  for (long D : {3L, 4L, 5L}) {
    const auto s = fixture::make(Family::Hypercube, {D});
    Permutation identity(D + 1);
    for (int i = 0; i <= D; ++i) identity[i] = i;
    const auto& found = s->scheme.qpoly.orderings;
    CHECK(std::find(found.begin(), found.end(), identity) != found.end());
  }
}

TEST_CASE("relabeling by an ordering permutes every per-index field") {
  const auto s = fixture::make(Family::Cycle, {8});
  const Permutation sigma = s->scheme.qpoly.orderings.at(0);
  const auto o = with_ordering(s->scheme, sigma);
  CHECK(o.order == sigma);
  for (int i = 0; i <= o.diameter; ++i) {
    CHECK(o.theta[i] == s->scheme.theta[sigma[i]]);
    CHECK(o.mult[i] == s->scheme.mult[sigma[i]]);
    CHECK(o.idempotents[i] == s->scheme.idempotents[sigma[i]]);
    for (int j = 0; j <= o.diameter; ++j)
      for (int h = 0; h <= o.diameter; ++h)
        CHECK(o.krein.q(h, i, j) == s->scheme.krein.q(sigma[h], sigma[i], sigma[j]));
  }
  CHECK(is_qpolynomial(o.krein, s->tol.eps_zero * o.krein.max_abs()));
}

TEST_CASE("a shuffled ordering of Q_3 is not Q-polynomial") {
  const auto s = fixture::q3();
  const auto k = s->scheme.krein.permuted({0, 2, 1, 3});
  CHECK_FALSE(is_qpolynomial(k, s->tol.eps_zero * k.max_abs()));
}

TEST_CASE("scheme rebuilt from cached data matches the original") {
  const auto s = fixture::make(Family::Hamming, {3, 3});
  const auto back = build_scheme_from_cache(s->graph, s->dist, s->scheme.theta, s->scheme.krein,
                                            s->scheme.qpoly, s->tol);
  CHECK(back.mult == s->scheme.mult);
  for (std::size_t i = 0; i < back.idempotents.size(); ++i)
    CHECK((back.idempotents[i] - s->scheme.idempotents[i]).norm() <= 1e-12);
}
