#include <doctest.h>

#include <array>

#include "drgsplit/errors.hpp"
#include "drgsplit/split.hpp"
#include "drgsplit/tmodule.hpp"
#include "fixtures.hpp"

using namespace drgsplit;

namespace {

constexpr std::array<std::array<Direction, 2>, 4> kSplits = {{{Direction::Down, Direction::Down},
                                                               {Direction::Down, Direction::Up},
                                                               {Direction::Up, Direction::Down},
                                                               {Direction::Up, Direction::Up}}};

std::vector<SplitGrid> all_grids(const fixture::Setup& s) {
  const SplitContext ctx(s.ordered, s.dual, s.tol);
  std::vector<SplitGrid> out;
  for (auto [mu, nu] : kSplits) out.push_back(split_grid(mu, nu, ctx));
  return out;
}

}  // namespace

TEST_CASE("V spaces at the edges of the index range") {
  const auto s = fixture::q3();
  const SplitContext ctx(s->ordered, s->dual, s->tol);
  for (auto [mu, nu] : kSplits) {
    for (int j = -1; j <= 3; ++j) CHECK(v_munu(mu, nu, -1, j, ctx).dim() == 0);
    for (int i = -1; i <= 3; ++i) CHECK(v_munu(mu, nu, i, -1, ctx).dim() == 0);
    CHECK(v_munu(mu, nu, 3, 3, ctx).dim() == 8);
  }
  const Subspace v03 = v_munu(Direction::Down, Direction::Down, 0, 3, ctx);
  CHECK(v03.dim() == 1);
  CHECK(std::abs(std::abs(v03.basis()(0, 0)) - 1.0) <= 1e-12);
  ErrorCode code = ErrorCode::Ok;
  try {
    v_munu(Direction::Down, Direction::Down, 4, 0, ctx);
  } catch (const Error& e) {
    code = e.code();
  }
  CHECK(code == ErrorCode::IndexOutOfRange);
}

TEST_CASE("tilde V cells are orthogonal to the lower V spaces and form a direct sum") {
  for (const auto& c : fixture::small_corpus()) {
    CAPTURE(c.name);
    const auto s = fixture::make(c.family, c.params);
    const SplitContext ctx(s->ordered, s->dual, s->tol);
    const int D = s->ordered.diameter;
    for (auto [mu, nu] : kSplits) {
      const SplitGrid grid = split_grid(mu, nu, ctx);
      CHECK(grid.total_dim() == s->graph.size());
      CHECK(grid_rank(grid, s->tol) == s->graph.size());
      for (int i = 0; i <= D; ++i)
        for (int j = 0; j <= D; ++j) {
          const Subspace& cell = grid.at(i, j);
          CHECK(max_inner_product(cell, v_munu(mu, nu, i - 1, j, ctx)) <= 1e-8);
          CHECK(max_inner_product(cell, v_munu(mu, nu, i, j - 1, ctx)) <= 1e-8);
          CHECK(subspace_distance(cell, tilde_v(mu, nu, i, j, ctx)) <= 1e-8);
        }
    }
  }
}

TEST_CASE("duality theorem and dimension corollary") {
  for (const auto& c : fixture::small_corpus()) {
    CAPTURE(c.name);
    const auto s = fixture::make(c.family, c.params);
    const auto g = all_grids(*s);
    const auto dd_uu = verify_duality(g[0], g[3], s->tol);
    const auto du_ud = verify_duality(g[1], g[2], s->tol);
    const int D = s->ordered.diameter;
    for (const auto& r : {dd_uu, du_ud}) {
      CHECK(r.orthogonal);
      CHECK(r.worst_offdiagonal <= 1e-8);
      CHECK(r.dim_corollary_ok);
      const int m = D + 1;
      CHECK(r.checked == static_cast<long>(m) * m * m * m - m * m);
    }
    CHECK(dd_uu.pair == DualPair::DdUu);
    CHECK(du_ud.pair == DualPair::DuUd);
    for (int i = 0; i <= D; ++i)
      for (int j = 0; j <= D; ++j) {
        CHECK(g[0].dim(i, j) == g[3].dim(D - i, D - j));
        CHECK(g[1].dim(i, j) == g[2].dim(D - i, D - j));
      }
  }
}

TEST_CASE("the exemption in the duality theorem is not vacuous on Q_3") {
  const auto s = fixture::q3();
  const auto g = all_grids(*s);
  const auto r = verify_duality(g[0], g[3], s->tol);
  CHECK(r.exempt_max > 1e-3);
  CHECK(r.exempt_witness[0] + r.exempt_witness[2] == 3);
  CHECK(r.exempt_witness[1] + r.exempt_witness[3] == 3);
}

TEST_CASE("duality pairing is order-insensitive and rejects mismatched grids") {
  const auto s = fixture::q3();
  const auto g = all_grids(*s);
  const auto ab = verify_duality(g[0], g[3], s->tol);
  const auto ba = verify_duality(g[3], g[0], s->tol);
  CHECK(ab.worst_offdiagonal == ba.worst_offdiagonal);
  CHECK(ab.pair == ba.pair);
  ErrorCode code = ErrorCode::Ok;
  try {
    verify_duality(g[0], g[1], s->tol);
  } catch (const Error& e) {
    code = e.code();
  }
  CHECK(code == ErrorCode::PairMismatch);
}

TEST_CASE("piece-to-cell and cell-to-piece index rules agree") {
  for (int D = 3; D <= 6; ++D)
    for (auto [mu, nu] : kSplits)
      for (int d = 0; d <= D; ++d)
        for (int rho = 0; rho + d <= D; ++rho)
          for (int tau = 0; tau + d <= D; ++tau) {
            int hits = 0;
            for (int i = 0; i <= D; ++i)
              for (int j = 0; j <= D; ++j)
                if (auto h = module_piece_for_cell(mu, nu, i, j, rho, tau, d, D)) {
                  ++hits;
                  REQUIRE(*h >= 0);
                  REQUIRE(*h <= d);
                  CHECK(cell_for_module_piece(mu, nu, *h, rho, tau, d, D) == std::pair{i, j});
                }
            // Each piece lands in exactly one cell, inside the grid.
            CHECK(hits == d + 1);
            for (int h = 0; h <= d; ++h) {
              auto [i, j] = cell_for_module_piece(mu, nu, h, rho, tau, d, D);
              CHECK(i >= 0);
              CHECK(i <= D);
              CHECK(j >= 0);
              CHECK(j <= D);
            }
          }
}

TEST_CASE("primary module pieces sit on the anti-diagonal of each grid") {
  const int D = 4;
  for (auto [mu, nu] : kSplits)
    for (int h = 0; h <= D; ++h) {
      auto [i, j] = cell_for_module_piece(mu, nu, h, 0, 0, D, D);
      CHECK(i == h);
      CHECK(j == D - h);
    }
}

TEST_CASE("grid dimensions are predicted by the modules and reconstructed from their pieces") {
  for (const auto& c : fixture::small_corpus()) {
    CAPTURE(c.name);
    const auto s = fixture::make(c.family, c.params);
    const auto grids = all_grids(*s);
    const auto set = extract_modules(s->ordered, s->dual, 5, s->tol);
    const int D = s->ordered.diameter;
    for (const auto& grid : grids) {
      CAPTURE(split_label(grid.mu, grid.nu));
      std::vector<int> predicted((D + 1) * (D + 1), 0);
      for (const auto& w : set.modules) {
        const auto split = module_split(w, grid.mu, grid.nu);
        for (int h = 0; h <= w.d; ++h) {
          auto [i, j] = cell_for_module_piece(grid.mu, grid.nu, h, w.rho, w.tau, w.d, D);
          predicted[i * (D + 1) + j] += split.pieces[h].dim();
        }
      }
      CHECK(predicted == grid.dims);
      const auto r = verify_module_reconstruction(grid, set.modules, 1e-7);
      CHECK(r.passed);
      CHECK(r.worst_distance <= 1e-7);
    }
  }
}

TEST_CASE("dims tables do not depend on the base vertex of a distance-transitive graph") {
  for (const auto& c : fixture::small_corpus()) {
    CAPTURE(c.name);
    const auto a = fixture::make(c.family, c.params, 0);
    const auto b = fixture::make(c.family, c.params, 5);
    const auto ga = all_grids(*a), gb = all_grids(*b);
    for (std::size_t t = 0; t < ga.size(); ++t) CHECK(ga[t].dims == gb[t].dims);
  }
}

TEST_CASE("Q_3 dims table") {
  const auto s = fixture::q3();
  const auto g = all_grids(*s);
  const std::vector<int> anti = {0, 0, 0, 1, 0, 0, 3, 0, 0, 3, 0, 0, 1, 0, 0, 0};
  CHECK(g[0].dims == anti);
  for (const auto& grid : g) CHECK(grid.total_dim() == 8);
}
