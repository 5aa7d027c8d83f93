#include "drgsplit/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "drgsplit/dual.hpp"
#include "drgsplit/split.hpp"
#include "drgsplit/tmodule.hpp"

namespace drgsplit {

namespace {

constexpr Direction kSplits[4][2] = {{Direction::Down, Direction::Down},
                                     {Direction::Down, Direction::Up},
                                     {Direction::Up, Direction::Down},
                                     {Direction::Up, Direction::Up}};

Json status_json(ErrorCode code, const std::string& message) {
  return Json{{"code", static_cast<int>(code)}, {"name", error_name(code)}, {"message", message}};
}

Json dims_json(const SplitGrid& grid) {
  Json rows = Json::array();
  for (int i = 0; i <= grid.diameter; ++i) {
    Json row = Json::array();
    for (int j = 0; j <= grid.diameter; ++j) row.push_back(grid.dim(i, j));
    rows.push_back(row);
  }
  return rows;
}

// Scheme-level invariants: orthogonal idempotents, resolution of identity,
// spectral decomposition of A, Krein nonnegativity.
struct SchemeCheck {
  double idempotent_defect = 0;
  double spectral_defect = 0;
  double krein_min = 0;
  bool passed = false;
};

SchemeCheck check_scheme(const AssociationScheme& s, const ToleranceProfile& tol) {
  SchemeCheck c;
  const Eigen::Index n = s.n;
  Matrix total = Matrix::Zero(n, n), spectral = Matrix::Zero(n, n);
  for (int i = 0; i <= s.diameter; ++i) {
    total += s.idempotents[i];
    spectral += s.theta[i] * s.idempotents[i];
    for (int j = 0; j <= s.diameter; ++j) {
      const Matrix prod = s.idempotents[i] * s.idempotents[j];
      const double defect = i == j ? (prod - s.idempotents[i]).norm() : prod.norm();
      c.idempotent_defect = std::max(c.idempotent_defect, defect);
    }
  }
  c.idempotent_defect = std::max(c.idempotent_defect, (total - Matrix::Identity(n, n)).norm());
  c.spectral_defect = (spectral - s.adjacency()).norm();
  c.krein_min = *std::min_element(s.krein.table.begin(), s.krein.table.end());
  c.passed = c.idempotent_defect <= tol.eps_orth && c.spectral_defect <= tol.eps_orth &&
             c.krein_min >= -tol.eps_krein;
  return c;
}

// A*_i A*_j = sum_h q^h_ij A*_h, entrywise on the diagonals.
double dual_krein_defect(const DualStructure& dual, const KreinTable& krein) {
  const int m = dual.diameter() + 1;
  double worst = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Vector rhs = Vector::Zero(dual.astar_all[0].size());
      for (int h = 0; h < m; ++h) rhs += krein.q(h, i, j) * dual.astar_all[h];
      worst = std::max(worst, (dual.astar_all[i].cwiseProduct(dual.astar_all[j]) - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

struct Stages {
  DistanceData dist;
  IntersectionNumbers p;
  AssociationScheme scheme;  // descending order
  AssociationScheme ordered;
  DualStructure dual;
};

// Shared front half of verify and dims. Fills the report as it goes; throws
// Error on construction failures.
Stages front(const Graph& g, const RunConfig& cfg, Json& report, RunResult& result) {
  Stages st;
  report["graph"] = {{"name", g.name()}, {"n", g.size()}, {"edges", g.edge_count()},
                     {"hash", graph_hash(g)}};
  st.dist = distances(g);
  report["graph"]["diameter"] = st.dist.diameter;
  st.p = certify_distance_regular(g, st.dist);
  Json b = Json::array(), c = Json::array();
  for (int i = 0; i <= st.p.diameter; ++i) {
    b.push_back(st.p.b(i));
    c.push_back(st.p.c(i));
  }
  report["graph"]["valency"] = st.p.valency();
  report["graph"]["intersection_array"] = {{"b", b}, {"c", c}};

  std::optional<AssociationScheme> cached;
  if (!cfg.cache_dir.empty()) cached = cache_load(cfg.cache_dir, g, st.dist, cfg.tol);
  if (cached) {
    st.scheme = std::move(*cached);
    result.cache_status = "hit";
  } else {
    st.scheme = build_scheme(g, st.dist, st.p, cfg.tol);
    if (!cfg.cache_dir.empty()) {
      cache_store(cfg.cache_dir, g, st.scheme, cfg.tol);
      result.cache_status = "miss";
    }
  }
  const auto& q = st.scheme.qpoly;
  report["scheme"] = {{"theta", st.scheme.theta},
                      {"mult", st.scheme.mult},
                      {"qpoly_orderings", q.orderings},
                      {"krein_margin",
                       {{"zero_threshold", q.zero_threshold},
                        {"largest_zero", q.largest_zero},
                        {"smallest_nonzero", q.smallest_nonzero}}}};
  if (q.orderings.empty())
    throw Error(ErrorCode::NotQPolynomial, g.name() + " admits no Q-polynomial ordering");
  if (cfg.ordering < 0 || cfg.ordering >= static_cast<int>(q.orderings.size()))
    throw Error(ErrorCode::InvalidArgument,
                "ordering index " + std::to_string(cfg.ordering) + " but only " +
                    std::to_string(q.orderings.size()) + " ordering(s) found");
  const Permutation& sigma = q.orderings[cfg.ordering];
  report["scheme"]["selected_ordering"] = sigma;
  st.ordered = with_ordering(st.scheme, sigma);

  st.dual = build_dual(g, st.dist, st.ordered, cfg.base, cfg.tol);
  report["dual"] = {{"base", cfg.base}, {"theta_star", st.dual.theta_star}};
  return st;
}

RunResult run(const Graph& g, const RunConfig& cfg, bool full) {
  RunResult result;
  Json& report = result.report;
  report["schema"] = kReportSchema;
  report["command"] = full ? "verify" : "dims";
  report["config"] = config_to_json(cfg);
  Json checks;
  bool duality_ok = true;
  try {
    if (!cfg.tol.valid()) throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
    Stages st = front(g, cfg, report, result);
    const ToleranceProfile& tol = cfg.tol;

    if (full) {
      const SchemeCheck sc = check_scheme(st.ordered, tol);
      report["scheme"]["invariants"] = {{"idempotent_defect", sc.idempotent_defect},
                                        {"spectral_defect", sc.spectral_defect},
                                        {"krein_min", sc.krein_min}};
      checks["scheme_invariants"] = sc.passed;
      const TridiagonalReport tr = verify_tridiagonal_relations(st.ordered, st.dual, tol);
      const double dk = dual_krein_defect(st.dual, st.ordered.krein);
      report["dual"]["tridiagonal"] = {{"max_astar_violation", tr.max_astar_violation},
                                       {"max_a_violation", tr.max_a_violation}};
      report["dual"]["dual_krein_defect"] = dk;
      checks["tridiagonal_relations"] = tr.passed;
      checks["dual_krein_relations"] = dk <= tol.eps_orth;
    }

    const SplitContext ctx(st.ordered, st.dual, tol);
    std::vector<SplitGrid> grids;
    report["splits"] = Json::object();
    for (const auto& dir : kSplits) {
      grids.push_back(split_grid(dir[0], dir[1], ctx));
      const auto& grid = grids.back();
      report["splits"][split_label(dir[0], dir[1])] = {
          {"dims", dims_json(grid)}, {"total", grid.total_dim()}, {"rank", grid_rank(grid, tol)}};
    }
    if (full) {
      checks["direct_sum"] = true;

      report["duality"] = Json::array();
      for (auto [x, y] : {std::pair{0, 3}, std::pair{1, 2}}) {
        const DualityReport dr = verify_duality(grids[x], grids[y], tol);
        report["duality"].push_back({{"pair", dual_pair_label(dr.pair)},
                                     {"worst_offdiagonal", dr.worst_offdiagonal},
                                     {"witness", dr.witness},
                                     {"exempt_max", dr.exempt_max},
                                     {"exempt_witness", dr.exempt_witness},
                                     {"checked", dr.checked},
                                     {"orthogonal", dr.orthogonal},
                                     {"dim_corollary_ok", dr.dim_corollary_ok}});
        const std::string label = dual_pair_label(dr.pair);
        checks["duality_" + label] = dr.orthogonal;
        checks["corollary_" + label] = dr.dim_corollary_ok;
        duality_ok = duality_ok && dr.orthogonal && dr.dim_corollary_ok;
      }

      const ModuleSet ms = extract_modules(st.ordered, st.dual, cfg.seed, tol);
      Json list = Json::array();
      bool modules_ok = true;
      int dim_total = 0;
      Matrix all(st.ordered.n, 0);
      double pairwise = 0;
      for (std::size_t k = 0; k < ms.modules.size(); ++k) {
        const auto& w = ms.modules[k];
        const TdPairReport td = verify_td_pair(w, st.ordered.adjacency(), st.dual.astar_matrix(),
                                               st.ordered.diameter, tol);
        const ModuleOrthogonalityReport mo = verify_module_orthogonality(w, tol);
        modules_ok = modules_ok && td.passed && mo.passed;
        list.push_back({{"dim", w.dim()},
                        {"rho", w.rho},
                        {"tau", w.tau},
                        {"d", w.d},
                        {"max_td_violation", td.max_violation()},
                        {"max_split_orthogonality_violation", std::max(mo.max_dd_uu, mo.max_du_ud)},
                        {"irreducible", td.irreducible},
                        {"passed", td.passed && mo.passed}});
        dim_total += w.dim();
        for (std::size_t l = 0; l < k; ++l)
          pairwise = std::max(pairwise, max_inner_product(w.basis, ms.modules[l].basis));
        all.conservativeResize(Eigen::NoChange, all.cols() + w.dim());
        all.rightCols(w.dim()) = w.basis.basis();
      }
      const int rank = numerical_rank(all, tol);
      report["modules"] = {{"seed", ms.seed},
                           {"attempts", ms.attempts},
                           {"commutant_dim", ms.commutant_dim},
                           {"count", ms.modules.size()},
                           {"dim_total", dim_total},
                           {"rank", rank},
                           {"max_pairwise_inner_product", pairwise},
                           {"list", list}};
      checks["modules_td_pair"] = modules_ok;
      checks["modules_orthogonal_sum"] =
          pairwise <= tol.eps_orth && dim_total == st.ordered.n && rank == st.ordered.n;

      report["reconstruction"] = Json::array();
      bool recon_ok = true;
      for (const auto& grid : grids) {
        const ReconstructionReport rr =
            verify_module_reconstruction(grid, ms.modules, kReconstructionTolerance);
        report["reconstruction"].push_back({{"split", split_label(rr.mu, rr.nu)},
                                            {"worst_distance", rr.worst_distance},
                                            {"worst_cell", rr.worst_cell},
                                            {"passed", rr.passed}});
        recon_ok = recon_ok && rr.passed;
      }
      checks["reconstruction"] = recon_ok;

      bool all_ok = true;
      for (const auto& v : checks) all_ok = all_ok && v.get<bool>();
      if (!duality_ok) {
        result.status = ErrorCode::DualityViolation;
        result.message = "duality theorem or dimension corollary check failed";
      } else if (!all_ok) {
        result.status = ErrorCode::InvariantViolation;
        result.message = "one or more invariant checks failed";
      }
    }
  } catch (const Error& e) {
    result.status = e.code();
    result.message = e.what();
  } catch (const std::exception& e) {
    result.status = ErrorCode::Internal;
    result.message = e.what();
  }
  report["tolerances"] = {{"eps_rank", cfg.tol.eps_rank}, {"eps_eig", cfg.tol.eps_eig},
                          {"eps_orth", cfg.tol.eps_orth}, {"eps_krein", cfg.tol.eps_krein},
                          {"eps_zero", cfg.tol.eps_zero}, {"reconstruction", kReconstructionTolerance}};
  if (full) report["checks"] = checks.is_null() ? Json::object() : checks;
  report["status"] = status_json(result.status, result.message);
  return result;
}

}  // namespace

RunResult run_verify(const Graph& g, const RunConfig& cfg) { return run(g, cfg, true); }

RunResult run_dims(const Graph& g, const RunConfig& cfg) { return run(g, cfg, false); }

}  // namespace drgsplit
