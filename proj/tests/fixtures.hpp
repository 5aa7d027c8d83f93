#pragma once

#include <memory>
#include <vector>

#include "drgsplit/dual.hpp"
#include "drgsplit/graph.hpp"
#include "drgsplit/scheme.hpp"
#include "drgsplit/tolerance.hpp"

namespace fixture {

// Graph plus scheme (descending and first Q-polynomial ordering) and the dual
// structure at a base vertex.
struct Setup {
  drgsplit::Graph graph;
  drgsplit::DistanceData dist;
  drgsplit::IntersectionNumbers p;
  drgsplit::AssociationScheme scheme;
  drgsplit::AssociationScheme ordered;
  drgsplit::DualStructure dual;
  drgsplit::ToleranceProfile tol;
};

inline drgsplit::Graph family(drgsplit::Family f, std::vector<long> params) {
  return drgsplit::build_family(f, params);
}

inline std::unique_ptr<Setup> make(drgsplit::Graph g, int base = 0,
                                   drgsplit::ToleranceProfile tol = {}) {
  auto dist = drgsplit::distances(g);
  auto p = drgsplit::certify_distance_regular(g, dist);
  auto scheme = drgsplit::build_scheme(g, dist, p, tol);
  auto ordered = drgsplit::with_ordering(scheme, scheme.qpoly.orderings.at(0));
  auto dual = drgsplit::build_dual(g, dist, ordered, base, tol);
  return std::unique_ptr<Setup>(new Setup{std::move(g), std::move(dist), std::move(p), std::move(scheme),
                                          std::move(ordered), std::move(dual), tol});
}

inline std::unique_ptr<Setup> make(drgsplit::Family f, std::vector<long> params, int base = 0) {
  return make(family(f, std::move(params)), base);
}

inline std::unique_ptr<Setup> q3(int base = 0) { return make(drgsplit::Family::Hypercube, {3}, base); }

struct Named {
  const char* name;
  drgsplit::Family family;
  std::vector<long> params;
};

// The small graphs used by the per-module suites (Q_6 is left to the
// acceptance binary).
inline std::vector<Named> small_corpus() {
  using drgsplit::Family;
  return {{"Q_3", Family::Hypercube, {3}},
          {"Q_4", Family::Hypercube, {4}},
          {"H(3,3)", Family::Hamming, {3, 3}},
          {"J(7,3)", Family::Johnson, {7, 3}},
          {"C_8", Family::Cycle, {8}}};
}

}  // namespace fixture
