#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace drgsplit {

/// Simple undirected graph on vertices 0..n-1 stored as sorted neighbor lists.
/// Construction rejects loops, repeated edges, out-of-range endpoints and
/// n < 2. Connectivity is checked by distances().
class Graph {
 public:
  using Edge = std::pair<int, int>;

  Graph(std::string name, int n, std::span<const Edge> edges);

  const std::string& name() const noexcept { return name_; }
  int size() const noexcept { return static_cast<int>(adj_.size()); }
  const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
  bool adjacent(int u, int v) const;
  std::size_t edge_count() const noexcept;

  /// Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

 private:
  std::string name_;
  std::vector<std::vector<int>> adj_;
};

enum class Family { Hypercube, Hamming, Johnson, Cycle };

Family parse_family(std::string_view name);
const char* family_name(Family f) noexcept;

/// Canonical labelings:
///   hypercube [D]    -> words of {0,1}^D in lexicographic order
///   hamming   [D, q] -> words of {0..q-1}^D in lexicographic order
///   johnson   [n, k] -> k-subsets of {0..n-1} in lexicographic order
///   cycle     [n]    -> 0..n-1 around the cycle
Graph build_family(Family family, std::span<const long> params);

struct DistanceData {
  int n = 0;
  int diameter = 0;
  std::vector<int> dist;  // row-major n x n

  int operator()(int x, int y) const { return dist[static_cast<std::size_t>(x) * n + y]; }
};

/// BFS from every vertex. Throws Disconnected.
DistanceData distances(const Graph& g);

/// p^h_{ij} for 0 <= h,i,j <= D.
struct IntersectionNumbers {
  int diameter = 0;
  std::vector<long> table;  // (D+1)^3, index [h][i][j]

  long p(int h, int i, int j) const {
    const int m = diameter + 1;
    return table[(static_cast<std::size_t>(h) * m + i) * m + j];
  }
  long b(int i) const { return i < diameter ? p(i, 1, i + 1) : 0; }
  long c(int i) const { return i > 0 ? p(i, 1, i - 1) : 0; }
  long a(int i) const { return p(i, 1, i); }
  long k(int i) const { return p(0, i, i); }
  long valency() const { return k(1); }
};

/// Exhaustively counts |{z : d(x,z)=i, d(z,y)=j}| over every ordered pair
/// (x, y). Throws NotDistanceRegular naming two witnessing pairs, or
/// DiameterTooSmall when D < 3.
IntersectionNumbers certify_distance_regular(const Graph& g, const DistanceData& d);

// Graph file: JSON object {"name": str, "n": int, "edges": [[u, v], ...]},
// 0-based, edges written with u < v in lexicographic order.
std::string write_graph(const Graph& g);
Graph read_graph(std::string_view text);
Graph load_graph_file(const std::string& path);
void save_graph_file(const Graph& g, const std::string& path);

/// FNV-1a 64 of the canonical graph file text, as 16 hex digits.
std::string graph_hash(const Graph& g);

}  // namespace drgsplit
