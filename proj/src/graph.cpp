#include "drgsplit/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <queue>
#include <sstream>

#include <json.hpp>

#include "drgsplit/errors.hpp"

namespace drgsplit {

namespace {

std::string describe_pair(int x, int y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

int popcount_diff(const std::vector<int>& a, const std::vector<int>& b) {
  int diff = 0;
  for (std::size_t t = 0; t < a.size(); ++t) diff += a[t] != b[t];
  return diff;
}

Graph hamming_graph(const std::string& name, int dim, int q) {
  long n = 1;
  for (int t = 0; t < dim; ++t) {
    n *= q;
    if (n > 4096) throw Error(ErrorCode::InvalidFamilyParams, name + ": more than 4096 vertices");
  }
  std::vector<std::vector<int>> words(n, std::vector<int>(dim));
  for (long v = 0; v < n; ++v) {
    long r = v;
    for (int t = dim - 1; t >= 0; --t) {
      words[v][t] = static_cast<int>(r % q);
      r /= q;
    }
  }
  std::vector<Graph::Edge> edges;
  for (long u = 0; u < n; ++u)
    for (long v = u + 1; v < n; ++v)
      if (popcount_diff(words[u], words[v]) == 1) edges.emplace_back(u, v);
  return Graph(name, static_cast<int>(n), edges);
}

Graph johnson_graph(const std::string& name, int n, int k) {
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur(k);
  for (int t = 0; t < k; ++t) cur[t] = t;
  while (true) {
    subsets.push_back(cur);
    int t = k - 1;
    while (t >= 0 && cur[t] == n - k + t) --t;
    if (t < 0) break;
    ++cur[t];
    for (int s = t + 1; s < k; ++s) cur[s] = cur[s - 1] + 1;
    if (subsets.size() > 4096) throw Error(ErrorCode::InvalidFamilyParams, name + ": more than 4096 vertices");
  }
  std::vector<Graph::Edge> edges;
  const int m = static_cast<int>(subsets.size());
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) {
      std::vector<int> common;
      std::set_intersection(subsets[u].begin(), subsets[u].end(), subsets[v].begin(),
                            subsets[v].end(), std::back_inserter(common));
      if (static_cast<int>(common.size()) == k - 1) edges.emplace_back(u, v);
    }
  return Graph(name, m, edges);
}

}  // namespace

Graph::Graph(std::string name, int n, std::span<const Edge> edges) : name_(std::move(name)) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "graph needs at least 2 vertices");
  adj_.assign(n, {});
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw Error(ErrorCode::InvalidArgument, "edge " + describe_pair(u, v) + " out of range");
    if (u == v) throw Error(ErrorCode::InvalidArgument, "loop at vertex " + std::to_string(u));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    auto& row = adj_[v];
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end())
      throw Error(ErrorCode::InvalidArgument, "repeated edge at vertex " + std::to_string(v));
  }
}

bool Graph::adjacent(int u, int v) const {
  const auto& row = adj_.at(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::size_t Graph::edge_count() const noexcept {
  std::size_t deg = 0;
  for (const auto& row : adj_) deg += row.size();
  return deg / 2;
}

std::vector<Graph::Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < size(); ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Family parse_family(std::string_view name) {
  if (name == "hypercube") return Family::Hypercube;
  if (name == "hamming") return Family::Hamming;
  if (name == "johnson") return Family::Johnson;
  if (name == "cycle") return Family::Cycle;
  throw Error(ErrorCode::InvalidFamilyParams, "unknown family '" + std::string(name) + "'");
}

const char* family_name(Family f) noexcept {
  switch (f) {
    case Family::Hypercube: return "hypercube";
    case Family::Hamming: return "hamming";
    case Family::Johnson: return "johnson";
    case Family::Cycle: return "cycle";
  }
  return "?";
}

Graph build_family(Family family, std::span<const long> params) {
  auto expect = [&](std::size_t count) {
    if (params.size() != count)
      throw Error(ErrorCode::InvalidFamilyParams,
                  std::string(family_name(family)) + " takes " + std::to_string(count) +
                      " parameter(s), got " + std::to_string(params.size()));
  };
  auto too_small = [&](const std::string& name, long diameter) {
    throw Error(ErrorCode::DiameterTooSmall,
                name + " has diameter " + std::to_string(diameter) + " < 3");
  };
  switch (family) {
    case Family::Hypercube: {
      expect(1);
      const long dim = params[0];
      const std::string name = "Q_" + std::to_string(dim);
      if (dim < 1) throw Error(ErrorCode::InvalidFamilyParams, "hypercube dimension must be >= 1");
      if (dim < 3) too_small(name, dim);
      if (dim > 12) throw Error(ErrorCode::InvalidFamilyParams, name + ": more than 4096 vertices");
      return hamming_graph(name, static_cast<int>(dim), 2);
    }
    case Family::Hamming: {
      expect(2);
      const long dim = params[0], q = params[1];
      const std::string name = "H(" + std::to_string(dim) + "," + std::to_string(q) + ")";
      if (dim < 1 || q < 2) throw Error(ErrorCode::InvalidFamilyParams, "hamming needs D >= 1, q >= 2");
      if (dim < 3) too_small(name, dim);
      if (q > 4096) throw Error(ErrorCode::InvalidFamilyParams, name + ": more than 4096 vertices");
      return hamming_graph(name, static_cast<int>(dim), static_cast<int>(q));
    }
    case Family::Johnson: {
      expect(2);
      const long n = params[0], k = params[1];
      const std::string name = "J(" + std::to_string(n) + "," + std::to_string(k) + ")";
      if (k < 1 || n < 2 * k) throw Error(ErrorCode::InvalidFamilyParams, "johnson needs 1 <= k, n >= 2k");
      if (std::min(k, n - k) < 3) too_small(name, std::min(k, n - k));
      return johnson_graph(name, static_cast<int>(n), static_cast<int>(k));
    }
    case Family::Cycle: {
      expect(1);
      const long n = params[0];
      const std::string name = "C_" + std::to_string(n);
      if (n < 3) throw Error(ErrorCode::InvalidFamilyParams, "cycle needs n >= 3");
      if (n < 7) too_small(name, n / 2);
      if (n > 4096) throw Error(ErrorCode::InvalidFamilyParams, name + ": more than 4096 vertices");
      std::vector<Graph::Edge> edges;
      for (long v = 0; v < n; ++v) {
        const long w = (v + 1) % n;
        edges.emplace_back(std::min(v, w), std::max(v, w));
      }
      return Graph(name, static_cast<int>(n), edges);
    }
  }
  throw Error(ErrorCode::InvalidFamilyParams, "unknown family");
}

DistanceData distances(const Graph& g) {
  const int n = g.size();
  DistanceData d;
  d.n = n;
  d.dist.assign(static_cast<std::size_t>(n) * n, -1);
  std::vector<int> queue(n);
  for (int src = 0; src < n; ++src) {
    int* row = d.dist.data() + static_cast<std::size_t>(src) * n;
    row[src] = 0;
    int head = 0, tail = 0;
    queue[tail++] = src;
    while (head < tail) {
      const int u = queue[head++];
      for (int v : g.neighbors(u))
        if (row[v] < 0) {
          row[v] = row[u] + 1;
          queue[tail++] = v;
        }
    }
    if (tail != n)
      throw Error(ErrorCode::Disconnected,
                  g.name() + " is disconnected: vertex " + std::to_string(src) + " reaches " +
                      std::to_string(tail) + " of " + std::to_string(n) + " vertices");
    d.diameter = std::max(d.diameter, *std::max_element(row, row + n));
  }
  return d;
}

IntersectionNumbers certify_distance_regular(const Graph& g, const DistanceData& d) {
  const int n = g.size();
  const int m = d.diameter + 1;
  IntersectionNumbers p;
  p.diameter = d.diameter;
  p.table.assign(static_cast<std::size_t>(m) * m * m, -1);
  // Representative pair per h, for the error message.
  std::vector<std::pair<int, int>> witness(m, {-1, -1});
  std::vector<long> counts(static_cast<std::size_t>(m) * m);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int h = d(x, y);
      std::fill(counts.begin(), counts.end(), 0);
      for (int z = 0; z < n; ++z) ++counts[static_cast<std::size_t>(d(x, z)) * m + d(z, y)];
      long* slot = p.table.data() + static_cast<std::size_t>(h) * m * m;
      if (witness[h].first < 0) {
        std::copy(counts.begin(), counts.end(), slot);
        witness[h] = {x, y};
        continue;
      }
      for (int ij = 0; ij < m * m; ++ij)
        if (slot[ij] != counts[ij]) {
          const int i = ij / m, j = ij % m;
          throw Error(ErrorCode::NotDistanceRegular,
                      g.name() + " is not distance-regular: p^" + std::to_string(h) + "_{" +
                          std::to_string(i) + "," + std::to_string(j) + "} is " +
                          std::to_string(slot[ij]) + " at pair " +
                          describe_pair(witness[h].first, witness[h].second) + " but " +
                          std::to_string(counts[ij]) + " at pair " + describe_pair(x, y));
        }
    }
  if (d.diameter < 3)
    throw Error(ErrorCode::DiameterTooSmall,
                g.name() + " has diameter " + std::to_string(d.diameter) + " < 3");
  return p;
}

std::string write_graph(const Graph& g) {
  // Hand-formatted so the layout (one edge per line) is stable independent of
  // the JSON library's pretty printer.
  std::ostringstream out;
  out << "{\n  \"name\": " << nlohmann::json(g.name()).dump() << ",\n  \"n\": " << g.size()
      << ",\n  \"edges\": [";
  const auto edges = g.edges();
  for (std::size_t t = 0; t < edges.size(); ++t) {
    out << (t == 0 ? "\n    " : ",\n    ") << '[' << edges[t].first << ", " << edges[t].second << ']';
  }
  out << (edges.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

Graph read_graph(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("graph file: ") + e.what());
  }
  try {
    const std::string name = doc.value("name", std::string("graph"));
    const int n = doc.at("n").get<int>();
    std::vector<Graph::Edge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::Parse, "graph file: edge must be [u, v]");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Graph(name, n, edges);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("graph file: ") + e.what());
  }
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_graph(buf.str());
}

void save_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write graph file '" + path + "'");
  out << write_graph(g);
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

std::string graph_hash(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : write_graph(g)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace drgsplit
