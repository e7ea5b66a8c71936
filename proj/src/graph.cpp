#include "glt/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

#include "glt/error.hpp"

namespace glt {

bool Graph::rows_sorted() const {
  for (VertexId v = 0; v < n; ++v) {
    for (std::int64_t i = row_offsets[v] + 1; i < row_offsets[v + 1]; ++i) {
      if (adjacency[i - 1] > adjacency[i]) return false;
    }
  }
  return true;
}

void Graph::validate() const {
  if (static_cast<std::int64_t>(row_offsets.size()) != n + 1)
    throw DomainError("graph: row_offsets size != n+1");
  if (row_offsets[0] != 0 || row_offsets[n] != m)
    throw DomainError("graph: row_offsets endpoints");
  for (VertexId v = 0; v < n; ++v) {
    if (row_offsets[v] > row_offsets[v + 1])
      throw DomainError("graph: row_offsets decreasing");
  }
  if (static_cast<std::int64_t>(adjacency.size()) != m)
    throw DomainError("graph: adjacency size != m");
  for (VertexId t : adjacency) {
    if (t < 0 || t >= n) throw DomainError("graph: adjacency id out of range");
  }
  if (!weights.empty()) {
    if (static_cast<std::int64_t>(weights.size()) != m)
      throw DomainError("graph: weights size != m");
    for (double w : weights) {
      if (w < 0.0) throw DomainError("graph: negative weight");
    }
  }
  if (!directed) {
    // Arc symmetry with equal weights, via canonically sorted arc lists.
    std::vector<std::tuple<VertexId, VertexId, double>> fwd, rev;
    fwd.reserve(adjacency.size());
    rev.reserve(adjacency.size());
    for (VertexId u = 0; u < n; ++u) {
      for (std::int64_t i = row_offsets[u]; i < row_offsets[u + 1]; ++i) {
        fwd.emplace_back(u, adjacency[i], arc_weight(i));
        rev.emplace_back(adjacency[i], u, arc_weight(i));
      }
    }
    std::sort(fwd.begin(), fwd.end());
    std::sort(rev.begin(), rev.end());
    if (fwd != rev)
      throw DomainError("graph: undirected arcs not symmetric");
  }
}

Graph build_graph(VertexId n, const std::vector<Arc>& arcs, bool directed,
                  bool weighted, bool sort_rows) {
  Graph g;
  g.n = n;
  g.m = static_cast<std::int64_t>(arcs.size());
  g.directed = directed;
  g.row_offsets.assign(n + 1, 0);
  for (const Arc& a : arcs) g.row_offsets[a.u + 1]++;
  std::partial_sum(g.row_offsets.begin(), g.row_offsets.end(),
                   g.row_offsets.begin());
  g.adjacency.resize(arcs.size());
  if (weighted) g.weights.resize(arcs.size());
  std::vector<std::int64_t> cursor(g.row_offsets.begin(),
                                   g.row_offsets.end() - 1);
  for (const Arc& a : arcs) {
    std::int64_t at = cursor[a.u]++;
    g.adjacency[at] = a.v;
    if (weighted) g.weights[at] = a.w;
  }
  if (sort_rows) {
    std::vector<std::pair<VertexId, double>> row;
    for (VertexId v = 0; v < n; ++v) {
      std::int64_t lo = g.row_offsets[v], hi = g.row_offsets[v + 1];
      if (hi - lo < 2) continue;
      row.clear();
      for (std::int64_t i = lo; i < hi; ++i)
        row.emplace_back(g.adjacency[i], weighted ? g.weights[i] : 0.0);
      std::sort(row.begin(), row.end());
      for (std::int64_t i = lo; i < hi; ++i) {
        g.adjacency[i] = row[i - lo].first;
        if (weighted) g.weights[i] = row[i - lo].second;
      }
    }
  }
  return g;
}

namespace {

// BFS over the rows of `g` treated as undirected is only correct when the
// arc set is symmetric; callers pass a symmetrized view when needed.
std::pair<VertexId, std::int64_t> farthest_from(const Graph& g, VertexId src) {
  std::vector<std::int64_t> dist(g.n, -1);
  std::vector<VertexId> queue;
  queue.push_back(src);
  dist[src] = 0;
  VertexId far = src;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId u = queue[head];
    for (VertexId v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        if (dist[v] > dist[far]) far = v;
        queue.push_back(v);
      }
    }
  }
  return {far, dist[far]};
}

}  // namespace

DegreeStats degree_stats(const Graph& g, bool with_diameter) {
  DegreeStats s;
  if (g.n == 0) return s;
  s.d_avg = static_cast<double>(g.m) / static_cast<double>(g.n);
  for (VertexId v = 0; v < g.n; ++v) s.d_max = std::max(s.d_max, g.degree(v));
  if (with_diameter) {
    const Graph* und = &g;
    Graph sym;
    if (g.directed) {
      sym = symmetrize(g);
      und = &sym;
    }
    VertexId start = 0;
    for (VertexId v = 0; v < und->n; ++v)
      if (und->degree(v) < und->degree(start)) start = v;
    auto [far, _] = farthest_from(*und, start);
    auto [far2, d2] = farthest_from(*und, far);
    (void)far2;
    s.approx_diameter = d2;
  }
  return s;
}

Graph symmetrize(const Graph& g) {
  std::vector<Arc> arcs;
  arcs.reserve(2 * g.adjacency.size());
  for (VertexId u = 0; u < g.n; ++u) {
    for (std::int64_t i = g.row_offsets[u]; i < g.row_offsets[u + 1]; ++i) {
      VertexId v = g.adjacency[i];
      double w = g.arc_weight(i);
      arcs.push_back({u, v, w});
      arcs.push_back({v, u, w});
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
  });
  // Set union; duplicates keep the minimum weight.
  std::vector<Arc> out;
  out.reserve(arcs.size());
  for (const Arc& a : arcs) {
    if (!out.empty() && out.back().u == a.u && out.back().v == a.v) continue;
    out.push_back(a);
  }
  return build_graph(g.n, out, /*directed=*/false, g.has_weights(),
                     /*sort_rows=*/false);
}

Graph apply_ordering(const Graph& g, std::span<const VertexId> perm) {
  if (static_cast<VertexId>(perm.size()) != g.n)
    throw DomainError("apply_ordering: permutation length != n");
  std::vector<char> seen(g.n, 0);
  for (VertexId p : perm) {
    if (p < 0 || p >= g.n || seen[p])
      throw DomainError("apply_ordering: not a bijection on [0,n)");
    seen[p] = 1;
  }
  std::vector<Arc> arcs;
  arcs.reserve(g.adjacency.size());
  for (VertexId u = 0; u < g.n; ++u) {
    for (std::int64_t i = g.row_offsets[u]; i < g.row_offsets[u + 1]; ++i) {
      arcs.push_back({perm[u], perm[g.adjacency[i]], g.arc_weight(i)});
    }
  }
  return build_graph(g.n, arcs, g.directed, g.has_weights(),
                     /*sort_rows=*/true);
}

namespace {

struct UnionFind {
  std::vector<VertexId> parent;
  explicit UnionFind(VertexId n) : parent(n) {
    std::iota(parent.begin(), parent.end(), VertexId{0});
  }
  VertexId find(VertexId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

PreprocessResult preprocess(const Graph& g) {
  // Collapse multi-arcs (minimum weight wins, across both directions for
  // undirected inputs) and drop self-loops.
  std::vector<Arc> arcs;
  arcs.reserve(g.adjacency.size());
  for (VertexId u = 0; u < g.n; ++u) {
    for (std::int64_t i = g.row_offsets[u]; i < g.row_offsets[u + 1]; ++i) {
      VertexId v = g.adjacency[i];
      if (v == u) continue;
      arcs.push_back({u, v, g.arc_weight(i)});
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
  });
  std::vector<Arc> dedup;
  dedup.reserve(arcs.size());
  for (const Arc& a : arcs) {
    if (!dedup.empty() && dedup.back().u == a.u && dedup.back().v == a.v)
      continue;
    dedup.push_back(a);
  }
  arcs = std::move(dedup);

  UnionFind uf(g.n);
  std::vector<char> has_arc(g.n, 0);
  for (const Arc& a : arcs) {
    uf.unite(a.u, a.v);
    has_arc[a.u] = has_arc[a.v] = 1;
  }

  // Largest weakly connected component among non-isolated vertices;
  // ties go to the component with the smallest minimum original id.
  std::vector<std::int64_t> comp_size(g.n, 0);
  for (VertexId v = 0; v < g.n; ++v)
    if (has_arc[v]) comp_size[uf.find(v)]++;
  VertexId best = -1;
  for (VertexId r = 0; r < g.n; ++r) {
    if (comp_size[r] == 0) continue;
    if (best < 0 || comp_size[r] > comp_size[best]) best = r;
    // roots are the minimum id of their component, so id order breaks ties
  }
  PreprocessResult res;
  res.id_map.assign(g.n, PreprocessResult::kDropped);
  if (best < 0) throw DomainError("preprocess: empty result");

  VertexId next = 0;
  for (VertexId v = 0; v < g.n; ++v) {
    if (has_arc[v] && uf.find(v) == best) res.id_map[v] = next++;
  }

  std::vector<Arc> kept;
  kept.reserve(arcs.size());
  for (const Arc& a : arcs) {
    if (res.id_map[a.u] == PreprocessResult::kDropped) continue;
    if (res.id_map[a.v] == PreprocessResult::kDropped) continue;
    kept.push_back({res.id_map[a.u], res.id_map[a.v], a.w});
  }
  res.graph = build_graph(next, kept, g.directed, g.has_weights(),
                          /*sort_rows=*/true);
  return res;
}

}  // namespace glt
