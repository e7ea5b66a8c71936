#include "glt/ordering.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <string>

#include "glt/error.hpp"
#include "glt/rng.hpp"

namespace glt {

void Ordering::validate() const {
  std::vector<char> seen(perm.size(), 0);
  for (VertexId x : perm) {
    if (x < 0 || x >= static_cast<VertexId>(perm.size()) || seen[x])
      throw DomainError("ordering: not a bijection on [0,n)");
    seen[x] = 1;
  }
}

Ordering order_identity(const Graph& g) {
  Ordering ord;
  ord.perm.resize(g.n);
  std::iota(ord.perm.begin(), ord.perm.end(), VertexId{0});
  return ord;
}

Ordering order_random(const Graph& g, std::uint64_t seed) {
  Ordering ord = order_identity(g);
  Rng rng = substream(seed, "order.random");
  for (VertexId i = g.n - 1; i > 0; --i) {
    std::uint64_t j = rng.below(static_cast<std::uint64_t>(i) + 1);
    std::swap(ord.perm[i], ord.perm[j]);
  }
  return ord;
}

namespace {

// Subproblem view: a vertex subset with its induced adjacency, locally
// indexed. The global graph case uses an identity view without copying.
struct Subgraph {
  const Graph* g = nullptr;            // whole-graph view when set
  VertexId n = 0;
  std::vector<std::int64_t> offsets;   // local CSR when g == nullptr
  std::vector<VertexId> adj;

  std::span<const VertexId> neighbors(VertexId v) const {
    if (g) return g->neighbors(v);
    return {adj.data() + offsets[v],
            static_cast<std::size_t>(offsets[v + 1] - offsets[v])};
  }
  std::int64_t degree(VertexId v) const {
    if (g) return g->degree(v);
    return offsets[v + 1] - offsets[v];
  }
};

// Connected components in ascending order of local id; processed in
// decreasing size order, ties to the component seen first (which has the
// smallest minimum id).
std::vector<std::vector<VertexId>> components_by_size(const Subgraph& sg) {
  std::vector<std::int32_t> comp(sg.n, -1);
  std::vector<std::vector<VertexId>> comps;
  std::vector<VertexId> queue;
  for (VertexId s = 0; s < sg.n; ++s) {
    if (comp[s] >= 0) continue;
    std::int32_t id = static_cast<std::int32_t>(comps.size());
    comp[s] = id;
    queue.clear();
    queue.push_back(s);
    std::vector<VertexId> members;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId u = queue[head];
      members.push_back(u);
      for (VertexId v : sg.neighbors(u)) {
        if (comp[v] < 0) {
          comp[v] = id;
          queue.push_back(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
    comps.push_back(std::move(members));
  }
  std::stable_sort(comps.begin(), comps.end(),
                   [](const auto& a, const auto& b) {
                     return a.size() > b.size();
                   });
  return comps;
}

VertexId pick_min_degree_root(const Subgraph& sg,
                              const std::vector<VertexId>& members, Rng& rng) {
  std::int64_t min_deg = -1;
  std::int64_t candidates = 0;
  for (VertexId v : members) {
    std::int64_t d = sg.degree(v);
    if (min_deg < 0 || d < min_deg) {
      min_deg = d;
      candidates = 1;
    } else if (d == min_deg) {
      candidates++;
    }
  }
  std::int64_t pick = static_cast<std::int64_t>(rng.below(candidates));
  for (VertexId v : members) {
    if (sg.degree(v) == min_deg && pick-- == 0) return v;
  }
  return members.front();
}

// BFS level sets in queue arrival order, neighbors scanned in ascending
// id order; new ids count up from the deepest level back to the root.
// The whole point is that nothing here sorts.
void dgl_component(const Subgraph& sg, const std::vector<VertexId>& members,
                   VertexId root, std::vector<VertexId>& perm,
                   VertexId& next_id, std::vector<char>& visited) {
  std::vector<VertexId> order;
  std::vector<std::size_t> level_start;  // offsets into `order`
  order.reserve(members.size());
  order.push_back(root);
  visited[root] = 1;
  std::size_t frontier_begin = 0;
  while (frontier_begin < order.size()) {
    level_start.push_back(frontier_begin);
    std::size_t frontier_end = order.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (VertexId u : sg.neighbors(order[i])) {
        if (!visited[u]) {
          visited[u] = 1;
          order.push_back(u);
        }
      }
    }
    frontier_begin = frontier_end;
  }
  level_start.push_back(order.size());
  for (std::size_t lvl = level_start.size() - 1; lvl-- > 0;) {
    for (std::size_t i = level_start[lvl]; i < level_start[lvl + 1]; ++i)
      perm[order[i]] = next_id++;
  }
}

// Classic Cuthill-McKee with children visited in ascending (degree, id)
// order, reversed per component.
void rcm_component(const Subgraph& sg, const std::vector<VertexId>& members,
                   VertexId root, std::vector<VertexId>& perm,
                   VertexId& next_id, std::vector<char>& visited) {
  std::vector<VertexId> order;
  order.reserve(members.size());
  order.push_back(root);
  visited[root] = 1;
  std::vector<std::pair<std::int64_t, VertexId>> children;
  for (std::size_t head = 0; head < order.size(); ++head) {
    VertexId u = order[head];
    children.clear();
    for (VertexId v : sg.neighbors(u)) {
      if (!visited[v]) {
        visited[v] = 1;
        children.emplace_back(sg.degree(v), v);
      }
    }
    std::sort(children.begin(), children.end());
    for (auto [d, v] : children) {
      (void)d;
      order.push_back(v);
    }
  }
  for (std::size_t i = order.size(); i-- > 0;) perm[order[i]] = next_id++;
}

std::vector<VertexId> order_subgraph(const Subgraph& sg,
                                     OrderingStrategy strategy,
                                     std::uint64_t seed,
                                     std::optional<VertexId> forced_root) {
  std::vector<VertexId> perm(sg.n);
  if (strategy == OrderingStrategy::random) {
    std::iota(perm.begin(), perm.end(), VertexId{0});
    Rng rng = substream(seed, "order.random");
    for (VertexId i = sg.n - 1; i > 0; --i) {
      std::uint64_t j = rng.below(static_cast<std::uint64_t>(i) + 1);
      std::swap(perm[i], perm[j]);
    }
    return perm;
  }
  Rng rng = substream(seed, "order.root");
  std::vector<char> visited(sg.n, 0);
  VertexId next_id = 0;
  for (const auto& members : components_by_size(sg)) {
    VertexId root;
    if (forced_root && !visited[*forced_root] &&
        std::binary_search(members.begin(), members.end(), *forced_root)) {
      root = *forced_root;
    } else {
      root = pick_min_degree_root(sg, members, rng);
    }
    if (strategy == OrderingStrategy::dgl)
      dgl_component(sg, members, root, perm, next_id, visited);
    else
      rcm_component(sg, members, root, perm, next_id, visited);
  }
  return perm;
}

Subgraph whole_graph_view(const Graph& g) {
  Subgraph sg;
  sg.g = &g;
  sg.n = g.n;
  return sg;
}

}  // namespace

Ordering order_dgl(const Graph& g, std::uint64_t seed,
                   std::optional<VertexId> forced_root) {
  if (g.directed) throw DomainError("order_dgl: undirected graph required");
  Ordering ord;
  ord.perm =
      order_subgraph(whole_graph_view(g), OrderingStrategy::dgl, seed,
                     forced_root);
  return ord;
}

Ordering order_rcm(const Graph& g, std::uint64_t seed,
                   std::optional<VertexId> forced_root) {
  if (g.directed) throw DomainError("order_rcm: undirected graph required");
  Ordering ord;
  ord.perm =
      order_subgraph(whole_graph_view(g), OrderingStrategy::rcm, seed,
                     forced_root);
  return ord;
}

Ordering order_global(const Graph& g, OrderingStrategy strategy,
                      std::uint64_t seed) {
  switch (strategy) {
    case OrderingStrategy::random:
      return order_random(g, seed);
    case OrderingStrategy::rcm:
      return order_rcm(g, seed);
    case OrderingStrategy::dgl:
      return order_dgl(g, seed);
  }
  throw DomainError("unknown ordering strategy");
}

Ordering order_per_part(const Graph& g, const Partition& part,
                        OrderingStrategy strategy, std::uint64_t seed) {
  if (g.directed)
    throw DomainError("order_per_part: undirected graph required");
  if (static_cast<VertexId>(part.assignment.size()) != g.n)
    throw DomainError("order_per_part: partition length != n");
  if (part.p == 1) {
    Ordering ord = order_global(g, strategy, seed);
    ord.scope = OrderingScope::per_part;
    return ord;
  }

  Ordering ord;
  ord.scope = OrderingScope::per_part;
  ord.parts = part.p;
  ord.perm.assign(g.n, -1);

  // Part members ascending; local index = rank within the part.
  std::vector<std::vector<VertexId>> members(part.p);
  std::vector<VertexId> local_of(g.n);
  for (VertexId v = 0; v < g.n; ++v) {
    auto& list = members[part.assignment[v]];
    local_of[v] = static_cast<VertexId>(list.size());
    list.push_back(v);
  }

  VertexId offset = 0;
  for (int k = 0; k < part.p; ++k) {
    const auto& verts = members[k];
    Subgraph sg;
    sg.n = static_cast<VertexId>(verts.size());
    sg.offsets.assign(sg.n + 1, 0);
    for (VertexId i = 0; i < sg.n; ++i) {
      for (VertexId u : g.neighbors(verts[i]))
        if (u != verts[i] && part.assignment[u] == k) sg.offsets[i + 1]++;
    }
    std::partial_sum(sg.offsets.begin(), sg.offsets.end(), sg.offsets.begin());
    sg.adj.resize(sg.offsets.back());
    std::vector<std::int64_t> cursor(sg.offsets.begin(), sg.offsets.end() - 1);
    for (VertexId i = 0; i < sg.n; ++i) {
      for (VertexId u : g.neighbors(verts[i]))
        if (u != verts[i] && part.assignment[u] == k)
          sg.adj[cursor[i]++] = local_of[u];
    }
    std::vector<VertexId> local =
        order_subgraph(sg, strategy, substream_seed(seed, "order.part", k),
                       std::nullopt);
    for (VertexId i = 0; i < sg.n; ++i)
      ord.perm[verts[i]] = offset + local[i];
    offset += sg.n;
  }
  ord.validate();
  return ord;
}

Graph apply_ordering(const Graph& g, const Ordering& ord) {
  return apply_ordering(g, std::span<const VertexId>(ord.perm));
}

std::vector<std::int32_t> permute_assignment(
    const std::vector<std::int32_t>& assignment,
    std::span<const VertexId> perm) {
  std::vector<std::int32_t> out(assignment.size());
  for (std::size_t v = 0; v < assignment.size(); ++v)
    out[perm[v]] = assignment[v];
  return out;
}

Ordering load_ordering(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  Ordering ord;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    VertexId id = 0;
    auto [ptr, ec] =
        std::from_chars(line.data(), line.data() + line.size(), id);
    if (ec != std::errc{} || ptr != line.data() + line.size())
      throw FormatError("ordering line " + std::to_string(lineno) +
                        ": bad id");
    ord.perm.push_back(id);
  }
  ord.validate();
  return ord;
}

void save_ordering(const Ordering& ord, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (VertexId x : ord.perm) out << x << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace glt
