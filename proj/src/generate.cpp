#include "glt/generate.hpp"

#include <cmath>
#include <cstdint>

#include "glt/error.hpp"
#include "glt/rng.hpp"

namespace glt {

namespace {

Graph from_edges(VertexId n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
  std::vector<Arc> arcs;
  arcs.reserve(2 * edges.size());
  for (auto [u, v] : edges) {
    arcs.push_back({u, v, 1.0});
    arcs.push_back({v, u, 1.0});
  }
  return build_graph(n, arcs, /*directed=*/false, /*weighted=*/false,
                     /*sort_rows=*/true);
}

/// Bernoulli(p) subsample of [0, count) via geometric skips; O(p * count)
/// draws instead of count.
template <class F>
void sample_bernoulli(std::uint64_t count, double p, Rng& rng, F&& take) {
  if (count == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < count; ++i) take(i);
    return;
  }
  const double log1mp = std::log1p(-p);
  std::uint64_t i = 0;
  while (true) {
    double u = 1.0 - rng.unit();  // (0, 1]
    double skip = std::floor(std::log(u) / log1mp);
    if (skip >= static_cast<double>(count)) return;
    i += static_cast<std::uint64_t>(skip);
    if (i >= count) return;
    take(i);
    ++i;
  }
}

/// Unranks pair index t in [0, C(n,2)) to (i, j) with i < j, row-major.
std::pair<VertexId, VertexId> unrank_pair(VertexId n, std::uint64_t t) {
  // off(i) = i*n - i*(i+1)/2 is the first index of row i.
  VertexId lo = 0, hi = n - 1;
  auto off = [&](VertexId i) {
    return static_cast<std::uint64_t>(i) * n -
           static_cast<std::uint64_t>(i) * (i + 1) / 2;
  };
  while (lo < hi) {
    VertexId mid = lo + (hi - lo + 1) / 2;
    if (off(mid) <= t)
      lo = mid;
    else
      hi = mid - 1;
  }
  VertexId i = lo;
  VertexId j = i + 1 + static_cast<VertexId>(t - off(i));
  return {i, j};
}

}  // namespace

Graph gen_path(VertexId n) {
  if (n < 1) throw DomainError("path: n >= 1 required");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return from_edges(n, edges);
}

Graph gen_cycle(VertexId n) {
  if (n < 3) throw DomainError("cycle: n >= 3 required");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return from_edges(n, edges);
}

Graph gen_star(VertexId n) {
  if (n < 2) throw DomainError("star: n >= 2 required");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 1; v < n; ++v) edges.emplace_back(0, v);
  return from_edges(n, edges);
}

Graph gen_clique_pair(VertexId clique_size) {
  if (clique_size < 2) throw DomainError("clique-pair: size >= 2 required");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int side = 0; side < 2; ++side) {
    VertexId base = side * clique_size;
    for (VertexId i = 0; i < clique_size; ++i)
      for (VertexId j = i + 1; j < clique_size; ++j)
        edges.emplace_back(base + i, base + j);
  }
  edges.emplace_back(0, clique_size);  // bridge
  return from_edges(2 * clique_size, edges);
}

Graph gen_planted(int blocks, VertexId block_size, double p_in, double p_out,
                  std::uint64_t seed) {
  if (blocks < 1 || block_size < 1)
    throw DomainError("planted: blocks >= 1 and block_size >= 1 required");
  if (p_in < 0 || p_in > 1 || p_out < 0 || p_out > 1)
    throw DomainError("planted: probabilities in [0,1] required");
  VertexId n = static_cast<VertexId>(blocks) * block_size;
  std::vector<std::pair<VertexId, VertexId>> edges;

  Rng intra = substream(seed, "gen.planted.intra");
  for (int b = 0; b < blocks; ++b) {
    VertexId base = static_cast<VertexId>(b) * block_size;
    std::uint64_t pairs =
        static_cast<std::uint64_t>(block_size) * (block_size - 1) / 2;
    sample_bernoulli(pairs, p_in, intra, [&](std::uint64_t t) {
      auto [i, j] = unrank_pair(block_size, t);
      edges.emplace_back(base + i, base + j);
    });
  }

  if (blocks > 1 && p_out > 0) {
    Rng inter = substream(seed, "gen.planted.inter");
    std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    sample_bernoulli(pairs, p_out, inter, [&](std::uint64_t t) {
      auto [i, j] = unrank_pair(n, t);
      if (i / block_size != j / block_size) edges.emplace_back(i, j);
    });
  }
  return from_edges(n, edges);
}

Graph gen_ba(VertexId n, int attach, std::uint64_t seed) {
  if (attach < 1) throw DomainError("ba: attach >= 1 required");
  if (n < attach + 1) throw DomainError("ba: n > attach required");
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<VertexId> endpoints;  // degree-proportional sampling pool
  for (VertexId i = 0; i <= attach; ++i) {
    for (VertexId j = i + 1; j <= attach; ++j) {
      edges.emplace_back(i, j);
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  }
  Rng rng = substream(seed, "gen.ba");
  std::vector<VertexId> targets;
  for (VertexId v = attach + 1; v < n; ++v) {
    targets.clear();
    while (static_cast<int>(targets.size()) < attach) {
      VertexId t = endpoints[rng.below(endpoints.size())];
      bool dup = false;
      for (VertexId x : targets) dup = dup || (x == t);
      if (!dup) targets.push_back(t);
    }
    for (VertexId t : targets) {
      edges.emplace_back(v, t);
      endpoints.push_back(v);
      endpoints.push_back(t);
    }
  }
  return from_edges(n, edges);
}

void add_uniform_int_weights(Graph& g, int lo, int hi, std::uint64_t seed) {
  if (lo < 0 || hi < lo) throw DomainError("weights: 0 <= lo <= hi required");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  std::uint64_t base = substream_seed(seed, "gen.weights");
  g.weights.resize(g.adjacency.size());
  for (VertexId u = 0; u < g.n; ++u) {
    for (std::int64_t i = g.row_offsets[u]; i < g.row_offsets[u + 1]; ++i) {
      VertexId v = g.adjacency[i];
      VertexId a = std::min(u, v), b = std::max(u, v);
      std::uint64_t h = mix64(mix64(base ^ static_cast<std::uint64_t>(a)) ^
                              static_cast<std::uint64_t>(b));
      g.weights[i] = static_cast<double>(lo + h % span);
    }
  }
}

}  // namespace glt
