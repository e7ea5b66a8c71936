#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "glt/distributed.hpp"
#include "glt/trace.hpp"

namespace glt {

inline constexpr std::int64_t kUnreachedLevel =
    std::numeric_limits<std::int64_t>::max();
inline constexpr double kUnreachedDist =
    std::numeric_limits<double>::infinity();

struct PageRankResult {
  std::vector<double> ranks;  // by global id
  BenchTrace trace;
};

/// Bulk-synchronous PageRank: one all-to-all per iteration, ghost updates
/// aggregated to one record per (source task, remote vertex). Dangling
/// mass is redistributed uniformly. Update order is fixed (ascending
/// global id, peers in task order) so reruns are bit-identical and
/// different layouts agree to floating rounding.
PageRankResult pagerank(const DistributedGraph& dg, int iters,
                        double damping = 0.85);

struct BfsResult {
  std::vector<std::int64_t> levels;  // by global id; kUnreachedLevel if unreached
  BenchTrace trace;
};

/// Level-synchronous BFS (local discovery, all-to-all exchange, local
/// update). Every reachable vertex crosses the wire at most once: the
/// exchange carries only settling discoveries, owner-local discoveries
/// win, and one source task per vertex sends.
BfsResult bfs(const DistributedGraph& dg, VertexId root);

struct SsspResult {
  std::vector<double> dist;  // by global id; kUnreachedDist if unreached
  BenchTrace trace;
};

/// Distributed delta-stepping. Adjacencies are semi-sorted light-first
/// against delta, buckets are processed in ascending index with light
/// sub-rounds then one heavy round, and (when `filter` is on) a per-task
/// tentative-distance array over the unique remote adjacencies suppresses
/// any send that does not improve on what was already proposed.
SsspResult sssp_delta(const DistributedGraph& dg, VertexId root, double delta,
                      bool filter = true);

/// delta heuristic: average weight times n/m.
double default_delta(const DistributedGraph& dg);

/// Tree template for color-coding counts.
struct TemplateTree {
  int k = 0;
  std::vector<std::pair<int, int>> edges;

  static TemplateTree path(int k);
  static TemplateTree star(int k);  // vertex 0 is the hub
  static TemplateTree single_edge() { return path(2); }

  /// Throws DomainError unless connected and acyclic with k-1 edges.
  void validate() const;
  std::int64_t automorphisms() const;  // |Aut|, AHU canonical counting
};

TemplateTree load_template(const std::filesystem::path& path);

struct SubgraphCountResult {
  double estimate = 0.0;  // unordered non-induced embeddings
  BenchTrace trace;
};

/// Color-coding subgraph count over the distributed DP table: per
/// iteration a random k-coloring keyed on `color_keys` (defaults to global
/// ids), a bottom-up DP along the template decomposition with one
/// all-to-all of needed neighbor rows per combine, and the unbiased
/// estimate colorful * k^k/k! / |Aut| averaged over iterations. Expects an
/// undirected graph.
SubgraphCountResult count_subgraphs(const DistributedGraph& dg,
                                    const TemplateTree& tmpl, int iterations,
                                    std::uint64_t seed,
                                    std::span<const VertexId> color_keys = {});

}  // namespace glt
