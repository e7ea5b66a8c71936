#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "glt/graph.hpp"

namespace glt {

/// Vertex -> part assignment with cached per-part tallies.
///
/// For an undirected graph the tallies are in undirected-edge units:
/// part_edges[k] counts edges with at least one endpoint in k (so cut
/// edges count once per incident part, matching per-task storage of a 1D
/// CSR distribution), and part_cut[k] counts cut edges incident to k.
/// For a directed graph the same rules apply per arc.
struct Partition {
  int p = 1;
  std::vector<std::int32_t> assignment;
  std::vector<std::int64_t> part_vertices;
  std::vector<std::int64_t> part_edges;
  std::vector<std::int64_t> part_cut;
};

struct PartitionConfig {
  int p = 1;
  double vertex_imbalance = 1.10;
  double edge_imbalance = 1.50;
  int k1 = 3;        // vertex-balance/refine rounds
  int k2 = 3;        // edge-balance(+max-cut)/refine rounds
  int lp_iters = 10; // label-propagation sweep cap
  std::uint64_t seed = 0;
  enum class Mode { M, MM } mode = Mode::MM;
  bool deterministic = true;  // false: racy parallel propagation sweeps
  int threads = 0;            // 0 = hardware concurrency
};

/// Recomputes the cached tallies from the assignment.
void recompute_tallies(const Graph& g, Partition& part);

/// Wraps an assignment vector and fills in the tallies.
Partition make_partition(const Graph& g, int p,
                         std::vector<std::int32_t> assignment);

/// I.i.d. uniform part per vertex under the seeded generator.
Partition partition_random(const Graph& g, int p, std::uint64_t seed);

/// Contiguous ranges of vertex ids, sizes equal within one.
Partition partition_block(const Graph& g, int p);

struct LpResult {
  Partition partition;
  bool vertex_balanced = true;
  bool edge_balanced = true;
  bool ok() const { return vertex_balanced && edge_balanced; }
};

/// Label-propagation partitioner: degree-weighted propagation from p random
/// seed vertices, then k1 rounds of vertex balancing + cut refinement and
/// k2 rounds of edge balancing (mode MM also discounts high-cut parts to
/// shrink the max per-part cut) + cut refinement. Never returns an empty
/// part; unmet constraints are reported through the flags, never hidden.
LpResult partition_lp(const Graph& g, const PartitionConfig& cfg);

/// One edge-cut refinement pass to a fixpoint; EC never increases and
/// moves respect the balance limits. Exposed for testing.
Partition refine_edge_cut(const Graph& g, Partition part,
                          const PartitionConfig& cfg);

enum class BalanceTarget { vertices, edges_maxcut };

/// One balancing stage for the given constraint; the max constrained
/// tally never increases and empty parts are repopulated. Exposed for
/// testing.
Partition balance_stage(const Graph& g, Partition part,
                        const PartitionConfig& cfg, BalanceTarget target);

/// Text format: one part id per line, line i = vertex i.
Partition load_partition(const std::filesystem::path& path, const Graph& g,
                         int expected_p = 0);
void save_partition(const Partition& part, const std::filesystem::path& path);

}  // namespace glt
