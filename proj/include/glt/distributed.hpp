#pragma once

#include <cstdint>
#include <vector>

#include "glt/graph.hpp"
#include "glt/partition.hpp"

namespace glt {

/// One simulated task's share of a 1D vertex distribution: the local CSR
/// of its owned vertices' out-arcs, with remote targets routed through a
/// sorted ghost table.
struct TaskGraph {
  std::vector<VertexId> owned;            // ascending global ids
  std::vector<std::int64_t> row_offsets;  // owned.size()+1
  // Encoded columns: values < owned.size() are local indices, values >=
  // owned.size() address ghosts[value - owned.size()].
  std::vector<std::int64_t> col;
  std::vector<double> weights;      // empty or aligned with col
  std::vector<VertexId> ghosts;     // ascending global ids
  std::vector<std::int32_t> ghost_owner;

  std::int64_t n_owned() const {
    return static_cast<std::int64_t>(owned.size());
  }
  bool is_ghost(std::int64_t c) const { return c >= n_owned(); }
  double arc_weight(std::int64_t arc) const {
    return weights.empty() ? 1.0 : weights[arc];
  }
};

struct DistributedGraph {
  int p = 1;
  VertexId n = 0;
  std::int64_t m = 0;
  bool directed = false;
  bool weighted = false;
  std::vector<TaskGraph> tasks;
  std::vector<std::int32_t> owner;        // global id -> task
  std::vector<std::int64_t> local_index;  // global id -> index in owner's `owned`

  /// Throws DomainError if the structure is inconsistent with itself.
  void validate() const;
};

/// Splits g across part.p simulated tasks. Ghost construction is
/// deterministic (sorted global ids).
DistributedGraph distribute(const Graph& g, const Partition& part);

}  // namespace glt
