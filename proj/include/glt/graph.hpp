#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace glt {

using VertexId = std::int64_t;

/// Immutable CSR adjacency structure. Undirected graphs store every edge
/// as two directed arcs; `m` always counts arcs. Safe for unlimited
/// concurrent readers once built.
struct Graph {
  VertexId n = 0;
  std::int64_t m = 0;
  std::vector<std::int64_t> row_offsets;  // n+1, nondecreasing
  std::vector<VertexId> adjacency;        // m
  std::vector<double> weights;            // empty (unweighted) or m
  bool directed = false;

  bool has_weights() const { return !weights.empty(); }

  std::int64_t degree(VertexId v) const {
    return row_offsets[v + 1] - row_offsets[v];
  }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency.data() + row_offsets[v],
            static_cast<std::size_t>(degree(v))};
  }

  std::span<const double> arc_weights(VertexId v) const {
    if (weights.empty()) return {};
    return {weights.data() + row_offsets[v],
            static_cast<std::size_t>(degree(v))};
  }

  double arc_weight(std::int64_t arc) const {
    return weights.empty() ? 1.0 : weights[arc];
  }

  /// Number of undirected edges. Only meaningful when !directed.
  std::int64_t undirected_edge_count() const { return m / 2; }

  bool rows_sorted() const;

  /// Checks the structural invariants (offset monotonicity, id ranges,
  /// weight vector shape, and arc symmetry with equal weights when
  /// undirected). Throws DomainError on violation.
  void validate() const;
};

struct Arc {
  VertexId u;
  VertexId v;
  double w;
};

/// Builds a CSR graph from an arc list. Arcs are taken as given: for an
/// undirected graph the caller supplies both directions.
Graph build_graph(VertexId n, const std::vector<Arc>& arcs, bool directed,
                  bool weighted, bool sort_rows);

struct DegreeStats {
  double d_avg = 0.0;  // m/n in arc units; equals the mean degree when undirected
  std::int64_t d_max = 0;
  std::optional<std::int64_t> approx_diameter;  // double-sweep BFS estimate
};

/// Degree summary; the diameter estimate runs two BFS sweeps over the
/// undirected view and is informational only.
DegreeStats degree_stats(const Graph& g, bool with_diameter = false);

/// Undirected closure: the arc set unioned with its reverses. Duplicate
/// arcs collapse; when the two directions carry different weights the
/// minimum is kept. Rows come out sorted.
Graph symmetrize(const Graph& g);

/// Relabels vertices by a bijection old id -> new id. Rows are re-sorted
/// ascending and weights carried along. Throws DomainError if perm is not
/// a bijection on [0, n).
Graph apply_ordering(const Graph& g, std::span<const VertexId> perm);

struct PreprocessResult {
  static constexpr VertexId kDropped = -1;
  Graph graph;
  std::vector<VertexId> id_map;  // old id -> new id, kDropped if removed
};

/// Cleanup pipeline: drops self-loops and multi-arcs, removes degree-0
/// vertices, and keeps the largest weakly connected component (ties broken
/// by smallest minimum original id). Ids are compacted in ascending
/// original order; rows come out sorted. Throws DomainError if nothing
/// survives.
PreprocessResult preprocess(const Graph& g);

}  // namespace glt
