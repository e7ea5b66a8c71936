#pragma once

#include <cstdint>

#include "glt/graph.hpp"

namespace glt {

Graph gen_path(VertexId n);
Graph gen_cycle(VertexId n);
Graph gen_star(VertexId n);  // K_{1,n-1}, vertex 0 is the hub

/// Two cliques of `clique_size` vertices joined by a single edge.
Graph gen_clique_pair(VertexId clique_size);

/// Planted-partition block model: `blocks` contiguous groups of
/// `block_size` vertices; each intra-block pair is an edge with
/// probability p_in, each inter-block pair with probability p_out.
/// blocks=1 degenerates to Erdos-Renyi G(n, p_in).
Graph gen_planted(int blocks, VertexId block_size, double p_in, double p_out,
                  std::uint64_t seed);

/// Preferential attachment: starts from a clique on attach+1 vertices,
/// each new vertex links to `attach` distinct existing vertices chosen
/// proportionally to degree. Produces the skewed degree distributions
/// typical of small-world networks.
Graph gen_ba(VertexId n, int attach, std::uint64_t seed);

/// Attaches uniform integer weights in [lo, hi] to every edge, symmetric
/// across arc directions. Weights are a pure function of (seed, endpoint
/// pair), so relabeling-then-weighting commutes with weighting-then-
/// relabeling.
void add_uniform_int_weights(Graph& g, int lo, int hi, std::uint64_t seed);

}  // namespace glt
