#pragma once

#include <filesystem>

#include "glt/graph.hpp"

namespace glt {

enum class GraphFormat { edgelist, metis, csr };

/// Whitespace-separated "u v [w]" lines; '#' and '%' start comments.
/// Ids are compacted to [0, n) in first-occurrence order; duplicate lines
/// are preserved (preprocess collapses them). Missing weights default to 1.
Graph load_edge_list(const std::filesystem::path& path, bool directed);
void save_edge_list(const Graph& g, const std::filesystem::path& path);

/// Standard METIS ASCII graph: 1-indexed adjacency, optional fmt code for
/// edge weights (vertex weights are skipped, vertex sizes rejected).
/// Adjacency must be symmetric with equal weights.
Graph load_metis(const std::filesystem::path& path);
void save_metis(const Graph& g, const std::filesystem::path& path);

/// Binary CSR snapshot, little-endian:
///   magic "GLCSR1" | u8 flags (bit0 directed, bit1 weighted) | u8 zero |
///   u64 n | u64 m | i64 row_offsets[n+1] | i64 adjacency[m] |
///   f64 weights[m] when flagged.
Graph load_csr(const std::filesystem::path& path);
void save_csr(const Graph& g, const std::filesystem::path& path);

/// Dispatch by format. `directed` only applies to edge lists; CSR files
/// are self-describing and METIS graphs are undirected.
Graph load_graph(const std::filesystem::path& path, GraphFormat format,
                 bool directed = false);
void save_graph(const Graph& g, const std::filesystem::path& path,
                GraphFormat format);

}  // namespace glt
