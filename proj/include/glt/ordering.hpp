#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "glt/graph.hpp"
#include "glt/partition.hpp"

namespace glt {

enum class OrderingScope { global, per_part };
enum class OrderingStrategy { random, rcm, dgl };

/// Bijective old id -> new id relabeling. In per_part scope the new ids of
/// part k form the contiguous range starting at the prefix sum of part
/// sizes.
struct Ordering {
  std::vector<VertexId> perm;
  OrderingScope scope = OrderingScope::global;
  int parts = 1;

  /// Throws DomainError unless perm is a bijection on [0, n).
  void validate() const;
};

Ordering order_identity(const Graph& g);

/// Uniform permutation from a seeded shuffle.
Ordering order_random(const Graph& g, std::uint64_t seed);

/// BFS-level ordering: from a random minimum-degree root, build level sets
/// in queue order, then assign new ids walking the levels deepest-first.
/// No sorting anywhere. Disconnected remainders are handled per component
/// in decreasing size order. `forced_root` pins the root of its component
/// (testing hook).
Ordering order_dgl(const Graph& g, std::uint64_t seed,
                   std::optional<VertexId> forced_root = std::nullopt);

/// Classic reverse Cuthill-McKee: BFS visiting children in ascending
/// degree order, labels reversed (per component).
Ordering order_rcm(const Graph& g, std::uint64_t seed,
                   std::optional<VertexId> forced_root = std::nullopt);

/// Applies the strategy independently to every part-induced subgraph;
/// parts are laid out contiguously in part-id order.
Ordering order_per_part(const Graph& g, const Partition& part,
                        OrderingStrategy strategy, std::uint64_t seed);

Ordering order_global(const Graph& g, OrderingStrategy strategy,
                      std::uint64_t seed);

Graph apply_ordering(const Graph& g, const Ordering& ord);

/// Carries a vertex->part assignment through an ordering.
std::vector<std::int32_t> permute_assignment(
    const std::vector<std::int32_t>& assignment,
    std::span<const VertexId> perm);

/// Text format: one integer per line, line i = new id of old vertex i.
Ordering load_ordering(const std::filesystem::path& path);
void save_ordering(const Ordering& ord, const std::filesystem::path& path);

}  // namespace glt
