#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>

#include "glt/graph.hpp"
#include "glt/partition.hpp"

namespace glt {

/// Quality metrics for one (graph, partition, ordering) triple.
struct LayoutReport {
  std::optional<double> v_max;
  std::optional<double> e_max;
  std::optional<double> ec;            // cut arc fraction in [0,1]
  std::optional<std::int64_t> ec_max;  // max per-part cut edges (raw)
  std::optional<double> ec_max_ratio;  // ec_max / (total per-part cut / p)
  std::optional<double> coloc;
  std::optional<double> gapsum;
  std::optional<double> replication;
  int empty_parts = 0;
};

/// (v_max, e_max): largest per-part vertex/edge tally over the per-part
/// average. Edge ownership: an edge counts for every part owning at least
/// one endpoint. Requires an undirected graph.
std::pair<double, double> balance(const Graph& g, const Partition& part);

/// (fraction, cut arcs): arcs whose endpoints lie in different parts.
std::pair<double, std::int64_t> edge_cut(const Graph& g,
                                         const Partition& part);

/// Max over parts of cut edges incident to the part (each cut edge counts
/// once per incident part). Requires an undirected graph.
std::int64_t max_part_cut(const Graph& g, const Partition& part);

/// Fraction of consecutive sorted-neighbor pairs whose ids differ by at
/// most 1, over all rows. Requires sorted adjacency.
double colocation_ratio(const Graph& g);

/// Normalized log-gap cost: per row, log2(1+gap) over consecutive sorted
/// neighbors plus the forward gap from the row's vertex to its first
/// neighbor, scaled by the worst case m*log2(n). Requires sorted
/// adjacency.
double gap_sum_ratio(const Graph& g);

/// n-hop guarantee storage blowup: part k stores every edge within
/// hops-1 of its owned vertex set; returns total stored over m_und.
/// Requires an undirected graph and hops >= 1.
double replication_ratio(const Graph& g, const Partition& part, int hops);

/// Assembles the full report; `hops` enables the replication column.
/// Locality metrics are skipped when the adjacency is unsorted.
LayoutReport layout_report(const Graph& g, const Partition* part,
                           std::optional<int> hops = std::nullopt);

/// CSV with the documented fixed column order; absent metrics are empty.
void write_report_header(std::ostream& os);
void write_report_row(std::ostream& os, const LayoutReport& r);

}  // namespace glt
