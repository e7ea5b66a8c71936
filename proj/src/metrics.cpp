#include "glt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "glt/error.hpp"

namespace glt {

namespace {

void require_partition(const Graph& g, const Partition& part) {
  if (static_cast<VertexId>(part.assignment.size()) != g.n)
    throw DomainError("metrics: partition length != n");
  for (std::int32_t a : part.assignment)
    if (a < 0 || a >= part.p)
      throw DomainError("metrics: part id out of range");
}

void require_undirected(const Graph& g, const char* what) {
  if (g.directed)
    throw DomainError(std::string(what) + ": undirected graph required");
}

void require_sorted(const Graph& g, const char* what) {
  if (!g.rows_sorted())
    throw DomainError(std::string(what) + ": sorted adjacency required");
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

std::pair<double, double> balance(const Graph& g, const Partition& part) {
  require_undirected(g, "balance");
  require_partition(g, part);
  std::vector<std::int64_t> pv(part.p, 0), pe(part.p, 0);
  for (std::int32_t a : part.assignment) pv[a]++;
  for (VertexId u = 0; u < g.n; ++u) {
    std::int32_t pu = part.assignment[u];
    for (VertexId v : g.neighbors(u)) {
      if (v <= u) continue;
      std::int32_t pw = part.assignment[v];
      pe[pu]++;
      if (pw != pu) pe[pw]++;
    }
  }
  double n_avg = static_cast<double>(g.n) / part.p;
  double e_avg = static_cast<double>(g.undirected_edge_count()) / part.p;
  double v_max = g.n == 0 ? 0.0
                          : *std::max_element(pv.begin(), pv.end()) / n_avg;
  double e_max = g.m == 0 ? 0.0
                          : *std::max_element(pe.begin(), pe.end()) / e_avg;
  return {v_max, e_max};
}

std::pair<double, std::int64_t> edge_cut(const Graph& g,
                                         const Partition& part) {
  require_partition(g, part);
  std::int64_t cut_arcs = 0;
  for (VertexId u = 0; u < g.n; ++u) {
    for (VertexId v : g.neighbors(u)) {
      if (part.assignment[u] != part.assignment[v]) cut_arcs++;
    }
  }
  double frac = g.m == 0 ? 0.0
                         : static_cast<double>(cut_arcs) /
                               static_cast<double>(g.m);
  return {frac, cut_arcs};
}

std::int64_t max_part_cut(const Graph& g, const Partition& part) {
  require_undirected(g, "max_part_cut");
  require_partition(g, part);
  std::vector<std::int64_t> cut(part.p, 0);
  for (VertexId u = 0; u < g.n; ++u) {
    for (VertexId v : g.neighbors(u)) {
      if (v <= u) continue;
      std::int32_t pu = part.assignment[u], pv = part.assignment[v];
      if (pu != pv) {
        cut[pu]++;
        cut[pv]++;
      }
    }
  }
  return cut.empty() ? 0 : *std::max_element(cut.begin(), cut.end());
}

double colocation_ratio(const Graph& g) {
  require_sorted(g, "colocation_ratio");
  std::int64_t close_pairs = 0, pairs = 0;
  for (VertexId v = 0; v < g.n; ++v) {
    auto nbrs = g.neighbors(v);
    for (std::size_t i = 1; i < nbrs.size(); ++i) {
      pairs++;
      if (nbrs[i] - nbrs[i - 1] <= 1) close_pairs++;
    }
  }
  return pairs == 0 ? 0.0
                    : static_cast<double>(close_pairs) /
                          static_cast<double>(pairs);
}

double gap_sum_ratio(const Graph& g) {
  require_sorted(g, "gap_sum_ratio");
  if (g.n < 2 || g.m == 0) return 0.0;
  double cost = 0.0;
  for (VertexId v = 0; v < g.n; ++v) {
    auto nbrs = g.neighbors(v);
    if (nbrs.empty()) continue;
    // Forward gap from the row's vertex to its first neighbor, then the
    // gaps between consecutive neighbors.
    double first_gap =
        std::max<double>(0.0, static_cast<double>(nbrs[0] - v));
    cost += std::log2(1.0 + first_gap);
    for (std::size_t i = 1; i < nbrs.size(); ++i)
      cost += std::log2(1.0 + static_cast<double>(nbrs[i] - nbrs[i - 1]));
  }
  double worst = static_cast<double>(g.m) * std::log2(static_cast<double>(g.n));
  double ratio = cost / worst;
  return std::clamp(ratio, 0.0, 1.0);
}

double replication_ratio(const Graph& g, const Partition& part, int hops) {
  require_undirected(g, "replication_ratio");
  require_partition(g, part);
  if (hops < 1) throw DomainError("replication_ratio: hops >= 1 required");
  if (g.m == 0) return 0.0;

  std::int64_t stored_total = 0;
  std::vector<std::int64_t> dist(g.n);
  std::vector<VertexId> queue;
  queue.reserve(g.n);
  for (std::int32_t k = 0; k < part.p; ++k) {
    // Multi-source BFS from the owned set, truncated at hops-1.
    std::fill(dist.begin(), dist.end(), std::int64_t{-1});
    queue.clear();
    for (VertexId v = 0; v < g.n; ++v) {
      if (part.assignment[v] == k) {
        dist[v] = 0;
        queue.push_back(v);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId u = queue[head];
      if (dist[u] >= hops - 1) continue;
      for (VertexId v : g.neighbors(u)) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (VertexId u = 0; u < g.n; ++u) {
      if (dist[u] < 0 || dist[u] > hops - 1) continue;
      for (VertexId v : g.neighbors(u)) {
        if (v < u && dist[v] >= 0 && dist[v] <= hops - 1) continue;  // counted at v
        stored_total++;
      }
    }
  }
  return static_cast<double>(stored_total) /
         static_cast<double>(g.undirected_edge_count());
}

LayoutReport layout_report(const Graph& g, const Partition* part,
                           std::optional<int> hops) {
  LayoutReport r;
  if (part) {
    auto [v_max, e_max] = balance(g, *part);
    r.v_max = v_max;
    r.e_max = e_max;
    auto [frac, arcs] = edge_cut(g, *part);
    (void)arcs;
    r.ec = frac;
    std::int64_t ecm = max_part_cut(g, *part);
    r.ec_max = ecm;
    Partition tallies = *part;
    recompute_tallies(g, tallies);
    std::int64_t cut_sum = 0;
    for (std::int64_t c : tallies.part_cut) cut_sum += c;
    r.ec_max_ratio = cut_sum == 0
                         ? 0.0
                         : static_cast<double>(ecm) * part->p /
                               static_cast<double>(cut_sum);
    for (std::int64_t c : tallies.part_vertices) r.empty_parts += (c == 0);
    if (hops) r.replication = replication_ratio(g, *part, *hops);
  }
  if (g.rows_sorted()) {
    r.coloc = colocation_ratio(g);
    r.gapsum = gap_sum_ratio(g);
  }
  return r;
}

void write_report_header(std::ostream& os) {
  os << "v_max,e_max,ec,ec_max,coloc,gapsum,replication\n";
}

void write_report_row(std::ostream& os, const LayoutReport& r) {
  auto cell = [&](const auto& opt) {
    if (opt) os << fmt(static_cast<double>(*opt));
  };
  cell(r.v_max);
  os << ',';
  cell(r.e_max);
  os << ',';
  cell(r.ec);
  os << ',';
  if (r.ec_max) os << *r.ec_max;
  os << ',';
  cell(r.coloc);
  os << ',';
  cell(r.gapsum);
  os << ',';
  cell(r.replication);
  os << '\n';
}

}  // namespace glt
