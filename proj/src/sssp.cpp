#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "glt/analytics.hpp"
#include "glt/error.hpp"

namespace glt {

double default_delta(const DistributedGraph& dg) {
  double wsum = 0.0;
  std::int64_t arcs = 0;
  for (const TaskGraph& tg : dg.tasks) {
    for (std::size_t a = 0; a < tg.col.size(); ++a) wsum += tg.arc_weight(a);
    arcs += static_cast<std::int64_t>(tg.col.size());
  }
  if (arcs == 0) return 1.0;
  double avg_w = wsum / static_cast<double>(arcs);
  return std::max(avg_w * static_cast<double>(dg.n) /
                      static_cast<double>(arcs),
                  1e-9);
}

SsspResult sssp_delta(const DistributedGraph& dg, VertexId root, double delta,
                      bool filter) {
  if (root < 0 || root >= dg.n) throw DomainError("sssp: root out of range");
  if (!(delta > 0)) throw DomainError("sssp: delta > 0 required");
  for (const TaskGraph& tg : dg.tasks)
    for (double w : tg.weights)
      if (w < 0) throw DomainError("sssp: negative weight");

  auto t0 = std::chrono::steady_clock::now();
  TraceBuilder tb("sssp", dg.p);
  const std::int64_t kNoBucket = -1;

  // Semi-sort: per owned vertex the light arcs (w <= delta) come first.
  struct LocalArcs {
    std::vector<std::int64_t> arc;        // arc indices, light block first
    std::vector<std::int64_t> light_end;  // per owned vertex
    std::vector<std::int64_t> begin;      // per owned vertex
  };
  std::vector<LocalArcs> local(dg.p);
  for (int t = 0; t < dg.p; ++t) {
    const TaskGraph& tg = dg.tasks[t];
    LocalArcs& la = local[t];
    la.begin.resize(tg.n_owned() + 1);
    la.light_end.resize(tg.n_owned());
    la.arc.reserve(tg.col.size());
    for (std::int64_t i = 0; i < tg.n_owned(); ++i) {
      la.begin[i] = static_cast<std::int64_t>(la.arc.size());
      for (std::int64_t a = tg.row_offsets[i]; a < tg.row_offsets[i + 1]; ++a)
        if (tg.arc_weight(a) <= delta) la.arc.push_back(a);
      la.light_end[i] = static_cast<std::int64_t>(la.arc.size());
      for (std::int64_t a = tg.row_offsets[i]; a < tg.row_offsets[i + 1]; ++a)
        if (tg.arc_weight(a) > delta) la.arc.push_back(a);
    }
    la.begin[tg.n_owned()] = static_cast<std::int64_t>(la.arc.size());
  }

  std::vector<double> dist(dg.n, kUnreachedDist);
  auto bucket_of = [&](double d) -> std::int64_t {
    if (std::isinf(delta)) return 0;
    return static_cast<std::int64_t>(std::floor(d / delta));
  };
  // Memory-optimized queue stand-in: sparse ordered buckets of owned ids.
  std::vector<std::map<std::int64_t, std::vector<VertexId>>> buckets(dg.p);
  // Tentative-distance cache over each task's unique remote adjacencies;
  // suppresses sends that cannot improve the remote value (opt iii).
  std::vector<std::vector<double>> tent(dg.p);
  for (int t = 0; t < dg.p; ++t)
    tent[t].assign(dg.tasks[t].ghosts.size(), kUnreachedDist);
  // Per-round remote proposals, aggregated to the per-ghost minimum.
  std::vector<std::vector<double>> round_prop(dg.p);
  std::vector<std::vector<std::int64_t>> round_touched(dg.p);
  for (int t = 0; t < dg.p; ++t)
    round_prop[t].assign(dg.tasks[t].ghosts.size(), kUnreachedDist);

  dist[root] = 0.0;
  buckets[dg.owner[root]][0].push_back(root);

  std::vector<char> in_epoch(dg.n, 0);
  std::vector<VertexId> epoch_settled;  // global ids, all tasks
  std::vector<VertexId> active;

  auto relax_local = [&](int t, VertexId v, double nd) {
    if (nd < dist[v]) {
      dist[v] = nd;
      buckets[t][bucket_of(nd)].push_back(v);
    }
  };
  auto propose_remote = [&](int t, std::int64_t gi, double nd) {
    if (nd < round_prop[t][gi]) {
      if (std::isinf(round_prop[t][gi])) round_touched[t].push_back(gi);
      round_prop[t][gi] = nd;
    }
  };
  // One all-to-all of the aggregated per-ghost proposals.
  auto exchange = [&]() {
    for (int t = 0; t < dg.p; ++t) {
      const TaskGraph& tg = dg.tasks[t];
      std::sort(round_touched[t].begin(), round_touched[t].end());
      for (std::int64_t gi : round_touched[t]) {
        double nd = round_prop[t][gi];
        round_prop[t][gi] = kUnreachedDist;
        if (filter) {
          if (nd >= tent[t][gi]) continue;
          tent[t][gi] = nd;
        }
        int to = tg.ghost_owner[gi];
        tb.add_send(t, to, 1);
        tb.add_recv(to, t, 1);
        tb.add_compute(to, 1);
        relax_local(to, tg.ghosts[gi], nd);
      }
      round_touched[t].clear();
    }
  };

  while (true) {
    std::int64_t b = kNoBucket;
    for (int t = 0; t < dg.p; ++t) {
      while (!buckets[t].empty() && buckets[t].begin()->second.empty())
        buckets[t].erase(buckets[t].begin());
      if (!buckets[t].empty()) {
        std::int64_t f = buckets[t].begin()->first;
        if (b == kNoBucket || f < b) b = f;
      }
    }
    if (b == kNoBucket) break;

    epoch_settled.clear();
    // Light sub-rounds: drain bucket b, relax light arcs, exchange, and
    // repeat while reinsertions keep the bucket alive anywhere.
    while (true) {
      bool any_active = false;
      tb.begin_phase();
      for (int t = 0; t < dg.p; ++t) {
        auto it = buckets[t].find(b);
        if (it == buckets[t].end()) continue;
        active.clear();
        for (VertexId v : it->second) {
          if (bucket_of(dist[v]) != b) continue;  // stale entry
          active.push_back(v);
        }
        buckets[t].erase(it);
        std::sort(active.begin(), active.end());
        active.erase(std::unique(active.begin(), active.end()), active.end());
        if (active.empty()) continue;
        any_active = true;
        const TaskGraph& tg = dg.tasks[t];
        const LocalArcs& la = local[t];
        for (VertexId v : active) {
          if (!in_epoch[v]) {
            in_epoch[v] = 1;
            epoch_settled.push_back(v);
          }
          std::int64_t i = dg.local_index[v];
          tb.add_compute(t, la.light_end[i] - la.begin[i]);
          for (std::int64_t ai = la.begin[i]; ai < la.light_end[i]; ++ai) {
            std::int64_t a = la.arc[ai];
            double nd = dist[v] + tg.arc_weight(a);
            std::int64_t col = tg.col[a];
            if (tg.is_ghost(col))
              propose_remote(t, col - tg.n_owned(), nd);
            else
              relax_local(t, tg.owned[col], nd);
          }
        }
      }
      if (!any_active) {
        tb.end_phase();
        break;
      }
      exchange();
      tb.end_phase();
    }
    // Heavy round for everything settled in this bucket epoch.
    tb.begin_phase();
    std::sort(epoch_settled.begin(), epoch_settled.end());
    for (VertexId v : epoch_settled) {
      in_epoch[v] = 0;
      int t = dg.owner[v];
      const TaskGraph& tg = dg.tasks[t];
      const LocalArcs& la = local[t];
      std::int64_t i = dg.local_index[v];
      tb.add_compute(t, la.begin[i + 1] - la.light_end[i]);
      for (std::int64_t ai = la.light_end[i]; ai < la.begin[i + 1]; ++ai) {
        std::int64_t a = la.arc[ai];
        double nd = dist[v] + tg.arc_weight(a);
        std::int64_t col = tg.col[a];
        if (tg.is_ghost(col))
          propose_remote(t, col - tg.n_owned(), nd);
        else
          relax_local(t, tg.owned[col], nd);
      }
    }
    exchange();
    tb.end_phase();
  }

  SsspResult res;
  res.dist = std::move(dist);
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  res.trace = tb.finish(dt.count());
  return res;
}

}  // namespace glt
