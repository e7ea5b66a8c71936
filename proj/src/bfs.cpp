#include <algorithm>
#include <chrono>

#include "glt/analytics.hpp"
#include "glt/error.hpp"

namespace glt {

BfsResult bfs(const DistributedGraph& dg, VertexId root) {
  if (root < 0 || root >= dg.n) throw DomainError("bfs: root out of range");
  auto t0 = std::chrono::steady_clock::now();
  TraceBuilder tb("bfs", dg.p);

  std::vector<std::int64_t> level(dg.n, -1);
  std::vector<std::vector<VertexId>> frontier(dg.p), next(dg.p);
  std::vector<std::vector<VertexId>> remote_cand(dg.p);
  level[root] = 0;
  frontier[dg.owner[root]].push_back(root);

  std::int64_t lvl = 0;
  bool any_frontier = true;
  while (any_frontier) {
    tb.begin_phase();
    // Local discovery: settle owned targets immediately (disjoint across
    // tasks), queue remote targets as proposals.
    for (int t = 0; t < dg.p; ++t) {
      const TaskGraph& tg = dg.tasks[t];
      for (VertexId u : frontier[t]) {
        std::int64_t i = dg.local_index[u];
        tb.add_compute(t, tg.row_offsets[i + 1] - tg.row_offsets[i]);
        for (std::int64_t a = tg.row_offsets[i]; a < tg.row_offsets[i + 1];
             ++a) {
          std::int64_t col = tg.col[a];
          if (tg.is_ghost(col)) {
            remote_cand[t].push_back(tg.ghosts[col - tg.n_owned()]);
          } else {
            VertexId v = tg.owned[col];
            if (level[v] < 0) {
              level[v] = lvl + 1;
              next[t].push_back(v);
            }
          }
        }
      }
    }
    // Exchange: a vertex is settled over the wire exactly once; owner-
    // local discoveries win, then the lowest-index proposing task sends.
    for (int t = 0; t < dg.p; ++t) {
      for (VertexId v : remote_cand[t]) {
        if (level[v] >= 0) continue;
        level[v] = lvl + 1;
        int to = dg.owner[v];
        next[to].push_back(v);
        tb.add_send(t, to, 1);
        tb.add_recv(to, t, 1);
        tb.add_compute(to, 1);
      }
      remote_cand[t].clear();
    }
    any_frontier = false;
    for (int t = 0; t < dg.p; ++t) {
      std::sort(next[t].begin(), next[t].end());
      frontier[t] = std::move(next[t]);
      next[t].clear();
      any_frontier = any_frontier || !frontier[t].empty();
    }
    tb.end_phase();
    ++lvl;
  }

  BfsResult res;
  res.levels.assign(dg.n, kUnreachedLevel);
  for (VertexId v = 0; v < dg.n; ++v)
    if (level[v] >= 0) res.levels[v] = level[v];
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  res.trace = tb.finish(dt.count());
  return res;
}

}  // namespace glt
