#include <chrono>

#include "glt/analytics.hpp"
#include "glt/error.hpp"

namespace glt {

PageRankResult pagerank(const DistributedGraph& dg, int iters,
                        double damping) {
  if (iters < 1) throw DomainError("pagerank: iters >= 1 required");
  auto t0 = std::chrono::steady_clock::now();
  const VertexId n = dg.n;
  TraceBuilder tb("pagerank", dg.p);

  std::vector<double> rank(n, n > 0 ? 1.0 / static_cast<double>(n) : 0.0);
  std::vector<double> acc(n, 0.0);
  std::vector<std::vector<double>> ghost_acc(dg.p);
  for (int t = 0; t < dg.p; ++t)
    ghost_acc[t].assign(dg.tasks[t].ghosts.size(), 0.0);

  for (int iter = 0; iter < iters; ++iter) {
    tb.begin_phase();
    // Local discovery: push rank/outdeg along owned rows. Owned target
    // accumulators update in place, remote targets aggregate per ghost.
    double dangling = 0.0;
    for (int t = 0; t < dg.p; ++t) {
      const TaskGraph& tg = dg.tasks[t];
      for (std::int64_t i = 0; i < tg.n_owned(); ++i) {
        VertexId u = tg.owned[i];
        std::int64_t deg = tg.row_offsets[i + 1] - tg.row_offsets[i];
        if (deg == 0) {
          dangling += rank[u];
          continue;
        }
        double c = rank[u] / static_cast<double>(deg);
        for (std::int64_t a = tg.row_offsets[i]; a < tg.row_offsets[i + 1];
             ++a) {
          std::int64_t col = tg.col[a];
          if (tg.is_ghost(col))
            ghost_acc[t][col - tg.n_owned()] += c;
          else
            acc[tg.owned[col]] += c;
        }
        tb.add_compute(t, deg);
      }
    }
    // All-to-all: one record per (source task, referenced remote vertex).
    // Ghost tables hold exactly the referenced remote vertices, and every
    // referenced vertex carries positive mass, so the volume is the
    // unique-boundary-target count regardless of arc multiplicity.
    for (int t = 0; t < dg.p; ++t) {
      const TaskGraph& tg = dg.tasks[t];
      for (std::size_t gi = 0; gi < tg.ghosts.size(); ++gi) {
        int to = tg.ghost_owner[gi];
        acc[tg.ghosts[gi]] += ghost_acc[t][gi];
        ghost_acc[t][gi] = 0.0;
        tb.add_send(t, to, 1);
        tb.add_recv(to, t, 1);
        tb.add_compute(to, 1);
      }
    }
    // Local update with uniform dangling redistribution.
    double base = n > 0 ? (1.0 - damping) / static_cast<double>(n) : 0.0;
    double dangling_share =
        n > 0 ? damping * dangling / static_cast<double>(n) : 0.0;
    for (int t = 0; t < dg.p; ++t) {
      const TaskGraph& tg = dg.tasks[t];
      for (VertexId u : tg.owned) {
        rank[u] = base + damping * acc[u] + dangling_share;
        acc[u] = 0.0;
      }
      tb.add_compute(t, tg.n_owned());
    }
    tb.end_phase();
  }

  PageRankResult res;
  res.ranks = std::move(rank);
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  res.trace = tb.finish(dt.count());
  return res;
}

}  // namespace glt
