#include "glt/distributed.hpp"

#include <algorithm>

#include "glt/error.hpp"

namespace glt {

void DistributedGraph::validate() const {
  if (static_cast<int>(tasks.size()) != p)
    throw DomainError("distributed: task count != p");
  std::int64_t arcs = 0;
  std::int64_t owned = 0;
  for (int t = 0; t < p; ++t) {
    const TaskGraph& tg = tasks[t];
    owned += tg.n_owned();
    arcs += static_cast<std::int64_t>(tg.col.size());
    if (!std::is_sorted(tg.owned.begin(), tg.owned.end()))
      throw DomainError("distributed: owned ids not sorted");
    if (!std::is_sorted(tg.ghosts.begin(), tg.ghosts.end()))
      throw DomainError("distributed: ghost ids not sorted");
    for (std::size_t i = 0; i < tg.owned.size(); ++i) {
      if (owner[tg.owned[i]] != t || local_index[tg.owned[i]] !=
                                         static_cast<std::int64_t>(i))
        throw DomainError("distributed: owner maps inconsistent");
    }
    for (std::size_t gi = 0; gi < tg.ghosts.size(); ++gi) {
      if (tg.ghost_owner[gi] != owner[tg.ghosts[gi]] || tg.ghost_owner[gi] == t)
        throw DomainError("distributed: ghost table inconsistent");
    }
  }
  if (owned != n) throw DomainError("distributed: ownership not a partition");
  if (arcs != m) throw DomainError("distributed: arc sets do not cover m");
}

DistributedGraph distribute(const Graph& g, const Partition& part) {
  if (static_cast<VertexId>(part.assignment.size()) != g.n)
    throw DomainError("distribute: partition length != n");
  DistributedGraph dg;
  dg.p = part.p;
  dg.n = g.n;
  dg.m = g.m;
  dg.directed = g.directed;
  dg.weighted = g.has_weights();
  dg.owner.assign(part.assignment.begin(), part.assignment.end());
  dg.local_index.assign(g.n, 0);
  dg.tasks.resize(part.p);

  for (VertexId v = 0; v < g.n; ++v) {
    TaskGraph& tg = dg.tasks[dg.owner[v]];
    dg.local_index[v] = tg.n_owned();
    tg.owned.push_back(v);  // ascending: v scans upward
  }

  for (int t = 0; t < part.p; ++t) {
    TaskGraph& tg = dg.tasks[t];
    tg.row_offsets.assign(tg.owned.size() + 1, 0);
    // Ghosts: sorted unique remote targets.
    for (VertexId u : tg.owned) {
      for (VertexId v : g.neighbors(u)) {
        if (dg.owner[v] != t) tg.ghosts.push_back(v);
      }
    }
    std::sort(tg.ghosts.begin(), tg.ghosts.end());
    tg.ghosts.erase(std::unique(tg.ghosts.begin(), tg.ghosts.end()),
                    tg.ghosts.end());
    tg.ghost_owner.resize(tg.ghosts.size());
    for (std::size_t gi = 0; gi < tg.ghosts.size(); ++gi)
      tg.ghost_owner[gi] = dg.owner[tg.ghosts[gi]];

    std::int64_t arcs = 0;
    for (std::size_t i = 0; i < tg.owned.size(); ++i) {
      arcs += g.degree(tg.owned[i]);
      tg.row_offsets[i + 1] = arcs;
    }
    tg.col.resize(arcs);
    if (dg.weighted) tg.weights.resize(arcs);
    std::int64_t at = 0;
    for (VertexId u : tg.owned) {
      auto nbrs = g.neighbors(u);
      auto ws = g.arc_weights(u);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        VertexId v = nbrs[i];
        if (dg.owner[v] == t) {
          tg.col[at] = dg.local_index[v];
        } else {
          auto it = std::lower_bound(tg.ghosts.begin(), tg.ghosts.end(), v);
          tg.col[at] = tg.n_owned() + (it - tg.ghosts.begin());
        }
        if (dg.weighted) tg.weights[at] = ws[i];
        ++at;
      }
    }
  }
  return dg;
}

}  // namespace glt
