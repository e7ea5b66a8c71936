#include "glt/partition.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>
#include <thread>

#include "glt/error.hpp"
#include "glt/rng.hpp"

namespace glt {

void recompute_tallies(const Graph& g, Partition& part) {
  const int p = part.p;
  if (p < 1) throw DomainError("partition: p >= 1 required");
  if (static_cast<VertexId>(part.assignment.size()) != g.n)
    throw DomainError("partition: assignment length != n");
  part.part_vertices.assign(p, 0);
  part.part_edges.assign(p, 0);
  part.part_cut.assign(p, 0);
  for (std::int32_t a : part.assignment) {
    if (a < 0 || a >= p) throw DomainError("partition: part id out of range");
    part.part_vertices[a]++;
  }
  // Undirected graphs are tallied in undirected-edge units (each edge
  // counted once per incident part), directed graphs per arc. Self-loops
  // are ignored.
  for (VertexId u = 0; u < g.n; ++u) {
    std::int32_t pu = part.assignment[u];
    for (VertexId v : g.neighbors(u)) {
      if (v == u) continue;
      if (!g.directed && u > v) continue;
      std::int32_t pv = part.assignment[v];
      part.part_edges[pu]++;
      if (pv != pu) {
        part.part_edges[pv]++;
        part.part_cut[pu]++;
        part.part_cut[pv]++;
      }
    }
  }
}

Partition make_partition(const Graph& g, int p,
                         std::vector<std::int32_t> assignment) {
  Partition part;
  part.p = p;
  part.assignment = std::move(assignment);
  recompute_tallies(g, part);
  return part;
}

Partition partition_random(const Graph& g, int p, std::uint64_t seed) {
  if (p < 1) throw DomainError("partition_random: p >= 1 required");
  Rng rng = substream(seed, "partition.random");
  std::vector<std::int32_t> assignment(g.n);
  for (VertexId v = 0; v < g.n; ++v)
    assignment[v] = static_cast<std::int32_t>(rng.below(p));
  return make_partition(g, p, std::move(assignment));
}

Partition partition_block(const Graph& g, int p) {
  if (p < 1) throw DomainError("partition_block: p >= 1 required");
  std::vector<std::int32_t> assignment(g.n);
  for (VertexId v = 0; v < g.n; ++v) {
    std::int64_t k = g.n > 0 ? (v * static_cast<std::int64_t>(p)) / g.n : 0;
    assignment[v] = static_cast<std::int32_t>(
        std::min<std::int64_t>(k, p - 1));
  }
  return make_partition(g, p, std::move(assignment));
}

namespace {

// Shared state for the label-propagation stages. Tallies are kept in
// undirected-edge units and updated incrementally per move.
struct Engine {
  const Graph& g;
  PartitionConfig cfg;
  int p;
  std::vector<std::int32_t> label;
  std::vector<std::int64_t> vcount, ecount, cutcount;
  std::int64_t total_cut = 0;  // undirected cut edges
  double vtarget, etarget;
  std::int64_t vlimit, elimit;
  Rng tie_rng;

  // per-vertex scratch
  std::vector<double> score;
  std::vector<std::int64_t> nbr_cnt;
  std::vector<std::int32_t> touched;

  Engine(const Graph& g_, PartitionConfig cfg_, std::vector<std::int32_t> lab)
      : g(g_),
        cfg(cfg_),
        p(cfg_.p),
        label(std::move(lab)),
        tie_rng(substream(cfg_.seed, "lp.ties")),
        score(p, 0.0),
        nbr_cnt(p, 0) {
    vcount.assign(p, 0);
    ecount.assign(p, 0);
    cutcount.assign(p, 0);
    compute_tallies();
    double n_avg = static_cast<double>(g.n) / p;
    double e_avg = static_cast<double>(g.undirected_edge_count()) / p;
    vtarget = cfg.vertex_imbalance * n_avg;
    etarget = cfg.edge_imbalance * e_avg;
    vlimit = std::max<std::int64_t>(
        (g.n + p - 1) / p, static_cast<std::int64_t>(vtarget + 1e-9));
    elimit = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(etarget + 1e-9));
  }

  void compute_tallies() {
    std::fill(vcount.begin(), vcount.end(), 0);
    std::fill(ecount.begin(), ecount.end(), 0);
    std::fill(cutcount.begin(), cutcount.end(), 0);
    total_cut = 0;
    for (VertexId v = 0; v < g.n; ++v) vcount[label[v]]++;
    for (VertexId u = 0; u < g.n; ++u) {
      for (VertexId v : g.neighbors(u)) {
        if (v <= u) continue;
        std::int32_t pu = label[u], pv = label[v];
        ecount[pu]++;
        if (pv != pu) {
          ecount[pv]++;
          cutcount[pu]++;
          cutcount[pv]++;
          total_cut++;
        }
      }
    }
  }

  std::int64_t max_v() const {
    return *std::max_element(vcount.begin(), vcount.end());
  }
  std::int64_t max_e() const {
    return *std::max_element(ecount.begin(), ecount.end());
  }

  void move_vertex(VertexId v, std::int32_t d) {
    std::int32_t s = label[v];
    for (VertexId u : g.neighbors(v)) {
      if (u == v) continue;
      std::int32_t x = label[u];
      if (x == s) {
        ecount[d]++;
        cutcount[s]++;
        cutcount[d]++;
        total_cut++;
      } else if (x == d) {
        ecount[s]--;
        cutcount[s]--;
        cutcount[d]--;
        total_cut--;
      } else {
        ecount[s]--;
        ecount[d]++;
        cutcount[s]--;
        cutcount[d]++;
      }
    }
    vcount[s]--;
    vcount[d]++;
    label[v] = d;
  }

  // Moves one vertex from the fullest part into each empty part.
  void repair_empty() {
    for (std::int32_t e = 0; e < p; ++e) {
      if (vcount[e] != 0) continue;
      std::int32_t donor = 0;
      for (std::int32_t k = 1; k < p; ++k)
        if (vcount[k] > vcount[donor]) donor = k;
      if (vcount[donor] <= 1) continue;
      for (VertexId v = 0; v < g.n; ++v) {
        if (label[v] == donor) {
          move_vertex(v, e);
          break;
        }
      }
    }
  }

  // Neighbor histogram: per-label edge counts and inverse-degree scores.
  // Returns the vertex's non-self degree.
  std::int64_t gather(VertexId v, bool with_scores) {
    touched.clear();
    std::int64_t deg = 0;
    auto nbrs = g.neighbors(v);
    auto ws = g.arc_weights(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      VertexId u = nbrs[i];
      if (u == v) continue;
      deg++;
      std::int32_t x = label[u];
      if (nbr_cnt[x] == 0 && score[x] == 0.0) touched.push_back(x);
      nbr_cnt[x]++;
      if (with_scores) {
        double w = ws.empty() ? 1.0 : ws[i];
        std::int64_t du = g.degree(u);
        score[x] += du > 0 ? w / static_cast<double>(du) : 0.0;
      }
    }
    return deg;
  }

  void reset_scratch() {
    for (std::int32_t x : touched) {
      nbr_cnt[x] = 0;
      score[x] = 0.0;
    }
  }

  // Edge-cut refinement to a fixpoint: each admissible move strictly
  // decreases the cut, so this terminates.
  void refine() {
    for (int sweep = 0; sweep < 64; ++sweep) {
      const std::int64_t cap_v = std::max(vlimit, max_v());
      const std::int64_t cap_e = std::max(elimit, max_e());
      std::int64_t moves = 0;
      for (VertexId v = 0; v < g.n; ++v) {
        std::int32_t s = label[v];
        std::int64_t deg = gather(v, /*with_scores=*/false);
        if (deg == 0) {
          reset_scratch();
          continue;
        }
        std::int32_t best = -1;
        for (std::int32_t x : touched) {
          if (x == s) continue;
          if (best < 0 || nbr_cnt[x] > nbr_cnt[best] ||
              (nbr_cnt[x] == nbr_cnt[best] && x < best))
            best = x;
        }
        if (best >= 0 && nbr_cnt[best] > nbr_cnt[s] && vcount[s] > 1 &&
            vcount[best] + 1 <= cap_v &&
            ecount[best] + (deg - nbr_cnt[best]) <= cap_e) {
          reset_scratch();
          move_vertex(v, best);
          ++moves;
          continue;
        }
        reset_scratch();
      }
      if (moves == 0) break;
    }
  }

  void balance_vertices() {
    repair_empty();
    for (int pass = 0; pass < 24 && max_v() > vlimit; ++pass) {
      std::int64_t moves = 0;
      for (VertexId v = 0; v < g.n; ++v) {
        std::int32_t s = label[v];
        if (vcount[s] <= vlimit || vcount[s] <= 1) continue;
        gather(v, /*with_scores=*/true);
        std::int32_t best = -1;
        double best_score = 0.0;
        for (std::int32_t x : touched) {
          if (x == s || vcount[x] + 1 > vlimit) continue;
          double slack = 1.0 - static_cast<double>(vcount[x]) / vtarget;
          double sc = score[x] * std::max(0.0, slack);
          if (sc > best_score || (sc == best_score && best >= 0 && x < best)) {
            best = x;
            best_score = sc;
          }
        }
        reset_scratch();
        if (best >= 0 && best_score > 0.0) {
          move_vertex(v, best);
          ++moves;
        }
      }
      if (moves == 0) {
        forced_vertex_drain();
        break;
      }
    }
  }

  // Last-resort drain ignoring adjacency, toward the emptiest parts.
  void forced_vertex_drain() {
    for (VertexId v = 0; v < g.n && max_v() > vlimit; ++v) {
      std::int32_t s = label[v];
      if (vcount[s] <= vlimit || vcount[s] <= 1) continue;
      std::int32_t dest = 0;
      for (std::int32_t k = 1; k < p; ++k)
        if (vcount[k] < vcount[dest]) dest = k;
      if (vcount[dest] + 1 <= vlimit) move_vertex(v, dest);
    }
  }

  void balance_edges_maxcut() {
    repair_empty();
    const bool mm = cfg.mode == PartitionConfig::Mode::MM;
    for (int pass = 0; pass < 24 && max_e() > elimit; ++pass) {
      std::int64_t moves = 0;
      for (VertexId v = 0; v < g.n; ++v) {
        std::int32_t s = label[v];
        if (ecount[s] <= elimit || vcount[s] <= 1) continue;
        std::int64_t deg = gather(v, /*with_scores=*/true);
        if (deg == nbr_cnt[s]) {  // interior vertex cannot shrink s
          reset_scratch();
          continue;
        }
        double cut_avg = std::max(1.0, 2.0 * total_cut / p);
        std::int32_t best = -1;
        double best_score = 0.0;
        for (std::int32_t x : touched) {
          if (x == s || vcount[x] + 1 > vlimit) continue;
          if (ecount[x] + (deg - nbr_cnt[x]) > elimit) continue;
          double slack = 1.0 - static_cast<double>(ecount[x]) / etarget;
          // In MM mode the attraction is discounted in proportion to the
          // candidate part's share of the cut, steering the max per-part
          // cut down while balancing edges.
          double penalty = mm ? 0.5 * cutcount[x] / cut_avg : 0.0;
          double sc = score[x] * (std::max(0.0, slack) - penalty);
          if (sc > best_score || (sc == best_score && best >= 0 && x < best)) {
            best = x;
            best_score = sc;
          }
        }
        reset_scratch();
        if (best >= 0 && best_score > 0.0) {
          move_vertex(v, best);
          ++moves;
        }
      }
      if (moves == 0) {
        forced_edge_drain();
        break;
      }
    }
  }

  void forced_edge_drain() {
    for (VertexId v = 0; v < g.n && max_e() > elimit; ++v) {
      std::int32_t s = label[v];
      if (ecount[s] <= elimit || vcount[s] <= 1) continue;
      std::int64_t deg = gather(v, /*with_scores=*/false);
      if (deg == nbr_cnt[s]) {
        reset_scratch();
        continue;
      }
      std::int32_t dest = -1;
      for (std::int32_t k = 0; k < p; ++k) {
        if (k == s || vcount[k] + 1 > vlimit) continue;
        if (ecount[k] + (deg - nbr_cnt[k]) > elimit) continue;
        if (dest < 0 || ecount[k] < ecount[dest]) dest = k;
      }
      reset_scratch();
      if (dest >= 0) move_vertex(v, dest);
    }
  }
};

// Degree-weighted label propagation from p seed vertices. A vertex adopts
// the label maximizing sum over labeled neighbors of w(u)/deg(u); ties go
// to the current label, else to the seeded generator.
void propagate_serial(const Graph& g, const PartitionConfig& cfg,
                      std::vector<std::int32_t>& label) {
  const VertexId n = g.n;
  std::vector<double> inv_deg(n);
  for (VertexId v = 0; v < n; ++v) {
    std::int64_t d = g.degree(v);
    inv_deg[v] = d > 0 ? 1.0 / static_cast<double>(d) : 0.0;
  }
  std::vector<double> score(cfg.p, 0.0);
  std::vector<char> seen(cfg.p, 0);
  std::vector<std::int32_t> touched, argmax;
  Rng tie = substream(cfg.seed, "lp.prop.ties");
  std::int64_t unlabeled = 0;
  for (std::int32_t l : label) unlabeled += (l < 0);

  for (int iter = 0; iter < cfg.lp_iters; ++iter) {
    std::int64_t changes = 0;
    for (VertexId v = 0; v < n; ++v) {
      touched.clear();
      auto nbrs = g.neighbors(v);
      auto ws = g.arc_weights(v);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        VertexId u = nbrs[i];
        if (u == v) continue;
        std::int32_t x = label[u];
        if (x < 0) continue;
        if (!seen[x]) {
          seen[x] = 1;
          score[x] = 0.0;
          touched.push_back(x);
        }
        score[x] += (ws.empty() ? 1.0 : ws[i]) * inv_deg[u];
      }
      if (touched.empty()) continue;
      double best = -1.0;
      argmax.clear();
      for (std::int32_t x : touched) {
        if (score[x] > best) {
          best = score[x];
          argmax.assign(1, x);
        } else if (score[x] == best) {
          argmax.push_back(x);
        }
      }
      for (std::int32_t x : touched) seen[x] = 0;
      std::int32_t cur = label[v];
      std::int32_t pick = -1;
      for (std::int32_t x : argmax)
        if (x == cur) pick = cur;
      if (pick < 0)
        pick = argmax.size() == 1
                   ? argmax[0]
                   : argmax[tie.below(argmax.size())];
      if (pick != cur) {
        if (cur < 0) --unlabeled;
        label[v] = pick;
        ++changes;
      }
    }
    if (changes == 0 && unlabeled == 0) break;
  }
}

// Racy parallel variant: label reads and writes are relaxed atomics with
// no other synchronization inside a sweep, trading determinism for speed
// with minimal effect on quality. Structural invariants still hold.
void propagate_parallel(const Graph& g, const PartitionConfig& cfg,
                        std::vector<std::int32_t>& label) {
  const VertexId n = g.n;
  int threads = cfg.threads > 0
                    ? cfg.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, 64));
  std::vector<double> inv_deg(n);
  for (VertexId v = 0; v < n; ++v) {
    std::int64_t d = g.degree(v);
    inv_deg[v] = d > 0 ? 1.0 / static_cast<double>(d) : 0.0;
  }

  for (int iter = 0; iter < cfg.lp_iters; ++iter) {
    std::atomic<std::int64_t> changes{0};
    auto sweep = [&](int tid) {
      VertexId lo = n * tid / threads;
      VertexId hi = n * (tid + 1) / threads;
      std::vector<double> score(cfg.p, 0.0);
      std::vector<char> seen(cfg.p, 0);
      std::vector<std::int32_t> touched, argmax;
      Rng tie = substream(cfg.seed, "lp.prop.par", tid);
      std::int64_t local_changes = 0;
      for (VertexId v = lo; v < hi; ++v) {
        touched.clear();
        auto nbrs = g.neighbors(v);
        auto ws = g.arc_weights(v);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
          VertexId u = nbrs[i];
          if (u == v) continue;
          std::int32_t x =
              std::atomic_ref<const std::int32_t>(label[u]).load(
                  std::memory_order_relaxed);
          if (x < 0) continue;
          if (!seen[x]) {
            seen[x] = 1;
            score[x] = 0.0;
            touched.push_back(x);
          }
          score[x] += (ws.empty() ? 1.0 : ws[i]) * inv_deg[u];
        }
        if (touched.empty()) continue;
        double best = -1.0;
        argmax.clear();
        for (std::int32_t x : touched) {
          if (score[x] > best) {
            best = score[x];
            argmax.assign(1, x);
          } else if (score[x] == best) {
            argmax.push_back(x);
          }
        }
        for (std::int32_t x : touched) seen[x] = 0;
        std::int32_t cur = std::atomic_ref<const std::int32_t>(label[v]).load(
            std::memory_order_relaxed);
        std::int32_t pick = -1;
        for (std::int32_t x : argmax)
          if (x == cur) pick = cur;
        if (pick < 0)
          pick = argmax.size() == 1 ? argmax[0]
                                    : argmax[tie.below(argmax.size())];
        if (pick != cur) {
          std::atomic_ref<std::int32_t>(label[v]).store(
              pick, std::memory_order_relaxed);
          ++local_changes;
        }
      }
      changes.fetch_add(local_changes, std::memory_order_relaxed);
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(sweep, t);
    for (auto& t : pool) t.join();
    bool any_unlabeled = false;
    for (std::int32_t l : label) any_unlabeled = any_unlabeled || (l < 0);
    if (changes.load() == 0 && !any_unlabeled) break;
  }
}

void assign_unlabeled(std::vector<std::int32_t>& label, int p) {
  std::vector<std::int64_t> counts(p, 0);
  for (std::int32_t l : label)
    if (l >= 0) counts[l]++;
  for (std::int32_t& l : label) {
    if (l >= 0) continue;
    std::int32_t dest = 0;
    for (std::int32_t k = 1; k < p; ++k)
      if (counts[k] < counts[dest]) dest = k;
    l = dest;
    counts[dest]++;
  }
}

}  // namespace

LpResult partition_lp(const Graph& g, const PartitionConfig& cfg) {
  if (g.directed)
    throw DomainError("partition_lp: undirected graph required (symmetrize first)");
  if (cfg.p < 1) throw DomainError("partition_lp: p >= 1 required");
  if (cfg.p > g.n) throw DomainError("partition_lp: p > n");

  LpResult res;
  if (cfg.p == 1) {
    res.partition = make_partition(g, 1, std::vector<std::int32_t>(g.n, 0));
    return res;
  }

  // p random distinct seed vertices anchor the labels; everyone else
  // starts unlabeled and is claimed by propagation.
  std::vector<std::int32_t> label(g.n, -1);
  Rng init = substream(cfg.seed, "lp.init");
  std::vector<VertexId> pool(g.n);
  std::iota(pool.begin(), pool.end(), VertexId{0});
  for (int i = 0; i < cfg.p; ++i) {
    std::size_t j = i + init.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
    label[pool[i]] = i;
  }

  if (cfg.deterministic)
    propagate_serial(g, cfg, label);
  else
    propagate_parallel(g, cfg, label);
  assign_unlabeled(label, cfg.p);

  Engine eng(g, cfg, std::move(label));
  for (int r = 0; r < cfg.k1; ++r) {
    eng.balance_vertices();
    eng.refine();
  }
  for (int r = 0; r < cfg.k2; ++r) {
    eng.balance_edges_maxcut();
    eng.refine();
  }
  eng.repair_empty();

  res.partition = make_partition(g, cfg.p, std::move(eng.label));
  double v_ratio = static_cast<double>(*std::max_element(
                       res.partition.part_vertices.begin(),
                       res.partition.part_vertices.end())) *
                   cfg.p / static_cast<double>(g.n);
  double e_ratio = g.m == 0
                       ? 0.0
                       : static_cast<double>(*std::max_element(
                             res.partition.part_edges.begin(),
                             res.partition.part_edges.end())) *
                             cfg.p /
                             static_cast<double>(g.undirected_edge_count());
  res.vertex_balanced = v_ratio <= cfg.vertex_imbalance + 1e-9;
  res.edge_balanced = e_ratio <= cfg.edge_imbalance + 1e-9;
  return res;
}

Partition refine_edge_cut(const Graph& g, Partition part,
                          const PartitionConfig& cfg) {
  if (g.directed)
    throw DomainError("refine_edge_cut: undirected graph required");
  PartitionConfig local = cfg;
  local.p = part.p;
  Engine eng(g, local, std::move(part.assignment));
  eng.refine();
  return make_partition(g, local.p, std::move(eng.label));
}

Partition balance_stage(const Graph& g, Partition part,
                        const PartitionConfig& cfg, BalanceTarget target) {
  if (g.directed)
    throw DomainError("balance_stage: undirected graph required");
  PartitionConfig local = cfg;
  local.p = part.p;
  Engine eng(g, local, std::move(part.assignment));
  if (target == BalanceTarget::vertices)
    eng.balance_vertices();
  else
    eng.balance_edges_maxcut();
  return make_partition(g, local.p, std::move(eng.label));
}

Partition load_partition(const std::filesystem::path& path, const Graph& g,
                         int expected_p) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::int32_t> assignment;
  assignment.reserve(g.n);
  std::string line;
  std::int64_t lineno = 0;
  std::int32_t max_id = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::int32_t id = 0;
    auto* begin = line.data();
    auto* end = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(begin, end, id);
    if (ec != std::errc{} || ptr != end || id < 0)
      throw FormatError("partition line " + std::to_string(lineno) +
                        ": bad part id");
    if (static_cast<VertexId>(assignment.size()) >= g.n)
      throw FormatError("partition file longer than n");
    assignment.push_back(id);
    max_id = std::max(max_id, id);
  }
  if (static_cast<VertexId>(assignment.size()) != g.n)
    throw FormatError("partition file length != n");
  int p = expected_p > 0 ? expected_p : max_id + 1;
  if (max_id >= p)
    throw FormatError("partition: part id " + std::to_string(max_id) +
                      " >= p (" + std::to_string(p) + ")");
  return make_partition(g, p, std::move(assignment));
}

void save_partition(const Partition& part, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (std::int32_t a : part.assignment) out << a << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace glt
