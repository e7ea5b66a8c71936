#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <string>

#include "glt/analytics.hpp"
#include "glt/error.hpp"
#include "glt/rng.hpp"

namespace glt {

TemplateTree TemplateTree::path(int k) {
  TemplateTree t;
  t.k = k;
  for (int i = 0; i + 1 < k; ++i) t.edges.emplace_back(i, i + 1);
  return t;
}

TemplateTree TemplateTree::star(int k) {
  TemplateTree t;
  t.k = k;
  for (int i = 1; i < k; ++i) t.edges.emplace_back(0, i);
  return t;
}

void TemplateTree::validate() const {
  if (k < 1) throw DomainError("template: k >= 1 required");
  if (static_cast<int>(edges.size()) != k - 1)
    throw DomainError("template: a tree has k-1 edges");
  std::vector<std::vector<int>> adj(k);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= k || b < 0 || b >= k || a == b)
      throw DomainError("template: bad edge");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(k, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (int u : adj[queue[head]])
      if (!seen[u]) {
        seen[u] = 1;
        queue.push_back(u);
      }
  if (static_cast<int>(queue.size()) != k)
    throw DomainError("template: not connected (not a tree)");
}

namespace {

std::int64_t factorial(int x) {
  std::int64_t f = 1;
  for (int i = 2; i <= x; ++i) f *= i;
  return f;
}

// AHU canonical form of the subtree at v (away from `parent`), returning
// (canonical string, automorphism count of the rooted subtree).
std::pair<std::string, std::int64_t> rooted_canon(
    const std::vector<std::vector<int>>& adj, int v, int parent) {
  std::vector<std::pair<std::string, std::int64_t>> children;
  for (int u : adj[v])
    if (u != parent) children.push_back(rooted_canon(adj, u, v));
  std::sort(children.begin(), children.end());
  std::int64_t aut = 1;
  std::string canon = "(";
  for (std::size_t i = 0; i < children.size();) {
    std::size_t j = i;
    while (j < children.size() && children[j].first == children[i].first) {
      aut *= children[j].second;
      ++j;
    }
    aut *= factorial(static_cast<int>(j - i));
    for (std::size_t l = i; l < j; ++l) canon += children[l].first;
    i = j;
  }
  canon += ")";
  return {canon, aut};
}

}  // namespace

std::int64_t TemplateTree::automorphisms() const {
  validate();
  if (k == 1) return 1;
  std::vector<std::vector<int>> adj(k);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // Centroid(s) by leaf peeling.
  std::vector<int> deg(k);
  std::vector<int> peel;
  for (int v = 0; v < k; ++v) {
    deg[v] = static_cast<int>(adj[v].size());
    if (deg[v] == 1) peel.push_back(v);
  }
  int remaining = k;
  std::vector<char> removed(k, 0);
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : peel) {
      removed[v] = 1;
      --remaining;
      for (int u : adj[v])
        if (!removed[u] && --deg[u] == 1) next.push_back(u);
    }
    peel = std::move(next);
  }
  std::vector<int> centers;
  for (int v = 0; v < k; ++v)
    if (!removed[v]) centers.push_back(v);
  if (centers.size() == 1) return rooted_canon(adj, centers[0], -1).second;
  auto a = rooted_canon(adj, centers[0], centers[1]);
  auto b = rooted_canon(adj, centers[1], centers[0]);
  return a.first == b.first ? 2 * a.second * b.second : a.second * b.second;
}

TemplateTree load_template(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  TemplateTree t;
  std::string line;
  int max_id = -1;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line[0] == '%') continue;
    int a = -1, b = -1;
    if (std::sscanf(line.c_str(), "%d %d", &a, &b) != 2)
      throw ParseError("template line " + std::to_string(lineno) +
                       ": expected 'a b'");
    t.edges.emplace_back(a, b);
    max_id = std::max({max_id, a, b});
  }
  t.k = max_id + 1;
  t.validate();
  return t;
}

namespace {

// Indexing of color subsets grouped by popcount: masks[s] lists all
// k-bit masks with s bits set, index_of maps mask -> position.
struct SubsetIndex {
  int k;
  std::vector<std::vector<std::uint32_t>> masks;  // by popcount
  std::vector<std::int32_t> index_of;             // by mask

  explicit SubsetIndex(int k_) : k(k_) {
    masks.resize(k + 1);
    index_of.assign(std::size_t{1} << k, -1);
    for (std::uint32_t m = 0; m < (1u << k); ++m) {
      int s = std::popcount(m);
      index_of[m] = static_cast<std::int32_t>(masks[s].size());
      masks[s].push_back(m);
    }
  }
};

// Single-child decomposition of the rooted template: every combine joins
// the prefix tree at a vertex (active side) with one full child subtree
// (passive side). Processing combines in post-order of the rooted tree
// yields one all-to-all per decomposition level.
struct CombineStep {
  int active;   // table id
  int passive;  // table id
  int result;   // table id (replaces active)
  int result_size;
};

struct Decomposition {
  int tables = 0;
  std::vector<int> leaf_table;      // per template vertex
  std::vector<int> table_size;      // per table id
  std::vector<CombineStep> steps;   // execution order
  int root_table = -1;
};

Decomposition decompose(const TemplateTree& tmpl) {
  std::vector<std::vector<int>> children(tmpl.k);
  {
    std::vector<std::vector<int>> adj(tmpl.k);
    for (auto [a, b] : tmpl.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    std::vector<char> seen(tmpl.k, 0);
    std::vector<int> order{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
      int v = order[head];
      for (int u : adj[v])
        if (!seen[u]) {
          seen[u] = 1;
          children[v].push_back(u);
          order.push_back(u);
        }
    }
  }

  Decomposition d;
  // Size-1 tables are identical for every template vertex; share one.
  d.leaf_table.assign(tmpl.k, 0);
  d.tables = 1;
  d.table_size.push_back(1);
  // Post-order: combine each vertex's prefix with its child subtrees.
  std::vector<int> subtree_table(tmpl.k);
  std::vector<std::pair<int, int>> stack{{0, 0}};  // (vertex, child cursor)
  while (!stack.empty()) {
    auto& [v, cursor] = stack.back();
    if (cursor < static_cast<int>(children[v].size())) {
      int c = children[v][cursor++];
      stack.emplace_back(c, 0);
      continue;
    }
    int acc = d.leaf_table[v];
    int acc_size = 1;
    for (int c : children[v]) {
      CombineStep step;
      step.active = acc;
      step.passive = subtree_table[c];
      step.result = d.tables++;
      acc_size += d.table_size[step.passive];
      step.result_size = acc_size;
      d.table_size.push_back(acc_size);
      d.steps.push_back(step);
      acc = step.result;
    }
    subtree_table[v] = acc;
    stack.pop_back();
  }
  d.root_table = subtree_table[0];
  return d;
}

}  // namespace

SubgraphCountResult count_subgraphs(const DistributedGraph& dg,
                                    const TemplateTree& tmpl, int iterations,
                                    std::uint64_t seed,
                                    std::span<const VertexId> color_keys) {
  tmpl.validate();
  if (iterations < 1)
    throw DomainError("count_subgraphs: iterations >= 1 required");
  if (tmpl.k > 31) throw DomainError("count_subgraphs: template too large");
  auto t0 = std::chrono::steady_clock::now();

  const int k = tmpl.k;
  TraceBuilder tb("count", dg.p);
  SubsetIndex subsets(k);
  Decomposition dec = decompose(tmpl);
  const double scale =
      std::pow(static_cast<double>(k), k) /
      static_cast<double>(factorial(k)) /
      static_cast<double>(tmpl.automorphisms());

  // tables[id][task] is a flat owned-by-task x C(k, size) array.
  std::vector<std::vector<std::vector<double>>> tables(
      dec.tables, std::vector<std::vector<double>>(dg.p));
  std::vector<int> color(dg.n);
  double estimate_sum = 0.0;

  for (int iter = 0; iter < iterations; ++iter) {
    // Stationary coloring: a pure function of (seed, iteration, key), so
    // layouts that relabel vertices can reproduce the same color stream.
    std::uint64_t iter_seed = substream_seed(seed, "count.color", iter);
    for (VertexId v = 0; v < dg.n; ++v) {
      std::uint64_t key = color_keys.empty()
                              ? static_cast<std::uint64_t>(v)
                              : static_cast<std::uint64_t>(color_keys[v]);
      color[v] = static_cast<int>(mix64(iter_seed ^ key) % k);
    }
    // Leaf tables: one nonzero cell per vertex.
    for (int v = 0; v < tmpl.k; ++v) {
      int id = dec.leaf_table[v];
      for (int t = 0; t < dg.p; ++t) {
        const TaskGraph& tg = dg.tasks[t];
        auto& tab = tables[id][t];
        tab.assign(tg.owned.size() * k, 0.0);
        for (std::size_t i = 0; i < tg.owned.size(); ++i)
          tab[i * k + subsets.index_of[1u << color[tg.owned[i]]]] = 1.0;
      }
    }

    std::vector<std::vector<std::vector<double>>> ghost_rows(dg.p);
    for (const CombineStep& step : dec.steps) {
      const int sa = dec.table_size[step.active];
      const int sc = dec.table_size[step.passive];
      const int sr = step.result_size;
      const auto& masks_a = subsets.masks[sa];
      const auto& masks_c = subsets.masks[sc];
      const std::size_t cols_a = masks_a.size();
      const std::size_t cols_c = masks_c.size();
      const std::size_t cols_r = subsets.masks[sr].size();

      tb.begin_phase();
      // All-to-all: owners push the nonzero passive-child rows needed for
      // their neighbors' ghosts; volume counts (vertex, color-set, value)
      // records.
      for (int t = 0; t < dg.p; ++t) {
        const TaskGraph& tg = dg.tasks[t];
        ghost_rows[t].assign(tg.ghosts.size(),
                             std::vector<double>(cols_c, 0.0));
        for (std::size_t gi = 0; gi < tg.ghosts.size(); ++gi) {
          VertexId u = tg.ghosts[gi];
          int from = tg.ghost_owner[gi];
          const auto& src = tables[step.passive][from];
          std::int64_t li = dg.local_index[u];
          std::int64_t records = 0;
          for (std::size_t c = 0; c < cols_c; ++c) {
            double val = src[li * cols_c + c];
            ghost_rows[t][gi][c] = val;
            if (val != 0.0) ++records;
          }
          if (records > 0) {
            tb.add_send(from, t, records);
            tb.add_recv(t, from, records);
          }
        }
      }
      // Local DP: new[v][Sa | Sc] += active[v][Sa] * sum_nbr passive[Sc].
      for (int t = 0; t < dg.p; ++t) {
        const TaskGraph& tg = dg.tasks[t];
        auto& out = tables[step.result][t];
        out.assign(tg.owned.size() * cols_r, 0.0);
        const auto& act = tables[step.active][t];
        const auto& pas = tables[step.passive][t];
        std::vector<double> nbr_sum(cols_c);
        std::int64_t ops = 0;
        for (std::size_t i = 0; i < tg.owned.size(); ++i) {
          std::fill(nbr_sum.begin(), nbr_sum.end(), 0.0);
          for (std::int64_t a = tg.row_offsets[i]; a < tg.row_offsets[i + 1];
               ++a) {
            std::int64_t col = tg.col[a];
            const double* row = tg.is_ghost(col)
                                    ? ghost_rows[t][col - tg.n_owned()].data()
                                    : &pas[col * cols_c];
            for (std::size_t c = 0; c < cols_c; ++c) nbr_sum[c] += row[c];
            ops += static_cast<std::int64_t>(cols_c);
          }
          for (std::size_t ai = 0; ai < cols_a; ++ai) {
            double av = act[i * cols_a + ai];
            if (av == 0.0) continue;
            std::uint32_t am = masks_a[ai];
            for (std::size_t ci = 0; ci < cols_c; ++ci) {
              std::uint32_t cm = masks_c[ci];
              if ((am & cm) != 0 || nbr_sum[ci] == 0.0) continue;
              out[i * cols_r + subsets.index_of[am | cm]] +=
                  av * nbr_sum[ci];
              ++ops;
            }
          }
        }
        tb.add_compute(t, ops);
      }
      tb.end_phase();
    }

    double colorful = 0.0;
    const std::size_t cols_root = subsets.masks[k].size();
    for (int t = 0; t < dg.p; ++t) {
      const auto& tab = tables[dec.root_table][t];
      for (std::size_t i = 0; i < dg.tasks[t].owned.size(); ++i)
        colorful += tab[i * cols_root];  // the full-set column
    }
    estimate_sum += colorful * scale;
  }

  SubgraphCountResult res;
  res.estimate = estimate_sum / iterations;
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  res.trace = tb.finish(dt.count());
  return res;
}

}  // namespace glt
