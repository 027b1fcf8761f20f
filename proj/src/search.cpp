#include "mgx/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>

#include "mgx/bounds.hpp"
#include "mgx/canonical.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mgx {

WalkTable::WalkTable(const MixedGraph& skeleton) : n_(skeleton.order()) {
  counts_.assign(static_cast<std::size_t>(n_) * n_, 0);
  dup_.assign(n_, 0);
  edge_.resize(n_);
  out_.resize(n_);
  in_.resize(n_);
  for (int u = 0; u < n_; ++u) edge_[u] = skeleton.edge_neighbors(u);
  for (int u = 0; u < n_; ++u) {
    for (int w : edge_[u]) {
      ++counts_[static_cast<std::size_t>(u) * n_ + w];
      for (int v : edge_[w])
        if (v != u) ++counts_[static_cast<std::size_t>(u) * n_ + v];
    }
  }
  for (int u = 0; u < n_; ++u) {
    int d = 0;
    for (int v = 0; v < n_; ++v) {
      int c = count(u, v);
      d += v == u ? c : std::max(0, c - 1);
    }
    dup_[u] = d;
  }
  for (auto [a, b] : skeleton.arcs()) add_arc(a, b);
}

// Walks of length <= 2 gained by inserting arc (a,b), with the arc lists
// still in their pre-insertion state: the arc itself, the continuations
// x -> a -> b for every x stepping into a, and a -> b -> y for every y
// stepped to from b.  An arc step is never a backtrack, so all of these
// count; the pairs produced are pairwise distinct.
template <typename Fn>
void WalkTable::for_each_new_walk(int a, int b, Fn&& fn) const {
  fn(a, b);
  for (int x : edge_[a]) fn(x, b);
  for (int x : in_[a]) fn(x, b);
  for (int y : edge_[b]) fn(a, y);
  for (int y : out_[b]) fn(a, y);
}

bool WalkTable::would_fit(int a, int b, int budget) const {
  bool ok = true;
  std::vector<std::pair<int, int>> extra;
  for_each_new_walk(a, b, [&](int u, int v) { extra.emplace_back(u, v); });
  // Pairs are distinct, so the collision delta per pair is directly readable.
  std::vector<std::pair<int, int>> per_root;
  for (auto [u, v] : extra) {
    int added = (u == v) ? 1 : (count(u, v) >= 1 ? 1 : 0);
    if (added) per_root.emplace_back(u, added);
  }
  std::sort(per_root.begin(), per_root.end());
  for (std::size_t i = 0; i < per_root.size();) {
    int u = per_root[i].first, total = 0;
    for (; i < per_root.size() && per_root[i].first == u; ++i) total += per_root[i].second;
    if (dup_[u] + total > budget) {
      ok = false;
      break;
    }
  }
  return ok;
}

void WalkTable::add_arc(int a, int b) {
  for_each_new_walk(a, b, [&](int u, int v) {
    int& c = counts_[static_cast<std::size_t>(u) * n_ + v];
    ++c;
    if (u == v || c > 1) ++dup_[u];
  });
  out_[a].push_back(b);
  in_[b].push_back(a);
}

void WalkTable::remove_arc(int a, int b) {
  out_[a].erase(std::find(out_[a].begin(), out_[a].end(), b));
  in_[b].erase(std::find(in_[b].begin(), in_[b].end(), a));
  for_each_new_walk(a, b, [&](int u, int v) {
    int& c = counts_[static_cast<std::size_t>(u) * n_ + v];
    if (u == v || c > 1) --dup_[u];
    --c;
  });
}

bool WalkTable::all_pairs_covered() const {
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v)
      if (u != v && count(u, v) == 0) return false;
  return true;
}

std::vector<MixedGraph> enumerate_2factors(int n, int girth_floor) {
  int least = std::max(girth_floor, 3);
  std::vector<MixedGraph> out;
  std::vector<int> parts;
  // Partitions of n into parts >= least, nonincreasing, longest part first.
  auto emit = [&]() {
    std::vector<VertexPair> edges;
    int base = 0;
    for (int len : parts) {
      for (int i = 0; i < len; ++i) edges.push_back({base + i, base + (i + 1) % len});
      base += len;
    }
    out.push_back(MixedGraph(n, std::move(edges), {}));
  };
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      emit();
      return;
    }
    for (int p = std::min(remaining, max_part); p >= least; --p) {
      if (remaining - p != 0 && remaining - p < least) continue;
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  if (n >= least) rec(rec, n, n);
  return out;
}

namespace {

// Undirected distance between u and w in a partial graph given by adjacency
// lists, for girth checking: adding edge {u,w} closes a cycle of length
// dist+1.
int partial_undirected_distance(const std::vector<std::vector<int>>& adj, int u, int w) {
  std::vector<int> dist(adj.size(), -1);
  std::vector<int> queue{u};
  dist[u] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    if (v == w) return dist[v];
    for (int x : adj[v])
      if (dist[x] < 0) {
        dist[x] = dist[v] + 1;
        queue.push_back(x);
      }
  }
  return -1;
}

}  // namespace

std::vector<MixedGraph> enumerate_regular_graphs(int n, int r, int girth_floor) {
  if (r < 0 || n < 0) throw std::invalid_argument("bad regular graph parameters");
  if (r == 0) return {MixedGraph(n, {}, {})};
  if (static_cast<long long>(n) * r % 2 != 0 || r >= n) return {};
  if (r == 1) {
    std::vector<VertexPair> edges;
    for (int i = 0; i < n; i += 2) edges.push_back({i, i + 1});
    return {MixedGraph(n, std::move(edges), {})};
  }
  if (r == 2) return enumerate_2factors(n, girth_floor);

  std::vector<std::vector<int>> adj(n);
  std::vector<int> deg(n, 0);
  std::vector<VertexPair> edges;
  std::map<std::string, MixedGraph> classes;

  // Fill vertices in order; the neighbors of u below u are already fixed, so
  // only partners above u are chosen.  Exhaustive up to the final canonical
  // deduplication.
  auto extend = [&](auto&& self, int u, int from) -> void {
    if (deg[u] == r) {
      if (u == n - 1) {
        MixedGraph g(n, edges, {});
        classes.emplace(canonical_form(g).bytes, g);
        return;
      }
      self(self, u + 1, u + 2);
      return;
    }
    int needed = r - deg[u];
    for (int w = from; w < n; ++w) {
      if (n - w < needed) break;  // not enough candidates left
      if (deg[w] >= r) continue;
      if (girth_floor > 3) {
        int d = partial_undirected_distance(adj, u, w);
        if (d >= 0 && d + 1 < girth_floor) continue;
      }
      adj[u].push_back(w);
      adj[w].push_back(u);
      ++deg[u];
      ++deg[w];
      edges.push_back({u, w});
      self(self, u, w + 1);
      edges.pop_back();
      --deg[u];
      --deg[w];
      adj[u].pop_back();
      adj[w].pop_back();
    }
  };
  extend(extend, 0, 1);

  std::vector<MixedGraph> out;
  for (auto& [_, g] : classes) out.push_back(std::move(g));
  return out;
}

namespace {

struct PruneCounters {
  std::uint64_t walk_collision = 0;
  std::uint64_t indegree_cap = 0;
  std::uint64_t indegree_feasibility = 0;
  std::uint64_t arc_span = 0;
  std::uint64_t digon = 0;
  std::uint64_t seed_rejected = 0;
  std::uint64_t coverage = 0;
  std::uint64_t final_check = 0;

  void merge(const PruneCounters& o) {
    walk_collision += o.walk_collision;
    indegree_cap += o.indegree_cap;
    indegree_feasibility += o.indegree_feasibility;
    arc_span += o.arc_span;
    digon += o.digon;
    seed_rejected += o.seed_rejected;
    coverage += o.coverage;
    final_check += o.final_check;
  }
  std::map<std::string, std::uint64_t> to_map() const {
    return {{"walk-collision", walk_collision},
            {"indegree-cap", indegree_cap},
            {"indegree-feasibility", indegree_feasibility},
            {"arc-span", arc_span},
            {"digon", digon},
            {"seed-rejected", seed_rejected},
            {"coverage", coverage},
            {"final-check", final_check}};
  }
};

struct SharedProgress {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> over_budget{false};
  std::atomic<bool> stop{false};  // early exit for single-witness runs
  std::uint64_t budget = 0;
};

// One phase-2 worker: assigns out-arcs vertex by vertex over a fixed seed.
struct ArcAssigner {
  const MixedGraph& seed;
  const SearchSpec& spec;
  int n;
  int collision_budget;  // slack in defect mode, 0 in excess mode
  const std::vector<std::vector<int>>& allowed;  // static per-vertex targets
  SharedProgress& progress;

  WalkTable table;
  std::vector<int> indeg;
  std::vector<char> arc_present;  // row-major, for the digon exclusion
  std::vector<VertexPair> arcs;
  std::vector<MixedGraph> found;
  PruneCounters prunes;
  std::uint64_t local_nodes = 0;

  ArcAssigner(const MixedGraph& seed_, const SearchSpec& spec_,
              const std::vector<std::vector<int>>& allowed_, SharedProgress& progress_)
      : seed(seed_),
        spec(spec_),
        n(seed_.order()),
        collision_budget(spec_.mode == Mode::defect ? spec_.slack : 0),
        allowed(allowed_),
        progress(progress_),
        table(seed_),
        indeg(seed_.order(), 0),
        arc_present(static_cast<std::size_t>(seed_.order()) * seed_.order(), 0) {}

  void push_arc(int a, int b) {
    if (spec.k == 2) table.add_arc(a, b);
    ++indeg[b];
    arc_present[static_cast<std::size_t>(a) * n + b] = 1;
    arcs.push_back({a, b});
  }
  void pop_arc() {
    auto [a, b] = arcs.back();
    arcs.pop_back();
    arc_present[static_cast<std::size_t>(a) * n + b] = 0;
    --indeg[b];
    if (spec.k == 2) table.remove_arc(a, b);
  }

  static constexpr std::uint64_t kBatch = 64;

  bool tick() {
    if (++local_nodes % kBatch == 0) {
      std::uint64_t total = progress.nodes.fetch_add(kBatch, std::memory_order_relaxed) + kBatch;
      if (total > progress.budget) progress.over_budget.store(true, std::memory_order_relaxed);
    }
    return !progress.over_budget.load(std::memory_order_relaxed) &&
           !progress.stop.load(std::memory_order_relaxed);
  }
  void flush_nodes() { progress.nodes.fetch_add(local_nodes % kBatch, std::memory_order_relaxed); }

  bool indegree_feasible(int next_vertex) const {
    if (!spec.assume_total_regular) return true;
    long long capacity = static_cast<long long>(n - next_vertex) * spec.z;
    long long deficit = 0;
    for (int v = 0; v < n; ++v) deficit += std::max(0, spec.z - indeg[v]);
    return deficit <= capacity;
  }

  // Collision budgets for k != 2 are re-checked from scratch after each
  // completed vertex; walk counts only grow as arcs are added, so a partial
  // overshoot is final.
  bool slow_budget_ok() {
    MixedGraph g(n, seed.edges(), arcs);
    auto m = nbt_walk_matrix(g, spec.k, 1);
    for (int u = 0; u < n; ++u) {
      std::int64_t dup = m[u][u];
      for (int v = 0; v < n; ++v)
        if (v != u) dup += std::max<std::int64_t>(0, m[u][v] - 1);
      if (dup > collision_budget) return false;
    }
    return true;
  }

  void complete() {
    MixedGraph g(n, seed.edges(), arcs);
    if (spec.mode == Mode::defect) {
      bool covered = spec.k == 2 ? table.all_pairs_covered()
                                 : diameter(g, 1).value_or(spec.k + 1) <= spec.k;
      if (!covered) {
        ++prunes.coverage;
        return;
      }
    } else if (spec.k != 2) {
      if (!is_k_geodetic(g, spec.k, 1).geodetic) {
        ++prunes.final_check;
        return;
      }
    }
    found.push_back(std::move(g));
    if (!spec.enumerate_all) progress.stop.store(true, std::memory_order_relaxed);
  }

  void assign(int u) {
    if (u == n) {
      complete();
      return;
    }
    pick(u, 0, 0);
  }

  void pick(int u, int from, int taken) {
    if (!progress.stop.load(std::memory_order_relaxed) &&
        !progress.over_budget.load(std::memory_order_relaxed)) {
      if (taken == spec.z) {
        if (!indegree_feasible(u + 1)) {
          ++prunes.indegree_feasibility;
          return;
        }
        if (spec.k != 2 && !slow_budget_ok()) {
          ++prunes.walk_collision;
          return;
        }
        assign(u + 1);
        return;
      }
      const auto& cands = allowed[u];
      for (std::size_t i = from; i < cands.size(); ++i) {
        int w = cands[i];
        if (arc_present[static_cast<std::size_t>(w) * n + u]) {
          ++prunes.digon;  // opposite arcs would join the pair twice
          continue;
        }
        if (spec.assume_total_regular && indeg[w] >= spec.z) {
          ++prunes.indegree_cap;
          continue;
        }
        if (spec.k == 2 && !table.would_fit(u, w, collision_budget)) {
          ++prunes.walk_collision;
          continue;
        }
        if (!tick()) return;
        push_arc(u, w);
        pick(u, static_cast<int>(i) + 1, taken + 1);
        pop_arc();
      }
    }
  }
};

int derive_girth_floor(const SearchSpec& spec) {
  if (spec.girth_floor_override > 0) return spec.girth_floor_override;
  if (spec.mode == Mode::excess) return 2 * spec.k + 1;
  if (spec.slack == 0) return 2 * spec.k + 1;
  if (spec.slack == 1 && spec.k == 2) return 5;  // short cycles overspend the repeat budget
  return 3;
}

}  // namespace

SearchResult search_extremal(const SearchSpec& spec) {
  if (spec.r < 0 || spec.z < 0) throw std::invalid_argument("degrees must be nonnegative");
  if (spec.k < 1) throw std::invalid_argument("k must be at least 1");
  if (spec.slack < 0) throw std::invalid_argument("slack must be nonnegative");

  auto t0 = std::chrono::steady_clock::now();
  mpz_class bound = moore_bound(spec.r, spec.z, spec.k).value;
  mpz_class target_z =
      spec.mode == Mode::defect ? mpz_class(bound - spec.slack) : mpz_class(bound + spec.slack);
  if (target_z < 1) throw std::invalid_argument("target order is not positive");
  if (!target_z.fits_sint_p()) throw std::invalid_argument("target order too large to search");
  int n = static_cast<int>(target_z.get_si());

  SearchResult result;
  SharedProgress progress;
  progress.budget = spec.node_budget;

  int floor = derive_girth_floor(spec);
  auto seeds = enumerate_regular_graphs(n, spec.r, floor);
  result.seeds = seeds.size();

  PruneCounters prunes;
  int collision_budget = spec.mode == Mode::defect ? spec.slack : 0;

  struct Task {
    int seed;
    std::vector<int> first;  // arc targets of vertex 0
  };
  std::vector<Task> tasks;
  std::vector<MixedGraph> canonical_seeds;

  for (std::size_t si = 0; si < seeds.size(); ++si) {
    MixedGraph seed = canonical_representative(seeds[si]);
    // Seeds whose skeleton already overspends the collision budget die here.
    {
      WalkTable t(seed);
      bool ok = true;
      for (int u = 0; u < n; ++u)
        if ((spec.k == 2 ? t.collisions(u) : 0) > collision_budget) ok = false;
      if (spec.k != 2) {
        auto m = nbt_walk_matrix(seed, spec.k, 1);
        for (int u = 0; u < n && ok; ++u) {
          std::int64_t dup = m[u][u];
          for (int v = 0; v < n; ++v)
            if (v != u) dup += std::max<std::int64_t>(0, m[u][v] - 1);
          if (dup > collision_budget) ok = false;
        }
      }
      if (!ok) {
        ++prunes.seed_rejected;
        continue;
      }
    }
    canonical_seeds.push_back(seed);
    int seed_idx = static_cast<int>(canonical_seeds.size()) - 1;
    const MixedGraph& cseed = canonical_seeds.back();

    // Static candidate targets; vertex 0's choices are reduced to orbit
    // representatives under the skeleton automorphisms fixing 0.
    std::vector<int> base;
    std::vector<int> udist = spec.prune_arc_span ? undirected_distances_from(cseed, 0)
                                                 : std::vector<int>();
    for (int w = 0; w < n; ++w) {
      if (w == 0 || cseed.has_edge(0, w)) continue;
      if (spec.prune_arc_span && udist[w] >= 0 && udist[w] < 4) {
        ++prunes.arc_span;
        continue;
      }
      base.push_back(w);
    }
    if (spec.z == 0) {
      tasks.push_back({seed_idx, {}});
      continue;
    }
    std::vector<std::vector<int>> stab;
    for (auto& sigma : automorphisms(cseed, 100000))
      if (sigma[0] == 0) stab.push_back(std::move(sigma));

    std::vector<std::vector<int>> subsets;
    std::vector<int> pickbuf;
    auto gen = [&](auto&& self, std::size_t from, int taken) -> void {
      if (taken == spec.z) {
        subsets.push_back(pickbuf);
        return;
      }
      for (std::size_t i = from; i < base.size(); ++i) {
        pickbuf.push_back(base[i]);
        self(self, i + 1, taken + 1);
        pickbuf.pop_back();
      }
    };
    gen(gen, 0, 0);
    for (auto& t : subsets) {
      std::vector<int> least = t;
      for (const auto& sigma : stab) {
        std::vector<int> image;
        for (int w : t) image.push_back(sigma[w]);
        std::sort(image.begin(), image.end());
        if (image < least) least = image;
      }
      if (least == t) tasks.push_back({seed_idx, t});
    }
  }

  std::vector<std::vector<MixedGraph>> per_task(tasks.size());
  std::vector<PruneCounters> per_task_prunes(tasks.size());

#ifdef _OPENMP
  int threads = spec.jobs > 0 ? spec.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
    const auto& task = tasks[ti];
    const MixedGraph& seed = canonical_seeds[task.seed];
    std::vector<std::vector<int>> allowed(n);
    for (int u = 0; u < n; ++u) {
      std::vector<int> udist = spec.prune_arc_span ? undirected_distances_from(seed, u)
                                                   : std::vector<int>();
      for (int w = 0; w < n; ++w) {
        if (w == u || seed.has_edge(u, w)) continue;
        if (spec.prune_arc_span && udist[w] >= 0 && udist[w] < 4) continue;
        allowed[u].push_back(w);
      }
    }
    ArcAssigner worker(seed, spec, allowed, progress);
    bool ok = true;
    for (int w : task.first) {
      if (spec.k == 2 && !worker.table.would_fit(0, w, worker.collision_budget)) {
        ok = false;
        break;
      }
      worker.push_arc(0, w);
    }
    if (ok && spec.assume_total_regular && !worker.indegree_feasible(1)) ok = false;
    if (ok && spec.k != 2 && !worker.slow_budget_ok()) ok = false;
    if (!ok) {
      ++worker.prunes.walk_collision;
    } else {
      worker.assign(1);
    }
    worker.flush_nodes();
    per_task[ti] = std::move(worker.found);
    per_task_prunes[ti] = worker.prunes;
  }

  if (progress.over_budget.load() || progress.nodes.load() > spec.node_budget)
    throw BudgetExceeded("search node budget of " + std::to_string(spec.node_budget) +
                         " exceeded");

  for (const auto& p : per_task_prunes) prunes.merge(p);
  result.nodes = progress.nodes.load();

  std::map<std::string, MixedGraph> classes;
  for (auto& bucket : per_task)
    for (auto& g : bucket) {
      MixedGraph rep = canonical_representative(g);
      classes.emplace(serialize_graph(rep), std::move(rep));
    }
  for (auto& [bytes, g] : classes) {
    // Post-hoc verification through the independent certification path.
    CheckReport rep = check_graph(g, spec.r, spec.z, spec.k, spec.mode);
    Family want = spec.slack == 0 ? Family::moore
                                  : (spec.mode == Mode::defect ? Family::defect : Family::excess);
    if (rep.family != want || rep.slack != spec.slack)
      throw std::logic_error("search produced a graph that fails certification");
    result.graphs.push_back(std::move(g));
  }
  if (!spec.enumerate_all && result.graphs.size() > 1) result.graphs.resize(1);

  result.prunes = prunes.to_map();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

nlohmann::json search_result_to_json(const SearchResult& r) {
  nlohmann::json j;
  j["classes"] = r.graphs.size();
  j["graphs"] = nlohmann::json::array();
  for (const auto& g : r.graphs) j["graphs"].push_back(serialize_graph(g));
  j["nodes"] = r.nodes;
  j["seeds"] = r.seeds;
  j["prunes"] = r.prunes;
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

SearchResult search_result_from_json(const nlohmann::json& j) {
  SearchResult r;
  for (const auto& s : j.at("graphs")) r.graphs.push_back(parse_graph(s.get<std::string>()));
  r.nodes = j.at("nodes").get<std::uint64_t>();
  r.seeds = j.at("seeds").get<std::uint64_t>();
  r.prunes = j.at("prunes").get<std::map<std::string, std::uint64_t>>();
  r.wall_seconds = j.at("wall_seconds").get<double>();
  return r;
}

}  // namespace mgx
