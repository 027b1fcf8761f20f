#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgx/certify.hpp"
#include "mgx/graph.hpp"

namespace mgx {

// Non-backtracking walk counts of length <= 2 between all ordered pairs, for
// a fixed undirected skeleton and an arc set that grows and shrinks as a
// search backtracks.  collisions(u) is the surplus walk count seen from root
// u: closed walks plus every walk beyond the first per ordered pair.  A
// graph is 2-geodetic exactly when every collision count is zero.
class WalkTable {
 public:
  explicit WalkTable(const MixedGraph& skeleton);

  int order() const { return n_; }
  int count(int u, int v) const { return counts_[static_cast<std::size_t>(u) * n_ + v]; }
  int collisions(int u) const { return dup_[u]; }

  // True when adding arc (a,b) would keep every collision count <= budget.
  bool would_fit(int a, int b, int budget) const;
  void add_arc(int a, int b);
  void remove_arc(int a, int b);

  bool all_pairs_covered() const;  // every ordered pair u != v has a walk

 private:
  template <typename Fn>
  void for_each_new_walk(int a, int b, Fn&& fn) const;

  int n_ = 0;
  std::vector<int> counts_;  // row-major
  std::vector<int> dup_;
  std::vector<std::vector<int>> edge_, out_, in_;
};

// Disjoint unions of cycles covering n vertices, every cycle at least
// girth_floor long (and never shorter than 3), one representative per
// isomorphism class, in deterministic order (longest-first partitions).
std::vector<MixedGraph> enumerate_2factors(int n, int girth_floor);

// All r-regular undirected graphs on n vertices with girth >= girth_floor,
// up to isomorphism.  Exhaustive backtracking with canonical deduplication;
// meant for small n.
std::vector<MixedGraph> enumerate_regular_graphs(int n, int r, int girth_floor);

struct SearchSpec {
  int r = 2, z = 1, k = 2;
  Mode mode = Mode::defect;
  int slack = 1;  // delta or epsilon, >= 0
  bool assume_total_regular = false;
  bool enumerate_all = true;
  int jobs = 0;  // worker threads; 0 = hardware default
  std::uint64_t node_budget = 1'000'000'000;
  // Testing and tuning knobs.
  int girth_floor_override = 0;  // 0 = derive from mode, slack and k
  bool prune_arc_span = false;   // drop arcs spanning undirected distance < 4
                                 // (only sound for r=2, z=1, k=2 in excess mode)
};

struct SearchResult {
  std::vector<MixedGraph> graphs;  // canonical representatives, sorted
  std::uint64_t nodes = 0;
  std::uint64_t seeds = 0;
  std::map<std::string, std::uint64_t> prunes;
  double wall_seconds = 0;

  bool operator==(const SearchResult& o) const {
    return graphs == o.graphs && nodes == o.nodes && seeds == o.seeds && prunes == o.prunes;
  }
};

// Exhaustive search for graphs at the given distance from the bound:
// defect mode looks for order bound-slack with diameter <= k, excess mode
// for order bound+slack with k-geodecity.  The search universe admits at
// most one link (an edge or a single arc) between any pair of vertices, so
// graphs with opposite arc pairs are never produced.  Undirected degree r
// and out-degree z are imposed exactly (for slack <= 1 this loses nothing).
// With enumerate_all the result set is independent of the worker count;
// stop-at-first returns some witness.  Throws BudgetExceeded when the node
// budget runs out.
SearchResult search_extremal(const SearchSpec& spec);

nlohmann::json search_result_to_json(const SearchResult& r);
SearchResult search_result_from_json(const nlohmann::json& j);

}  // namespace mgx
