#include "mgx/canonical.hpp"

#include <algorithm>
#include <map>

namespace mgx {

namespace {

// Stable color refinement.  A vertex signature is its own color followed by
// the sorted color multisets of its edge, out-arc and in-arc neighborhoods;
// new colors are the ranks of the distinct signatures.  The result depends
// only on the isomorphism type, never on vertex numbering.
void refine(const MixedGraph& g, std::vector<int>& color) {
  int n = g.order();
  int classes = 0;
  for (int c : color) classes = std::max(classes, c + 1);
  while (true) {
    std::vector<std::vector<int>> sig(n);
    for (int u = 0; u < n; ++u) {
      auto& s = sig[u];
      s.push_back(color[u]);
      auto append_sorted = [&](const std::vector<int>& nbrs) {
        s.push_back(-1);
        std::size_t start = s.size();
        for (int w : nbrs) s.push_back(color[w]);
        std::sort(s.begin() + start, s.end());
      };
      append_sorted(g.edge_neighbors(u));
      append_sorted(g.arc_out_neighbors(u));
      append_sorted(g.arc_in_neighbors(u));
    }
    std::map<std::vector<int>, int> rank;
    for (const auto& s : sig) rank.emplace(s, 0);
    int next = 0;
    for (auto& [_, r] : rank) r = next++;
    for (int u = 0; u < n; ++u) color[u] = rank[sig[u]];
    if (next == classes) return;
    classes = next;
  }
}

struct CanonSearch {
  const MixedGraph& g;
  int n;
  std::size_t perm_limit;
  std::string best;
  std::uint64_t best_hits = 0;
  std::vector<std::vector<int>> best_perms;

  void dive(std::vector<int> color) {
    refine(g, color);
    int classes = 0;
    for (int c : color) classes = std::max(classes, c + 1);
    if (classes == n) {
      std::string bytes = serialize_graph(g.relabeled(color));
      if (best.empty() || bytes < best) {
        best = std::move(bytes);
        best_hits = 1;
        best_perms.assign(1, color);
      } else if (bytes == best) {
        ++best_hits;
        if (best_perms.size() < perm_limit) best_perms.push_back(color);
      }
      return;
    }
    int target = -1;
    std::vector<int> members;
    for (int c = 0; c < classes && target < 0; ++c) {
      members.clear();
      for (int u = 0; u < n; ++u)
        if (color[u] == c) members.push_back(u);
      if (members.size() >= 2) target = c;
    }
    for (int u : members) {
      std::vector<int> child = color;
      child[u] = classes;  // individualize
      dive(std::move(child));
    }
  }
};

CanonSearch run_search(const MixedGraph& g, std::size_t perm_limit) {
  CanonSearch s{g, g.order(), perm_limit, {}, 0, {}};
  if (g.order() == 0) {
    s.best = serialize_graph(g);
    s.best_hits = 1;
    s.best_perms.assign(1, std::vector<int>{});
    return s;
  }
  s.dive(std::vector<int>(g.order(), 0));
  return s;
}

}  // namespace

CanonicalForm canonical_form(const MixedGraph& g) {
  auto s = run_search(g, 1);
  return {std::move(s.best), s.best_hits};
}

MixedGraph canonical_representative(const MixedGraph& g) {
  auto s = run_search(g, 1);
  return g.order() == 0 ? g : g.relabeled(s.best_perms.front());
}

bool are_isomorphic(const MixedGraph& a, const MixedGraph& b) {
  if (a.order() != b.order() || a.edges().size() != b.edges().size() ||
      a.arcs().size() != b.arcs().size())
    return false;
  return canonical_form(a).bytes == canonical_form(b).bytes;
}

std::vector<std::vector<int>> automorphisms(const MixedGraph& g, std::size_t limit) {
  auto s = run_search(g, limit);
  std::vector<std::vector<int>> result;
  if (g.order() == 0) return {{}};
  const auto& ref = s.best_perms.front();
  std::vector<int> inv_ref(g.order());
  for (int u = 0; u < g.order(); ++u) inv_ref[ref[u]] = u;
  for (const auto& perm : s.best_perms) {
    std::vector<int> sigma(g.order());
    for (int u = 0; u < g.order(); ++u) sigma[u] = inv_ref[perm[u]];
    result.push_back(std::move(sigma));
    if (result.size() >= limit) break;
  }
  return result;
}

}  // namespace mgx
