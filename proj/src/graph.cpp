#include "mgx/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mgx {

namespace {

void check_vertex(int v, int n, const char* what) {
  if (v < 0 || v >= n)
    throw std::invalid_argument(std::string(what) + " endpoint " + std::to_string(v) +
                                " out of range for n=" + std::to_string(n));
}

}  // namespace

MixedGraph::MixedGraph(int n, std::vector<VertexPair> edges, std::vector<VertexPair> arcs)
    : n_(n), edges_(std::move(edges)), arcs_(std::move(arcs)) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  for (auto& [u, v] : edges_) {
    check_vertex(u, n, "edge");
    check_vertex(v, n, "edge");
    if (u == v) throw std::invalid_argument("loop edge at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  for (auto& [u, v] : arcs_) {
    check_vertex(u, n, "arc");
    check_vertex(v, n, "arc");
    if (u == v) throw std::invalid_argument("loop arc at vertex " + std::to_string(u));
  }
  std::sort(edges_.begin(), edges_.end());
  std::sort(arcs_.begin(), arcs_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("parallel edge");
  if (std::adjacent_find(arcs_.begin(), arcs_.end()) != arcs_.end())
    throw std::invalid_argument("parallel arc");

  edge_adj_.assign(n, {});
  out_adj_.assign(n, {});
  in_adj_.assign(n, {});
  edge_bits_ = BitMatrix(n, n);
  arc_bits_ = BitMatrix(n, n);
  for (auto [u, v] : edges_) {
    edge_adj_[u].push_back(v);
    edge_adj_[v].push_back(u);
    edge_bits_.set(u, v);
    edge_bits_.set(v, u);
  }
  for (auto [u, v] : arcs_) {
    if (edge_bits_.test(u, v))
      throw std::invalid_argument("arc (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") conflicts with edge {" + std::to_string(std::min(u, v)) +
                                  "," + std::to_string(std::max(u, v)) + "}");
    out_adj_[u].push_back(v);
    in_adj_[v].push_back(u);
    arc_bits_.set(u, v);
  }
  for (auto& a : edge_adj_) std::sort(a.begin(), a.end());
  // out/in lists are filled from the sorted arc list, so out_adj_ rows are
  // already ascending; in_adj_ rows are not.
  for (auto& a : in_adj_) std::sort(a.begin(), a.end());
}

MixedGraph MixedGraph::relabeled(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_)
    throw std::invalid_argument("permutation size does not match vertex count");
  std::vector<VertexPair> es, as;
  es.reserve(edges_.size());
  as.reserve(arcs_.size());
  for (auto [u, v] : edges_) es.emplace_back(perm[u], perm[v]);
  for (auto [u, v] : arcs_) as.emplace_back(perm[u], perm[v]);
  return MixedGraph(n_, std::move(es), std::move(as));
}

DegreeProfile degrees(const MixedGraph& g) {
  DegreeProfile p;
  int n = g.order();
  p.undirected.resize(n);
  p.out.resize(n);
  p.in.resize(n);
  for (int u = 0; u < n; ++u) {
    p.undirected[u] = static_cast<int>(g.edge_neighbors(u).size());
    p.out[u] = static_cast<int>(g.arc_out_neighbors(u).size());
    p.in[u] = static_cast<int>(g.arc_in_neighbors(u).size());
  }
  auto span = [](const std::vector<int>& v, int& lo, int& hi) {
    if (v.empty()) {
      lo = hi = 0;
      return;
    }
    auto [a, b] = std::minmax_element(v.begin(), v.end());
    lo = *a;
    hi = *b;
  };
  span(p.undirected, p.min_undirected, p.max_undirected);
  span(p.out, p.min_out, p.max_out);
  span(p.in, p.min_in, p.max_in);
  return p;
}

NeighborSets neighborhoods(const MixedGraph& g, int u) {
  NeighborSets s;
  s.undirected = g.edge_neighbors(u);
  s.arc_out = g.arc_out_neighbors(u);
  s.arc_in = g.arc_in_neighbors(u);
  auto merged = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    r.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;  // properness keeps a and b disjoint
  };
  s.out = merged(s.undirected, s.arc_out);
  s.in = merged(s.undirected, s.arc_in);
  return s;
}

std::vector<std::int64_t> nbt_walk_counts(const MixedGraph& g, int from, int max_len) {
  int n = g.order();
  if (from < 0 || from >= n) throw std::invalid_argument("walk source out of range");
  if (max_len < 0) throw std::invalid_argument("negative walk length");

  // DP over states (vertex, how we arrived).  Slot 0 of a vertex means
  // "arrived by arc, or start"; slot 1+i means "arrived over the edge from
  // edge_neighbors(v)[i]", which is the one continuation that is forbidden.
  std::vector<std::size_t> base(n + 1, 0);
  for (int v = 0; v < n; ++v) base[v + 1] = base[v] + 1 + g.edge_neighbors(v).size();
  std::size_t states = base[n];

  auto edge_slot = [&](int v, int nbr) {
    const auto& adj = g.edge_neighbors(v);
    auto it = std::lower_bound(adj.begin(), adj.end(), nbr);
    return base[v] + 1 + static_cast<std::size_t>(it - adj.begin());
  };

  std::vector<std::int64_t> cur(states, 0), nxt(states, 0), total(n, 0);
  cur[base[from]] = 1;
  for (int len = 1; len <= max_len; ++len) {
    std::fill(nxt.begin(), nxt.end(), 0);
    for (int v = 0; v < n; ++v) {
      const auto& adj = g.edge_neighbors(v);
      for (std::size_t s = base[v]; s < base[v + 1]; ++s) {
        std::int64_t c = cur[s];
        if (c == 0) continue;
        std::size_t banned = s;  // slot of the edge we came in on (never base[v])
        for (std::size_t i = 0; i < adj.size(); ++i) {
          if (base[v] + 1 + i == banned) continue;
          nxt[edge_slot(adj[i], v)] += c;
        }
        for (int w : g.arc_out_neighbors(v)) nxt[base[w]] += c;
      }
    }
    for (int v = 0; v < n; ++v)
      for (std::size_t s = base[v]; s < base[v + 1]; ++s) total[v] += nxt[s];
    cur.swap(nxt);
  }
  return total;
}

std::int64_t count_nbt_walks(const MixedGraph& g, int from, int to, int max_len) {
  if (to < 0 || to >= g.order()) throw std::invalid_argument("walk target out of range");
  return nbt_walk_counts(g, from, max_len)[to];
}

std::vector<std::vector<std::int64_t>> nbt_walk_matrix(const MixedGraph& g, int max_len,
                                                       int jobs) {
  int n = g.order();
  std::vector<std::vector<std::int64_t>> m(n);
  if (jobs == 1) {
    for (int u = 0; u < n; ++u) m[u] = nbt_walk_counts(g, u, max_len);
    return m;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : omp_get_max_threads())
#endif
  for (int u = 0; u < n; ++u) m[u] = nbt_walk_counts(g, u, max_len);
  return m;
}

std::vector<int> distances_from(const MixedGraph& g, int from) {
  int n = g.order();
  if (from < 0 || from >= n) throw std::invalid_argument("distance source out of range");
  std::vector<int> dist(n, -1);
  std::queue<int> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    auto visit = [&](int w) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    };
    for (int w : g.edge_neighbors(v)) visit(w);
    for (int w : g.arc_out_neighbors(v)) visit(w);
  }
  return dist;
}

std::optional<int> distance(const MixedGraph& g, int from, int to) {
  if (to < 0 || to >= g.order()) throw std::invalid_argument("distance target out of range");
  int d = distances_from(g, from)[to];
  if (d < 0) return std::nullopt;
  return d;
}

std::optional<int> diameter(const MixedGraph& g, int jobs) {
  int n = g.order();
  if (n == 0) return 0;
  int worst = 0;
  bool disconnected = false;
  if (jobs == 1) {
    for (int u = 0; u < n; ++u) {
      for (int d : distances_from(g, u)) {
        if (d < 0) disconnected = true;
        worst = std::max(worst, d);
      }
      if (disconnected) break;
    }
  } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(max : worst) reduction(|| : disconnected) \
    num_threads(jobs > 0 ? jobs : omp_get_max_threads())
#endif
    for (int u = 0; u < n; ++u) {
      for (int d : distances_from(g, u)) {
        if (d < 0) disconnected = true;
        worst = std::max(worst, d);
      }
    }
  }
  if (disconnected) return std::nullopt;
  return worst;
}

std::vector<int> undirected_distances_from(const MixedGraph& g, int from) {
  int n = g.order();
  if (from < 0 || from >= n) throw std::invalid_argument("distance source out of range");
  std::vector<int> dist(n, -1);
  std::queue<int> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : g.edge_neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

MixedGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool saw_header = false, saw_n = false;
  int n = 0;
  std::vector<VertexPair> edges, arcs;
  BitMatrix edge_seen, arc_seen;

  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank or comment-only

    if (!saw_header) {
      std::string ver;
      if (tok != "mixedgraph" || !(ls >> ver) || ver != "v1")
        throw ParseError(lineno, "expected header 'mixedgraph v1'");
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "trailing content after header");
      saw_header = true;
      continue;
    }
    if (!saw_n) {
      if (tok.rfind("n=", 0) != 0) throw ParseError(lineno, "expected 'n=<count>'");
      try {
        std::size_t used = 0;
        n = std::stoi(tok.substr(2), &used);
        if (used != tok.size() - 2) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError(lineno, "malformed vertex count '" + tok + "'");
      }
      if (n < 0) throw ParseError(lineno, "negative vertex count");
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "trailing content after vertex count");
      saw_n = true;
      edge_seen = BitMatrix(n, n);
      arc_seen = BitMatrix(n, n);
      continue;
    }

    if (tok != "E" && tok != "A") throw ParseError(lineno, "unknown record '" + tok + "'");
    int i, j;
    std::string extra;
    if (!(ls >> i >> j) || (ls >> extra))
      throw ParseError(lineno, "malformed " + std::string(tok == "E" ? "edge" : "arc") + " line");
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw ParseError(lineno, "vertex out of range (n=" + std::to_string(n) + ")");
    if (i == j) throw ParseError(lineno, "loop at vertex " + std::to_string(i));
    if (tok == "E") {
      if (i >= j) throw ParseError(lineno, "edge endpoints must satisfy i < j");
      if (edge_seen.test(i, j)) throw ParseError(lineno, "duplicate edge");
      if (arc_seen.test(i, j) || arc_seen.test(j, i))
        throw ParseError(lineno, "edge conflicts with an earlier arc");
      edge_seen.set(i, j);
      edges.emplace_back(i, j);
    } else {
      if (arc_seen.test(i, j)) throw ParseError(lineno, "duplicate arc");
      if (edge_seen.test(std::min(i, j), std::max(i, j)))
        throw ParseError(lineno, "arc conflicts with an earlier edge");
      arc_seen.set(i, j);
      arcs.emplace_back(i, j);
    }
  }
  if (!saw_header) throw ParseError(lineno, "missing header 'mixedgraph v1'");
  if (!saw_n) throw ParseError(lineno, "missing vertex count line");
  return MixedGraph(n, std::move(edges), std::move(arcs));
}

std::string serialize_graph(const MixedGraph& g) {
  std::ostringstream out;
  out << "mixedgraph v1\n";
  out << "n=" << g.order() << "\n";
  for (auto [u, v] : g.edges()) out << "E " << u << " " << v << "\n";
  for (auto [u, v] : g.arcs()) out << "A " << u << " " << v << "\n";
  return out.str();
}

std::string graph_to_dot(const MixedGraph& g) {
  std::ostringstream out;
  out << "digraph mixed {\n  node [shape=circle];\n";
  for (int v = 0; v < g.order(); ++v) out << "  " << v << ";\n";
  for (auto [u, v] : g.edges()) out << "  " << u << " -> " << v << " [dir=none];\n";
  for (auto [u, v] : g.arcs()) out << "  " << u << " -> " << v << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace mgx
