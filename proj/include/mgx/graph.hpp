#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mgx {

// Error raised while reading the v1 text format; carries the 1-based line number.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Raised when an operation's structural precondition does not hold
// (e.g. asking for the repeat map of a graph that is not defect-one).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a search exceeds its node budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using VertexPair = std::pair<int, int>;

// Row-major bit matrix used for O(1) adjacency membership tests.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols)
      : stride_((cols + 63) / 64), bits_(static_cast<std::size_t>(rows) * stride_, 0) {}

  bool test(int r, int c) const {
    return (bits_[static_cast<std::size_t>(r) * stride_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(int r, int c) {
    bits_[static_cast<std::size_t>(r) * stride_ + c / 64] |= std::uint64_t(1) << (c % 64);
  }

 private:
  int stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

// A mixed graph: vertices 0..n-1, a set of undirected edges and a set of
// directed arcs.  Loops and parallel elements are rejected, and an edge {u,v}
// excludes both arcs (u,v) and (v,u).  Instances are immutable once built.
//
// Adjacency is kept both as sorted neighbor lists (for ordered iteration) and
// as bitsets (for membership tests).
class MixedGraph {
 public:
  MixedGraph() = default;
  // Edge pairs may be given in either order; arc pairs are (tail, head).
  // Throws std::invalid_argument on any invariant violation.
  MixedGraph(int n, std::vector<VertexPair> edges, std::vector<VertexPair> arcs);

  int order() const { return n_; }
  const std::vector<VertexPair>& edges() const { return edges_; }  // normalized, sorted
  const std::vector<VertexPair>& arcs() const { return arcs_; }    // sorted

  // U(u), Z+(u), Z-(u); each sorted ascending.
  const std::vector<int>& edge_neighbors(int u) const { return edge_adj_[u]; }
  const std::vector<int>& arc_out_neighbors(int u) const { return out_adj_[u]; }
  const std::vector<int>& arc_in_neighbors(int u) const { return in_adj_[u]; }

  bool has_edge(int u, int v) const { return edge_bits_.test(u, v); }
  bool has_arc(int u, int v) const { return arc_bits_.test(u, v); }

  // New graph with vertex u renamed to perm[u].  perm must be a permutation
  // of 0..n-1.
  MixedGraph relabeled(const std::vector<int>& perm) const;

  bool operator==(const MixedGraph& other) const {
    return n_ == other.n_ && edges_ == other.edges_ && arcs_ == other.arcs_;
  }

 private:
  int n_ = 0;
  std::vector<VertexPair> edges_, arcs_;
  std::vector<std::vector<int>> edge_adj_, out_adj_, in_adj_;
  BitMatrix edge_bits_, arc_bits_;
};

struct DegreeProfile {
  std::vector<int> undirected, out, in;  // d(u), d+(u), d-(u)
  int min_undirected = 0, max_undirected = 0;
  int min_out = 0, max_out = 0;
  int min_in = 0, max_in = 0;
};

DegreeProfile degrees(const MixedGraph& g);

struct NeighborSets {
  std::vector<int> undirected;  // U(u)
  std::vector<int> arc_out;     // Z+(u)
  std::vector<int> arc_in;      // Z-(u)
  std::vector<int> out;         // N+(u) = U(u) ∪ Z+(u)
  std::vector<int> in;          // N-(u) = U(u) ∪ Z-(u)
};

NeighborSets neighborhoods(const MixedGraph& g, int u);

// Walks may traverse edges in both directions and arcs forward only.  A walk
// is non-backtracking when it never follows an edge and immediately returns
// over the same edge; traversing a digon (arc u->v then arc v->u) is allowed.
// Counts cover walks of length 1..max_len; the empty walk is not counted.
std::int64_t count_nbt_walks(const MixedGraph& g, int from, int to, int max_len);

// One row of counts: walks of length 1..max_len from `from` to every vertex.
std::vector<std::int64_t> nbt_walk_counts(const MixedGraph& g, int from, int max_len);

// Full matrix of nbt walk counts.  jobs: 0 = all hardware threads, 1 = serial.
std::vector<std::vector<std::int64_t>> nbt_walk_matrix(const MixedGraph& g, int max_len,
                                                       int jobs = 0);

// Shortest mixed walk lengths (edges both ways, arcs forward).  d(u,u) = 0.
std::optional<int> distance(const MixedGraph& g, int from, int to);
std::vector<int> distances_from(const MixedGraph& g, int from);  // -1 = unreachable
std::optional<int> diameter(const MixedGraph& g, int jobs = 0);  // nullopt = infinite

// BFS distances in the undirected subgraph G^U (arcs ignored).
std::vector<int> undirected_distances_from(const MixedGraph& g, int from);

// Text format v1.  serialize_graph emits the normalized form: header line,
// n line, sorted E lines, sorted A lines.  parse(serialize(g)) == g, and
// serializing a parsed normalized file reproduces it byte for byte.
MixedGraph parse_graph(const std::string& text);
std::string serialize_graph(const MixedGraph& g);

// Graphviz rendering: arrowheads on arcs only.
std::string graph_to_dot(const MixedGraph& g);

}  // namespace mgx
