#pragma once

#include <string>
#include <vector>

#include "mgx/graph.hpp"

namespace mgx {

// Dihedral group of order 2m with presentation x^m = y^2 = e, y x y^-1 = x^-1.
// Elements are x^i y^f, encoded as i + m*f with i in 0..m-1 and f in {0,1}.
class DihedralGroup {
 public:
  explicit DihedralGroup(int m);
  int m() const { return m_; }
  int order() const { return 2 * m_; }
  int identity() const { return 0; }
  int mul(int a, int b) const;
  int inverse(int a) const;
  bool is_involution(int a) const { return a != identity() && mul(a, a) == identity(); }
  // Words are products of atoms 'x' or 'y', each with an optional integer
  // exponent written after '^' (e.g. "x^2", "xy", "x^-1y").
  int eval_word(const std::string& word) const;

 private:
  int m_;
};

// The unique 10-vertex diameter-2 graph with undirected degree 2 and
// out-degree 1 that misses the degree/diameter bound by one: two pentagons
// joined by a 10-cycle of arcs.
MixedGraph almost_moore_10();

// The unique 12-vertex 2-geodetic graph with undirected degree 2 and
// out-degree 1 that exceeds the bound by one: an undirected 12-cycle with
// four directed triangles chord pattern (every arc jumps +-4).
MixedGraph excess_one_12();

// Cayley graph of the dihedral group of order 2m with connection set split
// into arc generators (must not be involutions) and edge generators (must be
// involutions).  Step convention: right multiplication, g -> g*s.
MixedGraph dihedral_cayley(int m, const std::vector<std::string>& arc_gens,
                           const std::vector<std::string>& edge_gens);

// Kautz-style digraph on ordered pairs of distinct symbols from an alphabet
// of size z+2, with the paired opposite arcs collapsed into single edges.
// The result has order (z+2)(z+1), undirected degree 1, out-degree z, and
// meets the diameter-2 bound exactly.
MixedGraph kautz_collapse(int z);

}  // namespace mgx
