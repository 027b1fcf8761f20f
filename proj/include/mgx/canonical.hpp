#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mgx/graph.hpp"

namespace mgx {

struct CanonicalForm {
  // Normalized serialization of the canonical representative.  Two graphs
  // are isomorphic exactly when their byte strings are equal, and the bytes
  // distinguish edges from arcs and arc direction.
  std::string bytes;
  std::uint64_t aut_group_order = 1;
  bool operator==(const CanonicalForm&) const = default;
  bool operator<(const CanonicalForm& o) const { return bytes < o.bytes; }
};

// Canonical labeling by color refinement on the (undirected, out, in) degree
// structure with individualization branching; the certificate is the
// lexicographically smallest serialization over all discrete refinements.
CanonicalForm canonical_form(const MixedGraph& g);

MixedGraph canonical_representative(const MixedGraph& g);

bool are_isomorphic(const MixedGraph& a, const MixedGraph& b);

// The full automorphism group, listed as permutations (perm[u] is the image
// of u).  `limit` caps how many are collected.
std::vector<std::vector<int>> automorphisms(const MixedGraph& g,
                                            std::size_t limit = ~std::size_t(0));

}  // namespace mgx
