#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "mgx/certify.hpp"
#include "mgx/graph.hpp"

// Slow reference implementations used only by tests.  Everything here is
// written for obviousness, not speed: recursive walk enumeration, permutation
// backtracking, filter-everything search.
namespace oracle {

// Number of non-backtracking walks from `from` to `to` of length 1..max_len,
// found by enumerating every walk step by step.
std::int64_t count_walks(const mgx::MixedGraph& g, int from, int to, int max_len);

std::vector<std::vector<std::int64_t>> walk_matrix(const mgx::MixedGraph& g, int max_len);

bool geodetic(const mgx::MixedGraph& g, int k);

// Permutation backtracking with degree-profile pruning.
bool isomorphic(const mgx::MixedGraph& a, const mgx::MixedGraph& b);

std::uint64_t automorphism_count(const mgx::MixedGraph& g);

mgx::MixedGraph random_graph(int n, double edge_p, double arc_p, std::mt19937& rng);

// All mixed graphs on n vertices, digons included: each unordered pair takes
// one of the five states none / edge / arc / reverse arc / digon.
void for_each_mixed_graph(int n, const std::function<void(const mgx::MixedGraph&)>& fn);

// Filter-everything reference for search_extremal: enumerates digon-free
// graphs pair by pair under the mode's degree bounds (maximums in defect
// mode, minimums checked at the end in excess mode), filters on diameter or
// geodecity and the target order, and groups survivors by isomorphism.
// Defect mode prunes on degree overflow and excess mode on geodecity
// violations, both monotone under adding links.  Returns one representative
// per class.
std::vector<mgx::MixedGraph> extremal(int n, int r, int z, int k, mgx::Mode mode);

}  // namespace oracle
