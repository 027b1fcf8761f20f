#pragma once

#include <gmpxx.h>

#include <array>
#include <vector>

namespace mgx {

// One level of the Moore tree population count: numbers of vertices reached
// whose final step was an edge (edge_end) or an arc (arc_end).  Level 0 is
// the root: by convention edge_end = arc_end = 0 and total = 1.
struct LevelCount {
  mpz_class edge_end, arc_end, total;
};

struct MooreBound {
  mpz_class value;
  std::vector<LevelCount> levels;  // levels[0..k]
  bool proper_mixed;               // false when r = 0 or z = 0
};

// Largest possible order of a mixed graph with maximum undirected degree r,
// maximum out-degree z and diameter k (equivalently, the tree population
// bound for k-geodetic graphs with those minimum degrees).  Computed by the
// integer level recurrence; exact for all r, z, k >= 0.
MooreBound moore_bound(long r, long z, long k);

// Closed form of the same bound, evaluated exactly in Q(sqrt(discriminant)).
struct QuadRat {
  mpq_class rat;         // rational part
  mpq_class root_coeff;  // coefficient of sqrt(discriminant)
};

struct MooreBoundTerms {
  mpz_class discriminant;
  QuadRat growth_lo, growth_hi;  // the two geometric growth rates
  QuadRat coeff_lo, coeff_hi;    // mixing coefficients; they sum to 1
  bool degenerate;               // geometric-sum form undefined (growth rate 1
                                 // or repeated root); value is not filled in
  mpz_class value;
};

MooreBoundTerms moore_bound_closed_form(long r, long z, long k);

// Shortcut for diameter two: (r+z)^2 + z + 1.
mpz_class moore_bound_k2(long r, long z);

// Order any (1,1,k)-graph missing the bound by one must have, and whether
// that order has the right parity to exist at all (an undirected degree-1
// graph is a perfect matching, so the order must be even).
struct UnitParamsOrder {
  mpz_class order;
  bool parity_feasible;  // order even; fails exactly when k = 2 (mod 3)
};

UnitParamsOrder order_11k(long k);

// Eigenvalue-sum feasibility filter for diameter-2 graphs one below the
// bound with undirected degree 2 and out-degree z.  Such a graph would force
// an integer quadratic with discriminant 4n+9, and the trace of its walk
// matrix restricts the eigenvalue multiplicity sums to four exact rational
// candidates; if none of them is zero the parameter set is infeasible.
struct SpectralFilterResult {
  mpz_class order;                             // z^2 + 5z + 4
  std::array<mpq_class, 4> eigen_sum_candidates;
  bool infeasible;
};

SpectralFilterResult spectral_infeasibility_defect1(long z);

}  // namespace mgx
