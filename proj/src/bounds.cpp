#include "mgx/bounds.hpp"

#include <stdexcept>

namespace mgx {

namespace {

void require_nonnegative(long v, const char* name) {
  if (v < 0) throw std::invalid_argument(std::string(name) + " must be nonnegative");
}

// Arithmetic in Q(sqrt(d)) for a fixed nonsquare-or-square d >= 0.
QuadRat add(const QuadRat& a, const QuadRat& b) {
  return {a.rat + b.rat, a.root_coeff + b.root_coeff};
}
QuadRat sub(const QuadRat& a, const QuadRat& b) {
  return {a.rat - b.rat, a.root_coeff - b.root_coeff};
}
QuadRat mul(const QuadRat& a, const QuadRat& b, const mpz_class& d) {
  return {a.rat * b.rat + a.root_coeff * b.root_coeff * mpq_class(d),
          a.rat * b.root_coeff + a.root_coeff * b.rat};
}
QuadRat div(const QuadRat& a, const QuadRat& b, const mpz_class& d) {
  mpq_class norm = b.rat * b.rat - b.root_coeff * b.root_coeff * mpq_class(d);
  if (norm == 0) throw std::domain_error("division by zero in quadratic field");
  QuadRat conj{b.rat, -b.root_coeff};
  QuadRat num = mul(a, conj, d);
  return {num.rat / norm, num.root_coeff / norm};
}
QuadRat pow(QuadRat base, long e, const mpz_class& d) {
  QuadRat acc{1, 0};
  while (e > 0) {
    if (e & 1) acc = mul(acc, base, d);
    base = mul(base, base, d);
    e >>= 1;
  }
  return acc;
}
// When d is a perfect square, sqrt(d) is rational and a growth rate can
// equal 1 without its symbolic root coefficient vanishing.
bool is_one(const QuadRat& q, const mpz_class& d) {
  if (mpz_perfect_square_p(d.get_mpz_t())) {
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
    return q.rat + q.root_coeff * mpq_class(s) == 1;
  }
  return q.rat == 1 && q.root_coeff == 0;
}

}  // namespace

MooreBound moore_bound(long r, long z, long k) {
  require_nonnegative(r, "r");
  require_nonnegative(z, "z");
  require_nonnegative(k, "k");
  MooreBound b;
  b.proper_mixed = (r >= 1 && z >= 1);
  b.levels.reserve(k + 1);
  b.levels.push_back({0, 0, 1});
  b.value = 1;
  mpz_class a = r, c = z;  // level-1 seed: r vertices reached by an edge, z by an arc
  for (long i = 1; i <= k; ++i) {
    b.levels.push_back({a, c, a + c});
    b.value += a + c;
    mpz_class an = (r - 1) * a + r * c;
    mpz_class cn = z * (a + c);
    a = an;
    c = cn;
  }
  return b;
}

MooreBoundTerms moore_bound_closed_form(long r, long z, long k) {
  require_nonnegative(r, "r");
  require_nonnegative(z, "z");
  require_nonnegative(k, "k");
  MooreBoundTerms t;
  t.discriminant = mpz_class(z + r) * (z + r) + 2 * (z - r) + 1;
  mpz_class d = t.discriminant;

  QuadRat root{0, 1};  // sqrt(d)
  QuadRat half{mpq_class(1, 2), 0};
  QuadRat trace{mpq_class(z + r - 1), 0};
  t.growth_lo = mul(sub(trace, root), half, d);
  t.growth_hi = mul(add(trace, root), half, d);

  t.degenerate = (d == 0) || is_one(t.growth_lo, d) || is_one(t.growth_hi, d);
  if (t.degenerate) return t;

  QuadRat shift{mpq_class(z + r + 1), 0};
  QuadRat two_root{0, 2};
  t.coeff_lo = div(sub(root, shift), two_root, d);
  t.coeff_hi = div(add(root, shift), two_root, d);

  QuadRat one{1, 0};
  auto geometric = [&](const QuadRat& u) {
    return div(sub(pow(u, k + 1, d), one), sub(u, one), d);
  };
  QuadRat total = add(mul(t.coeff_lo, geometric(t.growth_lo), d),
                      mul(t.coeff_hi, geometric(t.growth_hi), d));
  if (total.root_coeff != 0 || total.rat.get_den() != 1)
    throw std::logic_error("closed-form bound did not reduce to an integer");
  t.value = total.rat.get_num();
  return t;
}

mpz_class moore_bound_k2(long r, long z) {
  require_nonnegative(r, "r");
  require_nonnegative(z, "z");
  return mpz_class(r + z) * (r + z) + z + 1;
}

UnitParamsOrder order_11k(long k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  // F(0) = F(1) = 1, F(2) = 2; the bound minus one works out to F(k+3) - 3.
  mpz_class prev = 1, cur = 1;
  for (long i = 2; i <= k + 3; ++i) {
    mpz_class next = prev + cur;
    prev = cur;
    cur = next;
  }
  UnitParamsOrder o;
  o.order = cur - 3;
  o.parity_feasible = mpz_even_p(o.order.get_mpz_t()) != 0;
  return o;
}

SpectralFilterResult spectral_infeasibility_defect1(long z) {
  if (z < 1) throw std::invalid_argument("z must be at least 1");
  SpectralFilterResult s;
  s.order = mpz_class(z) * z + 5 * z + 4;
  // The discriminant of the forced quadratic must be a perfect square; here
  // it always is, which is what lets the eigenvalues be rational integers.
  mpz_class disc = 4 * s.order + 9;
  mpz_class root = mpz_class(2 * z + 5);
  if (root * root != disc) throw std::logic_error("4n+9 is not a perfect square");

  mpq_class half_order(s.order);
  half_order /= 2;
  s.eigen_sum_candidates = {
      mpq_class(z + 3) - half_order,
      mpq_class(z + 2) - half_order,
      mpq_class(-z - 2) - half_order,
      mpq_class(-z - 3) - half_order,
  };
  s.infeasible = true;
  for (const auto& c : s.eigen_sum_candidates)
    if (c == 0) s.infeasible = false;
  return s;
}

}  // namespace mgx
