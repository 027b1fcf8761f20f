#include "mgx/constructions.hpp"

#include <algorithm>
#include <set>

namespace mgx {

DihedralGroup::DihedralGroup(int m) : m_(m) {
  if (m < 1) throw std::invalid_argument("dihedral parameter must be positive");
}

int DihedralGroup::mul(int a, int b) const {
  int ai = a % m_, af = a / m_;
  int bi = b % m_, bf = b / m_;
  // (x^ai y^af)(x^bi y^bf): moving x^bi past y flips its sign.
  int i = af == 0 ? (ai + bi) % m_ : ((ai - bi) % m_ + m_) % m_;
  int f = af ^ bf;
  return i + m_ * f;
}

int DihedralGroup::inverse(int a) const {
  int ai = a % m_, af = a / m_;
  if (af == 1) return a;  // reflections are involutions
  return ((m_ - ai) % m_);
}

int DihedralGroup::eval_word(const std::string& word) const {
  if (word.empty()) throw std::invalid_argument("empty generator word");
  int acc = identity();
  std::size_t pos = 0;
  while (pos < word.size()) {
    char c = word[pos];
    if (c != 'x' && c != 'y')
      throw std::invalid_argument("generator word '" + word + "': unexpected character '" +
                                  std::string(1, c) + "'");
    ++pos;
    long exp = 1;
    if (pos < word.size() && word[pos] == '^') {
      ++pos;
      std::size_t start = pos;
      if (pos < word.size() && (word[pos] == '-' || word[pos] == '+')) ++pos;
      while (pos < word.size() && std::isdigit(static_cast<unsigned char>(word[pos]))) ++pos;
      if (pos == start)
        throw std::invalid_argument("generator word '" + word + "': missing exponent");
      exp = std::stol(word.substr(start, pos - start));
    }
    int base = c == 'x' ? 1 % m_ : m_;  // x or y as elements
    int step = identity();
    long e = ((exp % (2 * m_)) + 2 * m_) % (2 * m_);  // cheap reduction, exact for x and y
    for (long i = 0; i < e; ++i) step = mul(step, base);
    acc = mul(acc, step);
  }
  return acc;
}

MixedGraph almost_moore_10() {
  std::vector<VertexPair> edges = {{0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 4},
                                   {5, 6}, {5, 9}, {6, 7}, {7, 8}, {8, 9}};
  std::vector<VertexPair> arcs = {{1, 5}, {5, 4}, {4, 9}, {9, 2}, {2, 8},
                                  {8, 0}, {0, 7}, {7, 3}, {3, 6}, {6, 1}};
  return MixedGraph(10, std::move(edges), std::move(arcs));
}

MixedGraph excess_one_12() {
  std::vector<VertexPair> edges, arcs;
  for (int i = 0; i < 12; ++i) edges.push_back({i, (i + 1) % 12});
  arcs = {{0, 4}, {4, 8}, {8, 0}, {2, 6}, {6, 10}, {10, 2},
          {1, 9}, {9, 5}, {5, 1}, {3, 11}, {11, 7}, {7, 3}};
  return MixedGraph(12, std::move(edges), std::move(arcs));
}

MixedGraph dihedral_cayley(int m, const std::vector<std::string>& arc_gens,
                           const std::vector<std::string>& edge_gens) {
  DihedralGroup grp(m);
  std::set<int> arc_set, edge_set;
  for (const auto& w : arc_gens) {
    int s = grp.eval_word(w);
    if (s == grp.identity())
      throw std::invalid_argument("arc generator '" + w + "' is the identity");
    if (grp.is_involution(s))
      throw std::invalid_argument("arc generator '" + w +
                                  "' is an involution; it would collapse to an edge");
    arc_set.insert(s);
  }
  for (const auto& w : edge_gens) {
    int s = grp.eval_word(w);
    if (s == grp.identity())
      throw std::invalid_argument("edge generator '" + w + "' is the identity");
    if (!grp.is_involution(s))
      throw std::invalid_argument("edge generator '" + w + "' is not an involution");
    edge_set.insert(s);
  }
  for (int s : arc_set)
    if (edge_set.count(s))
      throw std::invalid_argument("a generator appears as both arc and edge");

  std::vector<VertexPair> edges, arcs;
  for (int g = 0; g < grp.order(); ++g) {
    for (int s : edge_set) {
      int h = grp.mul(g, s);
      if (g < h) edges.push_back({g, h});
    }
    for (int s : arc_set) arcs.push_back({g, grp.mul(g, s)});
  }
  return MixedGraph(grp.order(), std::move(edges), std::move(arcs));
}

MixedGraph kautz_collapse(int z) {
  if (z < 1) throw std::invalid_argument("z must be at least 1");
  int symbols = z + 2;
  std::vector<std::vector<int>> id(symbols, std::vector<int>(symbols, -1));
  int n = 0;
  for (int a = 0; a < symbols; ++a)
    for (int b = 0; b < symbols; ++b)
      if (a != b) id[a][b] = n++;

  std::vector<VertexPair> edges, arcs;
  for (int a = 0; a < symbols; ++a)
    for (int b = 0; b < symbols; ++b) {
      if (a == b) continue;
      // (a,b) -> (b,c); the c == a case is the two-cycle collapsed to an edge
      if (a < b) edges.push_back({id[a][b], id[b][a]});
      for (int c = 0; c < symbols; ++c)
        if (c != a && c != b) arcs.push_back({id[a][b], id[b][c]});
    }
  return MixedGraph(n, std::move(edges), std::move(arcs));
}

}  // namespace mgx
