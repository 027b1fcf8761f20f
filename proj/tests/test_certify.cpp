#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "mgx/certify.hpp"
#include "mgx/constructions.hpp"
#include "mgx/graph.hpp"
#include "oracles.hpp"

using mgx::AuditStatus;
using mgx::Family;
using mgx::MixedGraph;
using mgx::Mode;
using mgx::StepKind;

namespace {

// I + A + A^2 with plain matrix arithmetic, A the 0/1 out-adjacency matrix.
std::vector<std::vector<std::int64_t>> walk_polynomial(const MixedGraph& g) {
  int n = g.order();
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n, 0));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && (g.has_edge(u, v) || g.has_arc(u, v))) a[u][v] = 1;
  auto m = a;
  for (int i = 0; i < n; ++i) m[i][i] += 1;
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      if (a[i][l])
        for (int j = 0; j < n; ++j) m[i][j] += a[l][j];
  return m;
}

const std::vector<int> kRepeatFig1 = {3, 4, 0, 1, 2, 9, 5, 6, 7, 8};
const std::vector<int> kOutlierFig6 = {6, 7, 8, 9, 10, 11, 0, 1, 2, 3, 4, 5};

}  // namespace

TEST_CASE("moore tree entries follow the fixed child order") {
  MixedGraph g(4, {{0, 1}, {0, 2}}, {{0, 3}, {1, 3}});
  auto t = mgx::moore_tree(g, 0, 2);
  REQUIRE(t.entries.size() == 5);
  CHECK(t.entries[0].vertex == 0);
  CHECK(t.entries[0].step == StepKind::root);
  CHECK(t.entries[0].parent == -1);
  CHECK(t.entries[1].vertex == 1);
  CHECK(t.entries[1].step == StepKind::edge);
  CHECK(t.entries[2].vertex == 2);
  CHECK(t.entries[2].step == StepKind::edge);
  CHECK(t.entries[3].vertex == 3);
  CHECK(t.entries[3].step == StepKind::arc);
  CHECK(t.entries[4].vertex == 3);
  CHECK(t.entries[4].parent == 1);
  CHECK(t.entries[4].step == StepKind::arc);
  CHECK(t.entries[4].level == 2);
  CHECK(t.duplicates == std::vector<std::pair<int, int>>{{3, 2}});
  CHECK(t.missing.empty());

  CHECK_THROWS_AS(mgx::moore_tree(g, 4, 2), std::invalid_argument);
  CHECK_THROWS_AS(mgx::moore_tree(g, -1, 2), std::invalid_argument);
}

TEST_CASE("moore tree walk population matches the bound picture") {
  auto g1 = mgx::almost_moore_10();
  for (int root = 0; root < 10; ++root) {
    auto t = mgx::moore_tree(g1, root, 2);
    CHECK(t.entries.size() == 11);  // root plus bound-minus-one walks
    CHECK(t.duplicates.size() == 1);
    CHECK(t.duplicates[0].second == 2);
    CHECK(t.missing.empty());
  }
  auto g6 = mgx::excess_one_12();
  auto t0 = mgx::moore_tree(g6, 0, 2);
  CHECK(t0.entries.size() == 11);
  CHECK(t0.duplicates.empty());
  CHECK(t0.missing == std::vector<int>{6});
  for (int root = 0; root < 12; ++root) {
    auto t = mgx::moore_tree(g6, root, 2);
    CHECK(t.duplicates.empty());
    CHECK(t.missing == std::vector<int>{kOutlierFig6[root]});
  }
}

TEST_CASE("tree renderings name walk nodes u0, u1, ...") {
  auto t = mgx::moore_tree(mgx::excess_one_12(), 0, 2);
  auto text = mgx::tree_to_text(t);
  CHECK(text.find("root 0 depth 2 entries 11") != std::string::npos);
  CHECK(text.find("u0 vertex=0 level=0 root") != std::string::npos);
  CHECK(text.find("missing: 6") != std::string::npos);
  auto dot = mgx::tree_to_dot(t);
  CHECK(dot.find("u0") != std::string::npos);
  CHECK(dot.find("u10") != std::string::npos);
}

TEST_CASE("geodetic verdicts for the fixtures") {
  CHECK(mgx::is_k_geodetic(mgx::excess_one_12(), 2).geodetic);
  CHECK(!mgx::is_k_geodetic(mgx::almost_moore_10(), 2).geodetic);
  auto bad = mgx::is_k_geodetic(mgx::almost_moore_10(), 2);
  CHECK(bad.from >= 0);
  CHECK(bad.to >= 0);
}

TEST_CASE("repeat map of the defect-one fixture") {
  auto g = mgx::almost_moore_10();
  auto rep = mgx::repeats(g, 2);
  CHECK(rep == kRepeatFig1);
  // Total: every vertex has exactly one repeat, and the map is a
  // graph automorphism.
  std::set<int> image(rep.begin(), rep.end());
  CHECK(image.size() == 10);
  CHECK(g.relabeled(rep) == g);
  CHECK_THROWS_AS(mgx::repeats(mgx::excess_one_12(), 2), mgx::PreconditionError);
}

TEST_CASE("outlier map of the excess-one fixture") {
  auto g = mgx::excess_one_12();
  auto out = mgx::outliers(g, 2);
  CHECK(out == kOutlierFig6);
  std::set<int> image(out.begin(), out.end());
  CHECK(image.size() == 12);
  for (int u = 0; u < 12; ++u) CHECK(out[u] != u);
  CHECK_THROWS_AS(mgx::outliers(mgx::almost_moore_10(), 2), mgx::PreconditionError);
}

TEST_CASE("deficiency sets split vertices by in-degree") {
  MixedGraph g(4, {}, {{0, 1}, {1, 2}, {2, 0}, {3, 0}});
  auto s = mgx::deficiency_sets(g, 1);
  CHECK(s.small_in == std::vector<int>{3});
  CHECK(s.large_in == std::vector<int>{0});
  auto s1 = mgx::deficiency_sets(mgx::almost_moore_10(), 1);
  CHECK(s1.small_in.empty());
  CHECK(s1.large_in.empty());
  auto s6 = mgx::deficiency_sets(mgx::excess_one_12(), 1);
  CHECK(s6.small_in.empty());
  CHECK(s6.large_in.empty());
}

TEST_CASE("total regularity") {
  CHECK(mgx::total_regularity(mgx::almost_moore_10(), 2, 1));
  CHECK(mgx::total_regularity(mgx::excess_one_12(), 2, 1));
  CHECK(!mgx::total_regularity(mgx::almost_moore_10(), 2, 2));
  MixedGraph g(4, {}, {{0, 1}, {1, 2}, {2, 0}, {3, 0}});
  CHECK(!mgx::total_regularity(g, 0, 1));
}

TEST_CASE("defect matrix identity holds and recovers the repeat map") {
  auto g = mgx::almost_moore_10();
  CHECK(mgx::matrix_identity_defect(g).holds);

  auto m = walk_polynomial(g);
  auto rep = mgx::repeats(g, 2);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      std::int64_t want = 1 + (i == j ? 2 : 0) + (rep[i] == j ? 1 : 0);
      CHECK(m[i][j] == want);
    }

  std::mt19937 rng(31);
  std::vector<int> perm(10);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  CHECK(mgx::matrix_identity_defect(g.relabeled(perm)).holds);

  CHECK_THROWS_AS(mgx::matrix_identity_defect(mgx::excess_one_12()), mgx::PreconditionError);
}

TEST_CASE("excess matrix identity holds and recovers the outlier map") {
  auto g = mgx::excess_one_12();
  CHECK(mgx::matrix_identity_excess(g, 2).holds);

  auto m = walk_polynomial(g);
  auto out = mgx::outliers(g, 2);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      std::int64_t want = 1 + (i == j ? 2 : 0) - (out[i] == j ? 1 : 0);
      CHECK(m[i][j] == want);
    }

  CHECK_THROWS_AS(mgx::matrix_identity_excess(mgx::almost_moore_10(), 2),
                  mgx::PreconditionError);
}

TEST_CASE("structure audits on the fixtures are clean") {
  auto a1 = mgx::structure_audit(mgx::almost_moore_10(), 2, 1, 2, Mode::defect);
  REQUIRE(a1.size() == 4);
  CHECK(a1[0].name == "deficit-in-repeat-out-neighborhood");
  CHECK(a1[1].name == "indegree-deviation-balance");
  CHECK(a1[2].name == "surplus-in-repeats-of-out-neighborhood");
  CHECK(a1[3].name == "deficit-equals-repeat-out-neighborhood");
  for (const auto& item : a1) CHECK(item.status == AuditStatus::vacuous);

  auto a6 = mgx::structure_audit(mgx::excess_one_12(), 2, 1, 2, Mode::excess);
  REQUIRE(a6.size() == 4);
  CHECK(a6[0].name == "outlier-of-successor");
  CHECK(a6[0].status == AuditStatus::vacuous);
  CHECK(a6[1].name == "surplus-equals-outlier-out-neighborhood");
  CHECK(a6[1].status == AuditStatus::vacuous);
  CHECK(a6[2].name == "arc-span-at-least-four");
  CHECK(a6[2].status == AuditStatus::pass);
  CHECK(a6[3].name == "undirected-subgraph-single-cycle");
  CHECK(a6[3].status == AuditStatus::pass);
}

TEST_CASE("short arc trips the span audit on a synthetic candidate") {
  std::vector<mgx::VertexPair> cycle;
  for (int i = 0; i < 12; ++i) cycle.push_back({i, (i + 1) % 12});
  MixedGraph g(12, cycle, {{0, 2}});
  auto audits = mgx::structure_audit(g, 2, 1, 2, Mode::excess);
  REQUIRE(audits.size() == 2);
  CHECK(audits[0].name == "arc-span-at-least-four");
  CHECK(audits[0].status == AuditStatus::fail);
  CHECK(audits[0].detail.find("(0,2)") != std::string::npos);
  CHECK(audits[1].name == "undirected-subgraph-single-cycle");
  CHECK(audits[1].status == AuditStatus::pass);

  MixedGraph two_cycles(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}, {});
  auto split = mgx::structure_audit(two_cycles, 2, 1, 2, Mode::excess);
  REQUIRE(split.size() == 2);
  CHECK(split[1].status == AuditStatus::fail);
}

TEST_CASE("check report for the defect-one fixture") {
  auto g = mgx::almost_moore_10();
  auto rep = mgx::check_graph(g, 2, 1, 2, Mode::defect);
  CHECK(rep.family == Family::defect);
  CHECK(rep.slack == 1);
  CHECK(rep.order == 10);
  CHECK(rep.diameter == 2);
  CHECK(!rep.geodetic);
  CHECK(rep.totally_regular);
  REQUIRE(rep.repeat_map.has_value());
  CHECK(*rep.repeat_map == kRepeatFig1);
  CHECK(!rep.outlier_map.has_value());
  CHECK(rep.small_in.empty());
  CHECK(rep.large_in.empty());
  CHECK(rep.audits.size() == 4);
}

TEST_CASE("check report for the excess-one fixture") {
  auto g = mgx::excess_one_12();
  auto rep = mgx::check_graph(g, 2, 1, 2, Mode::excess);
  CHECK(rep.family == Family::excess);
  CHECK(rep.slack == 1);
  CHECK(rep.geodetic);
  CHECK(rep.totally_regular);
  REQUIRE(rep.outlier_map.has_value());
  CHECK(*rep.outlier_map == kOutlierFig6);
  CHECK(!rep.repeat_map.has_value());
  CHECK(rep.diameter == mgx::diameter(g));
}

TEST_CASE("check report classifies Moore and out-of-family graphs") {
  MixedGraph k2(2, {{0, 1}}, {});
  auto moore = mgx::check_graph(k2, 1, 0, 1, Mode::defect);
  CHECK(moore.family == Family::moore);
  CHECK(moore.slack == 0);

  auto kautz = mgx::kautz_collapse(1);
  CHECK(mgx::check_graph(kautz, 1, 1, 2, Mode::defect).family == Family::moore);
  CHECK(mgx::check_graph(kautz, 1, 1, 2, Mode::excess).family == Family::moore);

  MixedGraph empty3(3, {}, {});
  auto off = mgx::check_graph(empty3, 1, 0, 1, Mode::defect);
  CHECK(off.family == Family::out_of_family);
  CHECK(off.audits.empty());

  MixedGraph star(4, {{0, 1}, {0, 2}, {0, 3}}, {});
  CHECK_THROWS_AS(mgx::check_graph(star, 2, 1, 2, Mode::defect), mgx::PreconditionError);
  CHECK_THROWS_AS(mgx::check_graph(star, 2, 1, 2, Mode::excess), mgx::PreconditionError);
  CHECK_THROWS_AS(mgx::check_graph(k2, -1, 0, 1, Mode::defect), std::invalid_argument);
  CHECK_THROWS_AS(mgx::check_graph(k2, 1, 0, 0, Mode::defect), std::invalid_argument);
}

TEST_CASE("check report commutes with relabeling") {
  std::mt19937 rng(417);
  auto g = mgx::almost_moore_10();
  auto base = mgx::check_graph(g, 2, 1, 2, Mode::defect);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<int> perm(10);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto rep = mgx::check_graph(g.relabeled(perm), 2, 1, 2, Mode::defect);
    CHECK(rep.family == base.family);
    CHECK(rep.slack == base.slack);
    CHECK(rep.totally_regular == base.totally_regular);
    REQUIRE(rep.repeat_map.has_value());
    for (int u = 0; u < 10; ++u) CHECK((*rep.repeat_map)[perm[u]] == perm[(*base.repeat_map)[u]]);
  }
}

TEST_CASE("check report JSON round trip") {
  for (auto rep : {mgx::check_graph(mgx::almost_moore_10(), 2, 1, 2, Mode::defect),
                   mgx::check_graph(mgx::excess_one_12(), 2, 1, 2, Mode::excess),
                   mgx::check_graph(MixedGraph(3, {}, {}), 1, 0, 1, Mode::defect)}) {
    auto j = mgx::report_to_json(rep);
    CHECK(mgx::report_from_json(j) == rep);
  }
}
