#include "mgx/certify.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "mgx/bounds.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mgx {

const char* family_name(Family f) {
  switch (f) {
    case Family::moore: return "moore";
    case Family::defect: return "defect";
    case Family::excess: return "excess";
    default: return "out-of-family";
  }
}

const char* mode_name(Mode m) { return m == Mode::defect ? "defect" : "excess"; }

const char* audit_status_name(AuditStatus s) {
  switch (s) {
    case AuditStatus::pass: return "pass";
    case AuditStatus::fail: return "fail";
    default: return "vacuous";
  }
}

MooreTree moore_tree(const MixedGraph& g, int root, int depth) {
  if (root < 0 || root >= g.order()) throw std::invalid_argument("tree root out of range");
  if (depth < 0) throw std::invalid_argument("negative tree depth");
  MooreTree t;
  t.root = root;
  t.depth = depth;
  t.entries.push_back({root, 0, -1, StepKind::root});
  // Breadth-first expansion; entries are appended in child order, so entry
  // indices reproduce the left-to-right labeling of the walk tree.
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    MooreTreeEntry e = t.entries[i];
    if (e.level == depth) continue;
    int parent_vertex = e.parent >= 0 ? t.entries[e.parent].vertex : -1;
    for (int w : g.edge_neighbors(e.vertex)) {
      if (e.step == StepKind::edge && w == parent_vertex) continue;
      t.entries.push_back({w, e.level + 1, static_cast<int>(i), StepKind::edge});
    }
    for (int w : g.arc_out_neighbors(e.vertex))
      t.entries.push_back({w, e.level + 1, static_cast<int>(i), StepKind::arc});
  }
  std::vector<int> seen(g.order(), 0);
  for (const auto& e : t.entries) ++seen[e.vertex];
  for (int v = 0; v < g.order(); ++v) {
    if (seen[v] == 0) t.missing.push_back(v);
    if (seen[v] >= 2) t.duplicates.emplace_back(v, seen[v]);
  }
  return t;
}

std::string tree_to_text(const MooreTree& t) {
  std::ostringstream out;
  out << "root " << t.root << " depth " << t.depth << " entries " << t.entries.size() << "\n";
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    const auto& e = t.entries[i];
    out << "u" << i << " vertex=" << e.vertex << " level=" << e.level;
    if (e.step == StepKind::root)
      out << " root";
    else
      out << " parent=u" << e.parent << " step=" << (e.step == StepKind::edge ? "edge" : "arc");
    out << "\n";
  }
  out << "duplicates:";
  if (t.duplicates.empty()) out << " none";
  for (auto [v, c] : t.duplicates) out << " " << v << "(x" << c << ")";
  out << "\nmissing:";
  if (t.missing.empty()) out << " none";
  for (int v : t.missing) out << " " << v;
  out << "\n";
  return out.str();
}

std::string tree_to_dot(const MooreTree& t) {
  std::ostringstream out;
  out << "digraph tree {\n  node [shape=circle];\n";
  for (std::size_t i = 0; i < t.entries.size(); ++i)
    out << "  u" << i << " [label=\"u" << i << ": " << t.entries[i].vertex << "\"];\n";
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    const auto& e = t.entries[i];
    if (e.parent < 0) continue;
    out << "  u" << e.parent << " -> u" << i;
    if (e.step == StepKind::edge) out << " [dir=none]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

GeodeticCheck is_k_geodetic(const MixedGraph& g, int k, int jobs) {
  auto m = nbt_walk_matrix(g, k, jobs);
  GeodeticCheck c;
  for (int u = 0; u < g.order(); ++u) {
    for (int v = 0; v < g.order(); ++v) {
      bool bad = (u == v) ? m[u][v] != 0 : m[u][v] > 1;
      if (bad) {
        c.geodetic = false;
        c.from = u;
        c.to = v;
        return c;
      }
    }
  }
  return c;
}

namespace {

// Per-root duplicate/missing summary used by both maps.  Runs roots in
// parallel; results land in index order so the output is deterministic.
std::vector<MooreTree> all_trees(const MixedGraph& g, int k, int jobs = 0) {
  int n = g.order();
  std::vector<MooreTree> trees(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : omp_get_max_threads())
#else
  (void)jobs;
#endif
  for (int u = 0; u < n; ++u) trees[u] = moore_tree(g, u, k);
  return trees;
}

}  // namespace

std::vector<int> repeats(const MixedGraph& g, int k) {
  auto trees = all_trees(g, k);
  std::vector<int> rep(g.order(), -1);
  for (int u = 0; u < g.order(); ++u) {
    const auto& dup = trees[u].duplicates;
    if (dup.size() != 1 || dup[0].second != 2)
      throw PreconditionError("not defect-one: tree at root " + std::to_string(u) + " has " +
                              std::to_string(dup.size()) + " duplicated vertices");
    rep[u] = dup[0].first;
  }
  return rep;
}

std::vector<int> outliers(const MixedGraph& g, int k) {
  auto trees = all_trees(g, k);
  std::vector<int> out(g.order(), -1);
  for (int u = 0; u < g.order(); ++u) {
    const auto& miss = trees[u].missing;
    if (miss.size() != 1)
      throw PreconditionError("not excess-one: tree at root " + std::to_string(u) + " misses " +
                              std::to_string(miss.size()) + " vertices");
    out[u] = miss[0];
  }
  return out;
}

DeficiencySets deficiency_sets(const MixedGraph& g, int z) {
  DeficiencySets s;
  for (int v = 0; v < g.order(); ++v) {
    int din = static_cast<int>(g.arc_in_neighbors(v).size());
    if (din < z) s.small_in.push_back(v);
    if (din > z) s.large_in.push_back(v);
  }
  return s;
}

bool total_regularity(const MixedGraph& g, int r, int z) {
  for (int v = 0; v < g.order(); ++v) {
    if (static_cast<int>(g.edge_neighbors(v).size()) != r) return false;
    if (static_cast<int>(g.arc_out_neighbors(v).size()) != z) return false;
    if (static_cast<int>(g.arc_in_neighbors(v).size()) != z) return false;
  }
  return true;
}

namespace {

using Matrix = std::vector<std::vector<std::int64_t>>;

Matrix walks_up_to_two(const MixedGraph& g) {
  // I + A + A^2 where A is the out-adjacency matrix (edges count both ways).
  int n = g.order();
  Matrix a(n, std::vector<std::int64_t>(n, 0));
  for (int u = 0; u < n; ++u) {
    for (int v : g.edge_neighbors(u)) a[u][v] = 1;
    for (int v : g.arc_out_neighbors(u)) a[u][v] = 1;
  }
  Matrix m(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) {
    m[i][i] += 1;
    for (int j = 0; j < n; ++j) {
      m[i][j] += a[i][j];
      if (a[i][j])
        for (int l = 0; l < n; ++l) m[i][l] += a[j][l];
    }
  }
  return m;
}

MatrixIdentityResult compare(const Matrix& lhs, const Matrix& rhs) {
  MatrixIdentityResult res;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    for (std::size_t j = 0; j < lhs.size(); ++j)
      if (lhs[i][j] != rhs[i][j]) {
        res.holds = false;
        std::ostringstream d;
        d << "entry (" << i << "," << j << "): " << lhs[i][j] << " vs " << rhs[i][j];
        res.detail = d.str();
        return res;
      }
  return res;
}

}  // namespace

MatrixIdentityResult matrix_identity_defect(const MixedGraph& g) {
  for (int v = 0; v < g.order(); ++v)
    if (g.edge_neighbors(v).size() != 2)
      throw PreconditionError("identity needs undirected degree 2 everywhere; vertex " +
                              std::to_string(v) + " has degree " +
                              std::to_string(g.edge_neighbors(v).size()));
  auto rep = repeats(g, 2);
  int n = g.order();
  Matrix rhs(n, std::vector<std::int64_t>(n, 1));
  for (int i = 0; i < n; ++i) {
    rhs[i][i] += 2;
    rhs[i][rep[i]] += 1;
  }
  return compare(walks_up_to_two(g), rhs);
}

MatrixIdentityResult matrix_identity_excess(const MixedGraph& g, int r) {
  for (int v = 0; v < g.order(); ++v)
    if (static_cast<int>(g.edge_neighbors(v).size()) != r)
      throw PreconditionError("identity needs undirected degree " + std::to_string(r) +
                              " everywhere; vertex " + std::to_string(v) + " has degree " +
                              std::to_string(g.edge_neighbors(v).size()));
  auto out = outliers(g, 2);
  int n = g.order();
  Matrix rhs(n, std::vector<std::int64_t>(n, 1));
  for (int i = 0; i < n; ++i) {
    rhs[i][i] += r;
    rhs[i][out[i]] -= 1;
  }
  return compare(walks_up_to_two(g), rhs);
}

namespace {

std::vector<int> sorted_out_neighbors(const MixedGraph& g, int u) {
  return neighborhoods(g, u).out;
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::vector<AuditItem> structure_audit(const MixedGraph& g, int r, int z, int k, Mode mode) {
  std::vector<AuditItem> items;
  auto [S, Sp] = deficiency_sets(g, z);
  bool no_deviation = S.empty() && Sp.empty();
  auto deg = degrees(g);
  auto push = [&](std::string name, AuditStatus st, std::string detail = "") {
    items.push_back({std::move(name), st, std::move(detail)});
  };
  auto set_check = [&](const char* name, auto&& fn) {
    if (no_deviation) {
      push(name, AuditStatus::vacuous);
      return;
    }
    std::string why = fn();
    push(name, why.empty() ? AuditStatus::pass : AuditStatus::fail, why);
  };

  if (mode == Mode::defect) {
    std::optional<std::vector<int>> rep;
    try {
      rep = repeats(g, k);
    } catch (const PreconditionError&) {
    }
    if (rep) {
      set_check("deficit-in-repeat-out-neighborhood", [&]() -> std::string {
        for (int v : S)
          if (static_cast<int>(g.arc_in_neighbors(v).size()) != z - 1)
            return "vertex " + std::to_string(v) + " has in-degree != z-1";
        for (int u = 0; u < g.order(); ++u) {
          auto nb = sorted_out_neighbors(g, (*rep)[u]);
          if (!is_subset(S, nb))
            return "S not inside out-neighborhood of repeat of " + std::to_string(u);
        }
        return "";
      });
    }
    bool out_regular = deg.min_undirected == r && deg.max_undirected == r &&
                       deg.min_out == z && deg.max_out == z;
    if (out_regular) {
      set_check("indegree-deviation-balance", [&]() -> std::string {
        long long surplus = 0, deficit = 0;
        for (int v : Sp) surplus += g.arc_in_neighbors(v).size() - z;
        for (int v : S) deficit += z - g.arc_in_neighbors(v).size();
        if (surplus != deficit)
          return "surplus " + std::to_string(surplus) + " != deficit " + std::to_string(deficit);
        return "";
      });
    }
    if (rep) {
      set_check("surplus-in-repeats-of-out-neighborhood", [&]() -> std::string {
        for (int u = 0; u < g.order(); ++u) {
          std::vector<int> image;
          for (int w : sorted_out_neighbors(g, u)) image.push_back((*rep)[w]);
          std::sort(image.begin(), image.end());
          image.erase(std::unique(image.begin(), image.end()), image.end());
          if (!is_subset(Sp, image))
            return "S' not inside repeats of out-neighborhood of " + std::to_string(u);
        }
        return "";
      });
      set_check("deficit-equals-repeat-out-neighborhood", [&]() -> std::string {
        for (int u = 0; u < g.order(); ++u) {
          if (S != sorted_out_neighbors(g, (*rep)[u]))
            return "S differs from out-neighborhood of repeat of " + std::to_string(u);
        }
        return "";
      });
    }
  } else {
    std::optional<std::vector<int>> out;
    try {
      out = outliers(g, k);
    } catch (const PreconditionError&) {
    }
    if (out && z == 1) {
      bool successors_defined = true;
      for (int v : S)
        if (g.arc_out_neighbors(v).size() != 1) successors_defined = false;
      if (successors_defined) {
        set_check("outlier-of-successor", [&]() -> std::string {
          for (int v : S) {
            int succ = g.arc_out_neighbors(v)[0];
            if ((*out)[succ] != v)
              return "outlier of the out-neighbor of " + std::to_string(v) + " is not it";
          }
          return "";
        });
      }
    }
    if (out) {
      set_check("surplus-equals-outlier-out-neighborhood", [&]() -> std::string {
        for (int u = 0; u < g.order(); ++u) {
          if (Sp != sorted_out_neighbors(g, (*out)[u]))
            return "S' differs from out-neighborhood of outlier of " + std::to_string(u);
        }
        return "";
      });
    }
    if (r == 2 && z == 1 && k == 2) {
      {
        std::string why;
        for (auto [a, b] : g.arcs()) {
          int d = undirected_distances_from(g, a)[b];
          if (d >= 0 && d < 4) {
            why = "arc (" + std::to_string(a) + "," + std::to_string(b) +
                  ") spans undirected distance " + std::to_string(d);
            break;
          }
        }
        push("arc-span-at-least-four", why.empty() ? AuditStatus::pass : AuditStatus::fail, why);
      }
      {
        std::string why;
        if (deg.min_undirected != 2 || deg.max_undirected != 2) {
          why = "undirected degrees are not all 2";
        } else if (g.order() < 3) {
          why = "too few vertices for a cycle";
        } else {
          auto d = undirected_distances_from(g, 0);
          if (std::find(d.begin(), d.end(), -1) != d.end())
            why = "undirected subgraph is disconnected";
        }
        push("undirected-subgraph-single-cycle",
             why.empty() ? AuditStatus::pass : AuditStatus::fail, why);
      }
    }
  }
  return items;
}

CheckReport check_graph(const MixedGraph& g, int r, int z, int k, Mode mode) {
  if (r < 0 || z < 0) throw std::invalid_argument("degrees must be nonnegative");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  CheckReport rep;
  rep.mode = mode;
  rep.r = r;
  rep.z = z;
  rep.k = k;
  rep.order = g.order();

  auto deg = degrees(g);
  std::string bad;
  for (int v = 0; v < g.order(); ++v) {
    bool ok = mode == Mode::defect
                  ? deg.undirected[v] <= r && deg.out[v] <= z
                  : deg.undirected[v] >= r && deg.out[v] >= z;
    if (!ok)
      bad += " vertex " + std::to_string(v) + " (d=" + std::to_string(deg.undirected[v]) +
             ", d+=" + std::to_string(deg.out[v]) + ")";
  }
  if (!bad.empty())
    throw PreconditionError(std::string(mode == Mode::defect
                                            ? "degree bound d <= r, d+ <= z violated at:"
                                            : "degree bound d >= r, d+ >= z violated at:") +
                            bad);

  rep.geodetic = is_k_geodetic(g, k).geodetic;
  rep.diameter = diameter(g);

  mpz_class bound = moore_bound(r, z, k).value;
  mpz_class gap =
      mode == Mode::defect ? mpz_class(bound - g.order()) : mpz_class(g.order() - bound);
  bool in_family = gap >= 0;
  if (mode == Mode::defect) in_family = in_family && rep.diameter && *rep.diameter <= k;
  if (mode == Mode::excess) in_family = in_family && rep.geodetic;

  if (gap.fits_slong_p())
    rep.slack = gap.get_si();
  else
    rep.slack = std::numeric_limits<std::int64_t>::max();

  if (!in_family) {
    rep.family = Family::out_of_family;
  } else if (rep.slack == 0) {
    rep.family = Family::moore;
  } else {
    rep.family = mode == Mode::defect ? Family::defect : Family::excess;
  }

  if (rep.family == Family::defect && rep.slack == 1) {
    try {
      rep.repeat_map = repeats(g, k);
    } catch (const PreconditionError&) {
    }
  }
  if (rep.family == Family::excess && rep.slack == 1) {
    try {
      rep.outlier_map = outliers(g, k);
    } catch (const PreconditionError&) {
    }
  }

  auto sets = deficiency_sets(g, z);
  rep.small_in = std::move(sets.small_in);
  rep.large_in = std::move(sets.large_in);
  rep.totally_regular = total_regularity(g, r, z);
  if (rep.family != Family::out_of_family) rep.audits = structure_audit(g, r, z, k, mode);
  return rep;
}

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

std::string map_to_text(const std::optional<std::vector<int>>& m) {
  if (!m) return "none";
  std::string s;
  for (std::size_t u = 0; u < m->size(); ++u) {
    if (u) s += " ";
    s += std::to_string(u) + "->" + std::to_string((*m)[u]);
  }
  return s.empty() ? "none" : s;
}

}  // namespace

std::string report_to_text(const CheckReport& rep) {
  std::ostringstream out;
  out << "classification: " << family_name(rep.family);
  if (rep.family == Family::defect || rep.family == Family::excess) out << " " << rep.slack;
  out << "\n";
  out << "mode: " << mode_name(rep.mode) << "\n";
  out << "parameters: r=" << rep.r << " z=" << rep.z << " k=" << rep.k << "\n";
  out << "order: " << rep.order << "\n";
  out << (rep.mode == Mode::defect ? "delta: " : "epsilon: ") << rep.slack << "\n";
  out << "geodetic: " << (rep.geodetic ? "true" : "false") << "\n";
  out << "diameter: ";
  if (rep.diameter)
    out << *rep.diameter;
  else
    out << "inf";
  out << "\n";
  out << "totally_regular: " << (rep.totally_regular ? "true" : "false") << "\n";
  out << "repeats: " << map_to_text(rep.repeat_map) << "\n";
  out << "outliers: " << map_to_text(rep.outlier_map) << "\n";
  out << "S: " << join_ints(rep.small_in) << "\n";
  out << "Sprime: " << join_ints(rep.large_in) << "\n";
  for (const auto& a : rep.audits) {
    out << "audit: " << a.name << " " << audit_status_name(a.status);
    if (!a.detail.empty()) out << " (" << a.detail << ")";
    out << "\n";
  }
  return out.str();
}

nlohmann::json report_to_json(const CheckReport& rep) {
  nlohmann::json j;
  j["mode"] = mode_name(rep.mode);
  j["r"] = rep.r;
  j["z"] = rep.z;
  j["k"] = rep.k;
  j["order"] = rep.order;
  j["classification"] = family_name(rep.family);
  j["delta"] = nullptr;
  j["epsilon"] = nullptr;
  if (rep.mode == Mode::defect)
    j["delta"] = rep.slack;
  else
    j["epsilon"] = rep.slack;
  j["geodetic"] = rep.geodetic;
  if (rep.diameter)
    j["diameter"] = *rep.diameter;
  else
    j["diameter"] = nullptr;
  j["totally_regular"] = rep.totally_regular;
  if (rep.repeat_map)
    j["repeats"] = *rep.repeat_map;
  else
    j["repeats"] = nullptr;
  if (rep.outlier_map)
    j["outliers"] = *rep.outlier_map;
  else
    j["outliers"] = nullptr;
  j["S"] = rep.small_in;
  j["Sprime"] = rep.large_in;
  j["audits"] = nlohmann::json::array();
  for (const auto& a : rep.audits)
    j["audits"].push_back({{"name", a.name}, {"status", audit_status_name(a.status)},
                           {"detail", a.detail}});
  return j;
}

CheckReport report_from_json(const nlohmann::json& j) {
  CheckReport rep;
  rep.mode = j.at("mode").get<std::string>() == "defect" ? Mode::defect : Mode::excess;
  rep.r = j.at("r").get<int>();
  rep.z = j.at("z").get<int>();
  rep.k = j.at("k").get<int>();
  rep.order = j.at("order").get<int>();
  std::string fam = j.at("classification").get<std::string>();
  if (fam == "moore")
    rep.family = Family::moore;
  else if (fam == "defect")
    rep.family = Family::defect;
  else if (fam == "excess")
    rep.family = Family::excess;
  else
    rep.family = Family::out_of_family;
  const auto& slack = rep.mode == Mode::defect ? j.at("delta") : j.at("epsilon");
  rep.slack = slack.is_null() ? 0 : slack.get<std::int64_t>();
  rep.geodetic = j.at("geodetic").get<bool>();
  if (!j.at("diameter").is_null()) rep.diameter = j.at("diameter").get<int>();
  rep.totally_regular = j.at("totally_regular").get<bool>();
  if (!j.at("repeats").is_null()) rep.repeat_map = j.at("repeats").get<std::vector<int>>();
  if (!j.at("outliers").is_null()) rep.outlier_map = j.at("outliers").get<std::vector<int>>();
  rep.small_in = j.at("S").get<std::vector<int>>();
  rep.large_in = j.at("Sprime").get<std::vector<int>>();
  for (const auto& a : j.at("audits")) {
    AuditItem item;
    item.name = a.at("name").get<std::string>();
    std::string st = a.at("status").get<std::string>();
    item.status = st == "pass" ? AuditStatus::pass
                               : st == "fail" ? AuditStatus::fail : AuditStatus::vacuous;
    item.detail = a.at("detail").get<std::string>();
    rep.audits.push_back(std::move(item));
  }
  return rep;
}

}  // namespace mgx
