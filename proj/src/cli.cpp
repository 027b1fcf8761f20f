#include "mgx/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mgx/bounds.hpp"
#include "mgx/canonical.hpp"
#include "mgx/certify.hpp"
#include "mgx/constructions.hpp"
#include "mgx/graph.hpp"
#include "mgx/search.hpp"

namespace mgx::cli {

namespace {

using nlohmann::json;

MixedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

const char* step_name(StepKind s) {
  switch (s) {
    case StepKind::root: return "root";
    case StepKind::edge: return "edge";
    default: return "arc";
  }
}

struct BoundArgs {
  int r = 0, z = 0, k = 1;
  bool levels = false, json_out = false;
};

int run_bound(const BoundArgs& a, std::ostream& out) {
  MooreBound b = moore_bound(a.r, a.z, a.k);
  if (a.json_out) {
    json j;
    j["r"] = a.r;
    j["z"] = a.z;
    j["k"] = a.k;
    j["value"] = b.value.get_str();
    j["proper_mixed"] = b.proper_mixed;
    j["levels"] = json::array();
    for (const auto& lv : b.levels)
      j["levels"].push_back({{"edge_end", lv.edge_end.get_str()},
                             {"arc_end", lv.arc_end.get_str()},
                             {"total", lv.total.get_str()}});
    out << j.dump(2) << '\n';
    return 0;
  }
  out << b.value.get_str() << '\n';
  if (a.levels)
    for (std::size_t i = 0; i < b.levels.size(); ++i)
      out << "level " << i << ": edge_end " << b.levels[i].edge_end.get_str() << " arc_end "
          << b.levels[i].arc_end.get_str() << " total " << b.levels[i].total.get_str() << '\n';
  return 0;
}

int run_feasible_11k(int k, bool json_out, std::ostream& out) {
  UnitParamsOrder u = order_11k(k);
  if (json_out) {
    json j;
    j["k"] = k;
    j["order"] = u.order.get_str();
    j["feasible"] = u.parity_feasible;
    out << j.dump(2) << '\n';
    return 0;
  }
  out << "order " << u.order.get_str() << '\n'
      << (u.parity_feasible ? "feasible" : "infeasible (odd order)") << '\n';
  return 0;
}

int run_spectral(int z_lo, int z_hi, bool json_out, std::ostream& out) {
  json arr = json::array();
  for (int z = z_lo; z <= z_hi; ++z) {
    SpectralFilterResult r = spectral_infeasibility_defect1(z);
    if (json_out) {
      json j;
      j["z"] = z;
      j["order"] = r.order.get_str();
      j["eigen_sum_candidates"] = json::array();
      for (const auto& q : r.eigen_sum_candidates)
        j["eigen_sum_candidates"].push_back(q.get_str());
      j["infeasible"] = r.infeasible;
      arr.push_back(std::move(j));
    } else {
      out << "z=" << z << " n=" << r.order.get_str() << " sums";
      for (const auto& q : r.eigen_sum_candidates) out << ' ' << q.get_str();
      out << (r.infeasible ? " infeasible" : " feasible") << '\n';
    }
  }
  if (json_out) out << (z_lo == z_hi ? arr[0] : arr).dump(2) << '\n';
  return 0;
}

struct CheckArgs {
  std::string file;
  int r = 0, z = 0, k = 1;
  std::string mode;
  bool audit = false, json_out = false;
};

int run_check(const CheckArgs& a, std::ostream& out) {
  MixedGraph g = read_graph_file(a.file);
  Mode mode = a.mode == "defect" ? Mode::defect : Mode::excess;
  CheckReport rep = check_graph(g, a.r, a.z, a.k, mode);
  if (a.json_out)
    out << report_to_json(rep).dump(2) << '\n';
  else
    out << report_to_text(rep);
  bool ok = rep.family != Family::out_of_family;
  if (a.audit)
    for (const auto& item : rep.audits)
      if (item.status == AuditStatus::fail) ok = false;
  return ok ? 0 : 1;
}

struct TreeArgs {
  std::string file, format = "text";
  int root = 0, k = 1;
  bool json_out = false;
};

int run_tree(const TreeArgs& a, std::ostream& out) {
  MixedGraph g = read_graph_file(a.file);
  if (a.root < 0 || a.root >= g.order())
    throw std::invalid_argument("root vertex out of range");
  MooreTree t = moore_tree(g, a.root, a.k);
  if (a.json_out) {
    json j;
    j["root"] = t.root;
    j["depth"] = t.depth;
    j["entries"] = json::array();
    for (const auto& e : t.entries)
      j["entries"].push_back({{"vertex", e.vertex},
                              {"level", e.level},
                              {"parent", e.parent},
                              {"step", step_name(e.step)}});
    j["duplicates"] = json::array();
    for (auto [v, c] : t.duplicates) j["duplicates"].push_back({{"vertex", v}, {"count", c}});
    j["missing"] = t.missing;
    out << j.dump(2) << '\n';
  } else if (a.format == "dot") {
    out << tree_to_dot(t);
  } else {
    out << tree_to_text(t);
  }
  return 0;
}

struct SearchArgs {
  int r = 2, z = 1, k = 2, slack = 0, jobs = 0;
  std::string mode;
  bool assume_total_regular = false, all = false, expect_some = false, json_out = false;
  std::uint64_t budget = 0;  // 0 = unset
  std::string out_dir;
};

int run_search(const SearchArgs& a, std::ostream& out) {
  SearchSpec spec;
  spec.r = a.r;
  spec.z = a.z;
  spec.k = a.k;
  spec.mode = a.mode == "defect" ? Mode::defect : Mode::excess;
  spec.slack = a.slack;
  spec.assume_total_regular = a.assume_total_regular;
  spec.enumerate_all = a.all;
  spec.jobs = a.jobs;
  if (a.budget > 0) {
    spec.node_budget = a.budget;
  } else if (const char* env = std::getenv("MGX_BUDGET")) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(env, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("MGX_BUDGET is not an integer");
    }
    if (used != std::string(env).size() || v == 0)
      throw std::invalid_argument("MGX_BUDGET is not a positive integer");
    spec.node_budget = v;
  }

  SearchResult res = search_extremal(spec);

  if (!a.out_dir.empty()) {
    std::filesystem::create_directories(a.out_dir);
    for (std::size_t i = 0; i < res.graphs.size(); ++i) {
      std::ostringstream name;
      name << "graph-" << std::setw(3) << std::setfill('0') << i << ".mg";
      std::ofstream f(std::filesystem::path(a.out_dir) / name.str());
      f << serialize_graph(res.graphs[i]);
    }
    std::ofstream f(std::filesystem::path(a.out_dir) / "summary.json");
    f << search_result_to_json(res).dump(2) << '\n';
  }

  if (a.json_out) {
    out << search_result_to_json(res).dump(2) << '\n';
  } else {
    if (a.out_dir.empty())
      for (std::size_t i = 0; i < res.graphs.size(); ++i)
        out << "# class " << i << '\n' << serialize_graph(res.graphs[i]);
    out << "classes " << res.graphs.size() << '\n'
        << "seeds " << res.seeds << '\n'
        << "nodes " << res.nodes << '\n';
    for (const auto& [name, count] : res.prunes) out << "prune " << name << ' ' << count << '\n';
    out << "wall_seconds " << res.wall_seconds << '\n';
  }
  return a.expect_some && res.graphs.empty() ? 1 : 0;
}

struct ConstructArgs {
  std::string what;
  int m = 0, z = 0;
  std::string arc_gens, edge_gens;
  bool json_out = false;
};

int run_construct(const ConstructArgs& a, std::ostream& out) {
  MixedGraph g;
  if (a.what == "fig1") {
    g = almost_moore_10();
  } else if (a.what == "fig6") {
    g = excess_one_12();
  } else if (a.what == "dihedral") {
    if (a.m < 1) throw std::invalid_argument("dihedral requires --m >= 1");
    g = dihedral_cayley(a.m, split_words(a.arc_gens), split_words(a.edge_gens));
  } else {
    if (a.z < 1) throw std::invalid_argument("kautz requires --z >= 1");
    g = kautz_collapse(a.z);
  }
  if (a.json_out)
    out << json{{"graph", serialize_graph(g)}}.dump(2) << '\n';
  else
    out << serialize_graph(g);
  return 0;
}

int run_canon(const std::string& file, bool json_out, std::ostream& out) {
  MixedGraph g = read_graph_file(file);
  CanonicalForm cf = canonical_form(g);
  if (json_out)
    out << json{{"canonical", cf.bytes}, {"aut_group_order", cf.aut_group_order}}.dump(2) << '\n';
  else
    out << cf.bytes << "# aut_group_order " << cf.aut_group_order << '\n';
  return 0;
}

int run_iso(const std::string& file_a, const std::string& file_b, bool json_out,
            std::ostream& out) {
  bool iso = are_isomorphic(read_graph_file(file_a), read_graph_file(file_b));
  if (json_out)
    out << json{{"isomorphic", iso}}.dump(2) << '\n';
  else
    out << (iso ? "isomorphic" : "not isomorphic") << '\n';
  return iso ? 0 : 1;
}

int run_export(const std::string& file, const std::string& format, std::ostream& out) {
  MixedGraph g = read_graph_file(file);
  out << (format == "dot" ? graph_to_dot(g) : serialize_graph(g));
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mixed graph tools: Moore-type bounds, certification and search"};
  app.require_subcommand(1);

  BoundArgs bound_args;
  auto* bound = app.add_subcommand("bound", "Moore-type order bound for given degrees and k");
  bound->add_option("--r", bound_args.r, "undirected degree")
      ->required()
      ->check(CLI::NonNegativeNumber);
  bound->add_option("--z", bound_args.z, "out-degree")->required()->check(CLI::NonNegativeNumber);
  bound->add_option("--k", bound_args.k, "diameter / geodecity depth")
      ->required()
      ->check(CLI::PositiveNumber);
  bound->add_flag("--levels", bound_args.levels, "print per-level tree populations");
  bound->add_flag("--json", bound_args.json_out, "structured output");

  int f11k_k = 2;
  bool f11k_json = false;
  auto* f11k = app.add_subcommand("feasible-11k",
                                  "parity feasibility of a defect-one (1,1,k) graph");
  f11k->add_option("--k", f11k_k, "depth")->required()->check(CLI::Range(2, 1000));
  f11k->add_flag("--json", f11k_json, "structured output");

  int sp_z = 1, sp_max = 0;
  bool sp_json = false;
  auto* spectral = app.add_subcommand(
      "spectral", "eigenvalue-sum feasibility filter for defect-one (2,z,2) graphs");
  spectral->add_option("--z", sp_z, "out-degree")->required()->check(CLI::PositiveNumber);
  spectral->add_option("--max", sp_max, "scan z up to this value")->check(CLI::PositiveNumber);
  spectral->add_flag("--json", sp_json, "structured output");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "certify a graph file against the bound");
  check->add_option("file", check_args.file, "graph file (v1 format)")->required();
  check->add_option("--r", check_args.r, "undirected degree")
      ->required()
      ->check(CLI::NonNegativeNumber);
  check->add_option("--z", check_args.z, "out-degree")->required()->check(CLI::NonNegativeNumber);
  check->add_option("--k", check_args.k, "diameter / geodecity depth")
      ->required()
      ->check(CLI::PositiveNumber);
  check->add_option("--mode", check_args.mode, "defect or excess")
      ->required()
      ->check(CLI::IsMember({"defect", "excess"}));
  check->add_flag("--audit", check_args.audit, "fail on structural audit violations");
  check->add_flag("--json", check_args.json_out, "structured output");

  TreeArgs tree_args;
  auto* tree = app.add_subcommand("tree", "print the walk tree from a root vertex");
  tree->add_option("file", tree_args.file, "graph file (v1 format)")->required();
  tree->add_option("--root", tree_args.root, "root vertex")
      ->required()
      ->check(CLI::NonNegativeNumber);
  tree->add_option("--k", tree_args.k, "tree depth")->required()->check(CLI::NonNegativeNumber);
  tree->add_option("--format", tree_args.format, "text or dot")
      ->check(CLI::IsMember({"text", "dot"}));
  tree->add_flag("--json", tree_args.json_out, "structured output");

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "exhaustive search near the bound");
  search->add_option("--r", search_args.r, "undirected degree")
      ->required()
      ->check(CLI::NonNegativeNumber);
  search->add_option("--z", search_args.z, "out-degree")
      ->required()
      ->check(CLI::NonNegativeNumber);
  search->add_option("--k", search_args.k, "diameter / geodecity depth")
      ->required()
      ->check(CLI::PositiveNumber);
  search->add_option("--mode", search_args.mode, "defect or excess")
      ->required()
      ->check(CLI::IsMember({"defect", "excess"}));
  search->add_option("--slack", search_args.slack, "distance from the bound")
      ->required()
      ->check(CLI::NonNegativeNumber);
  search->add_flag("--assume-total-regular", search_args.assume_total_regular,
                   "restrict to in-degree z everywhere");
  search->add_flag("--all", search_args.all, "enumerate every class, not just one witness");
  search->add_option("--jobs", search_args.jobs, "worker threads (0 = hardware)")
      ->check(CLI::NonNegativeNumber);
  search->add_option("--budget", search_args.budget, "node budget")->check(CLI::PositiveNumber);
  search->add_option("--out", search_args.out_dir, "write result graphs into this directory");
  search->add_flag("--expect-some", search_args.expect_some,
                   "exit 1 when the search finds nothing");
  search->add_flag("--json", search_args.json_out, "structured output");

  ConstructArgs construct_args;
  auto* construct = app.add_subcommand("construct", "emit a named construction");
  construct->add_option("what", construct_args.what, "fig1, fig6, dihedral or kautz")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig6", "dihedral", "kautz"}));
  construct->add_option("--m", construct_args.m, "dihedral group parameter");
  construct->add_option("--arc-gens", construct_args.arc_gens,
                        "comma-separated group words for arc generators");
  construct->add_option("--edge-gens", construct_args.edge_gens,
                        "comma-separated group words for edge generators (involutions)");
  construct->add_option("--z", construct_args.z, "Kautz out-degree");
  construct->add_flag("--json", construct_args.json_out, "structured output");

  std::string canon_file;
  bool canon_json = false;
  auto* canon = app.add_subcommand("canon", "print the canonical form of a graph file");
  canon->add_option("file", canon_file, "graph file (v1 format)")->required();
  canon->add_flag("--json", canon_json, "structured output");

  std::string iso_a, iso_b;
  bool iso_json = false;
  auto* iso = app.add_subcommand("iso", "test two graph files for isomorphism");
  iso->add_option("first", iso_a, "graph file (v1 format)")->required();
  iso->add_option("second", iso_b, "graph file (v1 format)")->required();
  iso->add_flag("--json", iso_json, "structured output");

  std::string export_file, export_format;
  auto* exp = app.add_subcommand("export", "rewrite a graph file as dot or normalized v1");
  exp->add_option("file", export_file, "graph file (v1 format)")->required();
  exp->add_option("--format", export_format, "dot or v1")
      ->required()
      ->check(CLI::IsMember({"dot", "v1"}));

  std::vector<const char*> argv;
  argv.push_back("mgx");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*bound) return run_bound(bound_args, out);
    if (*f11k) return run_feasible_11k(f11k_k, f11k_json, out);
    if (*spectral) return run_spectral(sp_z, sp_max > 0 ? std::max(sp_max, sp_z) : sp_z, sp_json, out);
    if (*check) return run_check(check_args, out);
    if (*tree) return run_tree(tree_args, out);
    if (*search) return run_search(search_args, out);
    if (*construct) return run_construct(construct_args, out);
    if (*canon) return run_canon(canon_file, canon_json, out);
    if (*iso) return run_iso(iso_a, iso_b, iso_json, out);
    if (*exp) return run_export(export_file, export_format, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace mgx::cli
