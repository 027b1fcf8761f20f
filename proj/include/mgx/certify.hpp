#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgx/graph.hpp"

namespace mgx {

enum class Mode { defect, excess };

enum class StepKind { root, edge, arc };

struct MooreTreeEntry {
  int vertex;
  int level;
  int parent;  // entry index, -1 for the root
  StepKind step;
};

// The tree of all non-backtracking walks of length <= depth from the root,
// one entry per walk, in breadth-first order.  At each node edge children
// come before arc children, each group by ascending neighbor index, and the
// edge back to the parent is skipped when the incoming step was an edge.
struct MooreTree {
  int root = 0;
  int depth = 0;
  std::vector<MooreTreeEntry> entries;
  std::vector<std::pair<int, int>> duplicates;  // (vertex, times seen >= 2), sorted
  std::vector<int> missing;                     // vertices absent from the tree, sorted
};

MooreTree moore_tree(const MixedGraph& g, int root, int depth);
std::string tree_to_dot(const MooreTree& t);
std::string tree_to_text(const MooreTree& t);

struct GeodeticCheck {
  bool geodetic = true;
  int from = -1, to = -1;  // first violating ordered pair (may have from == to)
};

// A graph is k-geodetic when every ordered pair (u,v), u != v, is joined by
// at most one non-backtracking walk of length <= k and no vertex has such a
// closed walk back to itself.
GeodeticCheck is_k_geodetic(const MixedGraph& g, int k, int jobs = 0);

// Repeat map of a defect-one graph: r(u) is the unique vertex appearing
// twice in the depth-k tree rooted at u.  Throws PreconditionError when some
// root does not have exactly one duplicate.
std::vector<int> repeats(const MixedGraph& g, int k);

// Outlier map of an excess-one graph: o(u) is the unique vertex missing from
// the depth-k tree rooted at u.  Always o(u) != u.  Throws PreconditionError
// when some root does not miss exactly one vertex.
std::vector<int> outliers(const MixedGraph& g, int k);

// S = vertices of in-degree < z, S' = vertices of in-degree > z.
struct DeficiencySets {
  std::vector<int> small_in;  // S
  std::vector<int> large_in;  // S'
};
DeficiencySets deficiency_sets(const MixedGraph& g, int z);

// d(u) = r, d+(u) = d-(u) = z for every vertex.
bool total_regularity(const MixedGraph& g, int r, int z);

struct MatrixIdentityResult {
  bool holds = true;
  std::string detail;  // first mismatching entry when !holds
};

// Entrywise identity I + A + A^2 = J + 2I + P on a defect-one diameter-2
// graph whose undirected degree is 2 everywhere; P marks the repeat map.
MatrixIdentityResult matrix_identity_defect(const MixedGraph& g);

// Entrywise identity I + A + A^2 = J + rI - O on an excess-one 2-geodetic
// graph with undirected degree r everywhere; O marks the outlier map.
MatrixIdentityResult matrix_identity_excess(const MixedGraph& g, int r);

enum class AuditStatus { pass, fail, vacuous };

struct AuditItem {
  std::string name;
  AuditStatus status;
  std::string detail;
  bool operator==(const AuditItem&) const = default;
};

// Named structural checks satisfied by defect-one / excess-one graphs.  Each
// check runs only when its inputs exist (e.g. a total repeat map); checks
// about the deficiency sets report `vacuous` when S = S' = empty.
std::vector<AuditItem> structure_audit(const MixedGraph& g, int r, int z, int k, Mode mode);

enum class Family { moore, defect, excess, out_of_family };

struct CheckReport {
  Mode mode = Mode::defect;
  int r = 0, z = 0, k = 0;
  int order = 0;
  bool geodetic = false;
  std::optional<int> diameter;
  Family family = Family::out_of_family;
  std::int64_t slack = 0;  // delta in defect mode, epsilon in excess mode
  std::optional<std::vector<int>> repeat_map;
  std::optional<std::vector<int>> outlier_map;
  std::vector<int> small_in, large_in;
  bool totally_regular = false;
  std::vector<AuditItem> audits;

  bool operator==(const CheckReport&) const = default;
};

// Classifies g against the (r,z,k) family in the given mode.  Defect mode
// requires undirected degrees <= r and out-degrees <= z (throws
// PreconditionError otherwise) and membership additionally needs diameter
// <= k; excess mode requires degrees >= and membership needs k-geodecity.
CheckReport check_graph(const MixedGraph& g, int r, int z, int k, Mode mode);

std::string report_to_text(const CheckReport& rep);
nlohmann::json report_to_json(const CheckReport& rep);
CheckReport report_from_json(const nlohmann::json& j);

const char* family_name(Family f);
const char* mode_name(Mode m);
const char* audit_status_name(AuditStatus s);

}  // namespace mgx
