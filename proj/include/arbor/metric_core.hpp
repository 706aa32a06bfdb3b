#ifndef ARBOR_METRIC_CORE_HPP
#define ARBOR_METRIC_CORE_HPP

#include <arbor/cayley.hpp>
#include <arbor/group.hpp>

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace arbor {

struct CoreVertex {
  /// iota of a chosen lift, as a normal form.
  Word anchor;
};

struct CoreEdge {
  int from = 0;
  int to = 0;
  /// iota(start)^-1 iota(end) for any lift, stored as its shortlex geodesic.
  Word label;
  int length = 0;
};

/// Quotient graph of a core with group-labeled edges. Labels do not depend
/// on the choice of lifts; anchors do.
struct MetricCore {
  std::shared_ptr<const Presentation> presentation;
  std::vector<CoreVertex> vertices;
  std::vector<CoreEdge> edges;
  std::optional<int> basepoint;

  const Presentation& group() const { return *presentation; }
  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int add_vertex(Word anchor);
  /// Stores the geodesic of label and its length; throws TrivialGenerator on 1.
  int add_edge(int from, int to, std::span<const Letter> label);
};

MetricCore make_core(const Presentation& p);
MetricCore core_from_generators(const Presentation& p, const std::vector<Word>& gens);
long size(const MetricCore& c);
int rank(const MetricCore& c);
bool is_connected(const MetricCore& c);
/// Problems with the stored lengths or connectivity; empty when consistent.
std::vector<std::string> validate(const MetricCore& c);

struct ImmersionViolation {
  int vertex;
  int edge1;
  int edge2;
};
/// Pairs of incident edge ends whose geodesics leave the vertex along the same letter.
std::vector<ImmersionViolation> immersion_violations(const MetricCore& c);

/// Every edge replaced by a path of unit edges along its geodesic.
MetricCore subdivide(const MetricCore& c);

// --- universal cover windows -------------------------------------------------

struct Step {
  int edge;
  bool forward;
  friend bool operator==(const Step&, const Step&) = default;
};
using EdgePath = std::vector<Step>;

struct CoverNode {
  int vertex;
  int parent;  // -1 at the root
  Step via;
  int depth;   // distance from the root in the cover
  Word rel;    // iota(root frame)^-1 iota(node)
};

struct CoverWindow {
  std::vector<CoverNode> nodes;
  /// Some node was dropped because its image left the radius.
  bool horizon_binding = false;
};

/// Breadth-first window of the universal cover around a lift of root whose
/// iota is the root frame times root_rel; never crosses excluded_edge.
CoverWindow explore(const MetricCore& c, int root, Word root_rel, int depth, int radius,
                    std::optional<int> excluded_edge = std::nullopt,
                    std::size_t max_nodes = 2'000'000);
EdgePath path_to(const CoverWindow& w, int node);
/// Concatenated labels along a path, as a normal form.
Word path_label(const MetricCore& c, const EdgePath& path);
int path_end(const MetricCore& c, int start, const EdgePath& path);
long path_length(const MetricCore& c, const EdgePath& path);

/// Ball of the given radius around the base lift; rel is the anchor.
CoverWindow universal_cover_ball(const MetricCore& c, int radius);

/// Breadth-first spanning tree; at each vertex the incident edge ends are
/// taken in shortlex order of the label read outward, then by edge index.
struct SpanningTree {
  int root = 0;
  std::vector<std::optional<Step>> parent;  // step from the parent into v
  std::vector<bool> tree_edge;
  std::vector<int> order;
};

SpanningTree spanning_tree(const MetricCore& c, int root,
                           std::optional<int> excluded_edge = std::nullopt);
/// Tree path from the root to v.
EdgePath tree_path(const MetricCore& c, const SpanningTree& t, int v);
/// Root to tail(e), then e, then back to the root.
EdgePath basis_loop(const MetricCore& c, const SpanningTree& t, int edge);

// --- moves -------------------------------------------------------------------

/// Case 1: remove e and identify the endpoints of gamma1 (from tail(e)) and
/// gamma2 (from head(e)), whose lifts have the same image.
struct IdentifyVertices {
  int edge;
  EdgePath gamma1;
  EdgePath gamma2;
};

/// Case 2: replace e with a geodesic between the endpoints of gamma1 and gamma2.
struct ReplaceEdge {
  int edge;
  EdgePath gamma1;
  EdgePath gamma2;
  Word label;
};

/// Replace a non-separating edge with a stem along its geodesic and a loop.
/// gamma runs from the far end of e back to the near end inside the graph minus e.
struct AddBalloon {
  int edge;
  bool reversed;  // near end is head(e)
  EdgePath gamma;
  Word stem;
  Word loop;
  Word holonomy;  // label(e) label(gamma), oriented from the near end
};

/// Removes e when gamma1 and gamma2 reach lifts of one vertex with the same
/// image. Lowers the rank; the element of the loop through e is trivial.
struct DeleteEdge {
  int edge;
  EdgePath gamma1;
  EdgePath gamma2;
};

using FoldMove = std::variant<IdentifyVertices, ReplaceEdge, AddBalloon, DeleteEdge>;

std::string move_kind(const FoldMove& m);
int move_edge(const FoldMove& m);
bool is_separating(const MetricCore& c, int edge);

/// Validates against the group and returns the folded core. Throws MoveInvalid.
MetricCore apply_move(const MetricCore& c, const FoldMove& m);

struct SearchResult {
  std::optional<FoldMove> move;
  bool horizon_binding = false;
};

/// Looks for an improvement of edge e among cover windows of the given depth.
/// Finding nothing is not a proof of minimality.
SearchResult search_improvement(const MetricCore& c, int edge, int depth, int radius);
/// A DeleteEdge for some edge, if one exists within the windows.
SearchResult find_redundant_edge(const MetricCore& c, int depth, int radius);

struct FoldResult {
  MetricCore core;
  std::vector<FoldMove> log;
  std::vector<long> sigma_history;
  bool horizon_binding = false;
  bool budget_exhausted = false;
};

FoldResult fold_to_minimal(const MetricCore& c, int depth, int radius, int budget);

/// Samples every pair (x, y) with x the root lift of a quotient vertex and y
/// within cover distance radius of x; by equivariance this covers every pair
/// at that distance. K is fixed to 1 and C minimized; the Pareto front is kept.
QiEstimate measure_qi(const MetricCore& c, int radius);

bool check_minimal_edge_shortest(const MetricCore& c, int edge, int depth, int radius);

MetricCore attach_basepoint(const MetricCore& c, int radius);
/// Removes valence-1 vertices other than the basepoint until none remain.
MetricCore trim_to_hull(const MetricCore& c);

/// Largest edge count of a connected graph of Betti number r with all valences at least 3
/// (a single loop when r = 1).
int max_edges(int r);

/// Leafless connected cores with 1..n_edges edges of length at most L, up to
/// relabeling and edge reversal; the point core alone when n_edges is 0.
std::vector<MetricCore> enumerate_small_cores(const Presentation& p, int n_edges, int L,
                                              int radius, long cap = 5'000'000);
/// Canonical string for a core up to vertex relabeling and edge reversal.
std::string canonical_key(const MetricCore& c);

// --- split data and constants -------------------------------------------------

struct EdgeSplit {
  int edge;
  Word tail_image;  // iota of the chosen lift of the tail
  Word head_image;
  CoverWindow side1;
  CoverWindow side2;
  std::vector<Word> stabilizer1;  // generators of Stab(side1), as group elements
  std::vector<Word> stabilizer2;
  bool separating;
};

EdgeSplit split_edge(const MetricCore& c, int edge, int depth, int radius);

struct ConstantLedger {
  Rational delta{0};
  Rational M0{0};
  Rational M1{1};
  std::optional<Rational> M2;
  std::optional<int> L;
  std::vector<Rational> K_n;
  std::vector<Rational> C_n;
  std::vector<int> L_n;
  std::optional<Rational> m;

  /// M1 = M0 + 2 delta + 1.
  void set_base(Rational delta_, Rational M0_);
  /// m = K (2 M1 + delta + C + 1).
  void set_m(Rational K, Rational C);
};

struct ProductCheck {
  Rational M0{0};
  Rational max_product{0};
  ConstantLedger ledger;
  bool holds = true;
  std::size_t samples = 0;
};

/// Measures M0 as the Hausdorff distance between window paths and geodesics,
/// then checks every Gromov product (x|y) based at an edge end, for x on the
/// edge and y in the adjacent window, against M1.
ProductCheck check_gromov_products(const MetricCore& c, Rational delta, int depth, int radius);

}  // namespace arbor

#endif
