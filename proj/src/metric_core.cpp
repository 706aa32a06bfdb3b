#include <arbor/metric_core.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace arbor {

namespace {

// Length of an element given by its normal form.
int element_length(const Presentation& p, const Word& nf) {
  if (p.backend() == Backend::Hnn) return geodesic_length(p, nf);
  return static_cast<int>(nf.size());
}

Word step_label(const MetricCore& c, Step s) {
  const auto& e = c.edges.at(s.edge);
  return s.forward ? e.label : inverse(e.label);
}

bool is_unit(const MetricCore& c) {
  return std::all_of(c.edges.begin(), c.edges.end(), [](const CoreEdge& e) { return e.length == 1; });
}

// Adds a path from `from` to `to` reading label; unit edges when split is set.
void add_path(MetricCore& c, int from, int to, const Word& label, bool split) {
  Word geo = geodesic_word(c.group(), label);
  if (!split || geo.size() <= 1) {
    c.add_edge(from, to, geo);
    return;
  }
  int prev = from;
  Word prefix;
  for (std::size_t k = 0; k < geo.size(); ++k) {
    prefix.push_back(geo[k]);
    int next = to;
    if (k + 1 < geo.size())
      next = c.add_vertex(normal_form(c.group(), concat(c.vertices[from].anchor, prefix)));
    c.add_edge(prev, next, Word{geo[k]});
    prev = next;
  }
}

// Drops the marked vertices and renumbers everything else.
MetricCore erase_vertices(const MetricCore& c, const std::vector<bool>& dead) {
  MetricCore out = make_core(c.group());
  out.presentation = c.presentation;
  std::vector<int> id(c.vertices.size(), -1);
  for (int v = 0; v < c.vertex_count(); ++v)
    if (!dead[v]) {
      id[v] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(c.vertices[v]);
    }
  for (const auto& e : c.edges) {
    if (dead[e.from] || dead[e.to]) continue;
    CoreEdge f = e;
    f.from = id[e.from];
    f.to = id[e.to];
    out.edges.push_back(f);
  }
  if (c.basepoint && !dead[*c.basepoint]) out.basepoint = id[*c.basepoint];
  return out;
}

// Repeatedly removes valence-1 vertices; the basepoint is kept.
MetricCore trim_leaves(const MetricCore& c) {
  MetricCore cur = c;
  for (;;) {
    std::vector<int> deg(cur.vertices.size(), 0);
    for (const auto& e : cur.edges) {
      ++deg[e.from];
      ++deg[e.to];
    }
    std::vector<bool> dead(cur.vertices.size(), false);
    bool any = false;
    for (int v = 0; v < cur.vertex_count(); ++v) {
      if (cur.basepoint && *cur.basepoint == v) continue;
      if (deg[v] == 1 || (deg[v] == 0 && cur.vertex_count() > 1)) {
        dead[v] = true;
        any = true;
      }
    }
    if (!any) return cur;
    cur = erase_vertices(cur, dead);
  }
}

// Walks a path from start, rejecting the excluded edge and backtracking.
int checked_end(const MetricCore& c, int start, const EdgePath& path, int excluded, bool reduced = true) {
  int v = start;
  for (std::size_t i = 0; i < path.size(); ++i) {
    Step s = path[i];
    if (s.edge < 0 || s.edge >= c.edge_count())
      throw Error(ErrorCode::MoveInvalid, "path uses a missing edge");
    if (s.edge == excluded) throw Error(ErrorCode::MoveInvalid, "path crosses the folded edge");
    const auto& e = c.edges[s.edge];
    if ((s.forward ? e.from : e.to) != v) throw Error(ErrorCode::MoveInvalid, "path is not connected");
    if (reduced && i > 0 && path[i - 1].edge == s.edge && path[i - 1].forward != s.forward)
      throw Error(ErrorCode::MoveInvalid, "path backtracks");
    v = s.forward ? e.to : e.from;
  }
  return v;
}

}  // namespace

int MetricCore::add_vertex(Word anchor) {
  vertices.push_back({normal_form(*presentation, anchor)});
  return static_cast<int>(vertices.size()) - 1;
}

int MetricCore::add_edge(int from, int to, std::span<const Letter> label) {
  if (from < 0 || to < 0 || from >= vertex_count() || to >= vertex_count())
    throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
  Word geo = geodesic_word(*presentation, label);
  if (geo.empty()) throw Error(ErrorCode::TrivialGenerator, "edge label is trivial in the group");
  int len = static_cast<int>(geo.size());
  edges.push_back({from, to, std::move(geo), len});
  return static_cast<int>(edges.size()) - 1;
}

MetricCore make_core(const Presentation& p) {
  MetricCore c;
  c.presentation = std::make_shared<const Presentation>(p);
  return c;
}

MetricCore core_from_generators(const Presentation& p, const std::vector<Word>& gens) {
  MetricCore c = make_core(p);
  c.basepoint = c.add_vertex({});
  for (const Word& g : gens) {
    p.check_letters(g);
    if (is_trivial(p, g)) throw Error(ErrorCode::TrivialGenerator, "generator " + p.format(g) + " is trivial");
    add_path(c, 0, 0, g, true);
  }
  return c;
}

long size(const MetricCore& c) {
  long s = 0;
  for (const auto& e : c.edges) s += e.length;
  return s;
}

int rank(const MetricCore& c) { return c.edge_count() - c.vertex_count() + 1; }

bool is_connected(const MetricCore& c) {
  if (c.vertices.empty()) return false;
  std::vector<int> parent(c.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = c.vertex_count();
  for (const auto& e : c.edges) {
    int a = find(e.from), b = find(e.to);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

std::vector<std::string> validate(const MetricCore& c) {
  std::vector<std::string> out;
  if (!is_connected(c)) out.push_back("core is not connected");
  for (int i = 0; i < c.edge_count(); ++i) {
    const auto& e = c.edges[i];
    int len = geodesic_length(c.group(), e.label);
    if (len != e.length || static_cast<int>(e.label.size()) != e.length)
      out.push_back("edge " + std::to_string(i) + " length differs from its label");
    if (len == 0) out.push_back("edge " + std::to_string(i) + " has trivial label");
  }
  if (c.basepoint && !normal_form(c.group(), c.vertices.at(*c.basepoint).anchor).empty())
    out.push_back("basepoint anchor is not 1");
  return out;
}

std::vector<ImmersionViolation> immersion_violations(const MetricCore& c) {
  // (vertex, first letter) -> edge end
  std::vector<ImmersionViolation> out;
  std::map<std::pair<int, int>, int> seen;
  for (int i = 0; i < c.edge_count(); ++i) {
    const auto& e = c.edges[i];
    for (bool fwd : {true, false}) {
      int v = fwd ? e.from : e.to;
      Letter first = fwd ? e.label.front() : e.label.back().inverse();
      auto [it, fresh] = seen.emplace(std::make_pair(v, first.code()), i);
      if (!fresh) out.push_back({v, it->second, i});
    }
  }
  return out;
}

MetricCore subdivide(const MetricCore& c) {
  MetricCore out = c;
  out.edges.clear();
  for (const auto& e : c.edges) add_path(out, e.from, e.to, e.label, true);
  return out;
}

// --- windows -----------------------------------------------------------------

CoverWindow explore(const MetricCore& c, int root, Word root_rel, int depth, int radius,
                    std::optional<int> excluded_edge, std::size_t max_nodes) {
  const Presentation& p = c.group();
  CoverWindow w;
  Word r0 = normal_form(p, root_rel);
  w.nodes.push_back({root, -1, {-1, true}, 0, r0});
  for (std::size_t i = 0; i < w.nodes.size(); ++i) {
    const CoverNode node = w.nodes[i];
    for (int k = 0; k < c.edge_count(); ++k) {
      if (excluded_edge && *excluded_edge == k) continue;
      const auto& e = c.edges[k];
      for (bool fwd : {true, false}) {
        if ((fwd ? e.from : e.to) != node.vertex) continue;
        if (node.parent >= 0 && node.via.edge == k && node.via.forward != fwd) continue;
        int nd = node.depth + e.length;
        if (nd > depth) continue;
        Word rel = normal_form(p, concat(node.rel, fwd ? e.label : inverse(e.label)));
        if (nd > radius && element_length(p, normal_form(p, concat(inverse(r0), rel))) > radius) {
          w.horizon_binding = true;
          continue;
        }
        if (w.nodes.size() >= max_nodes)
          throw Error(ErrorCode::BudgetExceeded, "cover window too large");
        w.nodes.push_back({fwd ? e.to : e.from, static_cast<int>(i), {k, fwd}, nd, std::move(rel)});
      }
    }
  }
  return w;
}

EdgePath path_to(const CoverWindow& w, int node) {
  EdgePath out;
  while (w.nodes[node].parent >= 0) {
    out.push_back(w.nodes[node].via);
    node = w.nodes[node].parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Word path_label(const MetricCore& c, const EdgePath& path) {
  Word w;
  for (Step s : path) {
    Word l = step_label(c, s);
    w.insert(w.end(), l.begin(), l.end());
  }
  return normal_form(c.group(), w);
}

int path_end(const MetricCore& c, int start, const EdgePath& path) {
  return checked_end(c, start, path, -1, false);
}

long path_length(const MetricCore& c, const EdgePath& path) {
  long s = 0;
  for (Step st : path) s += c.edges.at(st.edge).length;
  return s;
}

CoverWindow universal_cover_ball(const MetricCore& c, int radius) {
  if (!c.basepoint) throw Error(ErrorCode::NotBased, "core has no basepoint");
  return explore(c, *c.basepoint, c.vertices[*c.basepoint].anchor, radius,
                 std::numeric_limits<int>::max());
}

SpanningTree spanning_tree(const MetricCore& c, int root, std::optional<int> excluded_edge) {
  SpanningTree t;
  t.root = root;
  t.parent.assign(c.vertices.size(), std::nullopt);
  t.tree_edge.assign(c.edges.size(), false);
  std::vector<bool> seen(c.vertices.size(), false);
  seen[root] = true;
  t.order.push_back(root);
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    int v = t.order[i];
    std::vector<std::pair<Word, Step>> ends;
    for (int k = 0; k < c.edge_count(); ++k) {
      if (excluded_edge && *excluded_edge == k) continue;
      const auto& e = c.edges[k];
      if (e.from == v) ends.push_back({e.label, {k, true}});
      if (e.to == v) ends.push_back({inverse(e.label), {k, false}});
    }
    std::stable_sort(ends.begin(), ends.end(),
                     [](const auto& a, const auto& b) { return shortlex_less(a.first, b.first); });
    for (const auto& [label, s] : ends) {
      const auto& e = c.edges[s.edge];
      int u = s.forward ? e.to : e.from;
      if (seen[u]) continue;
      seen[u] = true;
      t.parent[u] = s;
      t.tree_edge[s.edge] = true;
      t.order.push_back(u);
    }
  }
  return t;
}

EdgePath tree_path(const MetricCore& c, const SpanningTree& t, int v) {
  EdgePath out;
  while (t.parent[v]) {
    Step s = *t.parent[v];
    out.push_back(s);
    const auto& e = c.edges[s.edge];
    v = s.forward ? e.from : e.to;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

EdgePath basis_loop(const MetricCore& c, const SpanningTree& t, int edge) {
  const auto& e = c.edges.at(edge);
  EdgePath out = tree_path(c, t, e.from);
  out.push_back({edge, true});
  EdgePath back = tree_path(c, t, e.to);
  for (auto it = back.rbegin(); it != back.rend(); ++it) out.push_back({it->edge, !it->forward});
  return out;
}

// --- moves -------------------------------------------------------------------

std::string move_kind(const FoldMove& m) {
  struct V {
    std::string operator()(const IdentifyVertices&) const { return "identify-vertices"; }
    std::string operator()(const ReplaceEdge&) const { return "replace-edge"; }
    std::string operator()(const AddBalloon&) const { return "add-balloon"; }
    std::string operator()(const DeleteEdge&) const { return "delete-edge"; }
  };
  return std::visit(V{}, m);
}

int move_edge(const FoldMove& m) {
  return std::visit([](const auto& x) { return x.edge; }, m);
}

bool is_separating(const MetricCore& c, int edge) {
  const auto& e = c.edges.at(edge);
  if (e.from == e.to) return false;
  SpanningTree t = spanning_tree(c, e.from, edge);
  return !t.parent[e.to] && e.to != e.from;
}

MetricCore apply_move(const MetricCore& c, const FoldMove& m) {
  const Presentation& p = c.group();
  const int k = move_edge(m);
  if (k < 0 || k >= c.edge_count()) throw Error(ErrorCode::MoveInvalid, "edge out of range");
  const CoreEdge e = c.edges[k];
  const bool split = is_unit(c);
  const long sigma = size(c);
  MetricCore out = c;
  out.edges.erase(out.edges.begin() + k);

  if (auto* mv = std::get_if<IdentifyVertices>(&m)) {
    int u1 = checked_end(c, e.from, mv->gamma1, k);
    int u2 = checked_end(c, e.to, mv->gamma2, k);
    if (u1 == u2) throw Error(ErrorCode::MoveInvalid, "identification of a vertex with itself");
    if (!equal_in_group(p, path_label(c, mv->gamma1),
                        concat(e.label, path_label(c, mv->gamma2))))
      throw Error(ErrorCode::MoveInvalid, "identified lifts have different images");
    int keep = u1, drop = u2;
    if (c.basepoint && *c.basepoint == drop) std::swap(keep, drop);
    for (auto& f : out.edges) {
      if (f.from == drop) f.from = keep;
      if (f.to == drop) f.to = keep;
    }
    std::vector<bool> dead(out.vertices.size(), false);
    dead[drop] = true;
    out = erase_vertices(out, dead);
  } else if (auto* mv = std::get_if<ReplaceEdge>(&m)) {
    int u1 = checked_end(c, e.from, mv->gamma1, k);
    int u2 = checked_end(c, e.to, mv->gamma2, k);
    Word actual = concat(inverse(path_label(c, mv->gamma1)),
                         concat(e.label, path_label(c, mv->gamma2)));
    if (!equal_in_group(p, actual, mv->label))
      throw Error(ErrorCode::MoveInvalid, "replacement label does not connect the lifts");
    int len = geodesic_length(p, mv->label);
    if (len == 0) throw Error(ErrorCode::MoveInvalid, "replacement is trivial; identify instead");
    if (len >= e.length) throw Error(ErrorCode::MoveInvalid, "replacement is not shorter");
    add_path(out, u1, u2, mv->label, split);
  } else if (auto* mv = std::get_if<AddBalloon>(&m)) {
    if (is_separating(c, k)) throw Error(ErrorCode::MoveInvalid, "balloon on a separating edge");
    int near = mv->reversed ? e.to : e.from;
    int far = mv->reversed ? e.from : e.to;
    Word lam = mv->reversed ? inverse(e.label) : e.label;
    if (checked_end(c, far, mv->gamma, k) != near)
      throw Error(ErrorCode::MoveInvalid, "balloon path does not return to the edge");
    Word h = normal_form(p, concat(lam, path_label(c, mv->gamma)));
    if (!equal_in_group(p, h, mv->holonomy)) throw Error(ErrorCode::MoveInvalid, "holonomy mismatch");
    const int kstem = static_cast<int>(mv->stem.size());
    if (geodesic_length(p, mv->stem) != kstem ||
        geodesic_length(p, concat(inverse(mv->stem), lam)) != e.length - kstem)
      throw Error(ErrorCode::MoveInvalid, "stem does not end on the edge geodesic");
    if (!equal_in_group(p, mv->loop, concat(inverse(mv->stem), concat(h, mv->stem))))
      throw Error(ErrorCode::MoveInvalid, "loop label is not the conjugated holonomy");
    int loop_len = geodesic_length(p, mv->loop);
    if (loop_len == 0) throw Error(ErrorCode::MoveInvalid, "trivial balloon loop");
    if (kstem + loop_len >= e.length) throw Error(ErrorCode::MoveInvalid, "balloon does not shorten");
    int tip = near;
    if (kstem > 0) {
      tip = out.add_vertex(concat(out.vertices[near].anchor, mv->stem));
      add_path(out, near, tip, mv->stem, split);
    }
    add_path(out, tip, tip, mv->loop, split);
  } else if (auto* mv = std::get_if<DeleteEdge>(&m)) {
    int u1 = checked_end(c, e.from, mv->gamma1, k);
    int u2 = checked_end(c, e.to, mv->gamma2, k);
    if (u1 != u2) throw Error(ErrorCode::MoveInvalid, "deletion paths end at different vertices");
    if (!equal_in_group(p, path_label(c, mv->gamma1), concat(e.label, path_label(c, mv->gamma2))))
      throw Error(ErrorCode::MoveInvalid, "loop through the edge is not trivial");
    out = trim_leaves(out);
  }
  if (size(out) >= sigma) throw Error(ErrorCode::MoveInvalid, "size does not decrease");
  return out;
}

namespace {

struct Windows {
  CoverWindow w1, w2;
};

Windows edge_windows(const MetricCore& c, int k, int depth, int radius) {
  const auto& e = c.edges.at(k);
  if (radius < e.length) throw Error(ErrorCode::RadiusInsufficient, "radius below edge length");
  Windows w;
  w.w1 = explore(c, e.from, {}, depth, radius, k);
  w.w2 = explore(c, e.to, e.label, depth, radius, k);
  return w;
}

std::unordered_map<Word, std::vector<int>, WordHash> index_by_rel(const CoverWindow& w) {
  std::unordered_map<Word, std::vector<int>, WordHash> idx;
  for (int i = 0; i < static_cast<int>(w.nodes.size()); ++i) idx[w.nodes[i].rel].push_back(i);
  return idx;
}

}  // namespace

SearchResult search_improvement(const MetricCore& c, int k, int depth, int radius) {
  const Presentation& p = c.group();
  if (k < 0 || k >= c.edge_count()) throw Error(ErrorCode::InvalidArgument, "edge out of range");
  const auto& e = c.edges[k];
  auto [w1, w2] = edge_windows(c, k, depth, radius);
  SearchResult r;
  r.horizon_binding = w1.horizon_binding || w2.horizon_binding;

  // Case 1: a shared image point on distinct quotient vertices.
  auto idx2 = index_by_rel(w2);
  for (int i = 0; i < static_cast<int>(w1.nodes.size()); ++i) {
    auto it = idx2.find(w1.nodes[i].rel);
    if (it == idx2.end()) continue;
    for (int j : it->second) {
      if (w1.nodes[i].vertex == w2.nodes[j].vertex) continue;
      r.move = IdentifyVertices{k, path_to(w1, i), path_to(w2, j)};
      return r;
    }
  }

  // Case 2: a strictly shorter connection between the two sides.
  int best = e.length, bi = -1, bj = -1;
  for (int i = 0; i < static_cast<int>(w1.nodes.size()); ++i) {
    for (int j = 0; j < static_cast<int>(w2.nodes.size()); ++j) {
      if (w1.nodes[i].depth + w2.nodes[j].depth == 0) continue;
      int d = (p.backend() == Backend::Hnn)
                  ? geodesic_length(p, concat(inverse(w1.nodes[i].rel), w2.nodes[j].rel))
                  : group_distance(p, w1.nodes[i].rel, w2.nodes[j].rel);
      if (d == 0 || d >= best) continue;
      best = d, bi = i, bj = j;
    }
  }
  if (bi >= 0) {
    Word label = geodesic_word(p, concat(inverse(w1.nodes[bi].rel), w2.nodes[bj].rel));
    r.move = ReplaceEdge{k, path_to(w1, bi), path_to(w2, bj), label};
    return r;
  }

  // Balloon: a lift of the near end seen from the far side gives the holonomy.
  if (is_separating(c, k)) return r;
  int best_gain = 0;
  std::optional<AddBalloon> balloon;
  for (bool reversed : {false, true}) {
    const CoverWindow& far_side = reversed ? w1 : w2;
    int near = reversed ? e.to : e.from;
    Word lam = reversed ? inverse(e.label) : e.label;
    for (int j = 0; j < static_cast<int>(far_side.nodes.size()); ++j) {
      if (far_side.nodes[j].vertex != near) continue;
      // holonomy in the frame of the near end's lift
      Word h = reversed ? normal_form(p, concat(inverse(e.label), far_side.nodes[j].rel))
                        : far_side.nodes[j].rel;
      for (int ks = 0; ks < e.length; ++ks) {
        Word stem(lam.begin(), lam.begin() + ks);
        Word loop = geodesic_word(p, concat(inverse(stem), concat(h, stem)));
        int len = static_cast<int>(loop.size());
        if (len == 0) continue;
        int gain = e.length - ks - len;
        if (gain > best_gain) {
          best_gain = gain;
          balloon = AddBalloon{k, reversed, path_to(far_side, j), stem, loop, h};
        }
      }
    }
  }
  if (balloon) r.move = *balloon;
  return r;
}

SearchResult find_redundant_edge(const MetricCore& c, int depth, int radius) {
  SearchResult r;
  for (int k = 0; k < c.edge_count(); ++k) {
    auto [w1, w2] = edge_windows(c, k, depth, radius);
    r.horizon_binding = r.horizon_binding || w1.horizon_binding || w2.horizon_binding;
    auto idx2 = index_by_rel(w2);
    for (int i = 0; i < static_cast<int>(w1.nodes.size()); ++i) {
      auto it = idx2.find(w1.nodes[i].rel);
      if (it == idx2.end()) continue;
      for (int j : it->second) {
        if (w1.nodes[i].vertex != w2.nodes[j].vertex) continue;
        r.move = DeleteEdge{k, path_to(w1, i), path_to(w2, j)};
        return r;
      }
    }
  }
  return r;
}

FoldResult fold_to_minimal(const MetricCore& c, int depth, int radius, int budget) {
  FoldResult res{c, {}, {size(c)}, false, false};
  auto next_move = [&]() -> std::optional<FoldMove> {
    for (int k = 0; k < res.core.edge_count(); ++k) {
      auto r = search_improvement(res.core, k, depth, radius);
      res.horizon_binding = res.horizon_binding || r.horizon_binding;
      if (r.move) return r.move;
    }
    auto r = find_redundant_edge(res.core, depth, radius);
    res.horizon_binding = res.horizon_binding || r.horizon_binding;
    return r.move;
  };
  for (;;) {
    auto mv = next_move();
    if (!mv) break;
    if (static_cast<int>(res.log.size()) >= budget) {
      res.budget_exhausted = true;
      break;
    }
    res.core = apply_move(res.core, *mv);
    res.log.push_back(*mv);
    res.sigma_history.push_back(size(res.core));
  }
  return res;
}

QiEstimate measure_qi(const MetricCore& c, int radius) {
  if (radius < 1) throw Error(ErrorCode::RadiusInsufficient, "radius must be positive");
  const Presentation& p = c.group();
  std::vector<QiSample> samples;
  for (int v = 0; v < c.vertex_count(); ++v) {
    CoverWindow w = explore(c, v, {}, radius, std::numeric_limits<int>::max());
    for (const auto& n : w.nodes) {
      if (n.parent < 0) continue;
      samples.push_back({n.depth, element_length(p, n.rel), v, n.vertex});
    }
  }
  QiEstimate q;
  q.radius = radius;
  q.samples = samples.size();
  q.K = 1;
  auto [C, wit] = min_additive(samples, Rational(1));
  q.C = C;
  q.witness = wit;
  // Pareto front over a bounded set of candidate K values.
  std::vector<Rational> ks{Rational(1)};
  for (const auto& s : samples)
    if (s.dom > 0 && s.range > 0 && s.dom != s.range)
      ks.push_back(std::max(Rational(s.dom, s.range), Rational(s.range, s.dom)));
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  const std::size_t kMax = 24;
  std::vector<Rational> chosen;
  if (ks.size() <= kMax) {
    chosen = ks;
  } else {
    for (std::size_t i = 0; i < kMax; ++i) chosen.push_back(ks[i * (ks.size() - 1) / (kMax - 1)]);
  }
  for (const Rational& k : chosen) {
    Rational cc = min_additive(samples, k).first;
    if (q.pareto.empty() || cc < q.pareto.back().second) q.pareto.emplace_back(k, cc);
  }
  return q;
}

bool check_minimal_edge_shortest(const MetricCore& c, int k, int depth, int radius) {
  const Presentation& p = c.group();
  if (k < 0 || k >= c.edge_count()) throw Error(ErrorCode::InvalidArgument, "edge out of range");
  const auto& e = c.edges[k];
  auto [w1, w2] = edge_windows(c, k, depth, radius);
  for (const auto& x : w1.nodes)
    for (const auto& y : w2.nodes) {
      int d = (p.backend() == Backend::Hnn)
                  ? geodesic_length(p, concat(inverse(x.rel), y.rel))
                  : group_distance(p, x.rel, y.rel);
      if (d < e.length) return false;
    }
  return true;
}

MetricCore attach_basepoint(const MetricCore& c, int radius) {
  if (c.vertices.empty()) throw Error(ErrorCode::InvalidArgument, "core has no vertices");
  const Presentation& p = c.group();
  MetricCore out = c;
  for (int v = 0; v < c.vertex_count(); ++v)
    if (normal_form(p, c.vertices[v].anchor).empty()) {
      out.basepoint = v;
      return out;
    }
  // 1 at an interior point of an edge geodesic
  for (int k = 0; k < c.edge_count(); ++k) {
    const auto& e = c.edges[k];
    for (int j = 1; j < e.length; ++j) {
      Word prefix(e.label.begin(), e.label.begin() + j);
      if (!normal_form(p, concat(c.vertices[e.from].anchor, prefix)).empty()) continue;
      Word suffix(e.label.begin() + j, e.label.end());
      int mid = out.add_vertex({});
      out.edges.erase(out.edges.begin() + k);
      out.add_edge(e.from, mid, prefix);
      out.add_edge(mid, e.to, suffix);
      out.basepoint = mid;
      return out;
    }
  }
  // nearest image point, ties broken shortlex on the point
  int best_d = std::numeric_limits<int>::max(), best_v = -1;
  Word best_point;
  for (int v = 0; v < c.vertex_count(); ++v) {
    CoverWindow w = explore(c, v, {}, radius, std::numeric_limits<int>::max());
    for (const auto& n : w.nodes) {
      Word point = normal_form(p, concat(c.vertices[v].anchor, n.rel));
      int d = element_length(p, point);
      if (d < best_d || (d == best_d && shortlex_less(point, best_point))) {
        best_d = d;
        best_v = n.vertex;
        best_point = point;
      }
    }
  }
  if (best_d > radius) throw Error(ErrorCode::RadiusInsufficient, "no image point within the radius");
  int base = out.add_vertex({});
  add_path(out, base, best_v, best_point, is_unit(c));
  out.basepoint = base;
  return out;
}

MetricCore trim_to_hull(const MetricCore& c) {
  if (!c.basepoint) throw Error(ErrorCode::NotBased, "core has no basepoint");
  return trim_leaves(c);
}

int max_edges(int r) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "rank must be at least 1");
  return r == 1 ? 1 : 3 * r - 3;
}

// --- small cores -----------------------------------------------------------------

namespace {

using EdgeKey = std::tuple<int, int, Word>;

std::vector<EdgeKey> normalized_edges(const std::vector<EdgeKey>& edges, const std::vector<int>& perm) {
  std::vector<EdgeKey> out;
  for (const auto& [a, b, w] : edges) {
    int x = perm[a], y = perm[b];
    if (x < y) {
      out.emplace_back(x, y, w);
    } else if (x > y) {
      out.emplace_back(y, x, inverse(w));
    } else {
      Word wi = inverse(w);
      out.emplace_back(x, x, shortlex_less(wi, w) ? wi : w);
    }
  }
  std::sort(out.begin(), out.end(), [](const EdgeKey& l, const EdgeKey& r) {
    if (std::get<0>(l) != std::get<0>(r)) return std::get<0>(l) < std::get<0>(r);
    if (std::get<1>(l) != std::get<1>(r)) return std::get<1>(l) < std::get<1>(r);
    return shortlex_less(std::get<2>(l), std::get<2>(r));
  });
  return out;
}

std::string key_string(int n, const std::vector<EdgeKey>& edges) {
  std::ostringstream os;
  os << n << ':';
  for (const auto& [a, b, w] : edges) {
    os << a << ',' << b << ',';
    for (Letter l : w) os << l.code() << '.';
    os << ';';
  }
  return os.str();
}

std::string canonical_of(int n, const std::vector<EdgeKey>& edges) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  bool first = true;
  do {
    std::string k = key_string(n, normalized_edges(edges, perm));
    if (first || k < best) {
      best = k;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::string canonical_key(const MetricCore& c) {
  std::vector<EdgeKey> edges;
  for (const auto& e : c.edges) edges.emplace_back(e.from, e.to, normal_form(c.group(), e.label));
  return canonical_of(c.vertex_count(), edges);
}

std::vector<MetricCore> enumerate_small_cores(const Presentation& p, int n_edges, int L, int radius,
                                              long cap) {
  if (n_edges < 0 || L < 1) throw Error(ErrorCode::InvalidArgument, "bad enumeration bounds");
  if (radius < n_edges * L) throw Error(ErrorCode::RadiusInsufficient, "radius below n_edges * L");
  std::vector<MetricCore> out;
  if (n_edges == 0) {
    MetricCore point = make_core(p);
    point.basepoint = point.add_vertex({});
    out.push_back(point);
    return out;
  }
  CayleyBall b = ball(p, L, {.max_vertices = static_cast<std::size_t>(cap), .distances = false});
  std::vector<Word> labels(b.vertices().begin() + 1, b.vertices().end());
  std::set<std::string> seen;
  long work = 0;
  for (int E = 1; E <= n_edges; ++E) {
    for (int V = 1; V <= E; ++V) {
      std::vector<std::pair<int, int>> slots;
      for (int a = 0; a < V; ++a)
        for (int bb = a; bb < V; ++bb) slots.emplace_back(a, bb);
      const long choices = static_cast<long>(slots.size() * labels.size());
      // nondecreasing sequences of E choices
      std::vector<long> pick(E, 0);
      for (;;) {
        if (++work > cap) throw Error(ErrorCode::BudgetExceeded, "small-core enumeration exceeds cap");
        std::vector<EdgeKey> edges;
        std::vector<int> deg(V, 0);
        for (long x : pick) {
          auto [a, bb] = slots[x / labels.size()];
          edges.emplace_back(a, bb, labels[x % labels.size()]);
          ++deg[a];
          ++deg[bb];
        }
        bool leafless = std::all_of(deg.begin(), deg.end(), [](int d) { return d >= 2; });
        MetricCore c = make_core(p);
        for (int v = 0; v < V; ++v) c.add_vertex({});
        for (const auto& [a, bb, w] : edges) c.add_edge(a, bb, w);
        if (leafless && is_connected(c)) {
          std::string key = canonical_of(V, edges);
          if (seen.insert(key).second) {
            // anchors along a spanning tree from vertex 0
            SpanningTree t = spanning_tree(c, 0);
            for (int v = 0; v < V; ++v) c.vertices[v].anchor = path_label(c, tree_path(c, t, v));
            c.basepoint = 0;
            out.push_back(std::move(c));
          }
        }
        int i = E - 1;
        while (i >= 0 && pick[i] == choices - 1) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < E; ++j) pick[j] = pick[i];
      }
    }
  }
  return out;
}

// --- splits and constants ---------------------------------------------------------

EdgeSplit split_edge(const MetricCore& c, int k, int depth, int radius) {
  const Presentation& p = c.group();
  if (k < 0 || k >= c.edge_count()) throw Error(ErrorCode::InvalidArgument, "edge out of range");
  const auto& e = c.edges[k];
  auto [w1, w2] = edge_windows(c, k, depth, radius);
  EdgeSplit s;
  s.edge = k;
  s.tail_image = c.vertices[e.from].anchor;
  s.head_image = normal_form(p, concat(s.tail_image, e.label));
  s.side1 = std::move(w1);
  s.side2 = std::move(w2);
  s.separating = is_separating(c, k);
  auto stab = [&](int root, const Word& frame) {
    SpanningTree t = spanning_tree(c, root, k);
    std::vector<Word> gens;
    for (int f = 0; f < c.edge_count(); ++f) {
      if (f == k || t.tree_edge[f]) continue;
      const auto& ef = c.edges[f];
      if (!t.parent[ef.from] && ef.from != root) continue;  // other component
      Word loop = path_label(c, basis_loop(c, t, f));
      gens.push_back(normal_form(p, concat(frame, concat(loop, inverse(frame)))));
    }
    return gens;
  };
  s.stabilizer1 = stab(e.from, s.tail_image);
  s.stabilizer2 = stab(e.to, s.head_image);
  return s;
}

void ConstantLedger::set_base(Rational delta_, Rational M0_) {
  delta = delta_;
  M0 = M0_;
  M1 = M0 + 2 * delta + 1;
}

void ConstantLedger::set_m(Rational K, Rational C) { m = K * (2 * M1 + delta + C + 1); }

ProductCheck check_gromov_products(const MetricCore& c, Rational delta, int depth, int radius) {
  const Presentation& p = c.group();
  ProductCheck out;
  auto dist = [&](const Word& x, const Word& y) {
    return p.backend() == Backend::Hnn ? geodesic_length(p, concat(inverse(x), y))
                                       : group_distance(p, x, y);
  };
  // points of the path from the root to node n, edge interiors included
  auto path_points = [&](const CoverWindow& w, int n) {
    std::vector<Word> pts;
    EdgePath path = path_to(w, n);
    Word cur = w.nodes[0].rel;
    pts.push_back(cur);
    for (Step s : path) {
      Word l = step_label(c, s);
      for (Letter x : l) {
        cur = normal_form(p, concat(cur, Word{x}));
        pts.push_back(cur);
      }
    }
    return pts;
  };
  Rational M0(0);
  std::vector<std::tuple<Word, std::vector<Word>, std::vector<Word>>> jobs;  // frame, edge points, window points
  for (int k = 0; k < c.edge_count(); ++k) {
    const auto& e = c.edges[k];
    auto [w1, w2] = edge_windows(c, k, depth, radius);
    for (int side = 0; side < 2; ++side) {
      const CoverWindow& w = side == 0 ? w1 : w2;
      Word frame = w.nodes[0].rel;
      Word lam = side == 0 ? e.label : inverse(e.label);
      std::vector<Word> on_edge;
      for (int j = 0; j <= e.length; ++j)
        on_edge.push_back(normal_form(p, concat(frame, Word(lam.begin(), lam.begin() + j))));
      std::vector<Word> pts;
      for (int n = 0; n < static_cast<int>(w.nodes.size()); ++n) {
        pts.push_back(w.nodes[n].rel);
        // Hausdorff distance between the window path and a geodesic with the same ends
        std::vector<Word> path = path_points(w, n);
        Word geo = geodesic_word(p, concat(inverse(frame), w.nodes[n].rel));
        std::vector<Word> gpts;
        Word g = frame;
        gpts.push_back(g);
        for (Letter x : geo) {
          g = normal_form(p, concat(g, Word{x}));
          gpts.push_back(g);
        }
        int haus = 0;
        for (const auto& a : path) {
          int m = std::numeric_limits<int>::max();
          for (const auto& bpt : gpts) m = std::min(m, dist(a, bpt));
          haus = std::max(haus, m);
        }
        for (const auto& bpt : gpts) {
          int m = std::numeric_limits<int>::max();
          for (const auto& a : path) m = std::min(m, dist(a, bpt));
          haus = std::max(haus, m);
        }
        M0 = std::max(M0, Rational(haus));
      }
      jobs.emplace_back(frame, std::move(on_edge), std::move(pts));
    }
  }
  out.M0 = M0;
  out.ledger.set_base(delta, M0);
  for (const auto& [frame, on_edge, pts] : jobs) {
    for (const auto& x : on_edge)
      for (const auto& y : pts) {
        Rational gp(dist(x, frame) + dist(y, frame) - dist(x, y), 2);
        out.max_product = std::max(out.max_product, gp);
        ++out.samples;
      }
  }
  out.holds = out.max_product < out.ledger.M1;
  return out;
}

}  // namespace arbor
