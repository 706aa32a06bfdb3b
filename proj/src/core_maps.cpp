#include <arbor/core_maps.hpp>
#include <arbor/displacement.hpp>
#include <arbor/stallings.hpp>

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace arbor {

namespace {

int dist(const Presentation& p, const Word& x, const Word& y) {
  if (p.backend() == Backend::Hnn) return geodesic_length(p, concat(inverse(x), y));
  return group_distance(p, x, y);
}

int max_length(const MetricCore& c) {
  int m = 0;
  for (const auto& e : c.edges) m = std::max(m, e.length);
  return m;
}

void require_based(const MetricCore& c) {
  if (!c.basepoint) throw Error(ErrorCode::NotBased, "core has no basepoint");
}

void require_nested(const MetricCore& source, const MetricCore& target) {
  if (source.group().backend() != Backend::Free) return;
  StallingsGraph g2 = subgroup_core(spanning_tree_basis(target));
  for (const Word& w : spanning_tree_basis(source))
    if (!membership(g2, w))
      throw Error(ErrorCode::NotNested, "source element " + source.group().format(w) +
                                            " is not in the target subgroup");
}

EdgePath reversed(const EdgePath& p) {
  EdgePath out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back({it->edge, !it->forward});
  return out;
}

// Image of a source edge path, with backtracking cancelled.
EdgePath map_path(const CoreMap& m, const EdgePath& source_path) {
  EdgePath out;
  for (Step s : source_path) {
    const EdgePath& img = m.edge_paths.at(s.edge);
    EdgePath piece = s.forward ? img : reversed(img);
    for (Step t : piece) {
      if (!out.empty() && out.back().edge == t.edge && out.back().forward != t.forward)
        out.pop_back();
      else
        out.push_back(t);
    }
  }
  return out;
}

}  // namespace

int images_close(const MetricCore& source, const MetricCore& target, int radius) {
  require_based(source);
  require_based(target);
  require_nested(source, target);
  const Presentation& p = source.group();
  CoverWindow w1 = universal_cover_ball(source, radius);
  const int outer = radius + max_length(target);
  CoverWindow w2 = universal_cover_ball(target, outer);
  std::unordered_set<Word, WordHash> exact;
  for (const auto& n : w2.nodes) exact.insert(n.rel);
  int D = 0;
  for (const auto& x : w1.nodes) {
    if (exact.contains(x.rel)) continue;
    int best = std::numeric_limits<int>::max(), best_depth = 0;
    for (const auto& y : w2.nodes) {
      int d = dist(p, x.rel, y.rel);
      if (d < best) best = d, best_depth = y.depth;
    }
    if (best_depth + max_length(target) > outer)
      throw Error(ErrorCode::RadiusInsufficient, "nearest target point on the window boundary");
    D = std::max(D, best);
  }
  return D;
}

PredictedConstants predict_constants(Rational K, Rational C, int D) {
  PredictedConstants pc;
  pc.K = K;
  pc.C = C;
  pc.D = D;
  pc.K0 = K * K;
  pc.C0 = 2 * K * D + 2 * K * C;
  pc.K1 = pc.K0;
  pc.C1 = 3 * pc.K0 + 2 * pc.C0;
  return pc;
}

CoreMap build_core_map(const MetricCore& source_in, const MetricCore& target, int radius) {
  require_based(source_in);
  require_based(target);
  CoreMap m;
  m.D = images_close(source_in, target, radius);
  m.source = subdivide(source_in);
  m.target = target;
  const MetricCore& s = m.source;
  const Presentation& p = s.group();

  // Nearest target point for each domain lift, shortlex on ties.
  SpanningTree tree = spanning_tree(s, *s.basepoint);
  for (int v = 0; v < s.vertex_count(); ++v)
    m.domain_points.push_back(path_label(s, tree_path(s, tree, v)));
  int outer = radius;
  for (const Word& x : m.domain_points) outer = std::max<int>(outer, static_cast<int>(x.size()) + m.D + 1);
  outer += max_length(target);
  CoverWindow w2 = universal_cover_ball(target, outer);
  for (int v = 0; v < s.vertex_count(); ++v) {
    const Word& x = m.domain_points[v];
    int best = std::numeric_limits<int>::max(), bi = -1;
    for (int i = 0; i < static_cast<int>(w2.nodes.size()); ++i) {
      int d = dist(p, x, w2.nodes[i].rel);
      if (d < best || (d == best && shortlex_less(w2.nodes[i].rel, w2.nodes[bi].rel))) best = d, bi = i;
    }
    if (w2.nodes[bi].depth + max_length(target) > outer)
      throw Error(ErrorCode::RadiusInsufficient, "nearest point on the window boundary");
    m.vertex_map.push_back({w2.nodes[bi].vertex, w2.nodes[bi].rel});
  }

  // Each unit source edge follows the target tree path between the
  // images of its ends.
  for (int k = 0; k < s.edge_count(); ++k) {
    const auto& e = s.edges[k];
    const auto& a = m.vertex_map[e.from];
    const auto& b = m.vertex_map[e.to];
    // translate the head's domain image by h = iota_u label iota_w^-1
    Word h = concat(m.domain_points[e.from], concat(e.label, inverse(m.domain_points[e.to])));
    Word goal = normal_form(p, concat(h, b.target_point));
    int reach = dist(p, a.target_point, goal);
    CoverWindow w = explore(target, a.target_vertex, a.target_point,
                            std::max(radius, 4 * reach + 2 * max_length(target) + 2),
                            std::numeric_limits<int>::max());
    int found = -1;
    for (int i = 0; i < static_cast<int>(w.nodes.size()); ++i)
      if (w.nodes[i].vertex == b.target_vertex && w.nodes[i].rel == goal) {
        found = i;
        break;
      }
    if (found < 0) throw Error(ErrorCode::RadiusInsufficient, "edge image not found in the target window");
    m.edge_paths.push_back(path_to(w, found));
  }

  m.source_qi = measure_qi(m.source, radius);
  m.target_qi = measure_qi(m.target, radius);
  m.predicted = predict_constants(std::max(m.source_qi.K, m.target_qi.K),
                                  std::max(m.source_qi.C, m.target_qi.C), m.D);
  return m;
}

bool map_is_surjective(const CoreMap& m) {
  std::vector<bool> hit(m.target.edges.size(), false);
  for (const auto& path : m.edge_paths)
    for (Step s : path) hit[s.edge] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

MapQi measure_map_qi(const CoreMap& m, int radius) {
  if (radius < 1) throw Error(ErrorCode::RadiusInsufficient, "radius must be positive");
  MapQi out;
  out.predicted = m.predicted;
  std::vector<QiSample> samples;
  const MetricCore& s = m.source;
  for (int v = 0; v < s.vertex_count(); ++v) {
    CoverWindow w = explore(s, v, m.domain_points[v], radius, std::numeric_limits<int>::max());
    for (int i = 1; i < static_cast<int>(w.nodes.size()); ++i) {
      EdgePath img = map_path(m, path_to(w, i));
      int d2 = static_cast<int>(path_length(m.target, img));
      samples.push_back({w.nodes[i].depth, d2, v, w.nodes[i].vertex});
    }
  }
  out.empirical = estimate_from_samples(samples, radius);
  const auto& pc = m.predicted;
  for (const auto& x : samples) {
    if (Rational(x.dom) / pc.K0 - pc.C0 > x.range || Rational(x.range) > pc.K0 * x.dom + pc.C0)
      out.within_step1 = false;
    if (Rational(x.dom) / pc.K1 - pc.C1 > x.range || Rational(x.range) > pc.K1 * x.dom + pc.C1)
      out.within_step2 = false;
  }
  return out;
}

EquivarianceReport check_equivariance(const CoreMap& m, int radius) {
  const MetricCore& s = m.source;
  const Presentation& p = s.group();
  EquivarianceReport rep;
  SpanningTree tree = spanning_tree(s, *s.basepoint);
  std::vector<EdgePath> gens;
  for (int k = 0; k < s.edge_count(); ++k)
    if (!tree.tree_edge[k]) gens.push_back(basis_loop(s, tree, k));
  CoverWindow w = universal_cover_ball(s, radius);
  auto consistent = [&](const EdgePath& source_path, const Word& source_point) {
    // endpoint via path following vs the equivariant extension of the vertex assignment
    int v = path_end(s, *s.basepoint, source_path);
    EdgePath img = map_path(m, source_path);
    Word image_point = path_label(m.target, img);
    int tv = path_end(m.target, *m.target.basepoint, img);
    Word h = concat(source_point, inverse(m.domain_points[v]));
    Word expected = normal_form(p, concat(h, m.vertex_map[v].target_point));
    return std::make_pair(tv == m.vertex_map[v].target_vertex && image_point == expected, image_point);
  };
  for (int i = 0; i < static_cast<int>(w.nodes.size()); ++i) {
    EdgePath px = path_to(w, i);
    auto [ok_x, psi_x] = consistent(px, w.nodes[i].rel);
    ++rep.checks;
    if (!ok_x) ++rep.failures;
    for (const EdgePath& g : gens) {
      EdgePath pgx = g;
      pgx.insert(pgx.end(), px.begin(), px.end());
      Word gword = path_label(s, g);
      Word gx = normal_form(p, concat(gword, w.nodes[i].rel));
      auto [ok_gx, psi_gx] = consistent(pgx, gx);
      ++rep.checks;
      if (!ok_gx || !equal_in_group(p, psi_gx, concat(gword, psi_x))) ++rep.failures;
    }
  }
  return rep;
}

bool size_bound_check(const CoreMap& m) {
  if (!map_is_surjective(m)) throw Error(ErrorCode::NotSurjective, "map is not surjective");
  return Rational(size(m.target)) <= m.predicted.K1 * size(m.source) + m.predicted.C1;
}

}  // namespace arbor
