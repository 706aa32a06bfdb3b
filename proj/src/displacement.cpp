#include <arbor/displacement.hpp>
#include <arbor/stallings.hpp>

#include <algorithm>
#include <map>

namespace arbor {

int tau(const Presentation& p, const std::vector<Word>& A) {
  int t = 0;
  for (const Word& a : A) t += geodesic_length(p, a);
  return t;
}

std::vector<Word> spanning_tree_basis(const MetricCore& c) {
  if (!c.basepoint) throw Error(ErrorCode::NotBased, "core has no basepoint");
  SpanningTree t = spanning_tree(c, *c.basepoint);
  std::vector<Word> out;
  for (int k = 0; k < c.edge_count(); ++k)
    if (!t.tree_edge[k]) out.push_back(path_label(c, basis_loop(c, t, k)));
  return out;
}

namespace {

std::string graph_key(const StallingsGraph& g) {
  std::string s = std::to_string(g.vertices) + ":";
  for (const auto& e : g.edges)
    s += std::to_string(e.from) + "," + std::to_string(e.to) + "," + std::to_string(e.gen) + ";";
  return s;
}

std::string tuple_key(std::vector<Word> words) {
  std::sort(words.begin(), words.end(),
            [](const Word& a, const Word& b) { return shortlex_less(a, b); });
  std::string s;
  for (const Word& w : words) {
    for (Letter l : w) s += std::to_string(l.code()) + ".";
    s += "|";
  }
  return s;
}

}  // namespace

Enumeration enumerate_bounded(const Presentation& p, int alpha, int r, long cap) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "rank must be positive");
  Enumeration out;
  out.exact_dedup = p.backend() == Backend::Free;
  if (alpha < r) return out;
  CayleyBall b = ball(p, alpha - (r - 1), {.max_vertices = static_cast<std::size_t>(cap), .distances = false});
  std::vector<int> elems;
  for (int i = 1; i < static_cast<int>(b.size()); ++i) elems.push_back(i);
  std::map<std::string, int> classes;
  std::vector<int> pick(r, 0);
  long work = 0;
  // odometer over ordered tuples with a running tau bound
  std::vector<int> partial(r + 1, 0);
  int depth = 0;
  pick.assign(r, -1);
  while (depth >= 0) {
    ++pick[depth];
    if (pick[depth] >= static_cast<int>(elems.size())) {
      pick[depth] = -1;
      --depth;
      continue;
    }
    int len = b.depth(elems[pick[depth]]);
    if (partial[depth] + len + (r - depth - 1) > alpha) {
      // vertices are sorted by length, nothing later fits
      pick[depth] = -1;
      --depth;
      continue;
    }
    partial[depth + 1] = partial[depth] + len;
    if (depth + 1 < r) {
      ++depth;
      continue;
    }
    if (++work > cap) throw Error(ErrorCode::BudgetExceeded, "tuple enumeration exceeds cap");
    GeneratingTuple t;
    for (int i = 0; i < r; ++i) t.words.push_back(b.vertex(elems[pick[i]]));
    t.tau = partial[r];
    std::string key = out.exact_dedup ? graph_key(canonical(subgroup_core(t.words))) : tuple_key(t.words);
    auto [it, fresh] = classes.emplace(key, static_cast<int>(classes.size()));
    t.class_id = it->second;
    out.tuples.push_back(std::move(t));
  }
  out.classes = static_cast<int>(classes.size());
  return out;
}

DisplacementCheck displacement_bound_check(const MetricCore& c, Rational K, Rational C) {
  if (!c.basepoint) throw Error(ErrorCode::NotBased, "core has no basepoint");
  DisplacementCheck out;
  SpanningTree t = spanning_tree(c, *c.basepoint);
  const long sigma = size(c);
  std::vector<Word> loops;
  for (int k = 0; k < c.edge_count(); ++k) {
    if (t.tree_edge[k]) continue;
    EdgePath path = basis_loop(c, t, k);
    long len = path_length(c, path);
    out.longest_loop = std::max(out.longest_loop, len);
    if (len > 2 * sigma) out.loops_within_twice_sigma = false;
    loops.push_back(path_label(c, path));
  }
  const int r = static_cast<int>(loops.size());
  out.tau = tau(c.group(), loops);
  out.bound = 2 * K * r * sigma + r * C;
  out.holds = Rational(out.tau) <= out.bound;
  return out;
}

}  // namespace arbor
