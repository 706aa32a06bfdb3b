#include <arbor/stallings.hpp>

#include <algorithm>
#include <deque>
#include <numeric>

namespace arbor {

namespace {

struct Step {
  int edge;
  bool forward;
  int target;
};

// Edges at v reading letter l (forward along positive letters).
std::vector<Step> steps(const StallingsGraph& g, int v, Letter l) {
  std::vector<Step> out;
  for (int i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges[i];
    if (e.gen != l.gen) continue;
    if (!l.inv && e.from == v) out.push_back({i, true, e.to});
    if (l.inv && e.to == v) out.push_back({i, false, e.from});
  }
  return out;
}

int max_gen(const StallingsGraph& g) {
  int m = -1;
  for (auto& e : g.edges) m = std::max(m, e.gen);
  return m;
}

void compact(StallingsGraph& g, const std::vector<bool>& alive) {
  std::vector<int> id(g.vertices, -1);
  int next = 0;
  for (int v = 0; v < g.vertices; ++v)
    if (alive[v]) id[v] = next++;
  for (auto& e : g.edges) {
    e.from = id[e.from];
    e.to = id[e.to];
  }
  g.base = id[g.base];
  g.vertices = next;
}

// Breadth-first tree from the base; parent step per vertex (edge -1 at roots).
struct Tree {
  std::vector<int> parent_edge;
  std::vector<bool> parent_forward;  // traversed forward from the parent
  std::vector<int> order;
  std::vector<bool> in_tree_edge;
};

Tree bfs_tree(const StallingsGraph& g, const std::vector<int>& roots,
              const std::vector<bool>* allowed_edges = nullptr,
              const Tree* seed = nullptr) {
  Tree t;
  t.parent_edge.assign(g.vertices, -1);
  t.parent_forward.assign(g.vertices, true);
  t.in_tree_edge.assign(g.edges.size(), false);
  std::vector<bool> seen(g.vertices, false);
  std::deque<int> q;
  if (seed) {
    t = *seed;
    for (int v : seed->order) seen[v] = true;
    for (int v : seed->order) q.push_back(v);
  }
  for (int r : roots)
    if (!seen[r]) {
      seen[r] = true;
      q.push_back(r);
      t.order.push_back(r);
    }
  int gens = max_gen(g) + 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int gi = 0; gi < gens; ++gi) {
      for (bool inv : {false, true}) {
        for (const Step& s : steps(g, v, {gi, inv})) {
          if (allowed_edges && !(*allowed_edges)[s.edge]) continue;
          if (seen[s.target]) continue;
          seen[s.target] = true;
          t.parent_edge[s.target] = s.edge;
          t.parent_forward[s.target] = s.forward;
          t.in_tree_edge[s.edge] = true;
          t.order.push_back(s.target);
          q.push_back(s.target);
        }
      }
    }
  }
  return t;
}

// Word read along the tree from the base to v.
Word tree_word(const StallingsGraph& g, const Tree& t, int v) {
  Word rev;
  while (t.parent_edge[v] >= 0) {
    const auto& e = g.edges[t.parent_edge[v]];
    bool fwd = t.parent_forward[v];
    rev.push_back({e.gen, !fwd});
    v = fwd ? e.from : e.to;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

Word loop_word(const StallingsGraph& g, const Tree& t, int edge) {
  const auto& e = g.edges[edge];
  Word w = tree_word(g, t, e.from);
  w.push_back({e.gen, false});
  Word back = inverse(tree_word(g, t, e.to));
  w.insert(w.end(), back.begin(), back.end());
  return free_reduce(w);
}

}  // namespace

StallingsGraph from_generators(const std::vector<Word>& gens) {
  StallingsGraph g;
  g.vertices = 1;
  g.base = 0;
  for (const Word& raw : gens) {
    Word w = free_reduce(raw);
    if (w.empty()) continue;
    int prev = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      int next = (k + 1 == w.size()) ? 0 : g.vertices++;
      if (w[k].inv)
        g.edges.push_back({next, prev, w[k].gen});
      else
        g.edges.push_back({prev, next, w[k].gen});
      prev = next;
    }
  }
  g.folded = is_folded(g);
  return g;
}

bool is_folded(const StallingsGraph& g) {
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (std::size_t j = i + 1; j < g.edges.size(); ++j) {
      const auto& a = g.edges[i];
      const auto& b = g.edges[j];
      if (a.gen == b.gen && (a.from == b.from || a.to == b.to)) return false;
    }
  return true;
}

bool is_connected(const StallingsGraph& g) {
  std::vector<int> parent(g.vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = g.vertices;
  for (auto& e : g.edges) {
    int a = find(e.from), b = find(e.to);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

StallingsGraph fold(StallingsGraph g) {
  std::vector<bool> alive(g.vertices, true);
  for (;;) {
    // lowest vertex carrying two equal-label edges in the same direction
    int best_v = -1;
    std::size_t bi = 0, bj = 0;
    bool outgoing = true;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      for (std::size_t j = i + 1; j < g.edges.size(); ++j) {
        const auto& a = g.edges[i];
        const auto& b = g.edges[j];
        if (a.gen != b.gen) continue;
        if (a.from == b.from && (best_v < 0 || a.from < best_v)) {
          best_v = a.from, bi = i, bj = j, outgoing = true;
        }
        if (a.to == b.to && (best_v < 0 || a.to < best_v)) {
          best_v = a.to, bi = i, bj = j, outgoing = false;
        }
      }
    }
    if (best_v < 0) break;
    int x = outgoing ? g.edges[bi].to : g.edges[bi].from;
    int y = outgoing ? g.edges[bj].to : g.edges[bj].from;
    g.edges.erase(g.edges.begin() + static_cast<long>(bj));
    if (x != y) {
      int keep = std::min(x, y), drop = std::max(x, y);
      if (drop == g.base) std::swap(keep, drop);
      for (auto& e : g.edges) {
        if (e.from == drop) e.from = keep;
        if (e.to == drop) e.to = keep;
      }
      alive[drop] = false;
    }
  }
  // trim leaves other than the base
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> deg(g.vertices, 0);
    for (auto& e : g.edges) {
      ++deg[e.from];
      ++deg[e.to];
    }
    for (int v = 0; v < g.vertices; ++v) {
      if (!alive[v] || v == g.base || deg[v] > 1) continue;
      alive[v] = false;
      std::erase_if(g.edges, [&](const auto& e) { return e.from == v || e.to == v; });
      changed = true;
    }
  }
  compact(g, alive);
  g.folded = true;
  return g;
}

bool membership(const StallingsGraph& g, std::span<const Letter> w) {
  if (!g.folded && !is_folded(g)) throw Error(ErrorCode::NotFolded, "membership needs a folded graph");
  int v = g.base;
  for (Letter l : free_reduce(w)) {
    auto s = steps(g, v, l);
    if (s.empty()) return false;
    v = s.front().target;
  }
  return v == g.base;
}

int rank(const StallingsGraph& g) {
  if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "graph is disconnected");
  return g.edge_count() - g.vertices + 1;
}

StallingsGraph canonical(const StallingsGraph& g) {
  Tree t = bfs_tree(g, {g.base});
  if (static_cast<int>(t.order.size()) != g.vertices)
    throw Error(ErrorCode::Disconnected, "graph is disconnected");
  std::vector<int> id(g.vertices);
  for (std::size_t i = 0; i < t.order.size(); ++i) id[t.order[i]] = static_cast<int>(i);
  StallingsGraph out = g;
  for (auto& e : out.edges) {
    e.from = id[e.from];
    e.to = id[e.to];
  }
  out.base = 0;
  std::sort(out.edges.begin(), out.edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.from, a.gen, a.to) < std::tie(b.from, b.gen, b.to);
  });
  return out;
}

std::vector<Word> basis(const StallingsGraph& g) {
  Tree t = bfs_tree(g, {g.base});
  std::vector<Word> out;
  for (int i = 0; i < g.edge_count(); ++i)
    if (!t.in_tree_edge[i]) out.push_back(loop_word(g, t, i));
  return out;
}

StallingsGraph subgroup_core(const std::vector<Word>& gens) { return fold(from_generators(gens)); }

CoreMorphism core_morphism(const StallingsGraph& g1, const StallingsGraph& g2) {
  if (!g1.folded || !g2.folded) throw Error(ErrorCode::NotFolded, "core morphism needs folded graphs");
  for (const Word& b : basis(g1))
    if (!membership(g2, b)) {
      std::string s;
      for (Letter l : b) s += std::string(1, static_cast<char>('a' + l.gen)) + (l.inv ? "'" : "");
      throw Error(ErrorCode::NotSubgroup, "basis element " + s + " is not in the target");
    }
  CoreMorphism m;
  m.vertex_map.assign(g1.vertices, -1);
  m.edge_map.assign(g1.edges.size(), -1);
  m.vertex_map[g1.base] = g2.base;
  Tree t = bfs_tree(g1, {g1.base});
  for (int v : t.order) {
    if (v == g1.base) continue;
    Word w = tree_word(g1, t, v);
    int x = g2.base;
    for (Letter l : w) {
      auto s = steps(g2, x, l);
      if (s.empty()) throw Error(ErrorCode::NotSubgroup, "vertex path leaves the target graph");
      x = s.front().target;
    }
    m.vertex_map[v] = x;
  }
  for (int i = 0; i < g1.edge_count(); ++i) {
    const auto& e = g1.edges[i];
    auto s = steps(g2, m.vertex_map[e.from], {e.gen, false});
    if (s.empty() || s.front().target != m.vertex_map[e.to])
      throw Error(ErrorCode::NotSubgroup, "edge does not map");
    m.edge_map[i] = s.front().edge;
  }
  return m;
}

bool is_surjective(const CoreMorphism& m, const StallingsGraph& g2) {
  std::vector<bool> hit(g2.edges.size(), false);
  for (int e : m.edge_map) hit[e] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

FreeFactorWitness free_factor_witness(const CoreMorphism& m, const StallingsGraph& g2) {
  std::vector<bool> image(g2.edges.size(), false);
  for (int e : m.edge_map) image[e] = true;
  Tree inner = bfs_tree(g2, {g2.base}, &image);
  Tree full = bfs_tree(g2, {}, nullptr, &inner);
  FreeFactorWitness w;
  for (int i = 0; i < g2.edge_count(); ++i) {
    if (full.in_tree_edge[i]) continue;
    (image[i] ? w.factor : w.complement).push_back(loop_word(g2, full, i));
  }
  return w;
}

}  // namespace arbor
