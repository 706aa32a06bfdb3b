#include "oracles.hpp"
#include "support.hpp"

#include <arbor/metric_core.hpp>
#include <arbor/stallings.hpp>

using namespace arbor;

namespace {

Presentation f2() { return presets::free_group(2); }

// Generators of pi1 read off spanning-tree loops at the basepoint.
std::vector<Word> loop_basis(const MetricCore& c) {
  SpanningTree t = spanning_tree(c, *c.basepoint);
  std::vector<Word> out;
  const Word& a = c.vertices[*c.basepoint].anchor;
  for (int k = 0; k < c.edge_count(); ++k)
    if (!t.tree_edge[k])
      out.push_back(normal_form(c.group(), concat(a, concat(path_label(c, basis_loop(c, t, k)), inverse(a)))));
  return out;
}

bool same_membership(const std::vector<Word>& x, const std::vector<Word>& y, std::mt19937_64& rng, int n) {
  StallingsGraph gx = subgroup_core(x), gy = subgroup_core(y);
  for (int i = 0; i < n; ++i) {
    // products of generators exercise positive cases, random words the rest
    Word w = i % 2 == 0 ? oracle::random_reduced(rng, 2, 1 + static_cast<int>(rng() % 8)) : Word{};
    if (i % 2 == 1 && !x.empty()) {
      for (int k = 0; k < 3; ++k) {
        const Word& g = x[rng() % x.size()];
        w = oracle::reduce(oracle::cat(w, rng() % 2 ? g : oracle::inv(g)));
      }
    }
    if (membership(gx, w) != membership(gy, w)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("metric_core") {

TEST_CASE("cores from generators") {
  Presentation p = f2();
  MetricCore c = core_from_generators(p, words(p, {"a", "ab"}));
  CHECK(size(c) == 3);
  CHECK(rank(c) == 2);
  CHECK(validate(c).empty());
  CHECK(size(core_from_generators(presets::hnn_example(), words(presets::hnn_example(), {"a", "b"}))) == 2);
  CHECK_ERROR(core_from_generators(p, words(p, {"aa'"})), TrivialGenerator);
  MetricCore point = make_core(p);
  point.basepoint = point.add_vertex({});
  CHECK(size(point) == 0);
  CHECK(size(subdivide(core_from_generators(p, words(p, {"ab", "ab'"})))) == 4);
}

TEST_CASE("identifying the shared a-point of the rose") {
  Presentation p = f2();
  MetricCore rose = core_from_generators(p, words(p, {"ab", "ab'"}));
  for (int k : {0, 2}) {
    SearchResult r = search_improvement(rose, k, 2, 4);
    REQUIRE(r.move);
    CHECK(std::holds_alternative<IdentifyVertices>(*r.move));
    MetricCore next = apply_move(rose, *r.move);
    CHECK(size(next) == 3);
    CHECK(rank(next) == 2);
  }
}

TEST_CASE("replacing an edge by a shorter connection") {
  Presentation p = f2();
  MetricCore c = make_core(p);
  c.basepoint = c.add_vertex({});
  c.add_vertex(p.parse_word("a"));
  c.add_vertex(p.parse_word("ab"));
  c.add_edge(0, 1, p.parse_word("a"));
  c.add_edge(1, 2, p.parse_word("b"));
  c.add_edge(0, 2, p.parse_word("ab"));
  MetricCore next = apply_move(c, ReplaceEdge{2, {}, {Step{1, false}}, p.parse_word("a")});
  CHECK(size(c) - size(next) == 2 - 1);
  CHECK_ERROR(apply_move(c, ReplaceEdge{2, {}, {}, p.parse_word("ab")}), MoveInvalid);
}

TEST_CASE("a balloon that does not shorten is rejected") {
  Presentation p = f2();
  MetricCore c = make_core(p);
  c.basepoint = c.add_vertex({});
  c.add_edge(0, 0, p.parse_word("ab"));
  CHECK_FALSE(is_separating(c, 0));
  Word ab = p.parse_word("ab");
  CHECK_ERROR(apply_move(c, AddBalloon{0, false, {}, {}, ab, ab}), MoveInvalid);
}

TEST_CASE("folded cores admit no improvement") {
  Presentation p = f2();
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    std::vector<Word> gens = oracle::random_tuple(rng, 2, 3, 5);
    StallingsGraph g = subgroup_core(gens);
    if (g.edge_count() == 0) continue;
    FoldResult f = fold_to_minimal(core_from_generators(p, gens), 6, 6, 200);
    REQUIRE_FALSE(f.budget_exhausted);
    for (int k = 0; k < f.core.edge_count(); ++k) {
      CHECK_FALSE(search_improvement(f.core, k, 6, 6).move);
      CHECK(check_minimal_edge_shortest(f.core, k, 4, 6));
    }
  }
}

TEST_CASE("surface generators sharing a prefix are improved") {
  Presentation s = presets::surface_group(2);
  MetricCore c = core_from_generators(s, words(s, {"ab", "ac"}));
  SearchResult r = search_improvement(c, 0, 3, 4);
  REQUIRE(r.move);
  std::string kind = move_kind(*r.move);
  CHECK((kind == move_kind(IdentifyVertices{}) || kind == move_kind(ReplaceEdge{})));
  CHECK(size(apply_move(c, *r.move)) < size(c));
}

TEST_CASE("fold to minimal examples") {
  Presentation p = f2();
  FoldResult r = fold_to_minimal(core_from_generators(p, words(p, {"ab", "ab'"})), 4, 4, 50);
  CHECK(size(r.core) == 3);
  CHECK(r.sigma_history.front() == 4);
  FoldResult again = fold_to_minimal(r.core, 4, 4, 50);
  CHECK(again.log.empty());
  Presentation f1 = presets::free_group(1);
  FoldResult c = fold_to_minimal(core_from_generators(f1, words(f1, {"aa", "aaa"})), 6, 6, 50);
  CHECK(size(c.core) == 1);
  CHECK(rank(c.core) == 1);
  FoldResult cut = fold_to_minimal(core_from_generators(p, words(p, {"ab", "ab'"})), 4, 4, 0);
  CHECK(cut.budget_exhausted);
}

TEST_CASE("folding matches classical Stallings folding") {
  Presentation p = f2();
  std::mt19937_64 rng(23);
  for (int i = 0; i < 15; ++i) {
    std::vector<Word> gens = oracle::random_tuple(rng, 2, 3, 5);
    FoldResult f = fold_to_minimal(core_from_generators(p, gens), 6, 6, 200);
    CHECK(size(f.core) == oracle::naive_fold_edges(gens));
    for (std::size_t k = 1; k < f.sigma_history.size(); ++k) CHECK(f.sigma_history[k] < f.sigma_history[k - 1]);
    if (size(f.core) == 0) continue;
    QiEstimate q = measure_qi(f.core, 6);
    CHECK(q.K == R(1));
    CHECK(q.C == R(0));
  }
}

TEST_CASE("universal cover balls") {
  Presentation p = f2();
  CoverWindow w = universal_cover_ball(core_from_generators(p, words(p, {"a"})), 2);
  CHECK(w.nodes.size() == 5);
  std::set<std::string> rels;
  for (const auto& n : w.nodes) rels.insert(p.format(n.rel));
  CHECK(rels == std::set<std::string>{"a'a'", "a'", "1", "a", "aa"});
  CoverWindow star = universal_cover_ball(core_from_generators(p, words(p, {"a", "b"})), 1);
  CHECK(star.nodes.size() == 5);
  MetricCore folded = fold_to_minimal(core_from_generators(p, words(p, {"ab", "ab'"})), 4, 4, 50).core;
  CoverWindow big = universal_cover_ball(folded, 3);
  std::set<Word> images;
  for (const auto& n : big.nodes) CHECK(images.insert(normal_form(p, n.rel)).second);
  CHECK(big.nodes.size() > 10);
}

TEST_CASE("measured quasi-isometry constants") {
  Presentation p = f2();
  QiEstimate rose = measure_qi(core_from_generators(p, words(p, {"ab", "ab'"})), 4);
  CHECK(rose.K == R(1));
  CHECK(rose.C >= R(2));
  QiEstimate loop = measure_qi(core_from_generators(p, words(p, {"a"})), 4);
  CHECK(loop.K == R(1));
  CHECK(loop.C == R(0));
  CHECK_ERROR(measure_qi(core_from_generators(p, words(p, {"a"})), 0), RadiusInsufficient);
}

TEST_CASE("image distances never exceed cover distances") {
  std::mt19937_64 rng(29);
  for (Presentation p : {presets::free_group(2), presets::surface_group(2)}) {
    for (int i = 0; i < 10; ++i) {
      MetricCore c = core_from_generators(p, oracle::random_tuple(rng, p.rank(), 2, 4));
      for (int v = 0; v < c.vertex_count(); ++v)
        for (const auto& n : explore(c, v, {}, 4, 100).nodes)
          CHECK(static_cast<int>(normal_form(p, n.rel).size()) <= n.depth);
    }
  }
}

TEST_CASE("minimal edge check") {
  Presentation p = f2();
  MetricCore rose = core_from_generators(p, words(p, {"ab", "ab'"}));
  CHECK_FALSE(check_minimal_edge_shortest(rose, 0, 2, 4));
  CHECK_FALSE(check_minimal_edge_shortest(rose, 2, 2, 4));
  CHECK(check_minimal_edge_shortest(core_from_generators(p, words(p, {"a"})), 0, 4, 4));
}

TEST_CASE("basepoint attachment") {
  Presentation p = f2();
  MetricCore based = core_from_generators(p, words(p, {"a"}));
  based.basepoint.reset();
  MetricCore same = attach_basepoint(based, 4);
  CHECK(same.vertex_count() == 1);
  CHECK(same.basepoint == 0);

  MetricCore shifted = make_core(p);
  shifted.add_vertex(p.parse_word("b"));
  shifted.add_edge(0, 0, p.parse_word("a"));
  MetricCore leafed = attach_basepoint(shifted, 4);
  CHECK(leafed.vertex_count() == 2);
  CHECK(size(leafed) == 2);
  REQUIRE(leafed.basepoint);
  CHECK(normal_form(p, leafed.vertices[*leafed.basepoint].anchor).empty());
  CHECK(trim_to_hull(leafed).edge_count() == 2);

  CHECK_ERROR(attach_basepoint(make_core(p), 4), InvalidArgument);
}

TEST_CASE("trimming to the hull") {
  Presentation p = f2();
  MetricCore c = core_from_generators(p, words(p, {"a"}));
  int leaf = c.add_vertex(p.parse_word("b"));
  c.add_edge(0, leaf, p.parse_word("b"));
  MetricCore t = trim_to_hull(c);
  CHECK(t.vertex_count() == 1);
  CHECK(t.edge_count() == 1);
  MetricCore rose = core_from_generators(p, words(p, {"a", "b"}));
  CHECK(trim_to_hull(rose).edge_count() == 2);
  MetricCore path = make_core(p);
  path.basepoint = path.add_vertex({});
  path.add_vertex(p.parse_word("a"));
  path.add_vertex(p.parse_word("ab"));
  path.add_edge(0, 1, p.parse_word("a"));
  path.add_edge(1, 2, p.parse_word("b"));
  MetricCore collapsed = trim_to_hull(path);
  CHECK(collapsed.vertex_count() == 1);
  CHECK(collapsed.edge_count() == 0);
  path.basepoint.reset();
  CHECK_ERROR(trim_to_hull(path), NotBased);
}

TEST_CASE("max_edges agrees with coarse graph enumeration") {
  for (int r = 1; r <= 3; ++r) CHECK(max_edges(r) == oracle::max_coarse_edges(r));
  CHECK(max_edges(2) == 3);
  CHECK(max_edges(3) == 6);
  CHECK_ERROR(max_edges(0), InvalidArgument);
}

TEST_CASE("small core enumeration") {
  CHECK(enumerate_small_cores(f2(), 1, 1, 1).size() == 2);
  CHECK(enumerate_small_cores(f2(), 0, 3, 3).size() == 1);
  Presentation f1 = presets::free_group(1);
  std::vector<MetricCore> loops = enumerate_small_cores(f1, 1, 2, 2);
  REQUIRE(loops.size() == 2);
  std::set<long> sizes{size(loops[0]), size(loops[1])};
  CHECK(sizes == std::set<long>{1, 2});
  std::set<std::string> keys;
  for (const MetricCore& c : enumerate_small_cores(f2(), 2, 1, 2)) {
    CHECK(keys.insert(canonical_key(c)).second);
    CHECK(is_connected(c));
  }
  CHECK_ERROR(enumerate_small_cores(f2(), 2, 2, 3), RadiusInsufficient);
  CHECK_ERROR(enumerate_small_cores(f2(), 3, 3, 9, 1000), BudgetExceeded);
}

TEST_CASE("every found move is sound") {
  Presentation p = f2();
  std::mt19937_64 rng(31);
  int moves = 0;
  for (int i = 0; i < 60; ++i) {
    std::vector<Word> gens = oracle::random_tuple(rng, 2, 3, 5);
    MetricCore c = core_from_generators(p, gens);
    for (int k = 0; k < c.edge_count(); ++k) {
      SearchResult r = search_improvement(c, k, 4, 5);
      if (!r.move) continue;
      ++moves;
      MetricCore next = apply_move(c, *r.move);
      CHECK(size(next) < size(c));
      CHECK(rank(next) == rank(c));
      CHECK(same_membership(loop_basis(c), loop_basis(next), rng, 100));
    }
  }
  CHECK(moves > 50);
}

TEST_CASE("Gromov products at edges of folded cores stay below M1") {
  Presentation p = f2();
  std::mt19937_64 rng(37);
  for (int i = 0; i < 8; ++i) {
    MetricCore c = fold_to_minimal(core_from_generators(p, oracle::random_tuple(rng, 2, 2, 4)), 5, 5, 100).core;
    if (c.edge_count() == 0) continue;
    ProductCheck pc = check_gromov_products(c, R(0), 3, 6);
    CHECK(pc.holds);
    CHECK(pc.ledger.M1 == pc.M0 + R(1));
  }
}

}
