#include "oracles.hpp"
#include "support.hpp"

#include <arbor/stallings.hpp>

using namespace arbor;

namespace {

Presentation f2() { return presets::free_group(2); }

}  // namespace

TEST_SUITE("stallings") {

TEST_CASE("roses") {
  Presentation p = f2();
  StallingsGraph a = from_generators(words(p, {"a"}));
  CHECK(a.vertices == 1);
  CHECK(a.edge_count() == 1);
  StallingsGraph r = from_generators(words(p, {"ab", "ab'"}));
  CHECK(r.vertices == 3);
  CHECK(r.edge_count() == 4);
  StallingsGraph e = from_generators({});
  CHECK(e.vertices == 1);
  CHECK(e.edge_count() == 0);
  CHECK(rank(fold(e)) == 0);
}

TEST_CASE("folding examples") {
  Presentation p = f2();
  StallingsGraph g = fold(from_generators(words(p, {"ab", "ab'"})));
  CHECK(g.vertices == 2);
  CHECK(g.edge_count() == 3);
  CHECK(is_folded(g));
  CHECK(rank(g) == 2);
  CHECK(canonical(fold(g)).edges == canonical(g).edges);
  StallingsGraph d = fold(from_generators(words(p, {"a", "a"})));
  CHECK(d.vertices == 1);
  CHECK(d.edge_count() == 1);
  CHECK(rank(from_generators(words(p, {"a", "b", "ab"}))) == 3);
}

TEST_CASE("membership examples") {
  Presentation p = f2();
  StallingsGraph g = subgroup_core(words(p, {"ab", "ab'"}));
  CHECK(membership(g, p.parse_word("abab'")));
  CHECK(membership(g, Word{}));
  CHECK_FALSE(membership(subgroup_core(words(p, {"ab", "ba"})), p.parse_word("a")));
}

TEST_CASE("folded edge count matches the union-find oracle") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    int rank_ = 2 + static_cast<int>(rng() % 2);
    std::vector<Word> gens = oracle::random_tuple(rng, rank_, 3, 6);
    StallingsGraph g = subgroup_core(gens);
    CHECK(g.edge_count() == oracle::naive_fold_edges(gens));
    CHECK(is_folded(g));
    CHECK(is_connected(g));
    CHECK(rank(g) <= static_cast<int>(gens.size()));
  }
}

TEST_CASE("membership agrees with breadth-first subgroup enumeration") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    std::vector<Word> gens = oracle::random_tuple(rng, 2, 3, 3);
    StallingsGraph g = subgroup_core(gens);
    int slack = 0;
    for (const Word& w : gens) slack = std::max(slack, static_cast<int>(w.size()));
    auto members = oracle::subgroup_ball(gens, 4, 2 * slack);
    for (const Word& w : oracle::all_words(2, 4)) CHECK(membership(g, w) == (members.count(w) > 0));
    for (const Word& w : oracle::products(gens, 3)) CHECK(membership(g, w));
  }
}

TEST_CASE("basis spans the same subgroup") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    std::vector<Word> gens = oracle::random_tuple(rng, 3, 3, 5);
    StallingsGraph g = subgroup_core(gens);
    std::vector<Word> b = basis(g);
    CHECK(static_cast<int>(b.size()) == rank(g));
    CHECK(canonical(subgroup_core(b)).edges == canonical(g).edges);
  }
}

TEST_CASE("canonical relabeling identifies isomorphic graphs") {
  Presentation p = f2();
  StallingsGraph x = subgroup_core(words(p, {"ab", "ba"}));
  StallingsGraph y = subgroup_core(words(p, {"ba", "ab", "abba"}));
  CHECK(canonical(x).edges == canonical(y).edges);
  CHECK(canonical(x).edges != canonical(subgroup_core(words(p, {"ab", "b'a"}))).edges);
}

TEST_CASE("core morphisms") {
  Presentation p = f2();
  StallingsGraph big = subgroup_core(words(p, {"a", "b"}));
  StallingsGraph sq = subgroup_core(words(p, {"aa", "b"}));
  CoreMorphism m = core_morphism(sq, big);
  CHECK(m.edge_map.size() == 3);
  CHECK(is_surjective(m, big));
  CoreMorphism id = core_morphism(big, big);
  CHECK(id.vertex_map == std::vector<int>{0});
  CHECK(id.edge_map == std::vector<int>{0, 1});
  CHECK_ERROR(core_morphism(subgroup_core(words(p, {"a"})), subgroup_core(words(p, {"b"}))), NotSubgroup);
}

TEST_CASE("free factor witness") {
  Presentation p = f2();
  StallingsGraph big = subgroup_core(words(p, {"a", "b"}));
  CoreMorphism m = core_morphism(subgroup_core(words(p, {"a"})), big);
  CHECK_FALSE(is_surjective(m, big));
  FreeFactorWitness w = free_factor_witness(m, big);
  CHECK(w.factor == words(p, {"a"}));
  CHECK(w.complement.size() == 1);
}

TEST_CASE("free factor witness extends to a basis") {
  std::mt19937_64 rng(21);
  int checked = 0;
  for (int i = 0; i < 300 && checked < 60; ++i) {
    std::vector<Word> top = oracle::random_tuple(rng, 2, 3, 4);
    StallingsGraph g2 = subgroup_core(top);
    std::vector<Word> tb = basis(g2);
    if (tb.empty()) continue;
    std::vector<Word> sub{tb[0]};
    if (tb.size() > 1) sub.push_back(oracle::reduce(oracle::cat(tb[1], tb[1])));
    StallingsGraph g1 = subgroup_core(sub);
    CoreMorphism m = core_morphism(g1, g2);
    if (is_surjective(m, g2)) continue;
    ++checked;
    FreeFactorWitness w = free_factor_witness(m, g2);
    for (const Word& s : sub) CHECK(membership(subgroup_core(w.factor), s));
    std::vector<Word> all = w.factor;
    all.insert(all.end(), w.complement.begin(), w.complement.end());
    CHECK(static_cast<int>(all.size()) == rank(g2));
    CHECK(canonical(subgroup_core(all)).edges == canonical(g2).edges);
    CHECK(static_cast<int>(w.factor.size()) < rank(g2));
  }
  CHECK(checked > 10);
}

}
