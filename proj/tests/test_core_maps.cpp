#include "oracles.hpp"
#include "support.hpp"

#include <arbor/core_maps.hpp>
#include <arbor/stallings.hpp>

using namespace arbor;

namespace {

MetricCore folded(const Presentation& p, const std::vector<Word>& gens) {
  return fold_to_minimal(core_from_generators(p, gens), 6, 6, 200).core;
}

}  // namespace

TEST_SUITE("core_maps") {

TEST_CASE("images are close for nested free subgroups") {
  Presentation p = presets::free_group(2);
  MetricCore ab = folded(p, words(p, {"a", "b"}));
  CHECK(images_close(ab, ab, 4) == 0);
  CHECK(images_close(folded(p, words(p, {"a"})), ab, 4) == 0);
  CHECK(images_close(folded(p, words(p, {"aab"})), ab, 6) == 0);
  CHECK_ERROR(images_close(folded(p, words(p, {"a"})), folded(p, words(p, {"b"})), 4), NotNested);
}

TEST_CASE("predicted constants") {
  PredictedConstants pc = predict_constants(R(1), R(0), 0);
  CHECK(pc.K0 == R(1));
  CHECK(pc.C0 == R(0));
  CHECK(pc.K1 == R(1));
  CHECK(pc.C1 == R(3));
  PredictedConstants q = predict_constants(R(2), R(1), 3);
  CHECK(q.K0 == R(4));
  CHECK(q.C0 == R(2 * 2 * 3 + 2 * 2 * 1));
  CHECK(q.C1 == R(3 * 4 + 2 * 16));
}

TEST_CASE("square wraps twice around the loop") {
  Presentation f1 = presets::free_group(1);
  CoreMap m = build_core_map(folded(f1, words(f1, {"aa"})), folded(f1, words(f1, {"a"})), 6);
  CHECK(m.D == 0);
  CHECK(m.edge_paths.size() == 2);
  long total = 0;
  for (const EdgePath& e : m.edge_paths) total += path_length(m.target, e);
  CHECK(total == 2);
  CHECK(map_is_surjective(m));
  MapQi q = measure_map_qi(m, 6);
  CHECK(q.empirical.K == R(1));
  CHECK(q.empirical.C == R(0));
  CHECK(q.predicted.C1 == R(3));
  CHECK(q.within_step1);
  CHECK(q.within_step2);
  CHECK(size_bound_check(m));
  EquivarianceReport eq = check_equivariance(m, 4);
  CHECK(eq.checks > 0);
  CHECK(eq.failures == 0);
}

TEST_CASE("a petal into the rose is not surjective") {
  Presentation p = presets::free_group(2);
  CoreMap m = build_core_map(folded(p, words(p, {"a"})), folded(p, words(p, {"a", "b"})), 6);
  CHECK_FALSE(map_is_surjective(m));
  CHECK_ERROR(size_bound_check(m), NotSurjective);
}

TEST_CASE("identity maps") {
  Presentation p = presets::free_group(2);
  MetricCore c = folded(p, words(p, {"ab", "ab'"}));
  CoreMap m = build_core_map(c, c, 6);
  CHECK(m.D == 0);
  CHECK(map_is_surjective(m));
  for (const EdgePath& e : m.edge_paths) CHECK(path_length(m.target, e) == 1);
  MapQi q = measure_map_qi(m, 5);
  CHECK(q.empirical.K == R(1));
  CHECK(q.empirical.C == R(0));
  CHECK(size_bound_check(m));
  CHECK(check_equivariance(m, 4).failures == 0);
}

TEST_CASE("maps between random nested free cores") {
  Presentation p = presets::free_group(2);
  std::mt19937_64 rng(41);
  int built = 0;
  for (int i = 0; i < 12; ++i) {
    std::vector<Word> top = oracle::random_tuple(rng, 2, 2, 3);
    std::vector<Word> sub;
    for (int k = 0; k < 2; ++k) {
      Word w;
      for (int j = 0; j < 2; ++j) {
        const Word& g = top[rng() % top.size()];
        w = oracle::reduce(oracle::cat(w, rng() % 2 ? g : oracle::inv(g)));
      }
      if (!w.empty()) sub.push_back(w);
    }
    if (sub.empty()) continue;
    MetricCore s = folded(p, sub), t = folded(p, top);
    CoreMap m = build_core_map(s, t, 6);
    ++built;
    CHECK(m.D == 0);
    bool classical = is_surjective(core_morphism(subgroup_core(sub), subgroup_core(top)), subgroup_core(top));
    CHECK(map_is_surjective(m) == classical);
    CHECK(check_equivariance(m, 3).failures == 0);
    MapQi q = measure_map_qi(m, 4);
    CHECK(q.within_step1);
    CHECK(q.within_step2);
    if (classical) CHECK(size_bound_check(m));
  }
  CHECK(built > 6);
}

}
