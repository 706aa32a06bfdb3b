#include "oracles.hpp"
#include "support.hpp"

#include <arbor/serialize.hpp>

using namespace arbor;

TEST_SUITE("serialize") {

TEST_CASE("rationals") {
  for (Rational r : {R(0), R(3), R(-2), R(7, 2), R(-1, 3)}) CHECK(rational_from_json(rational_json(r)) == r);
  CHECK(rational_json(R(4, 2)).is_number_integer());
  CHECK(rational_from_json(Json("5/10")) == R(1, 2));
  CHECK_ERROR(rational_from_json(Json("x/2")), ParseError);
  CHECK_ERROR(rational_from_json(Json(true)), ParseError);
}

TEST_CASE("Stallings graphs round trip") {
  Presentation p = presets::free_group(2);
  std::mt19937_64 rng(53);
  for (int i = 0; i < 50; ++i) {
    StallingsGraph g = subgroup_core(oracle::random_tuple(rng, 2, 3, 5));
    StallingsGraph back = stallings_from_json(p, Json::parse(to_json(p, g).dump()));
    CHECK(back.vertices == g.vertices);
    CHECK(back.edges == g.edges);
    CHECK(back.base == g.base);
  }
  CHECK(to_dot(p, subgroup_core(words(p, {"a"}))).find("digraph") != std::string::npos);
}

TEST_CASE("metric cores round trip") {
  Presentation s = presets::surface_group(2);
  std::mt19937_64 rng(59);
  for (int i = 0; i < 50; ++i) {
    MetricCore c = core_from_generators(s, oracle::random_tuple(rng, 4, 3, 4));
    Json j = to_json(c);
    MetricCore back = core_from_json(s, Json::parse(j.dump()));
    CHECK(to_json(back) == j);
    CHECK(size(back) == size(c));
    CHECK(back.basepoint == c.basepoint);
  }
}

TEST_CASE("core JSON layout") {
  Presentation p = presets::free_group(2);
  Json j = to_json(core_from_generators(p, words(p, {"ab"})));
  CHECK(j.at("vertices").size() == 2);
  CHECK(j.at("vertices")[1].at("anchor") == "a");
  CHECK(j.at("edges")[0].at("label") == "a");
  CHECK(j.at("edges")[0].at("length") == 1);
  CHECK(j.at("basepoint") == 0);
  CHECK(to_dot(core_from_generators(p, words(p, {"ab"}))).find("[label=\"a (1)\"]") != std::string::npos);
}

TEST_CASE("malformed cores are rejected") {
  Presentation p = presets::free_group(2);
  Json j = to_json(core_from_generators(p, words(p, {"ab"})));
  Json bad_len = j;
  bad_len["edges"][0]["length"] = 3;
  CHECK_ERROR(core_from_json(p, bad_len), ParseError);
  Json bad_end = j;
  bad_end["edges"][0]["to"] = 9;
  CHECK_ERROR(core_from_json(p, bad_end), ParseError);
  Json bad_id = j;
  bad_id["vertices"][1]["id"] = 5;
  CHECK_ERROR(core_from_json(p, bad_id), ParseError);
  Json bad_gen = j;
  bad_gen["edges"][0]["label"] = "z";
  CHECK_THROWS(core_from_json(p, bad_gen));
}

TEST_CASE("quasi-isometry estimates round trip") {
  QiEstimate q;
  q.K = R(3, 2);
  q.C = R(5);
  q.radius = 4;
  q.witness = {1, 2};
  q.pareto = {{R(1), R(5)}, {R(3, 2), R(2)}};
  q.samples = 17;
  QiEstimate back = qi_from_json(Json::parse(to_json(q).dump()));
  CHECK(back.K == q.K);
  CHECK(back.C == q.C);
  CHECK(back.pareto == q.pareto);
}

TEST_CASE("chain records round trip") {
  Presentation p = presets::free_group(2);
  ChainRecord r = run_chain_free(p, {words(p, {"aa", "b"}), words(p, {"a", "b"}), words(p, {"a", "b"})});
  ChainRecord back = chain_record_from_json(p, Json::parse(to_json(p, r).dump()));
  CHECK(back.tuples == r.tuples);
  CHECK(back.edge_counts == r.edge_counts);
  CHECK(back.surjective == r.surjective);
  CHECK(back.stabilization_index == r.stabilization_index);
  ChainRecord open = run_chain_free(p, {words(p, {"aa"}), words(p, {"a"})});
  CHECK(to_json(p, open).at("stabilization_index") == "not stabilized within horizon");
}

TEST_CASE("word lists round trip") {
  Presentation h = presets::hnn_example();
  std::vector<Word> ws = words(h, {"t'at", "ab", "1"});
  CHECK(words_from_json(h, words_json(h, ws)) == ws);
}

}
