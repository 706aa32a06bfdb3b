// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.
#include "oracles.hpp"

#include <arbor/cayley.hpp>
#include <arbor/chains.hpp>
#include <arbor/core_maps.hpp>
#include <arbor/displacement.hpp>
#include <arbor/metric_core.hpp>
#include <arbor/stallings.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>

using namespace arbor;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Rational R(long long n, long long d = 1) { return Rational(n, d); }

Word random_product(std::mt19937_64& rng, const std::vector<Word>& gens, int factors) {
  Word w;
  for (int i = 0; i < factors; ++i) {
    const Word& g = gens[rng() % gens.size()];
    w = oracle::reduce(oracle::cat(w, rng() % 2 ? g : oracle::inv(g)));
  }
  return w;
}

// Words inside the sub-tuple's subgroup and outside it, half and half.
std::vector<Word> probe_words(std::mt19937_64& rng, const std::vector<Word>& gens, int n) {
  std::vector<Word> out;
  for (int i = 0; i < n; ++i) {
    if (i % 2 == 0) out.push_back(oracle::random_reduced(rng, 2, 1 + static_cast<int>(rng() % 8)));
    else out.push_back(random_product(rng, gens, 1 + static_cast<int>(rng() % 3)));
  }
  return out;
}

std::vector<Word> loop_basis(const MetricCore& c) {
  SpanningTree t = spanning_tree(c, *c.basepoint);
  const Word& a = c.vertices[*c.basepoint].anchor;
  std::vector<Word> out;
  for (int k = 0; k < c.edge_count(); ++k)
    if (!t.tree_edge[k])
      out.push_back(normal_form(c.group(), concat(a, concat(path_label(c, basis_loop(c, t, k)), inverse(a)))));
  return out;
}

Outcome folding_oracle() {
  Presentation p = presets::free_group(2);
  std::mt19937_64 rng(101);
  int bad = 0;
  for (int i = 0; i < 50; ++i) {
    std::vector<Word> gens = oracle::random_tuple(rng, 2, 3, 6);
    FoldResult f = fold_to_minimal(core_from_generators(p, gens), 6, 6, 500);
    bool ok = !f.budget_exhausted && size(f.core) == oracle::naive_fold_edges(gens);
    if (ok && f.core.edge_count() > 0) {
      QiEstimate q = measure_qi(f.core, 8);
      ok = q.K == R(1) && q.C == R(0);
    }
    bad += !ok;
  }
  return {bad == 0, "50 tuples, " + std::to_string(bad) + " mismatches"};
}

Outcome membership_oracle() {
  std::mt19937_64 rng(102);
  int words = 0, bad = 0;
  while (words < 1000) {
    std::vector<Word> gens = oracle::random_tuple(rng, 2, 3, 4);
    StallingsGraph g = subgroup_core(gens);
    int maxlen = 0;
    for (const Word& w : gens) maxlen = std::max(maxlen, static_cast<int>(w.size()));
    auto prods = oracle::products(gens, 4);
    auto ball6 = oracle::subgroup_ball(gens, 6, 2 * maxlen);
    for (int k = 0; k < 50 && words < 1000; ++k, ++words) {
      Word w = k % 2 ? random_product(rng, gens, 1 + static_cast<int>(rng() % 4))
                     : oracle::random_reduced(rng, 2, static_cast<int>(rng() % 7));
      bool in_oracle = prods.count(w) > 0 || ball6.count(w) > 0;
      bool got = membership(g, w);
      // the closure decides every word up to length 6; longer products are positives
      if (w.size() <= 6 ? got != in_oracle : (in_oracle && !got)) ++bad;
    }
  }
  return {bad == 0, "1000 words, " + std::to_string(bad) + " disagreements"};
}

Outcome accf_chains() {
  Presentation p = presets::free_group(2);
  std::mt19937_64 rng(103);
  int built = 0, bad = 0;
  while (built < 100) {
    std::vector<Word> top = basis(subgroup_core(oracle::random_tuple(rng, 2, 2, 3)));
    if (top.size() != 2) continue;
    Chain rev{top, top};
    const int terms = 2 + static_cast<int>(rng() % 4);
    for (int tries = 0; static_cast<int>(rev.size()) < terms + 2 && tries < 200; ++tries) {
      Tuple down;
      for (int k = 0; k < 20 && down.size() < 2; ++k) {
        Word w = random_product(rng, rev.back(), 1 + static_cast<int>(rng() % 2));
        if (!w.empty() && w.size() <= 6) down.push_back(w);
      }
      if (down.size() == 2) rev.push_back(down);
    }
    if (static_cast<int>(rev.size()) < terms + 2) continue;
    Chain chain(rev.rbegin(), rev.rend());
    ++built;
    ReducedChain red = reduce_chain(p, chain);
    ChainRecord rec = run_chain_free(p, red.chain, false);
    bool ok = rec.edges_nonincreasing && rec.stabilized;
    for (bool s : rec.surjective) ok = ok && s;
    bad += !ok;
  }
  return {bad == 0, "100 chains, " + std::to_string(bad) + " failures"};
}

Outcome hnn_ascent() {
  Presentation h = presets::hnn_example();
  std::vector<bool> s = verify_strict(h, hnn_chain(h, 4));
  bool ok = s.size() == 4;
  for (bool b : s) ok = ok && b;
  bool growth = true;
  for (int i = 0; i <= 10; ++i)
    growth = growth && apply_endomorphism(h, h.parse_word("a"), i).size() == (std::size_t{1} << i);
  return {ok && growth, std::string("strict ") + (ok ? "yes" : "no") + ", growth 2^i " + (growth ? "yes" : "no")};
}

Outcome delta_checks() {
  bool free_zero = true;
  for (int r = 1; r <= 5; ++r) free_zero = free_zero && estimate_delta(ball(presets::free_group(2), r)) == R(0);
  std::vector<Rational> z;
  for (int r = 2; r <= 4; ++r) z.push_back(estimate_delta(ball(presets::z2(), r)));
  bool grows = z[0] <= z[1] && z[1] <= z[2] && z[0] < z[2];
  std::ostringstream os;
  os << "free zero " << (free_zero ? "yes" : "no") << ", Z^2 delta R=2..4: " << z[0] << " " << z[1] << " " << z[2];
  return {free_zero && grows, os.str()};
}

Outcome dehn_soundness() {
  Presentation s = presets::surface_group(2);
  oracle::RelatorClosure closure(4, s.relators(), 7);
  std::unordered_map<int, Word> nf_of;
  std::unordered_map<Word, int, WordHash> cls_of;
  int bad = 0;
  std::size_t n = 0;
  for (const Word& w : closure.words()) {
    if (w.size() > 6) continue;
    ++n;
    int c = closure.cls(w);
    Word nf = normal_form(s, w);
    auto [it, fresh] = nf_of.emplace(c, nf);
    if (it->second != nf) ++bad;
    auto [jt, fresh2] = cls_of.emplace(nf, c);
    if (jt->second != c) ++bad;
  }
  bool sc = check_small_cancellation(s, R(1, 6));
  return {bad == 0 && sc, std::to_string(n) + " words, " + std::to_string(bad) + " disagreements, C'(1/6) " +
                              (sc ? "yes" : "no")};
}

Outcome improvement_soundness() {
  Presentation p = presets::free_group(2);
  std::mt19937_64 rng(107);
  int moves = 0, bad = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<Word> gens = oracle::random_tuple(rng, 2, 3, 6);
    MetricCore c = core_from_generators(p, gens);
    StallingsGraph before = subgroup_core(loop_basis(c));
    for (int k = 0; k < c.edge_count(); ++k) {
      SearchResult r = search_improvement(c, k, 4, 6);
      if (!r.move) continue;
      ++moves;
      MetricCore next = apply_move(c, *r.move);
      bool ok = size(next) < size(c) && rank(next) == rank(c);
      StallingsGraph after = subgroup_core(loop_basis(next));
      for (const Word& w : probe_words(rng, gens, 100)) ok = ok && membership(before, w) == membership(after, w);
      bad += !ok;
    }
  }
  return {bad == 0 && moves > 0, "200 cores, " + std::to_string(moves) + " moves, " + std::to_string(bad) + " unsound"};
}

Outcome core_map_bounds() {
  Presentation p = presets::free_group(2);
  std::mt19937_64 rng(108);
  int pairs = 0, bad = 0, surjective = 0;
  while (pairs < 20) {
    std::vector<Word> top = oracle::random_tuple(rng, 2, 2, 3);
    std::vector<Word> sub;
    for (int k = 0; k < 2; ++k) {
      Word w = random_product(rng, top, 1 + static_cast<int>(rng() % 2));
      if (!w.empty()) sub.push_back(w);
    }
    if (sub.empty()) continue;
    ++pairs;
    MetricCore s = fold_to_minimal(core_from_generators(p, sub), 6, 6, 200).core;
    MetricCore t = fold_to_minimal(core_from_generators(p, top), 6, 6, 200).core;
    CoreMap m = build_core_map(s, t, 6);
    bool ok = check_equivariance(m, 4).failures == 0;
    StallingsGraph gs = subgroup_core(sub), gt = subgroup_core(top);
    bool classical = is_surjective(core_morphism(gs, gt), gt);
    ok = ok && map_is_surjective(m) == classical;
    MapQi q = measure_map_qi(m, 5);
    PredictedConstants pc = predict_constants(std::max(m.source_qi.K, m.target_qi.K),
                                              std::max(m.source_qi.C, m.target_qi.C), m.D);
    ok = ok && q.within_step1 && q.within_step2 && pc.K0 == q.predicted.K0 && pc.C1 == q.predicted.C1;
    if (classical) {
      ++surjective;
      ok = ok && size_bound_check(m);
    }
    bad += !ok;
  }
  return {bad == 0, "20 pairs (" + std::to_string(surjective) + " surjective), " + std::to_string(bad) + " failures"};
}

Outcome displacement() {
  Presentation p = presets::free_group(2);
  std::mt19937_64 rng(109);
  int cores = 0, bad = 0;
  while (cores < 50) {
    std::vector<Word> gens = oracle::random_tuple(rng, 2, 3, 6);
    MetricCore c = fold_to_minimal(core_from_generators(p, gens), 6, 6, 500).core;
    if (c.edge_count() == 0) continue;
    ++cores;
    QiEstimate q = measure_qi(c, 6);
    DisplacementCheck d = displacement_bound_check(c, q.K, q.C);
    bad += !(q.K == R(1) && q.C == R(0) && d.holds && d.loops_within_twice_sigma);
  }
  int classes = enumerate_bounded(p, 3, 1).classes;
  int expect = oracle::cyclic_subgroups(2, 3);
  return {bad == 0 && classes == expect, "50 cores, " + std::to_string(bad) + " failures; subgroups " +
                                             std::to_string(classes) + " vs " + std::to_string(expect)};
}

Outcome edge_bound() {
  std::string detail;
  bool ok = true;
  for (int r = 1; r <= 3; ++r) {
    int got = max_edges(r), expect = oracle::max_coarse_edges(r);
    ok = ok && got == expect;
    detail += "n(" + std::to_string(r) + ")=" + std::to_string(got) + " ";
  }
  return {ok, detail + "matches enumeration"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"folding matches classical Stallings cores", folding_oracle},
      {"membership matches closure enumeration", membership_oracle},
      {"reduced constant-rank chains stabilize", accf_chains},
      {"HNN chain strictly ascends", hnn_ascent},
      {"delta estimates", delta_checks},
      {"Dehn normal form matches relator closure", dehn_soundness},
      {"improvement moves are sound", improvement_soundness},
      {"core map constants and size bound", core_map_bounds},
      {"displacement bound and subgroup count", displacement},
      {"coarse graph edge bound", edge_bound},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
