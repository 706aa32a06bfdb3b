#include <arbor/chains.hpp>
#include <arbor/stallings.hpp>

#include <algorithm>

namespace arbor {

Chain hnn_chain(const Presentation& p, int n) {
  if (p.backend() != Backend::Hnn) throw Error(ErrorCode::InvalidArgument, "hnn_chain needs an hnn presentation");
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative chain length");
  const int t = *p.stable_letter();
  Chain out;
  for (int i = 0; i <= n; ++i) {
    Tuple tuple;
    for (int g = 0; g < p.rank(); ++g) {
      if (g == t) continue;
      Word w(static_cast<std::size_t>(i), Letter{t, true});
      w.push_back({g, false});
      w.insert(w.end(), static_cast<std::size_t>(i), Letter{t, false});
      tuple.push_back(normal_form(p, w));
    }
    out.push_back(std::move(tuple));
  }
  return out;
}

namespace {

struct Conjugate {
  int power;  // w = t^-power u t^power
  Word base;
};

Conjugate split_conjugate(const Presentation& p, const Word& w) {
  const int t = *p.stable_letter();
  Word nf = normal_form(p, w);
  int i = 0, j = 0;
  while (i < static_cast<int>(nf.size()) && nf[i] == Letter{t, true}) ++i;
  while (j < static_cast<int>(nf.size()) - i && nf[nf.size() - 1 - j] == Letter{t, false}) ++j;
  Word u(nf.begin() + i, nf.end() - j);
  bool clean = std::none_of(u.begin(), u.end(), [&](Letter l) { return l.gen == t; });
  if (i != j || !clean)
    throw Error(ErrorCode::BackendCannotDecide,
                "element " + p.format(w) + " is not a conjugate of a base element by a power of the stable letter");
  return {i, u};
}

// Words of the base free group representing the tuple after conjugating
// every term by t^M.
std::vector<Tuple> lift_to_base(const Presentation& p, const Chain& chain) {
  std::vector<std::vector<Conjugate>> parts;
  int M = 0;
  for (const Tuple& tuple : chain) {
    std::vector<Conjugate> row;
    for (const Word& w : tuple) {
      row.push_back(split_conjugate(p, w));
      M = std::max(M, row.back().power);
    }
    parts.push_back(std::move(row));
  }
  std::vector<Tuple> out;
  for (const auto& row : parts) {
    Tuple tuple;
    for (const auto& c : row) tuple.push_back(apply_endomorphism(p, c.base, M - c.power));
    out.push_back(std::move(tuple));
  }
  return out;
}

void rank_guard(const Chain& chain) {
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (chain[i].size() != chain[0].size())
      throw Error(ErrorCode::NotNested, "rank guard: term " + std::to_string(i) + " has " +
                                            std::to_string(chain[i].size()) + " generators, expected " +
                                            std::to_string(chain[0].size()));
}

// Flags H_i < H_{i+1} strictly, for chains of words in a free group.
std::vector<bool> strict_free(const Presentation& p, const Chain& chain) {
  std::vector<bool> out;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    StallingsGraph next = subgroup_core(chain[i + 1]);
    for (const Word& w : chain[i])
      if (!membership(next, w))
        throw Error(ErrorCode::NotNested, "term " + std::to_string(i) + " element " + p.format(w) +
                                              " is not in term " + std::to_string(i + 1));
    StallingsGraph cur = subgroup_core(chain[i]);
    out.push_back(std::any_of(chain[i + 1].begin(), chain[i + 1].end(),
                              [&](const Word& w) { return !membership(cur, w); }));
  }
  return out;
}

void require_free(const Presentation& p) {
  if (p.backend() != Backend::Free)
    throw Error(ErrorCode::BackendCannotDecide, "chain folding needs a free ambient group");
}

CoreMorphism nested_morphism(const Presentation& p, const StallingsGraph& g1, const StallingsGraph& g2,
                             std::size_t i) {
  try {
    return core_morphism(g1, g2);
  } catch (const Error&) {
    for (const Word& w : basis(g1))
      if (!membership(g2, w))
        throw Error(ErrorCode::NotNested, "term " + std::to_string(i) + " element " + p.format(w) +
                                              " is not in term " + std::to_string(i + 1));
    throw;
  }
}

}  // namespace

std::vector<bool> verify_strict(const Presentation& p, const Chain& chain) {
  rank_guard(chain);
  switch (p.backend()) {
    case Backend::Free: return strict_free(p, chain);
    case Backend::Hnn: {
      std::vector<Tuple> base = lift_to_base(p, chain);
      Presentation f = Presentation::free(p.generators());
      return strict_free(f, base);
    }
    default: throw Error(ErrorCode::BackendCannotDecide, "strictness is decided in free and hnn backends only");
  }
}

ChainRecord run_chain_free(const Presentation& p, const Chain& chain, bool constant_rank) {
  require_free(p);
  if (constant_rank) rank_guard(chain);
  ChainRecord rec;
  rec.tuples = chain;
  std::vector<StallingsGraph> cores;
  for (const Tuple& t : chain) {
    cores.push_back(canonical(subgroup_core(t)));
    rec.edge_counts.push_back(cores.back().edge_count());
    rec.ranks.push_back(rank(cores.back()));
  }
  for (std::size_t i = 0; i + 1 < cores.size(); ++i) {
    CoreMorphism m = nested_morphism(p, cores[i], cores[i + 1], i);
    rec.surjective.push_back(is_surjective(m, cores[i + 1]));
    rec.strict.push_back(std::any_of(chain[i + 1].begin(), chain[i + 1].end(),
                                     [&](const Word& w) { return !membership(cores[i], w); }));
  }
  if (std::all_of(rec.surjective.begin(), rec.surjective.end(), [](bool b) { return b; }))
    for (std::size_t i = 0; i + 1 < cores.size(); ++i)
      if (rec.edge_counts[i + 1] > rec.edge_counts[i]) rec.edges_nonincreasing = false;
  if (!cores.empty()) {
    int s = static_cast<int>(cores.size());
    while (s > 1 && cores[s - 2].edges == cores.back().edges && cores[s - 2].vertices == cores.back().vertices) --s;
    rec.stabilization_index = s;
    rec.stabilized = s < static_cast<int>(cores.size());
  }
  return rec;
}

ReducedChain reduce_chain(const Presentation& p, const Chain& chain) {
  require_free(p);
  ReducedChain out;
  out.chain = chain;
  auto ranks = [&] {
    std::vector<int> r;
    for (const Tuple& t : out.chain) r.push_back(rank(subgroup_core(t)));
    return r;
  };
  out.rank_history.push_back(ranks());
  for (std::size_t i = 0; i + 1 < out.chain.size(); ++i) {
    StallingsGraph g1 = subgroup_core(out.chain[i]);
    StallingsGraph g2 = subgroup_core(out.chain[i + 1]);
    CoreMorphism m = nested_morphism(p, g1, g2, i);
    if (is_surjective(m, g2)) continue;
    out.chain[i + 1] = free_factor_witness(m, g2).factor;
    out.replaced.push_back(static_cast<int>(i + 1));
    out.rank_history.push_back(ranks());
  }
  return out;
}

}  // namespace arbor
