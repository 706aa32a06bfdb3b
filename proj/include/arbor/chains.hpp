#ifndef ARBOR_CHAINS_HPP
#define ARBOR_CHAINS_HPP

#include <arbor/group.hpp>

#include <optional>
#include <vector>

namespace arbor {

using Tuple = std::vector<Word>;
using Chain = std::vector<Tuple>;

/// Conjugates t^-i x t^i of the base generators for i = 0..n, as normal forms.
Chain hnn_chain(const Presentation& p, int n);

/// Entry i is true when H_i is a proper subgroup of H_{i+1}. Throws NotNested
/// when tuple sizes differ or containment fails, and BackendCannotDecide
/// outside the free and HNN backends.
std::vector<bool> verify_strict(const Presentation& p, const Chain& chain);

struct ChainRecord {
  Chain tuples;
  std::vector<int> edge_counts;
  std::vector<int> ranks;
  std::vector<bool> surjective;  // step i: core(H_i) -> core(H_{i+1})
  std::vector<bool> strict;
  bool edges_nonincreasing = true;
  /// 1-based index from which every core is isomorphic to the last one.
  int stabilization_index = 1;
  /// The last core repeats at least once.
  bool stabilized = false;
  /// Ranks after each replacement made by reduce_chain.
  std::vector<std::vector<int>> rank_history;
};

/// Folds every term and follows consecutive core morphisms. Throws NotNested,
/// naming the first element outside the next term. With constant_rank set,
/// tuples of different sizes are rejected.
ChainRecord run_chain_free(const Presentation& p, const Chain& chain, bool constant_rank = true);

struct ReducedChain {
  Chain chain;
  std::vector<int> replaced;  // indices of replaced terms
  std::vector<std::vector<int>> rank_history;
};

/// Replaces H_{i+1} by the free factor carried by the image of core(H_i)
/// whenever the morphism is not surjective.
ReducedChain reduce_chain(const Presentation& p, const Chain& chain);

}  // namespace arbor

#endif
