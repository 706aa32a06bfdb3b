#ifndef ARBOR_STALLINGS_HPP
#define ARBOR_STALLINGS_HPP

#include <arbor/group.hpp>

#include <optional>
#include <vector>

namespace arbor {

/// Based graph with edges labeled by positive generators.
struct StallingsGraph {
  struct Edge {
    int from;
    int to;
    int gen;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  int vertices = 1;
  std::vector<Edge> edges;
  int base = 0;
  bool folded = false;

  int edge_count() const { return static_cast<int>(edges.size()); }
};

/// Rose of subdivided petals; empty words are dropped.
StallingsGraph from_generators(const std::vector<Word>& gens);
/// Folds (lowest vertex id first) and trims non-base leaves.
StallingsGraph fold(StallingsGraph g);
bool is_folded(const StallingsGraph& g);
bool is_connected(const StallingsGraph& g);
bool membership(const StallingsGraph& g, std::span<const Letter> w);
int rank(const StallingsGraph& g);
/// Relabels vertices in breadth-first order from the base, following
/// edges in letter order; equal for isomorphic folded graphs.
StallingsGraph canonical(const StallingsGraph& g);
/// Free basis read off a breadth-first spanning tree.
std::vector<Word> basis(const StallingsGraph& g);
/// Core of the subgroup generated by gens: fold of the rose.
StallingsGraph subgroup_core(const std::vector<Word>& gens);

/// Label-preserving based map from g1 to g2.
struct CoreMorphism {
  std::vector<int> vertex_map;
  /// For each g1 edge, the g2 edge it lands on.
  std::vector<int> edge_map;
};

/// Throws NotSubgroup (naming the failing basis element) when pi1(g1) is not in pi1(g2).
CoreMorphism core_morphism(const StallingsGraph& g1, const StallingsGraph& g2);
bool is_surjective(const CoreMorphism& m, const StallingsGraph& g2);

struct FreeFactorWitness {
  /// Basis of the image subgraph's fundamental group.
  std::vector<Word> factor;
  /// Remaining basis elements; factor + complement is a basis of pi1(g2).
  std::vector<Word> complement;
};

/// For a non-surjective morphism: the image subgraph's group, extended to a
/// basis of pi1(g2) through a spanning tree containing one of the subgraph.
FreeFactorWitness free_factor_witness(const CoreMorphism& m, const StallingsGraph& g2);

}  // namespace arbor

#endif
