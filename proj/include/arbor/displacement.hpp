#ifndef ARBOR_DISPLACEMENT_HPP
#define ARBOR_DISPLACEMENT_HPP

#include <arbor/metric_core.hpp>

#include <vector>

namespace arbor {

/// Sum of the word lengths of the elements.
int tau(const Presentation& p, const std::vector<Word>& A);

/// One loop per non-tree edge of the breadth-first spanning tree at the
/// basepoint, as normal forms. Throws NotBased.
std::vector<Word> spanning_tree_basis(const MetricCore& c);

struct GeneratingTuple {
  std::vector<Word> words;
  int tau = 0;
  int class_id = 0;
};

struct Enumeration {
  std::vector<GeneratingTuple> tuples;
  int classes = 0;
  /// Classes are exact subgroups (free groups) rather than sorted tuples.
  bool exact_dedup = false;
};

/// Ordered r-tuples of nontrivial elements with tau at most alpha.
Enumeration enumerate_bounded(const Presentation& p, int alpha, int r, long cap = 2'000'000);

struct DisplacementCheck {
  int tau = 0;
  Rational bound{0};
  bool holds = false;
  /// Longest basis loop in the graph, before shortening to a geodesic.
  long longest_loop = 0;
  bool loops_within_twice_sigma = true;
};

/// tau(spanning_tree_basis) <= 2 K r sigma + r C.
DisplacementCheck displacement_bound_check(const MetricCore& c, Rational K, Rational C);

}  // namespace arbor

#endif
