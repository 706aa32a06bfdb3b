#ifndef ARBOR_CORE_MAPS_HPP
#define ARBOR_CORE_MAPS_HPP

#include <arbor/metric_core.hpp>

namespace arbor {

/// Largest distance from a sampled source image point to the target image.
/// Throws NotNested (free groups) or RadiusInsufficient when the nearest
/// target point sits on the window boundary.
int images_close(const MetricCore& source, const MetricCore& target, int radius);

struct VertexAssignment {
  int target_vertex;
  Word target_point;  // iota of the image of the source vertex's domain lift
};

struct PredictedConstants {
  Rational K{1}, C{0};
  int D = 0;
  Rational K0{1}, C0{0};  // K^2, 2KD + 2KC
  Rational K1{1}, C1{0};  // K0, 3 K0 + 2 C0
};

PredictedConstants predict_constants(Rational K, Rational C, int D);

/// Map between based cores of nested subgroups, built on the lift of a
/// breadth-first spanning tree of the source.
struct CoreMap {
  MetricCore source;  // subdivided to unit edges
  MetricCore target;
  std::vector<Word> domain_points;  // iota of each source vertex's domain lift
  std::vector<VertexAssignment> vertex_map;
  /// Target edge path for each source edge, starting at the image of the tail's domain lift.
  std::vector<EdgePath> edge_paths;
  int D = 0;
  QiEstimate source_qi;
  QiEstimate target_qi;
  PredictedConstants predicted;
};

CoreMap build_core_map(const MetricCore& source, const MetricCore& target, int radius);
bool map_is_surjective(const CoreMap& m);

struct MapQi {
  QiEstimate empirical;
  PredictedConstants predicted;
  bool within_step1 = true;  // every sample obeys (K0, C0)
  bool within_step2 = true;  // every sample obeys (K', C')
};

MapQi measure_map_qi(const CoreMap& m, int radius);

struct EquivarianceReport {
  std::size_t checks = 0;
  std::size_t failures = 0;
};

/// Follows source paths through the per-edge target paths and compares
/// psi(g x) with g psi(x) for every basis generator g and window node x.
EquivarianceReport check_equivariance(const CoreMap& m, int radius);

/// sigma(target) <= K' sigma(source) + C'; throws NotSurjective.
bool size_bound_check(const CoreMap& m);

}  // namespace arbor

#endif
