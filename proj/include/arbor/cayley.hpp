#ifndef ARBOR_CAYLEY_HPP
#define ARBOR_CAYLEY_HPP

#include <arbor/group.hpp>

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace arbor {

struct BallOptions {
  std::size_t max_vertices = 200000;
  bool distances = true;
};

/// Radius-R ball around 1 in the Cayley graph. Vertices are canonical normal
/// forms in breadth-first shortlex order; distances are group distances.
class CayleyBall {
public:
  struct Edge {
    int from;
    int to;
    int gen;
  };

  const Presentation& presentation() const { return *p_; }
  int radius() const { return radius_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<Word>& vertices() const { return vertices_; }
  const Word& vertex(int i) const { return vertices_.at(i); }
  const std::vector<Edge>& edges() const { return edges_; }
  int depth(int i) const { return depth_.at(i); }
  std::optional<int> find(std::span<const Letter> w) const;

  bool has_distances() const { return !dist_.empty(); }
  /// Group distance |normal_form(x^-1 y)|.
  int distance(int i, int j) const;
  const std::vector<std::int16_t>& distance_matrix() const { return dist_; }

  friend CayleyBall ball(const Presentation& p, int R, const BallOptions& opts);

private:
  std::shared_ptr<const Presentation> p_;
  int radius_ = 0;
  std::vector<Word> vertices_;
  std::vector<int> depth_;
  std::unordered_map<Word, int, WordHash> index_;
  std::vector<Edge> edges_;
  std::vector<std::int16_t> dist_;
};

CayleyBall ball(const Presentation& p, int R, const BallOptions& opts = {});

/// Distance in the group between two elements.
int group_distance(const Presentation& p, std::span<const Letter> x, std::span<const Letter> y);

/// (x|y)_z = (d(x,z) + d(y,z) - d(x,y)) / 2 over ball vertex indices.
Rational gromov_product(const CayleyBall& b, int x, int y, int z);
Rational gromov_product(const Presentation& p, std::span<const Letter> x,
                        std::span<const Letter> y, std::span<const Letter> z);

/// Smallest delta for which the four-point condition holds on every
/// quadruple of ball vertices.
Rational estimate_delta(const CayleyBall& b);

/// One sampled pair for quasi-isometry measurement.
struct QiSample {
  int dom = 0;
  int range = 0;
  int i = 0;
  int j = 0;
};

struct QiEstimate {
  Rational K{1};
  Rational C{0};
  int radius = 0;
  std::pair<int, int> witness{0, 0};
  /// (K, minimal C) pairs, none dominated by another.
  std::vector<std::pair<Rational, Rational>> pareto;
  std::size_t samples = 0;
};

/// Minimal C with (1/K)dom - C <= range <= K dom + C on every sample;
/// the witness is the sample attaining it.
std::pair<Rational, std::pair<int, int>> min_additive(const std::vector<QiSample>& samples,
                                                      Rational K);
/// Multiplicative optimum: the largest ratio dom/range or range/dom over
/// samples with both sides positive (at least 1).
Rational max_ratio(const std::vector<QiSample>& samples);
std::vector<std::pair<Rational, Rational>> pareto_front(const std::vector<QiSample>& samples);
/// K fixed to the multiplicative optimum, C minimal for that K.
QiEstimate estimate_from_samples(const std::vector<QiSample>& samples, int radius);

struct LocalCheck {
  bool ok = true;
  std::optional<std::pair<int, int>> witness;
};

/// Path is a list of ball vertex indices, consecutive ones adjacent.
LocalCheck is_local_quasigeodesic(const CayleyBall& b, const std::vector<int>& path, int L,
                                  Rational K, Rational C);
QiEstimate quasigeodesic_constants(const CayleyBall& b, const std::vector<int>& path);

/// Ball vertices along the path read by w from x; throws DistanceUnknown if it leaves the ball.
std::vector<int> path_in_ball(const CayleyBall& b, std::span<const Letter> x,
                              std::span<const Letter> w);

}  // namespace arbor

#endif
