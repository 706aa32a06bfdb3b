#include <arbor/cayley.hpp>

#include <algorithm>
#include <limits>

namespace arbor {

std::optional<int> CayleyBall::find(std::span<const Letter> w) const {
  Word nf = normal_form(*p_, w);
  auto it = index_.find(nf);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int CayleyBall::distance(int i, int j) const {
  const int n = static_cast<int>(vertices_.size());
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw Error(ErrorCode::DistanceUnknown, "vertex outside the ball");
  if (!dist_.empty()) return dist_[static_cast<std::size_t>(i) * n + j];
  return group_distance(*p_, vertices_[i], vertices_[j]);
}

int group_distance(const Presentation& p, std::span<const Letter> x, std::span<const Letter> y) {
  if (p.backend() == Backend::Free) {
    // reduced words: |x| + |y| - 2 |common prefix|
    Word a = free_reduce(x), b = free_reduce(y);
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return static_cast<int>(a.size() + b.size() - 2 * k);
  }
  return geodesic_length(p, concat(inverse(x), y));
}

CayleyBall ball(const Presentation& p, int R, const BallOptions& opts) {
  if (R < 0) throw Error(ErrorCode::InvalidArgument, "negative radius");
  CayleyBall b;
  b.p_ = std::make_shared<const Presentation>(p);
  b.radius_ = R;
  auto add = [&](Word w, int depth) {
    if (b.vertices_.size() >= opts.max_vertices)
      throw Error(ErrorCode::BudgetExceeded,
                  "ball exceeds " + std::to_string(opts.max_vertices) + " vertices");
    b.index_.emplace(w, static_cast<int>(b.vertices_.size()));
    b.vertices_.push_back(std::move(w));
    b.depth_.push_back(depth);
  };
  add(Word{}, 0);
  std::size_t sphere_begin = 0;
  for (int r = 1; r <= R; ++r) {
    std::size_t sphere_end = b.vertices_.size();
    for (std::size_t v = sphere_begin; v < sphere_end; ++v) {
      for (int g = 0; g < p.rank(); ++g) {
        for (bool inv : {false, true}) {
          Word w = normal_form(p, concat(b.vertices_[v], Word{{g, inv}}));
          if (!b.index_.contains(w)) add(std::move(w), r);
        }
      }
    }
    sphere_begin = sphere_end;
  }
  for (std::size_t v = 0; v < b.vertices_.size(); ++v) {
    for (int g = 0; g < p.rank(); ++g) {
      Word w = normal_form(p, concat(b.vertices_[v], Word{{g, false}}));
      if (auto it = b.index_.find(w); it != b.index_.end())
        b.edges_.push_back({static_cast<int>(v), it->second, g});
    }
  }
  if (opts.distances) {
    const std::size_t n = b.vertices_.size();
    b.dist_.assign(n * n, 0);
    // many pairs share the same difference element
    std::unordered_map<Word, int, WordHash> memo;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        int d;
        if (p.backend() == Backend::Free) {
          d = group_distance(p, b.vertices_[i], b.vertices_[j]);
        } else {
          Word key = normal_form(p, concat(inverse(b.vertices_[i]), b.vertices_[j]));
          auto it = memo.find(key);
          if (it == memo.end()) it = memo.emplace(key, geodesic_length(p, key)).first;
          d = it->second;
        }
        b.dist_[i * n + j] = b.dist_[j * n + i] = static_cast<std::int16_t>(d);
      }
    }
  }
  return b;
}

Rational gromov_product(const CayleyBall& b, int x, int y, int z) {
  int dxz = b.distance(x, z), dyz = b.distance(y, z), dxy = b.distance(x, y);
  return Rational(dxz + dyz - dxy, 2);
}

Rational gromov_product(const Presentation& p, std::span<const Letter> x,
                        std::span<const Letter> y, std::span<const Letter> z) {
  int dxz = group_distance(p, x, z), dyz = group_distance(p, y, z), dxy = group_distance(p, x, y);
  return Rational(dxz + dyz - dxy, 2);
}

Rational estimate_delta(const CayleyBall& b) {
  const int n = static_cast<int>(b.size());
  if (n < 4) return Rational(0);
  std::vector<std::int16_t> local;
  const std::int16_t* D;
  if (b.has_distances()) {
    D = b.distance_matrix().data();
  } else {
    local.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) local[static_cast<std::size_t>(i) * n + j] = static_cast<std::int16_t>(b.distance(i, j));
    D = local.data();
  }
  // 2 delta = max over quadruples of (largest pair sum - middle pair sum)
  int best = 0;
  for (int i = 0; i < n; ++i) {
    const std::int16_t* Di = D + static_cast<std::size_t>(i) * n;
    for (int j = i + 1; j < n; ++j) {
      const std::int16_t* Dj = D + static_cast<std::size_t>(j) * n;
      const int dij = Di[j];
      for (int k = j + 1; k < n; ++k) {
        const std::int16_t* Dk = D + static_cast<std::size_t>(k) * n;
        const int dik = Di[k], djk = Dj[k];
        int local_best = 0;
        for (int l = k + 1; l < n; ++l) {
          int a = dij + Dk[l];
          int bb = dik + Dj[l];
          int c = Di[l] + djk;
          int mx = std::max(a, std::max(bb, c));
          int mn = std::min(a, std::min(bb, c));
          int v = 2 * mx + mn - a - bb - c;
          local_best = std::max(local_best, v);
        }
        best = std::max(best, local_best);
      }
    }
  }
  return Rational(best, 2);
}

std::pair<Rational, std::pair<int, int>> min_additive(const std::vector<QiSample>& samples,
                                                      Rational K) {
  Rational C(0);
  std::pair<int, int> witness{0, 0};
  for (const auto& s : samples) {
    Rational lower = Rational(s.dom) / K - s.range;
    Rational upper = Rational(s.range) - K * s.dom;
    Rational need = std::max(lower, upper);
    if (need > C) {
      C = need;
      witness = {s.i, s.j};
    }
  }
  return {C, witness};
}

Rational max_ratio(const std::vector<QiSample>& samples) {
  Rational K(1);
  for (const auto& s : samples) {
    if (s.dom <= 0 || s.range <= 0) continue;
    K = std::max(K, std::max(Rational(s.dom, s.range), Rational(s.range, s.dom)));
  }
  return K;
}

std::vector<std::pair<Rational, Rational>> pareto_front(const std::vector<QiSample>& samples) {
  std::vector<Rational> ks{Rational(1)};
  for (const auto& s : samples) {
    if (s.dom <= 0 || s.range <= 0) continue;
    Rational r = std::max(Rational(s.dom, s.range), Rational(s.range, s.dom));
    ks.push_back(r);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::vector<std::pair<Rational, Rational>> front;
  for (const Rational& k : ks) {
    Rational c = min_additive(samples, k).first;
    if (front.empty() || c < front.back().second) front.emplace_back(k, c);
  }
  return front;
}

QiEstimate estimate_from_samples(const std::vector<QiSample>& samples, int radius) {
  QiEstimate q;
  q.radius = radius;
  q.samples = samples.size();
  q.K = max_ratio(samples);
  auto [c, w] = min_additive(samples, q.K);
  q.C = c;
  q.witness = w;
  q.pareto = pareto_front(samples);
  return q;
}

LocalCheck is_local_quasigeodesic(const CayleyBall& b, const std::vector<int>& path, int L,
                                  Rational K, Rational C) {
  if (L <= 0) throw Error(ErrorCode::InvalidArgument, "L must be positive");
  LocalCheck out;
  const int n = static_cast<int>(path.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n && j - i <= L; ++j) {
      int d = b.distance(path[i], path[j]);
      int len = j - i;
      if (Rational(len) / K - C > d || Rational(d) > K * len + C) {
        out.ok = false;
        out.witness = std::make_pair(i, j);
        return out;
      }
    }
  }
  return out;
}

QiEstimate quasigeodesic_constants(const CayleyBall& b, const std::vector<int>& path) {
  std::vector<QiSample> samples;
  const int n = static_cast<int>(path.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) samples.push_back({j - i, b.distance(path[i], path[j]), i, j});
  return estimate_from_samples(samples, b.radius());
}

std::vector<int> path_in_ball(const CayleyBall& b, std::span<const Letter> x,
                              std::span<const Letter> w) {
  std::vector<int> out;
  Word cur(x.begin(), x.end());
  auto locate = [&] {
    auto idx = b.find(cur);
    if (!idx) throw Error(ErrorCode::DistanceUnknown, "path leaves the ball");
    out.push_back(*idx);
  };
  locate();
  for (Letter l : w) {
    cur.push_back(l);
    locate();
  }
  return out;
}

}  // namespace arbor
