#include "msr/metric.h"

#include <algorithm>
#include <numeric>

namespace msr {

bool Intersects(const PointSet& a, const PointSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

int IntersectionSize(const PointSet& a, const PointSet& b) {
  int count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) {
      ++count;
      ++i;
      ++j;
    } else if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return count;
}

PointSet Union(const PointSet& a, const PointSet& b) {
  PointSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PointSet Difference(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool IsSubset(const PointSet& inner, const PointSet& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

bool PairLess(const Pair& a, const Pair& b) {
  if (a.radius != b.radius) return a.radius < b.radius;
  if (a.center != b.center) return a.center < b.center;
  return a.anchor < b.anchor;
}

std::string Describe(const Pair& pair) {
  return "(" + std::to_string(pair.center) + ", " + ToString(pair.radius) + ")";
}

std::string VariantName(const LowerBoundSpec& spec) {
  switch (spec.index()) {
    case 0:
      return "cardinality";
    case 1:
      return "colored_weight";
    default:
      return "explicit_radius";
  }
}

MetricInstance::MetricInstance(int n, std::vector<std::optional<Rational>> distances,
                               int k, int m, std::optional<LowerBoundSpec> lower_bounds,
                               std::optional<PointSet> active)
    : n_(n), k_(k), m_(m), lower_bounds_(std::move(lower_bounds)) {
  if (n < 1) throw UsageError("instance needs at least one point");
  if (distances.size() != static_cast<size_t>(n) * n) {
    throw UsageError("distance matrix must be " + std::to_string(n) + "x" +
                     std::to_string(n));
  }
  if (k < 1) throw UsageError("k must be positive");
  if (m < 0) throw UsageError("m must be nonnegative");

  auto violations = VerifyMetric(n, distances);
  for (const auto& v : violations) {
    if (v.kind != MetricViolation::Kind::kTriangle) throw UsageError(v.message);
  }

  dist_.resize(distances.size());
  finite_.resize(distances.size());
  for (size_t idx = 0; idx < distances.size(); ++idx) {
    finite_[idx] = distances[idx].has_value();
    if (distances[idx]) {
      dist_[idx] = *distances[idx];
      if (dist_[idx] > max_finite_) max_finite_ = dist_[idx];
    }
  }

  if (active) {
    active_ = *active;
    std::sort(active_.begin(), active_.end());
    active_.erase(std::unique(active_.begin(), active_.end()), active_.end());
    for (int p : active_) CheckPoint(p);
  } else {
    active_.resize(n);
    std::iota(active_.begin(), active_.end(), 0);
  }
  if (m >= static_cast<int>(active_.size()) && m > 0) {
    throw UsageError("m must be smaller than the number of active points");
  }

  if (lower_bounds_) {
    std::visit(
        [n](const auto& spec) {
          using T = std::decay_t<decltype(spec)>;
          if constexpr (std::is_same_v<T, CardinalityBound>) {
            if (spec.min_clients.size() != static_cast<size_t>(n))
              throw UsageError("cardinality bound needs one entry per point");
          } else if constexpr (std::is_same_v<T, ColoredWeightBound>) {
            if (spec.weight.size() != static_cast<size_t>(n) ||
                spec.color.size() != static_cast<size_t>(n) ||
                spec.minimum.size() != static_cast<size_t>(n))
              throw UsageError("colored weight bound needs one entry per point");
            size_t colors = spec.minimum.empty() ? 0 : spec.minimum[0].size();
            for (const auto& row : spec.minimum) {
              if (row.size() != colors)
                throw UsageError("colored weight minimums must share a color count");
            }
            for (size_t p = 0; p < spec.color.size(); ++p) {
              if (spec.color[p] < 0 || static_cast<size_t>(spec.color[p]) >= colors)
                throw UsageError("point color out of range");
              if (spec.weight[p] < 0) throw UsageError("negative point weight");
            }
          } else {
            if (spec.radius.size() != static_cast<size_t>(n))
              throw UsageError("explicit radius bound needs one entry per point");
          }
        },
        *lower_bounds_);
  }
}

const Rational& MetricInstance::distance(int i, int j) const {
  if (!reachable(i, j)) {
    throw UsageError("points " + std::to_string(i) + " and " + std::to_string(j) +
                     " are unreachable");
  }
  return dist_[Index(i, j)];
}

bool MetricInstance::Within(int i, int j, const Rational& r) const {
  size_t idx = Index(i, j);
  return finite_[idx] && dist_[idx] <= r;
}

void MetricInstance::CheckPoint(int i) const {
  if (i < 0 || i >= n_) {
    throw UsageError("point id " + std::to_string(i) + " out of range [0, " +
                     std::to_string(n_) + ")");
  }
}

MetricInstance MetricInstance::WithBudgets(int k, int m) const {
  MetricInstance copy = *this;
  if (k < 1) throw UsageError("k must be positive");
  if (m < 0 || (m > 0 && m >= static_cast<int>(active_.size())))
    throw UsageError("m must be in [0, |active|)");
  copy.k_ = k;
  copy.m_ = m;
  return copy;
}

MetricInstance MetricInstance::WithoutLowerBounds() const {
  MetricInstance copy = *this;
  copy.lower_bounds_.reset();
  return copy;
}

std::vector<std::optional<Rational>> EuclideanDistances(
    const std::vector<std::vector<Rational>>& points, int sqrt_bits) {
  const size_t n = points.size();
  std::vector<std::optional<Rational>> out(n * n);
  for (size_t i = 0; i < n; ++i) {
    if (points[i].size() != points[0].size()) {
      throw UsageError("points must share a dimension");
    }
    out[i * n + i] = Rational(0);
    for (size_t j = 0; j < i; ++j) {
      Rational squared = 0;
      for (size_t c = 0; c < points[i].size(); ++c) {
        Rational diff = points[i][c] - points[j][c];
        squared += diff * diff;
      }
      Rational d = SqrtFloor(squared, sqrt_bits);
      out[i * n + j] = d;
      out[j * n + i] = d;
    }
  }
  return out;
}

PointSet Ball(const MetricInstance& instance, const Pair& pair) {
  instance.CheckPoint(pair.center);
  PointSet out;
  for (int j = 0; j < instance.size(); ++j) {
    if (instance.Within(pair.center, j, pair.radius)) out.push_back(j);
  }
  return out;
}

bool AllowedClientSet(const MetricInstance& instance, int center, const PointSet& clients) {
  if (!instance.lower_bounds()) return true;
  return std::visit(
      [&](const auto& spec) -> bool {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, CardinalityBound>) {
          return static_cast<int>(clients.size()) >= spec.min_clients[center];
        } else if constexpr (std::is_same_v<T, ColoredWeightBound>) {
          std::vector<Rational> total(spec.minimum[center].size());
          for (int p : clients) total[spec.color[p]] += spec.weight[p];
          for (size_t c = 0; c < total.size(); ++c) {
            if (total[c] < spec.minimum[center][c]) return false;
          }
          return true;
        } else {
          if (!spec.radius[center]) return false;
          return IsSubset(Ball(instance, Pair{center, *spec.radius[center]}), clients);
        }
      },
      *instance.lower_bounds());
}

std::optional<Rational> MinFeasibleRadius(const MetricInstance& instance, int center) {
  instance.CheckPoint(center);
  if (!instance.lower_bounds()) throw UsageError("instance has no lower bounds");

  // Reachable points by (distance, id); balls grow along this order.
  std::vector<int> order;
  for (int j = 0; j < instance.size(); ++j) {
    if (instance.reachable(center, j)) order.push_back(j);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Rational& da = instance.distance(center, a);
    const Rational& db = instance.distance(center, b);
    return da != db ? da < db : a < b;
  });

  return std::visit(
      [&](const auto& spec) -> std::optional<Rational> {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, CardinalityBound>) {
          int need = std::max(spec.min_clients[center], 0);
          if (need == 0) return Rational(0);
          if (need > static_cast<int>(order.size())) return std::nullopt;
          return instance.distance(center, order[need - 1]);
        } else if constexpr (std::is_same_v<T, ColoredWeightBound>) {
          const auto& minimum = spec.minimum[center];
          std::vector<Rational> total(minimum.size());
          auto satisfied = [&] {
            for (size_t c = 0; c < total.size(); ++c) {
              if (total[c] < minimum[c]) return false;
            }
            return true;
          };
          if (satisfied()) return Rational(0);
          for (size_t idx = 0; idx < order.size(); ++idx) {
            int p = order[idx];
            total[spec.color[p]] += spec.weight[p];
            // Points at equal distance enter together.
            bool last_at_radius =
                idx + 1 == order.size() ||
                instance.distance(center, order[idx + 1]) != instance.distance(center, p);
            if (last_at_radius && satisfied()) return instance.distance(center, p);
          }
          return std::nullopt;
        } else {
          return spec.radius[center];
        }
      },
      *instance.lower_bounds());
}

Residual FullResidual(const MetricInstance& instance) {
  Residual r;
  r.instance = &instance;
  r.active = instance.active();
  r.k = instance.k();
  r.m = instance.m();
  r.radius_cap = instance.max_finite_distance();
  return r;
}

std::vector<Pair> CandidatePairs(const Residual& residual) {
  const MetricInstance& instance = *residual.instance;
  if (residual.radius_cap < 0) throw UsageError("radius cap must be nonnegative");
  std::vector<Pair> out;
  for (int i = 0; i < instance.size(); ++i) {
    std::optional<Rational> floor_radius = Rational(0);
    if (instance.lower_bounds()) {
      floor_radius = MinFeasibleRadius(instance, i);
      if (!floor_radius) continue;
    }
    std::vector<Pair> at_center;
    for (int j : residual.active) {
      if (!instance.reachable(i, j)) continue;
      const Rational& r = instance.distance(i, j);
      if (r > residual.radius_cap || r < *floor_radius) continue;
      at_center.push_back(Pair{i, r, j});
    }
    std::sort(at_center.begin(), at_center.end(), PairLess);
    // Keep the smallest anchor for each radius.
    for (size_t idx = 0; idx < at_center.size(); ++idx) {
      if (idx > 0 && at_center[idx].radius == at_center[idx - 1].radius) continue;
      out.push_back(at_center[idx]);
    }
  }
  std::sort(out.begin(), out.end(), PairLess);
  return out;
}

PairUniverse::PairUniverse(const Residual& residual)
    : residual_(residual), pairs_(CandidatePairs(residual)) {
  const MetricInstance& inst = *residual.instance;
  active_mask_.assign(inst.size(), 0);
  for (int p : residual.active) active_mask_[p] = 1;
  balls_.reserve(pairs_.size());
  active_balls_.reserve(pairs_.size());
  for (const Pair& pair : pairs_) {
    PointSet ball = Ball(inst, pair);
    PointSet active;
    for (int p : ball) {
      if (active_mask_[p]) active.push_back(p);
    }
    balls_.push_back(std::move(ball));
    active_balls_.push_back(std::move(active));
  }
}

int PairUniverse::Find(const Pair& pair) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), pair,
                             [](const Pair& a, const Pair& b) {
                               if (a.radius != b.radius) return a.radius < b.radius;
                               return a.center < b.center;
                             });
  if (it != pairs_.end() && *it == pair) return static_cast<int>(it - pairs_.begin());
  return -1;
}

void ForEachGuess(const MetricInstance& instance, int depth,
                  const std::function<void(const Residual&)>& visit) {
  if (depth < 0) throw UsageError("guess depth must be nonnegative");
  if (depth > instance.k()) throw UsageError("guess depth exceeds k");
  Residual full = FullResidual(instance);
  if (depth == 0) {
    visit(full);
    return;
  }
  const std::vector<Pair> universe = CandidatePairs(full);
  const int size = static_cast<int>(universe.size());
  if (depth > size) return;

  std::vector<PointSet> balls;
  balls.reserve(universe.size());
  for (const Pair& p : universe) balls.push_back(Ball(instance, p));

  std::vector<int> choice(depth);
  std::iota(choice.begin(), choice.end(), 0);
  while (true) {
    Residual r;
    r.instance = &instance;
    r.k = instance.k() - depth;
    r.m = instance.m();
    PointSet covered;
    r.radius_cap = universe[choice[0]].radius;
    for (int idx : choice) {
      r.guessed.push_back(universe[idx]);
      covered = Union(covered, balls[idx]);
      if (universe[idx].radius < r.radius_cap) r.radius_cap = universe[idx].radius;
    }
    r.active = Difference(full.active, covered);
    visit(r);

    int pos = depth - 1;
    while (pos >= 0 && choice[pos] == size - depth + pos) --pos;
    if (pos < 0) break;
    ++choice[pos];
    for (int q = pos + 1; q < depth; ++q) choice[q] = choice[q - 1] + 1;
  }
}

std::vector<Residual> GuessPrefixes(const MetricInstance& instance, int depth) {
  std::vector<Residual> out;
  ForEachGuess(instance, depth, [&](const Residual& r) { out.push_back(r); });
  return out;
}

std::vector<MetricViolation> VerifyMetric(
    int n, const std::vector<std::optional<Rational>>& d) {
  std::vector<MetricViolation> out;
  auto at = [&](int i, int j) -> const std::optional<Rational>& {
    return d[static_cast<size_t>(i) * n + j];
  };
  for (int i = 0; i < n; ++i) {
    if (!at(i, i) || *at(i, i) != 0) {
      out.push_back({MetricViolation::Kind::kDiagonal, i, i, i,
                     "d(" + std::to_string(i) + "," + std::to_string(i) + ") must be 0"});
    }
    for (int j = i + 1; j < n; ++j) {
      if (at(i, j) != at(j, i)) {
        out.push_back({MetricViolation::Kind::kSymmetry, i, j, -1,
                       "d(" + std::to_string(i) + "," + std::to_string(j) +
                           ") differs from d(" + std::to_string(j) + "," +
                           std::to_string(i) + ")"});
      }
      if (at(i, j) && *at(i, j) < 0) {
        out.push_back({MetricViolation::Kind::kNegative, i, j, -1,
                       "negative distance between " + std::to_string(i) + " and " +
                           std::to_string(j)});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!at(i, j)) continue;
      for (int c = 0; c < n; ++c) {
        if (!at(i, c) || !at(c, j)) continue;
        if (*at(i, j) > *at(i, c) + *at(c, j)) {
          out.push_back({MetricViolation::Kind::kTriangle, i, j, c,
                         "triangle inequality fails for " + std::to_string(i) + "," +
                             std::to_string(c) + "," + std::to_string(j)});
        }
      }
    }
  }
  return out;
}

std::vector<MetricViolation> VerifyMetric(const MetricInstance& instance) {
  const int n = instance.size();
  std::vector<std::optional<Rational>> d(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (instance.reachable(i, j)) d[static_cast<size_t>(i) * n + j] = instance.distance(i, j);
    }
  }
  return VerifyMetric(n, d);
}

}  // namespace msr
