#ifndef MSR_METRIC_H_
#define MSR_METRIC_H_

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "msr/rational.h"

namespace msr {

// Sorted, duplicate-free list of point ids.
using PointSet = std::vector<int>;

bool Intersects(const PointSet& a, const PointSet& b);
int IntersectionSize(const PointSet& a, const PointSet& b);
PointSet Union(const PointSet& a, const PointSet& b);
PointSet Difference(const PointSet& a, const PointSet& b);
bool IsSubset(const PointSet& inner, const PointSet& outer);

// A candidate cluster: center point and radius. `anchor` is the point whose
// distance defines the radius (-1 when the pair was not built from one).
struct Pair {
  int center = 0;
  Rational radius;
  int anchor = -1;

  friend bool operator==(const Pair& a, const Pair& b) {
    return a.center == b.center && a.radius == b.radius;
  }
};

// The fixed total order on pairs: radius, then center, then anchor.
bool PairLess(const Pair& a, const Pair& b);

std::string Describe(const Pair& pair);

// Lower-bound families. Each one is superset-closed: if a client set is
// allowed for a center, so is every superset of it.
struct CardinalityBound {
  std::vector<int> min_clients;  // L_i per center
};

struct ColoredWeightBound {
  std::vector<Rational> weight;                 // per point
  std::vector<int> color;                       // per point, 0..colors-1
  std::vector<std::vector<Rational>> minimum;   // [center][color]
};

struct ExplicitRadiusBound {
  // A center i may serve a set only if the set contains B(i, radius[i]).
  // An unset entry means the center can never open.
  std::vector<std::optional<Rational>> radius;
};

using LowerBoundSpec =
    std::variant<CardinalityBound, ColoredWeightBound, ExplicitRadiusBound>;

std::string VariantName(const LowerBoundSpec& spec);

// Finite metric on points 0..n-1 with exact rational distances. Immutable
// after construction; cheap to share by const reference.
class MetricInstance {
 public:
  // `distances` is row-major n*n; std::nullopt marks an unreachable pair.
  // Throws UsageError on non-square, asymmetric, negative or nonzero-diagonal
  // input, on k < 1, or on an active set that leaves no room for m.
  MetricInstance(int n, std::vector<std::optional<Rational>> distances, int k,
                 int m, std::optional<LowerBoundSpec> lower_bounds = {},
                 std::optional<PointSet> active = {});

  int size() const { return n_; }
  int k() const { return k_; }
  int m() const { return m_; }
  const PointSet& active() const { return active_; }
  const std::optional<LowerBoundSpec>& lower_bounds() const { return lower_bounds_; }

  bool reachable(int i, int j) const { return finite_[Index(i, j)] != 0; }
  // Throws UsageError for an unreachable pair.
  const Rational& distance(int i, int j) const;
  // d(i, j) <= r, where unreachable never qualifies.
  bool Within(int i, int j, const Rational& r) const;
  const Rational& max_finite_distance() const { return max_finite_; }

  // Copy with different budgets (used for CLI overrides).
  MetricInstance WithBudgets(int k, int m) const;
  MetricInstance WithoutLowerBounds() const;

  void CheckPoint(int i) const;

 private:
  size_t Index(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }

  int n_;
  std::vector<Rational> dist_;
  std::vector<char> finite_;
  int k_;
  int m_;
  std::optional<LowerBoundSpec> lower_bounds_;
  PointSet active_;
  Rational max_finite_;
};

// Euclidean points -> exact squared distances -> square root floored to a
// multiple of 2^-sqrt_bits.
std::vector<std::optional<Rational>> EuclideanDistances(
    const std::vector<std::vector<Rational>>& points, int sqrt_bits = 32);

// B(center, radius) over all points of the instance.
PointSet Ball(const MetricInstance& instance, const Pair& pair);

// Does the family at `center` accept `clients`?
bool AllowedClientSet(const MetricInstance& instance, int center,
                      const PointSet& clients);

// Smallest r with B(center, r) allowed; nullopt when no ball is ever allowed.
// Requires lower bounds on the instance.
std::optional<Rational> MinFeasibleRadius(const MetricInstance& instance, int center);

// A sub-problem: the points that still must be covered, the remaining budgets
// and the radius cap inherited from guessing.
struct Residual {
  const MetricInstance* instance = nullptr;
  PointSet active;      // X'
  int k = 0;            // k'
  int m = 0;
  Rational radius_cap;
  std::vector<Pair> guessed;
};

// The residual for guess depth 0: X' = the instance's active set, k' = k,
// cap = max finite distance.
Residual FullResidual(const MetricInstance& instance);

// The ordered candidate set B of a residual, with every ball materialized.
class PairUniverse {
 public:
  explicit PairUniverse(const Residual& residual);

  const Residual& residual() const { return residual_; }
  const MetricInstance& instance() const { return *residual_.instance; }
  int size() const { return static_cast<int>(pairs_.size()); }
  const std::vector<Pair>& pairs() const { return pairs_; }
  const Pair& pair(int index) const { return pairs_[index]; }
  // Ball over all of X.
  const PointSet& ball(int index) const { return balls_[index]; }
  // Ball restricted to X'.
  const PointSet& active_ball(int index) const { return active_balls_[index]; }
  bool is_active(int point) const { return active_mask_[point] != 0; }
  // Index of an equal pair, or -1.
  int Find(const Pair& pair) const;

 private:
  Residual residual_;
  std::vector<Pair> pairs_;
  std::vector<PointSet> balls_;
  std::vector<PointSet> active_balls_;
  std::vector<char> active_mask_;
};

// All (i, d(i, j)) with j in X', radius <= cap (and >= d_i under lower
// bounds), deduplicated on (center, radius) and sorted by PairLess.
std::vector<Pair> CandidatePairs(const Residual& residual);

// Enumerates every set of `depth` distinct candidate pairs of the full
// instance as guessed largest pairs. Depth 0 yields FullResidual once.
void ForEachGuess(const MetricInstance& instance, int depth,
                  const std::function<void(const Residual&)>& visit);
std::vector<Residual> GuessPrefixes(const MetricInstance& instance, int depth);

struct MetricViolation {
  enum class Kind { kDiagonal, kSymmetry, kTriangle, kNegative };
  Kind kind;
  int a, b, c;
  std::string message;
};

std::vector<MetricViolation> VerifyMetric(const MetricInstance& instance);

// Same check on a raw matrix, before MetricInstance validation rejects it.
std::vector<MetricViolation> VerifyMetric(
    int n, const std::vector<std::optional<Rational>>& distances);

}  // namespace msr

#endif  // MSR_METRIC_H_
