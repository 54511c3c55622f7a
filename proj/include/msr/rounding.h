#ifndef MSR_ROUNDING_H_
#define MSR_ROUNDING_H_

#include <optional>
#include <string>
#include <vector>

#include "msr/dual.h"
#include "msr/no_outliers.h"
#include "msr/outliers.h"

namespace msr {

enum class CoverMode { kAnyCenter, kColocated };

std::string ModeName(CoverMode mode);

// Pairwise ball-disjoint subset of a component with maximum radius sum.
struct DisjointSubset {
  std::vector<Pair> pairs;
  Rational radius_sum;
  bool exact = true;  // false: greedy lower bound (component too large)
};

// Branch and bound seeded by the greedy choice. `exact` is false when the
// node budget runs out; the result is then the best subset found so far.
DisjointSubset MaxDisjointSubset(const MetricInstance& instance, const std::vector<Pair>& members);

// One ball replacing a component.
struct CoverResult {
  Pair pair;
  std::optional<Pair> witness;  // kColocated: smallest member pair at pair.center
  std::vector<Pair> members;
  PointSet points;              // X(C), over all of X
  CoverMode mode = CoverMode::kAnyCenter;
};

// Smallest ball containing X(C). kAnyCenter tries every point of X as the
// center, kColocated only centers of members. Ties go to the smaller center.
CoverResult CoverComponent(const MetricInstance& instance, const std::vector<Pair>& members,
                           CoverMode mode);

// One CoverComponent per component of `pairs`.
std::vector<CoverResult> Creplaced(const MetricInstance& instance, const std::vector<Pair>& pairs,
                                   CoverMode mode);

std::vector<Pair> ToPairs(const PairUniverse& universe, const std::vector<int>& indices);

struct Assembly {
  std::vector<CoverResult> covers;
  int outlier_case = 0;  // 1..4 in outlier mode, 0 otherwise
  std::vector<int> input;  // universe indices handed to creplaced
};

// creplaced(B'); its components are those of B' without the special pair,
// with the ones the special pair touches merged.
Assembly AssembleNoOutliers(const PairUniverse& universe, const StructuredPairs& structured,
                            CoverMode mode);

Assembly AssembleOutliers(const PairUniverse& universe, const OrderlyStructured& os,
                          CoverMode mode);

inline constexpr int kOutlier = -1;
inline constexpr int kUnassigned = -2;  // point outside the active set, left alone

struct Solution {
  std::vector<Pair> pairs;
  std::vector<int> assignment;  // per point: index into pairs, kOutlier or kUnassigned
  PointSet outliers;
  Rational cost;
};

// Each point goes to the first pair whose ball holds it. Active points in no
// ball become outliers.
Solution AssignToFirstBall(const MetricInstance& instance, const std::vector<Pair>& pairs);

struct GlbInput {
  Pair pair;
  Pair witness;  // same center, radius <= pair.radius, allowed ball
};

// Three-stage assignment: witness balls, then guessed components touching
// each pair, then the remaining guessed components on their own. Cluster
// radii shrink to the farthest assigned point. Throws InternalError when a
// cluster violates its lower bound or the cost exceeds sr(P) + 2 sr(P_g).
Solution GlbAssign(const MetricInstance& instance, const std::vector<GlbInput>& pairs,
                   const std::vector<Pair>& guessed);

// Pair count, outlier count, coverage, lower bounds and cost arithmetic.
std::vector<std::string> ValidateSolution(const MetricInstance& instance,
                                          const Solution& solution);

// Sum over clusters of the largest distance between two assigned points.
Rational DiameterCost(const MetricInstance& instance, const Solution& solution);

// sr(F) <= sum alpha - |F| lambda - |U| gamma for a pairwise disjoint set F
// of tight pairs and tight points U of X' outside every ball of F. Returns
// nullopt when the preconditions fail, otherwise whether the bound holds.
std::optional<bool> DisjointDualBound(const PairUniverse& universe, const DualSolution& dual,
                                      const std::vector<int>& disjoint, const PointSet& tight_out);

}  // namespace msr

#endif  // MSR_ROUNDING_H_
