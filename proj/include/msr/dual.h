#ifndef MSR_DUAL_H_
#define MSR_DUAL_H_

#include <optional>
#include <vector>

#include "msr/metric.h"

namespace msr {

// Dual values. alpha is indexed by point id over all of X; entries outside
// the residual's active set stay zero.
struct DualSolution {
  Rational lambda;
  std::optional<Rational> gamma;
  std::vector<Rational> alpha;

  static DualSolution Zero(int n) {
    DualSolution d;
    d.alpha.assign(n, Rational(0));
    return d;
  }
};

// r + lambda - sum of alpha over B(i, r) intersected with X'.
Rational Slack(const PairUniverse& universe, const DualSolution& dual, int pair_index);
Rational Slack(const MetricInstance& instance, const PointSet& active,
               const DualSolution& dual, const Pair& pair);

// slack <= mu. Throws UsageError on negative mu.
bool IsAlmostTight(const Rational& slack, const Rational& mu);
bool IsAlmostTight(const PairUniverse& universe, const DualSolution& dual,
                   int pair_index, const Rational& mu);

// Groups of indices into `balls`; two entries share a group iff they are
// linked by a chain of pairwise-intersecting balls. Groups keep the input
// order and are sorted by their first member.
std::vector<std::vector<int>> ComponentIndices(const std::vector<const PointSet*>& balls);

// Components of a set of universe pair indices. Members and groups come out
// in B-order.
std::vector<std::vector<int>> Components(const PairUniverse& universe,
                                         const std::vector<int>& pairs);
int ComponentCount(const PairUniverse& universe, const std::vector<int>& pairs);

// Same for free-standing pairs (balls recomputed over the instance).
std::vector<std::vector<Pair>> Components(const MetricInstance& instance,
                                          const std::vector<Pair>& pairs);

// Points of X' in no ball of the set.
PointSet Uncovered(const PairUniverse& universe, const std::vector<int>& pairs);
PointSet Uncovered(const MetricInstance& instance, const std::vector<Pair>& pairs,
                   const PointSet& active);

// sum alpha over X' - k'*lambda, minus m*gamma when outlier_mode.
Rational DualObjective(const DualSolution& dual, const PointSet& active, int k,
                       int m, bool outlier_mode);

// Every pair constraint holds, alpha and lambda are nonnegative, and
// alpha_j <= gamma when gamma is present.
bool IsFeasible(const PairUniverse& universe, const DualSolution& dual);

}  // namespace msr

#endif  // MSR_DUAL_H_
