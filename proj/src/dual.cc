#include "msr/dual.h"

#include <algorithm>
#include <numeric>

namespace msr {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Join(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

Rational Slack(const PairUniverse& universe, const DualSolution& dual, int pair_index) {
  Rational s = universe.pair(pair_index).radius + dual.lambda;
  for (int j : universe.active_ball(pair_index)) s -= dual.alpha[j];
  return s;
}

Rational Slack(const MetricInstance& instance, const PointSet& active,
               const DualSolution& dual, const Pair& pair) {
  Rational s = pair.radius + dual.lambda;
  PointSet ball = Ball(instance, pair);
  for (int j : ball) {
    if (std::binary_search(active.begin(), active.end(), j)) s -= dual.alpha[j];
  }
  return s;
}

bool IsAlmostTight(const Rational& slack, const Rational& mu) {
  if (mu < 0) throw UsageError("tightness tolerance must be nonnegative");
  return slack <= mu;
}

bool IsAlmostTight(const PairUniverse& universe, const DualSolution& dual,
                   int pair_index, const Rational& mu) {
  return IsAlmostTight(Slack(universe, dual, pair_index), mu);
}

std::vector<std::vector<int>> ComponentIndices(const std::vector<const PointSet*>& balls) {
  const int count = static_cast<int>(balls.size());
  DisjointSets sets(count);
  // Link every ball to the first ball seen containing each of its points.
  std::vector<std::pair<int, int>> owner;  // (point, ball)
  for (int b = 0; b < count; ++b) {
    for (int p : *balls[b]) owner.emplace_back(p, b);
  }
  std::sort(owner.begin(), owner.end());
  for (size_t idx = 1; idx < owner.size(); ++idx) {
    if (owner[idx].first == owner[idx - 1].first) sets.Join(owner[idx - 1].second, owner[idx].second);
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> group_of(count, -1);
  for (int b = 0; b < count; ++b) {
    int root = sets.Find(b);
    if (group_of[root] < 0) {
      group_of[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[group_of[root]].push_back(b);
  }
  return groups;
}

std::vector<std::vector<int>> Components(const PairUniverse& universe,
                                         const std::vector<int>& pairs) {
  std::vector<int> sorted = pairs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<const PointSet*> balls;
  balls.reserve(sorted.size());
  for (int p : sorted) balls.push_back(&universe.ball(p));
  std::vector<std::vector<int>> out;
  for (const auto& group : ComponentIndices(balls)) {
    std::vector<int> members;
    for (int idx : group) members.push_back(sorted[idx]);
    out.push_back(std::move(members));
  }
  return out;
}

int ComponentCount(const PairUniverse& universe, const std::vector<int>& pairs) {
  return static_cast<int>(Components(universe, pairs).size());
}

std::vector<std::vector<Pair>> Components(const MetricInstance& instance,
                                          const std::vector<Pair>& pairs) {
  std::vector<Pair> sorted = pairs;
  std::sort(sorted.begin(), sorted.end(), PairLess);
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<PointSet> owned;
  owned.reserve(sorted.size());
  for (const Pair& p : sorted) owned.push_back(Ball(instance, p));
  std::vector<const PointSet*> balls;
  for (const PointSet& b : owned) balls.push_back(&b);
  std::vector<std::vector<Pair>> out;
  for (const auto& group : ComponentIndices(balls)) {
    std::vector<Pair> members;
    for (int idx : group) members.push_back(sorted[idx]);
    out.push_back(std::move(members));
  }
  return out;
}

PointSet Uncovered(const PairUniverse& universe, const std::vector<int>& pairs) {
  std::vector<char> covered(universe.instance().size(), 0);
  for (int p : pairs) {
    for (int j : universe.active_ball(p)) covered[j] = 1;
  }
  PointSet out;
  for (int j : universe.residual().active) {
    if (!covered[j]) out.push_back(j);
  }
  return out;
}

PointSet Uncovered(const MetricInstance& instance, const std::vector<Pair>& pairs,
                   const PointSet& active) {
  std::vector<char> covered(instance.size(), 0);
  for (const Pair& p : pairs) {
    for (int j : Ball(instance, p)) covered[j] = 1;
  }
  PointSet out;
  for (int j : active) {
    if (!covered[j]) out.push_back(j);
  }
  return out;
}

Rational DualObjective(const DualSolution& dual, const PointSet& active, int k, int m,
                       bool outlier_mode) {
  Rational total = 0;
  for (int j : active) total += dual.alpha[j];
  total -= dual.lambda * k;
  if (outlier_mode) {
    if (!dual.gamma) throw UsageError("outlier objective needs gamma");
    total -= *dual.gamma * m;
  }
  return total;
}

bool IsFeasible(const PairUniverse& universe, const DualSolution& dual) {
  if (dual.lambda < 0) return false;
  for (int j : universe.residual().active) {
    if (dual.alpha[j] < 0) return false;
    if (dual.gamma && dual.alpha[j] > *dual.gamma) return false;
  }
  for (int p = 0; p < universe.size(); ++p) {
    if (Slack(universe, dual, p) < 0) return false;
  }
  return true;
}

}  // namespace msr
