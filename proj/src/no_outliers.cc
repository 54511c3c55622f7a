#include "msr/no_outliers.h"

#include <algorithm>
#include <optional>

namespace msr {
namespace {

bool CoversAll(const PairUniverse& universe, const std::vector<int>& pairs) {
  return Uncovered(universe, pairs).empty();
}

std::vector<int> Intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

long long IterationCap(int n) {
  long long x = n;
  return 4 * x * x * x * x + 16;
}

// Warm-up: lambda fixed at 0, alpha rises on points with no almost-tight
// pair over them. Each step makes at least one pair tight.
void Warmup(const PairUniverse& universe, const Rational& mu, DualSolution& dual,
            RaiseResult& result) {
  const long long cap = IterationCap(universe.instance().size());
  std::vector<int> current = AlmostTightPairs(universe, dual, mu);
  result.event_order = current;
  std::vector<char> seen(universe.size(), 0);
  for (int p : current) seen[p] = 1;

  while (true) {
    PointSet rising = Uncovered(universe, current);
    if (rising.empty()) return;
    if (++result.warmup_steps > cap) throw InternalError("warm-up exceeded its step cap");

    std::optional<Rational> step;
    for (int p = 0; p < universe.size(); ++p) {
      int c = IntersectionSize(universe.active_ball(p), rising);
      if (c == 0) continue;
      Rational t = Slack(universe, dual, p) / c;
      if (!step || t < *step) step = t;
    }
    if (!step) {
      throw StalledError("point " + std::to_string(rising.front()) +
                         " lies in no candidate ball");
    }
    for (int j : rising) dual.alpha[j] += *step;

    current = AlmostTightPairs(universe, dual, mu);
    for (int p : current) {
      if (!seen[p]) {
        seen[p] = 1;
        result.event_order.push_back(p);
      }
    }
  }
}

}  // namespace

Rational Tolerance(const Residual& residual) {
  const int n = residual.instance->size();
  return residual.radius_cap / Rational(n * n);
}

std::vector<int> AlmostTightPairs(const PairUniverse& universe, const DualSolution& dual,
                                  const Rational& mu) {
  std::vector<int> out;
  for (int p = 0; p < universe.size(); ++p) {
    if (IsAlmostTight(universe, dual, p, mu)) out.push_back(p);
  }
  return out;
}

PointSet SelectIndependentPoints(const PairUniverse& universe,
                                 const std::vector<int>& almost_tight) {
  const int n = universe.instance().size();
  std::vector<std::vector<int>> covering(n);
  for (int p : almost_tight) {
    for (int j : universe.active_ball(p)) covering[j].push_back(p);
  }
  std::vector<char> blocked(universe.size(), 0);
  PointSet out;
  for (int j : universe.residual().active) {
    bool free = std::none_of(covering[j].begin(), covering[j].end(),
                             [&](int p) { return blocked[p] != 0; });
    if (!free) continue;
    out.push_back(j);
    for (int p : covering[j]) blocked[p] = 1;
  }
  return out;
}

RaiseStep ApplyRaiseStep(const PairUniverse& universe, const DualSolution& dual,
                         const PointSet& independent, const Rational& mu) {
  if (independent.empty()) throw UsageError("raise step needs independent points");
  RaiseStep step;
  std::optional<Rational> best;
  for (int p = 0; p < universe.size(); ++p) {
    int c = IntersectionSize(universe.active_ball(p), independent);
    if (c < 2) continue;
    Rational slack = Slack(universe, dual, p);
    if (IsAlmostTight(slack, mu)) continue;
    Rational value = slack / (c - 1);
    if (!best || value < *best) {
      best = value;
      step.binding_pair = p;
    }
  }
  if (!best) {
    throw StalledError("no pair outside the almost-tight set holds two independent points");
  }
  step.delta = *best;
  step.dual = dual;
  step.dual.lambda += step.delta;
  for (int j : independent) step.dual.alpha[j] += step.delta;
  return step;
}

RaiseResult RaiseDuals(const PairUniverse& universe, const Rational& mu) {
  const MetricInstance& instance = universe.instance();
  const Residual& residual = universe.residual();
  const int k = residual.k;
  RaiseResult result;
  DualSolution dual = DualSolution::Zero(instance.size());

  Warmup(universe, mu, dual, result);

  std::vector<int> previous = AlmostTightPairs(universe, dual, mu);
  if (ComponentCount(universe, previous) <= k) {
    result.degenerate = true;
    result.dual = dual;
    result.before = previous;
    result.after = previous;
    return result;
  }
  result.event_order.clear();

  const long long cap = IterationCap(instance.size());
  while (true) {
    if (++result.iterations > cap) {
      throw InternalError("dual raising exceeded " + std::to_string(cap) + " iterations");
    }
    PointSet independent = SelectIndependentPoints(universe, previous);
    RaiseStep step = ApplyRaiseStep(universe, dual, independent, mu);
    dual = std::move(step.dual);

    std::vector<int> current = AlmostTightPairs(universe, dual, mu);
    RaiseTraceRow row;
    row.iteration = result.iterations;
    row.delta = step.delta;
    row.independent_points = static_cast<int>(independent.size());
    row.components = ComponentCount(universe, current);
    row.lambda = dual.lambda;
    row.objective = DualObjective(dual, residual.active, k, 0, false);
    result.trace.push_back(row);

    if (row.components <= k) {
      result.dual = dual;
      result.before = std::move(previous);
      result.after = std::move(current);
      return result;
    }
    previous = std::move(current);
  }
}

StructuredPairs BuildStructuredPairs(const PairUniverse& universe, const RaiseResult& raised,
                                     const Rational& mu) {
  const int k = universe.residual().k;
  StructuredPairs out;
  out.dual = raised.dual;
  out.mu = mu;

  if (raised.degenerate) {
    const auto& order = raised.event_order;
    size_t prefix = 0;
    while (!CoversAll(universe, std::vector<int>(order.begin(), order.begin() + prefix))) {
      if (prefix == order.size()) throw StalledError("almost-tight pairs never cover X'");
      ++prefix;
    }
    out.pairs.assign(order.begin(), order.begin() + prefix);
    if (ComponentCount(universe, out.pairs) <= k) {
      out.zero_lambda_cover = true;
      return out;
    }
    for (size_t idx = prefix; idx < order.size(); ++idx) {
      out.pairs.push_back(order[idx]);
      if (ComponentCount(universe, out.pairs) <= k) {
        out.special = order[idx];
        return out;
      }
    }
    throw InternalError("almost-tight pairs never reach k' components");
  }

  out.pairs = Intersection(raised.before, raised.after);
  if (ComponentCount(universe, out.pairs) <= k) {
    throw InternalError("pairs almost tight before and after the last raise already merge");
  }
  std::vector<int> added;
  std::set_difference(raised.after.begin(), raised.after.end(), raised.before.begin(),
                      raised.before.end(), std::back_inserter(added));
  for (int p : added) {
    out.pairs.push_back(p);
    if (ComponentCount(universe, out.pairs) <= k) {
      out.special = p;
      return out;
    }
  }
  throw InternalError("newly almost-tight pairs never reach k' components");
}

std::vector<std::string> CheckStructured(const PairUniverse& universe,
                                         const StructuredPairs& s) {
  std::vector<std::string> failures;
  const int k = universe.residual().k;
  for (int p : s.pairs) {
    if (!IsAlmostTight(universe, s.dual, p, s.mu)) {
      failures.push_back("pair " + Describe(universe.pair(p)) + " is not almost tight");
    }
  }
  if (!IsFeasible(universe, s.dual)) failures.push_back("dual is infeasible");

  if (s.zero_lambda_cover) {
    if (s.dual.lambda != 0) failures.push_back("zero-lambda cover with lambda > 0");
    if (!CoversAll(universe, s.pairs)) failures.push_back("cover misses points of X'");
    if (ComponentCount(universe, s.pairs) > k) failures.push_back("cover has > k' components");
    return failures;
  }

  if (std::find(s.pairs.begin(), s.pairs.end(), s.special) == s.pairs.end()) {
    failures.push_back("special pair missing from the set");
    return failures;
  }
  std::vector<int> rest;
  for (int p : s.pairs) {
    if (p != s.special) rest.push_back(p);
  }
  if (!CoversAll(universe, rest)) failures.push_back("set without special pair misses X'");
  int without = ComponentCount(universe, rest);
  int with = ComponentCount(universe, s.pairs);
  if (!(without > k)) {
    failures.push_back("set without special pair has " + std::to_string(without) +
                       " components, need > " + std::to_string(k));
  }
  if (!(with <= k)) {
    failures.push_back("set has " + std::to_string(with) + " components, need <= " +
                       std::to_string(k));
  }
  return failures;
}

}  // namespace msr
