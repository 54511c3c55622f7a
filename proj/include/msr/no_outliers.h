#ifndef MSR_NO_OUTLIERS_H_
#define MSR_NO_OUTLIERS_H_

#include <string>
#include <vector>

#include "msr/dual.h"

namespace msr {

// Raised when the dual process cannot make progress: no pair bounds the
// next step while the stopping rule is still unmet.
class StalledError : public InternalError {
 public:
  using InternalError::InternalError;
};

// cap / |X|^2.
Rational Tolerance(const Residual& residual);

// Universe indices of every almost-tight pair, in B-order.
std::vector<int> AlmostTightPairs(const PairUniverse& universe, const DualSolution& dual,
                                  const Rational& mu);

// Greedy pass over X' in id order: keep j unless an almost-tight pair
// covering j already covers a kept point.
PointSet SelectIndependentPoints(const PairUniverse& universe,
                                 const std::vector<int>& almost_tight);

struct RaiseStep {
  Rational delta;
  int binding_pair = -1;  // minimizer of the step formula
  DualSolution dual;
};

// One uniform raise of lambda and alpha on `independent`. Throws StalledError
// when no non-almost-tight pair holds two or more independent points.
RaiseStep ApplyRaiseStep(const PairUniverse& universe, const DualSolution& dual,
                         const PointSet& independent, const Rational& mu);

struct RaiseTraceRow {
  int iteration = 0;
  Rational delta;
  int independent_points = 0;
  int components = 0;
  Rational lambda;
  Rational objective;
};

struct RaiseResult {
  DualSolution dual;
  std::vector<int> before;  // almost-tight set before the last raise
  std::vector<int> after;   // almost-tight set at the end
  // No raise was needed: the first almost-tight cover already had at most
  // k' components. `event_order` then lists almost-tight pairs in the order
  // they appeared.
  bool degenerate = false;
  std::vector<int> event_order;
  int warmup_steps = 0;
  int iterations = 0;
  std::vector<RaiseTraceRow> trace;
};

// Raises the dual until the almost-tight pairs form at most k' components.
// When some point of X' starts with no almost-tight pair over it (possible
// under lower bounds, where zero-radius pairs may be missing), a warm-up
// raises only the uncovered alpha values, lambda held at 0, until every
// point is covered.
RaiseResult RaiseDuals(const PairUniverse& universe, const Rational& mu);

struct StructuredPairs {
  std::vector<int> pairs;  // insertion order
  int special = -1;        // universe index; -1 when zero_lambda_cover
  DualSolution dual;
  Rational mu;
  // lambda stayed 0 and an almost-tight cover of X' already had at most k'
  // components. The set is then rounded directly.
  bool zero_lambda_cover = false;
};

StructuredPairs BuildStructuredPairs(const PairUniverse& universe, const RaiseResult& raised,
                                     const Rational& mu);

// Empty when every structural property holds.
std::vector<std::string> CheckStructured(const PairUniverse& universe,
                                         const StructuredPairs& structured);

}  // namespace msr

#endif  // MSR_NO_OUTLIERS_H_
