#ifndef MSR_OUTLIERS_H_
#define MSR_OUTLIERS_H_

#include <string>
#include <vector>

#include "msr/dual.h"
#include "msr/envelope.h"
#include "msr/no_outliers.h"

namespace msr {

struct Phase {
  PointSet rising;                 // points whose alpha grows in this phase
  Rational duration;
  Rational end_time;
  std::vector<int> became_tight;   // B-order
};

// One run of the fixed-lambda routine.
struct SubroutineRun {
  Rational lambda;
  std::vector<int> picked;  // in insertion order
  std::vector<int> tight;   // every tight pair at the end, B-order
  DualSolution dual;        // gamma = max alpha
  std::vector<Phase> phases;
  int components = 0;       // of `picked`
};

SubroutineRun RunSubroutine(const PairUniverse& universe, const Rational& lambda);

// Time at which phase `history.size() + 1` ends, as a function of lambda on
// [lo, hi], assuming phases 1..history.size() close with the same pairs as in
// `history` everywhere inside the interval.
struct PhaseEnd {
  PiecewiseAffine end_time;
  std::vector<int> line_pairs;  // universe index behind each input line
  Affine previous_end;          // end of the preceding phase
};

PhaseEnd PhaseEndFunction(const PairUniverse& universe, const std::vector<Phase>& history,
                          const Rational& lo, const Rational& hi);

struct EnvelopeRecord {
  int phase = 0;
  std::vector<Phase> history;
  PhaseEnd function;
};

struct FixpointTraceRow {
  int iteration = 0;
  Rational lo, hi;
  int breakpoints = 0;
  std::vector<BracketProbe> probes;
};

struct FixpointResult {
  // The run at lambda = 0 already had at most k' components (can happen
  // under lower bounds, where zero-radius pairs may be absent).
  bool zero_lambda = false;
  Rational lo, hi;
  SubroutineRun left, middle, right;
  int final_iteration = 0;
  std::vector<EnvelopeRecord> envelopes;
  std::vector<FixpointTraceRow> trace;
};

// 2 |X'| k' cap + 1
Rational UpperLambda(const Residual& residual);

FixpointResult IterateToFixpoint(const PairUniverse& universe);

struct OrderlyStructured {
  std::vector<int> pairs;  // B'; the special pair sits at position `ell`
  int ell = 0;
  int ell_prime = 0;
  int special = -1;
  DualSolution dual;
  bool zero_lambda = false;
  bool from_left = true;  // which endpoint supplied the dual
};

// Start from `seed` and append pairs of `sequence` (skipping members) until
// at most m points of X' stay uncovered.
std::vector<int> CoveringProcedure(const PairUniverse& universe, const std::vector<int>& seed,
                                   const std::vector<int>& sequence);

OrderlyStructured MixOrderlyStructured(const PairUniverse& universe,
                                       const FixpointResult& fixpoint);

// Empty when every structural property holds.
std::vector<std::string> CheckOrderly(const PairUniverse& universe, const OrderlyStructured& os);

}  // namespace msr

#endif  // MSR_OUTLIERS_H_
