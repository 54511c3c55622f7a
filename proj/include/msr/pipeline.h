#ifndef MSR_PIPELINE_H_
#define MSR_PIPELINE_H_

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "msr/no_outliers.h"
#include "msr/oracle.h"
#include "msr/outliers.h"
#include "msr/rounding.h"

namespace msr {

// The requested run cannot produce a solution (mode needs lower bounds the
// instance lacks, guess depth above k, no feasible guess).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { kPlain, kOutliers, kGlb, kGlbOutliers };

std::string ModeName(Mode mode);
Mode ParseMode(const std::string& text);  // UsageError on unknown names
bool UsesOutliers(Mode mode);
bool UsesLowerBounds(Mode mode);

// The instance as a mode sees it: plain modes drop lower bounds, modes
// without outliers force m = 0.
MetricInstance InstanceForMode(const MetricInstance& instance, Mode mode);

struct PipelineOptions {
  Mode mode = Mode::kPlain;
  int guess = 0;
  // Keep every residual outcome, not only the winner.
  bool keep_all = false;
};

enum class ResidualStatus { kSolved, kTrivial, kStalled, kInfeasible };

std::string StatusName(ResidualStatus status);

struct ResidualOutcome {
  int guess_index = 0;
  Residual residual;
  ResidualStatus status = ResidualStatus::kSolved;
  std::string note;
  std::shared_ptr<const PairUniverse> universe;
  Rational mu;

  std::optional<RaiseResult> raise;
  std::optional<StructuredPairs> structured;
  std::optional<FixpointResult> fixpoint;
  std::optional<OrderlyStructured> orderly;
  std::optional<Assembly> assembly;
  std::optional<DualSolution> dual;
  Rational dual_objective;
  std::optional<Pair> special;
  std::vector<std::string> invariant_failures;

  Solution solution;  // guessed pairs merged with the residual's pairs
};

struct PipelineResult {
  // Owns the mode-adjusted instance every residual points into.
  std::shared_ptr<const MetricInstance> instance;
  Mode mode = Mode::kPlain;
  int guess = 0;
  bool by_enumeration = false;  // k <= guess depth: solved exactly
  Solution solution;
  std::optional<ResidualOutcome> best;
  std::vector<ResidualOutcome> outcomes;  // filled when keep_all
  int residuals = 0;
  int stalled = 0;
  int infeasible = 0;
};

// Solves one residual of `instance` (already adjusted for the mode).
ResidualOutcome SolveResidual(const MetricInstance& instance, const Residual& residual,
                              Mode mode);

// Every guess of the requested depth; keeps the cheapest feasible merged
// solution. Throws ConfigError or InternalError.
PipelineResult RunPipeline(const MetricInstance& instance, const PipelineOptions& options);

}  // namespace msr

#endif  // MSR_PIPELINE_H_
