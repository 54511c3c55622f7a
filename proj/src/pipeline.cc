#include "msr/pipeline.h"

#include <algorithm>
#include <map>

namespace msr {
namespace {

// Groups of X' at distance zero from each other; returns pairs (rep, 0)
// covering all but m points with at most k' groups, if possible.
std::optional<std::vector<Pair>> ZeroRadiusCover(const MetricInstance& instance,
                                                 const Residual& residual) {
  std::vector<PointSet> groups;
  std::vector<char> seen(instance.size(), 0);
  for (int j : residual.active) {
    if (seen[j]) continue;
    PointSet group;
    for (int q : residual.active) {
      if (!seen[q] && instance.Within(j, q, Rational(0))) {
        seen[q] = 1;
        group.push_back(q);
      }
    }
    groups.push_back(std::move(group));
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [](const PointSet& a, const PointSet& b) { return a.size() > b.size(); });
  const int need = static_cast<int>(residual.active.size()) - residual.m;
  std::vector<Pair> out;
  int covered = 0;
  for (const PointSet& group : groups) {
    if (covered >= need) break;
    out.push_back(Pair{group.front(), Rational(0), group.front()});
    covered += static_cast<int>(group.size());
  }
  if (covered < need || static_cast<int>(out.size()) > residual.k) return std::nullopt;
  return out;
}

Solution Merge(const MetricInstance& instance, Mode mode, const Residual& residual,
               const std::vector<CoverResult>& covers) {
  if (UsesLowerBounds(mode)) {
    std::vector<GlbInput> inputs;
    for (const CoverResult& c : covers) {
      if (!c.witness) throw InternalError("lower-bound cover without a witness pair");
      inputs.push_back({c.pair, *c.witness});
    }
    return GlbAssign(instance, inputs, residual.guessed);
  }
  std::vector<Pair> pairs = residual.guessed;
  for (const CoverResult& c : covers) pairs.push_back(c.pair);
  return AssignToFirstBall(instance, pairs);
}

}  // namespace

std::string ModeName(Mode mode) {
  switch (mode) {
    case Mode::kPlain: return "plain";
    case Mode::kOutliers: return "outliers";
    case Mode::kGlb: return "glb";
    case Mode::kGlbOutliers: return "glb-outliers";
  }
  return "?";
}

Mode ParseMode(const std::string& text) {
  for (Mode m : {Mode::kPlain, Mode::kOutliers, Mode::kGlb, Mode::kGlbOutliers}) {
    if (ModeName(m) == text) return m;
  }
  throw UsageError("unknown mode '" + text + "'");
}

bool UsesOutliers(Mode mode) { return mode == Mode::kOutliers || mode == Mode::kGlbOutliers; }
bool UsesLowerBounds(Mode mode) { return mode == Mode::kGlb || mode == Mode::kGlbOutliers; }

MetricInstance InstanceForMode(const MetricInstance& instance, Mode mode) {
  if (UsesLowerBounds(mode) && !instance.lower_bounds()) {
    throw ConfigError("mode " + ModeName(mode) + " needs lower bounds in the instance");
  }
  MetricInstance out = UsesLowerBounds(mode) ? instance : instance.WithoutLowerBounds();
  if (!UsesOutliers(mode)) out = out.WithBudgets(out.k(), 0);
  return out;
}

std::string StatusName(ResidualStatus status) {
  switch (status) {
    case ResidualStatus::kSolved: return "solved";
    case ResidualStatus::kTrivial: return "trivial";
    case ResidualStatus::kStalled: return "stalled";
    case ResidualStatus::kInfeasible: return "infeasible";
  }
  return "?";
}

ResidualOutcome SolveResidual(const MetricInstance& instance, const Residual& residual,
                              Mode mode) {
  ResidualOutcome out;
  out.residual = residual;
  const bool glb = UsesLowerBounds(mode);
  const int size = static_cast<int>(residual.active.size());
  const CoverMode cover_mode = glb ? CoverMode::kColocated : CoverMode::kAnyCenter;

  auto finish_trivial = [&](std::vector<CoverResult> covers, const std::string& note) {
    out.status = ResidualStatus::kTrivial;
    out.note = note;
    Assembly a;
    a.covers = std::move(covers);
    out.solution = Merge(instance, mode, residual, a.covers);
    out.assembly = std::move(a);
    return out;
  };

  if (size <= residual.m) return finish_trivial({}, "at most m points left");
  if (residual.k == 0) {
    out.status = ResidualStatus::kInfeasible;
    out.note = "no pairs left for uncovered points";
    return out;
  }
  if (!glb) {
    if (auto zero = ZeroRadiusCover(instance, residual)) {
      std::vector<CoverResult> covers;
      for (const Pair& p : *zero) covers.push_back(CoverComponent(instance, {p}, cover_mode));
      return finish_trivial(std::move(covers), "zero-radius cover");
    }
  }

  auto universe = std::make_shared<const PairUniverse>(residual);
  out.universe = universe;
  try {
    if (!UsesOutliers(mode)) {
      out.mu = Tolerance(residual);
      out.raise = RaiseDuals(*universe, out.mu);
      out.structured = BuildStructuredPairs(*universe, *out.raise, out.mu);
      out.invariant_failures = CheckStructured(*universe, *out.structured);
      out.assembly = AssembleNoOutliers(*universe, *out.structured, cover_mode);
      out.dual = out.structured->dual;
      out.dual_objective = DualObjective(*out.dual, residual.active, residual.k, 0, false);
      if (out.structured->special >= 0) out.special = universe->pair(out.structured->special);
    } else {
      out.fixpoint = IterateToFixpoint(*universe);
      out.orderly = MixOrderlyStructured(*universe, *out.fixpoint);
      out.invariant_failures = CheckOrderly(*universe, *out.orderly);
      out.assembly = AssembleOutliers(*universe, *out.orderly, cover_mode);
      out.dual = out.orderly->dual;
      out.dual_objective =
          DualObjective(*out.dual, residual.active, residual.k, residual.m, true);
      out.special = universe->pair(out.orderly->special);
    }
  } catch (const StalledError& e) {
    out.status = ResidualStatus::kStalled;
    out.note = e.what();
    return out;
  }
  out.solution = Merge(instance, mode, residual, out.assembly->covers);
  return out;
}

PipelineResult RunPipeline(const MetricInstance& input, const PipelineOptions& options) {
  if (options.guess < 0) throw ConfigError("guess depth must be nonnegative");
  PipelineResult result;
  result.mode = options.mode;
  result.guess = options.guess;
  result.instance = std::make_shared<const MetricInstance>(InstanceForMode(input, options.mode));
  const MetricInstance& instance = *result.instance;

  if (instance.k() <= options.guess) {
    auto exact = BruteForceOpt(instance);
    if (!exact) throw ConfigError("exhaustive search declined or found no feasible solution");
    result.by_enumeration = true;
    result.solution = exact->solution;
    return result;
  }

  std::optional<std::string> stall_note;
  int index = 0;
  ForEachGuess(instance, options.guess, [&](const Residual& residual) {
    ResidualOutcome outcome = SolveResidual(instance, residual, options.mode);
    outcome.guess_index = index++;
    ++result.residuals;
    if (outcome.status == ResidualStatus::kStalled) {
      ++result.stalled;
      if (!stall_note) stall_note = outcome.note;
    } else if (outcome.status == ResidualStatus::kInfeasible) {
      ++result.infeasible;
    } else {
      auto issues = ValidateSolution(instance, outcome.solution);
      if (!issues.empty()) {
        throw InternalError("guess " + std::to_string(outcome.guess_index) +
                            " produced an invalid solution: " + issues.front());
      }
      if (!result.best || outcome.solution.cost < result.best->solution.cost) {
        result.best = outcome;
      }
    }
    if (options.keep_all) result.outcomes.push_back(std::move(outcome));
  });

  if (!result.best) {
    if (stall_note) throw StalledError(*stall_note);
    throw ConfigError("no guess of depth " + std::to_string(options.guess) +
                      " leads to a feasible solution");
  }
  result.solution = result.best->solution;
  return result;
}

}  // namespace msr
