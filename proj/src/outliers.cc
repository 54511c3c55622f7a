#include "msr/outliers.h"

#include <algorithm>
#include <map>
#include <optional>

namespace msr {
namespace {

std::vector<int> Prefix(const std::vector<int>& v, size_t count) {
  return std::vector<int>(v.begin(), v.begin() + std::min(count, v.size()));
}

std::vector<int> With(std::vector<int> v, int extra) {
  v.push_back(extra);
  return v;
}

bool Contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

int OutCount(const PairUniverse& universe, const std::vector<int>& pairs) {
  return static_cast<int>(Uncovered(universe, pairs).size());
}

}  // namespace

SubroutineRun RunSubroutine(const PairUniverse& universe, const Rational& lambda) {
  if (lambda < 0) throw UsageError("lambda must be nonnegative");
  const MetricInstance& instance = universe.instance();
  const Residual& residual = universe.residual();
  const int pairs = universe.size();

  SubroutineRun run;
  run.lambda = lambda;
  run.dual = DualSolution::Zero(instance.size());
  run.dual.lambda = lambda;

  std::vector<Rational> slack(pairs);
  for (int p = 0; p < pairs; ++p) slack[p] = universe.pair(p).radius + lambda;
  std::vector<char> picked(pairs, 0), tight(pairs, 0);
  std::vector<char> covered(instance.size(), 0), tight_covered(instance.size(), 0);
  int uncovered = static_cast<int>(residual.active.size());

  bool done = uncovered <= residual.m;
  Rational time = 0;
  while (!done) {
    if (static_cast<int>(run.phases.size()) > pairs) {
      throw InternalError("subroutine ran more phases than there are pairs");
    }
    Phase phase;
    for (int j : residual.active) {
      if (!tight_covered[j]) phase.rising.push_back(j);
    }
    auto pending = [&] {
      std::vector<int> out;
      for (int p = 0; p < pairs; ++p) {
        if (!picked[p] && slack[p] == 0) out.push_back(p);
      }
      return out;
    };
    phase.became_tight = pending();
    if (phase.became_tight.empty()) {
      std::optional<Rational> step;
      std::vector<int> counts(pairs, 0);
      for (int p = 0; p < pairs; ++p) {
        counts[p] = IntersectionSize(universe.active_ball(p), phase.rising);
        if (counts[p] == 0) continue;
        Rational t = slack[p] / counts[p];
        if (!step || t < *step) step = t;
      }
      if (!step) {
        throw StalledError("uncovered points lie in no candidate ball at lambda " +
                           ToString(lambda));
      }
      phase.duration = *step;
      for (int j : phase.rising) run.dual.alpha[j] += *step;
      for (int p = 0; p < pairs; ++p) {
        if (counts[p] != 0) slack[p] -= *step * counts[p];
      }
      time += *step;
      phase.became_tight = pending();
    }
    phase.end_time = time;
    for (int p : phase.became_tight) {
      tight[p] = 1;
      for (int j : universe.active_ball(p)) tight_covered[j] = 1;
    }
    for (int p : phase.became_tight) {
      picked[p] = 1;
      run.picked.push_back(p);
      for (int j : universe.active_ball(p)) {
        if (!covered[j]) {
          covered[j] = 1;
          --uncovered;
        }
      }
      if (uncovered <= residual.m) {
        done = true;
        break;
      }
    }
    run.phases.push_back(std::move(phase));
  }

  for (int p = 0; p < pairs; ++p) {
    if (slack[p] == 0) run.tight.push_back(p);
  }
  Rational gamma = 0;
  for (int j : residual.active) gamma = std::max(gamma, run.dual.alpha[j]);
  run.dual.gamma = gamma;
  run.components = ComponentCount(universe, run.picked);
  return run;
}

PhaseEnd PhaseEndFunction(const PairUniverse& universe, const std::vector<Phase>& history,
                          const Rational& lo, const Rational& hi) {
  const int pairs = universe.size();
  const Affine identity{Rational(0), Rational(1)};

  // counts[p][q]: points of pair p rising in history phase q.
  auto count_in = [&](int p, const PointSet& rising) {
    return IntersectionSize(universe.active_ball(p), rising);
  };

  std::vector<char> closed(pairs, 0);
  std::vector<Affine> durations;
  Affine elapsed;
  for (size_t q = 0; q < history.size(); ++q) {
    const Phase& phase = history[q];
    if (phase.became_tight.empty()) throw InternalError("history phase with no tight pair");
    int p = phase.became_tight.front();
    Affine remaining = Affine{universe.pair(p).radius, Rational(0)} + identity;
    for (size_t e = 0; e < q; ++e) {
      remaining = remaining - Rational(count_in(p, history[e].rising)) * durations[e];
    }
    int c = count_in(p, phase.rising);
    if (c == 0) throw InternalError("history pair holds no rising point in its phase");
    durations.push_back(Rational(1, c) * remaining);
    elapsed = elapsed + durations.back();
    for (int t : phase.became_tight) closed[t] = 1;
  }

  PointSet rising;
  {
    std::vector<char> covered(universe.instance().size(), 0);
    for (int p = 0; p < pairs; ++p) {
      if (!closed[p]) continue;
      for (int j : universe.active_ball(p)) covered[j] = 1;
    }
    for (int j : universe.residual().active) {
      if (!covered[j]) rising.push_back(j);
    }
  }

  PhaseEnd out;
  out.previous_end = elapsed;
  std::vector<Affine> lines;
  const Rational probe = (lo + hi) / 2;
  for (int p = 0; p < pairs; ++p) {
    if (closed[p]) continue;
    int c = count_in(p, rising);
    if (c == 0) continue;
    Affine remaining = Affine{universe.pair(p).radius, Rational(0)} + identity;
    for (size_t e = 0; e < history.size(); ++e) {
      remaining = remaining - Rational(count_in(p, history[e].rising)) * durations[e];
    }
    if (!(remaining(probe) > 0)) {
      throw InternalError("pair " + Describe(universe.pair(p)) +
                          " would close before its phase inside the interval");
    }
    lines.push_back(elapsed + Rational(1, c) * remaining);
    out.line_pairs.push_back(p);
  }
  if (lines.empty()) throw StalledError("no pair can close the next phase");
  out.end_time = LowerEnvelope(lines, lo, hi);
  return out;
}

Rational UpperLambda(const Residual& residual) {
  return Rational(2 * static_cast<long>(residual.active.size()) * residual.k) *
             residual.radius_cap +
         1;
}

FixpointResult IterateToFixpoint(const PairUniverse& universe) {
  const int k = universe.residual().k;
  std::map<Rational, SubroutineRun> cache;
  auto run_at = [&](const Rational& x) -> const SubroutineRun& {
    auto it = cache.find(x);
    if (it == cache.end()) it = cache.emplace(x, RunSubroutine(universe, x)).first;
    return it->second;
  };
  auto side = [&](const Rational& x) {
    return run_at(x).components > k ? Side::kMore : Side::kLessEq;
  };

  FixpointResult out;
  if (side(0) == Side::kLessEq) {
    out.zero_lambda = true;
    out.left = out.middle = out.right = run_at(0);
    return out;
  }
  Rational lo = 0;
  Rational hi = UpperLambda(universe.residual());
  if (side(hi) != Side::kLessEq) {
    throw InternalError("routine at lambda " + ToString(hi) + " still has more than k' components");
  }

  std::vector<Phase> history;
  int s = 1;
  const int cap = universe.size() + 1;
  while (true) {
    PhaseEnd f = PhaseEndFunction(universe, history, lo, hi);
    const std::vector<Rational>& points = f.end_time.breakpoints;
    Bracket bracket = BreakpointBinarySearch(points, side);
    out.trace.push_back({s, lo, hi, static_cast<int>(points.size()), bracket.probes});
    out.envelopes.push_back({s, history, std::move(f)});
    lo = out.envelopes.back().function.end_time.breakpoints[bracket.left];
    hi = out.envelopes.back().function.end_time.breakpoints[bracket.right];
    ++s;
    if (s > cap) throw InternalError("phase iteration exceeded |B| + 1");
    const SubroutineRun& middle = run_at((lo + hi) / 2);
    if (static_cast<int>(middle.phases.size()) <= s - 1) break;
    history.assign(middle.phases.begin(), middle.phases.begin() + (s - 1));
  }
  out.final_iteration = s;
  out.lo = lo;
  out.hi = hi;
  out.left = run_at(lo);
  out.right = run_at(hi);
  out.middle = run_at((lo + hi) / 2);
  return out;
}

std::vector<int> CoveringProcedure(const PairUniverse& universe, const std::vector<int>& seed,
                                   const std::vector<int>& sequence) {
  const int m = universe.residual().m;
  std::vector<int> q = seed;
  if (OutCount(universe, q) <= m) return q;
  for (int p : sequence) {
    if (Contains(q, p)) continue;
    q.push_back(p);
    if (OutCount(universe, q) <= m) return q;
  }
  throw InternalError("covering procedure ran out of pairs");
}

OrderlyStructured MixOrderlyStructured(const PairUniverse& universe,
                                       const FixpointResult& fixpoint) {
  const int k = universe.residual().k;
  OrderlyStructured out;
  if (fixpoint.zero_lambda) {
    const auto& p = fixpoint.left.picked;
    if (p.empty()) throw InternalError("zero-lambda run picked nothing");
    out.pairs = p;
    out.ell = static_cast<int>(p.size()) - 1;
    out.ell_prime = out.ell;
    out.special = p.back();
    out.dual = fixpoint.left.dual;
    out.zero_lambda = true;
    return out;
  }

  const bool middle_merges = fixpoint.middle.components <= k;
  const std::vector<int>& more = middle_merges ? fixpoint.left.picked : fixpoint.middle.picked;
  const std::vector<int>& less = middle_merges ? fixpoint.middle.picked : fixpoint.right.picked;
  out.dual = middle_merges ? fixpoint.left.dual : fixpoint.right.dual;
  out.from_left = middle_merges;
  if (more.empty() || less.empty()) throw InternalError("endpoint run picked nothing");

  std::vector<int> shared;
  for (size_t idx = 0; idx + 1 < more.size(); ++idx) {
    int p = more[idx];
    if (std::find(less.begin(), less.end() - 1, p) != less.end() - 1) shared.push_back(p);
  }
  std::vector<int> less_seq, more_seq;
  for (int p : less) {
    if (!Contains(shared, p)) less_seq.push_back(p);
  }
  for (int p : more) {
    if (!Contains(shared, p)) more_seq.push_back(p);
  }

  auto run_from = [&](size_t i) {
    std::vector<int> seq(less_seq.begin() + i, less_seq.end());
    seq.insert(seq.end(), more_seq.begin(), more_seq.end());
    return CoveringProcedure(universe, shared, seq);
  };

  std::vector<int> current = run_from(0);
  if (ComponentCount(universe, current) > k) {
    throw InternalError("covering with the merging run first still has > k' components");
  }
  for (size_t i = 0; i < less_seq.size(); ++i) {
    std::vector<int> next = run_from(i + 1);
    if (ComponentCount(universe, next) <= k) {
      current = std::move(next);
      continue;
    }
    const int special = less_seq[i];
    if (Contains(next, special)) {
      throw InternalError("special pair " + Describe(universe.pair(special)) +
                          " already belongs to the mixed set");
    }
    // current = shared, special, then a prefix of next's additions.
    std::vector<int> expected = Prefix(next, current.size() - 1);
    std::vector<int> without;
    for (int p : current) {
      if (p != special) without.push_back(p);
    }
    if (without != expected) throw InternalError("mixed sets are not prefix aligned");
    out.pairs = next;
    out.ell = static_cast<int>(next.size());
    out.ell_prime = static_cast<int>(current.size()) - 1;
    out.special = special;
    out.pairs.push_back(special);
    return out;
  }
  throw InternalError("no crossing index between the two endpoint runs");
}

std::vector<std::string> CheckOrderly(const PairUniverse& universe, const OrderlyStructured& os) {
  std::vector<std::string> failures;
  const int k = universe.residual().k;
  const int m = universe.residual().m;
  const int size = static_cast<int>(os.pairs.size());
  if (!os.dual.gamma) {
    failures.push_back("dual has no gamma");
    return failures;
  }
  if (os.ell < 0 || os.ell >= size || os.pairs[os.ell] != os.special) {
    failures.push_back("special pair is not at position ell");
    return failures;
  }
  if (!os.zero_lambda && os.ell < 1) failures.push_back("ell must be at least 1");
  if (os.ell_prime < 0 || os.ell_prime > os.ell) failures.push_back("ell' outside [0, ell]");
  if (Contains(Prefix(os.pairs, os.ell), os.special)) {
    failures.push_back("special pair repeats inside the first ell pairs");
  }
  if (!IsFeasible(universe, os.dual)) failures.push_back("dual is infeasible");

  for (int p : os.pairs) {
    if (Slack(universe, os.dual, p) != 0) {
      failures.push_back("pair " + Describe(universe.pair(p)) + " is not tight");
    }
  }
  for (int j : Uncovered(universe, Prefix(os.pairs, os.ell_prime))) {
    if (os.dual.alpha[j] != *os.dual.gamma) {
      failures.push_back("point " + std::to_string(j) + " outside the first ell' pairs is not tight");
    }
  }

  for (int h = 0; h < os.ell; ++h) {
    if (!(OutCount(universe, Prefix(os.pairs, h)) > m)) {
      failures.push_back("first " + std::to_string(h) + " pairs leave at most m points");
    }
  }
  for (int h = os.ell_prime; h <= os.ell; ++h) {
    if (!(OutCount(universe, With(Prefix(os.pairs, h), os.special)) <= m)) {
      failures.push_back("first " + std::to_string(h) +
                         " pairs plus special leave more than m points");
    }
  }

  int big = ComponentCount(universe, Prefix(os.pairs, os.ell));
  int small = ComponentCount(universe, With(Prefix(os.pairs, os.ell_prime), os.special));
  if (!os.zero_lambda && !(big > k)) {
    failures.push_back("first ell pairs form " + std::to_string(big) +
                       " components, need > " + std::to_string(k));
  }
  if (!(small <= k)) {
    failures.push_back("first ell' pairs plus special form " + std::to_string(small) +
                       " components, need <= " + std::to_string(k));
  }
  return failures;
}

}  // namespace msr
