#include "msr/rounding.h"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace msr {
namespace {

PointSet UnionOfBalls(const MetricInstance& instance, const std::vector<Pair>& pairs) {
  PointSet out;
  for (const Pair& p : pairs) out = Union(out, Ball(instance, p));
  return out;
}

Rational RadiusSum(const std::vector<Pair>& pairs) {
  Rational sum = 0;
  for (const Pair& p : pairs) sum += p.radius;
  return sum;
}

std::vector<int> Prefix(const std::vector<int>& v, int count) {
  return std::vector<int>(v.begin(), v.begin() + count);
}

std::vector<int> With(std::vector<int> v, int extra) {
  v.push_back(extra);
  return v;
}

}  // namespace

std::string ModeName(CoverMode mode) {
  return mode == CoverMode::kAnyCenter ? "any-center" : "colocated";
}

DisjointSubset MaxDisjointSubset(const MetricInstance& instance,
                                 const std::vector<Pair>& members) {
  const int size = static_cast<int>(members.size());
  std::vector<int> order(size);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return members[a].radius > members[b].radius;
  });
  std::vector<PointSet> balls(size);
  for (int q = 0; q < size; ++q) balls[q] = Ball(instance, members[order[q]]);
  std::vector<std::vector<char>> clash(size, std::vector<char>(size, 0));
  for (int a = 0; a < size; ++a) {
    for (int b = a + 1; b < size; ++b) clash[a][b] = clash[b][a] = Intersects(balls[a], balls[b]);
  }

  DisjointSubset out;
  // Greedy by descending radius seeds the incumbent.
  std::vector<int> best;
  for (int q = 0; q < size; ++q) {
    if (std::none_of(best.begin(), best.end(), [&](int b) { return clash[q][b] != 0; })) {
      best.push_back(q);
    }
  }
  Rational best_sum = 0;
  for (int q : best) best_sum += members[order[q]].radius;

  // Branch and bound; the bound adds every later member no chosen ball
  // clashes with. Gives up (exact = false) past the node budget.
  constexpr long kNodeBudget = 5'000'000;
  long nodes = 0;
  std::vector<int> blocked(size, 0);
  std::vector<int> chosen;
  std::function<void(int, const Rational&)> search = [&](int q, const Rational& sum) {
    if (++nodes > kNodeBudget) {
      out.exact = false;
      return;
    }
    while (q < size && blocked[q] != 0) ++q;
    if (q == size) {
      if (sum > best_sum) {
        best_sum = sum;
        best = chosen;
      }
      return;
    }
    Rational bound = sum;
    for (int r = q; r < size; ++r) {
      if (blocked[r] == 0) bound += members[order[r]].radius;
    }
    if (bound <= best_sum) return;
    chosen.push_back(q);
    for (int r = q + 1; r < size; ++r) blocked[r] += clash[q][r];
    search(q + 1, sum + members[order[q]].radius);
    for (int r = q + 1; r < size; ++r) blocked[r] -= clash[q][r];
    chosen.pop_back();
    if (!out.exact) return;
    search(q + 1, sum);
  };
  search(0, Rational(0));
  for (int q : best) out.pairs.push_back(members[order[q]]);
  out.radius_sum = RadiusSum(out.pairs);
  return out;
}

CoverResult CoverComponent(const MetricInstance& instance, const std::vector<Pair>& members,
                           CoverMode mode) {
  if (members.empty()) throw UsageError("cannot cover an empty component");
  CoverResult out;
  out.members = members;
  out.mode = mode;
  out.points = UnionOfBalls(instance, members);

  std::vector<int> centers;
  if (mode == CoverMode::kAnyCenter) {
    centers.resize(instance.size());
    std::iota(centers.begin(), centers.end(), 0);
  } else {
    for (const Pair& p : members) centers.push_back(p.center);
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  }

  bool found = false;
  for (int c : centers) {
    bool ok = true;
    Rational radius = 0;
    int anchor = c;
    for (int j : out.points) {
      if (!instance.reachable(c, j)) {
        ok = false;
        break;
      }
      if (instance.distance(c, j) > radius) {
        radius = instance.distance(c, j);
        anchor = j;
      }
    }
    if (!ok) continue;
    std::optional<Pair> witness;
    if (mode == CoverMode::kColocated) {
      for (const Pair& p : members) {
        if (p.center == c && (!witness || PairLess(p, *witness))) witness = p;
      }
      if (witness->radius > radius) {
        radius = witness->radius;
        anchor = witness->anchor;
      }
    }
    if (!found || radius < out.pair.radius) {
      found = true;
      out.pair = Pair{c, radius, anchor};
      out.witness = witness;
    }
  }
  if (!found) throw InternalError("no center reaches every point of the component");
  return out;
}

std::vector<CoverResult> Creplaced(const MetricInstance& instance, const std::vector<Pair>& pairs,
                                   CoverMode mode) {
  std::vector<CoverResult> out;
  for (const auto& component : Components(instance, pairs)) {
    out.push_back(CoverComponent(instance, component, mode));
  }
  return out;
}

std::vector<Pair> ToPairs(const PairUniverse& universe, const std::vector<int>& indices) {
  std::vector<Pair> out;
  out.reserve(indices.size());
  for (int p : indices) out.push_back(universe.pair(p));
  return out;
}

Assembly AssembleNoOutliers(const PairUniverse& universe, const StructuredPairs& structured,
                            CoverMode mode) {
  Assembly out;
  out.input = structured.pairs;
  out.covers = Creplaced(universe.instance(), ToPairs(universe, out.input), mode);
  if (static_cast<int>(out.covers.size()) > universe.residual().k) {
    throw InternalError("no-outlier assembly produced " + std::to_string(out.covers.size()) +
                        " pairs for k' = " + std::to_string(universe.residual().k));
  }
  return out;
}

Assembly AssembleOutliers(const PairUniverse& universe, const OrderlyStructured& os,
                          CoverMode mode) {
  const int k = universe.residual().k;
  const int m = universe.residual().m;
  const int ell = os.ell;
  const int ell_prime = os.ell_prime;
  const std::vector<int>& b = os.pairs;
  auto with_special = [&](int h) { return With(Prefix(b, h), os.special); };

  Assembly out;
  if (ell_prime == ell) {
    out.outlier_case = 1;
    out.input = with_special(ell);
  } else if (ell_prime == ell - 1) {
    out.outlier_case = 2;
    out.input = with_special(ell - 1);
  } else if (ComponentCount(universe, with_special(ell)) > k) {
    out.outlier_case = 3;
    int chosen = -1;
    for (int h = ell - 1; h >= ell_prime; --h) {
      if (ComponentCount(universe, with_special(h + 1)) > k &&
          ComponentCount(universe, with_special(h)) <= k) {
        chosen = h;
        break;
      }
    }
    if (chosen < 0) throw InternalError("no crossing prefix between ell' and ell");
    out.input = with_special(chosen);
  } else {
    out.outlier_case = 4;
    out.input = With(With(Prefix(b, ell - 1), b[ell - 1]), os.special);
  }

  out.covers = Creplaced(universe.instance(), ToPairs(universe, out.input), mode);
  std::vector<Pair> chosen;
  for (const auto& c : out.covers) chosen.push_back(c.pair);
  int uncovered = static_cast<int>(
      Uncovered(universe.instance(), chosen, universe.residual().active).size());
  if (static_cast<int>(out.covers.size()) > k || uncovered > m) {
    throw InternalError("outlier assembly case " + std::to_string(out.outlier_case) +
                        " gave " + std::to_string(out.covers.size()) + " pairs and " +
                        std::to_string(uncovered) + " uncovered points");
  }
  return out;
}

Solution AssignToFirstBall(const MetricInstance& instance, const std::vector<Pair>& pairs) {
  Solution out;
  out.pairs = pairs;
  out.assignment.assign(instance.size(), kUnassigned);
  std::vector<char> active(instance.size(), 0);
  for (int j : instance.active()) active[j] = 1;
  for (int j = 0; j < instance.size(); ++j) {
    for (size_t q = 0; q < pairs.size(); ++q) {
      if (instance.Within(pairs[q].center, j, pairs[q].radius)) {
        out.assignment[j] = static_cast<int>(q);
        break;
      }
    }
    if (out.assignment[j] == kUnassigned && active[j]) {
      out.assignment[j] = kOutlier;
      out.outliers.push_back(j);
    }
  }
  out.cost = RadiusSum(pairs);
  return out;
}

Solution GlbAssign(const MetricInstance& instance, const std::vector<GlbInput>& pairs,
                   const std::vector<Pair>& guessed) {
  const int n = instance.size();
  std::vector<int> owner(n, -1);
  std::vector<int> cluster_center;

  for (const GlbInput& in : pairs) {
    if (in.witness.center != in.pair.center || in.witness.radius > in.pair.radius) {
      throw InternalError("witness " + Describe(in.witness) + " does not fit " +
                          Describe(in.pair));
    }
    int id = static_cast<int>(cluster_center.size());
    cluster_center.push_back(in.pair.center);
    for (int j : Ball(instance, in.witness)) {
      if (owner[j] != -1) throw InternalError("witness balls overlap at point " + std::to_string(j));
      owner[j] = id;
    }
  }

  std::vector<PointSet> guessed_balls;
  for (const Pair& g : guessed) guessed_balls.push_back(Ball(instance, g));
  std::vector<char> alive(guessed.size(), 1);
  auto strip = [&] {
    for (size_t g = 0; g < guessed.size(); ++g) {
      if (!alive[g]) continue;
      for (int j : guessed_balls[g]) {
        if (owner[j] != -1) {
          alive[g] = 0;
          break;
        }
      }
    }
  };

  for (size_t l = 0; l < pairs.size(); ++l) {
    PointSet reach = Ball(instance, pairs[l].pair);
    std::vector<char> used(guessed.size(), 0);
    for (bool grew = true; grew;) {
      grew = false;
      for (size_t g = 0; g < guessed.size(); ++g) {
        if (!alive[g] || used[g] || !Intersects(reach, guessed_balls[g])) continue;
        used[g] = 1;
        reach = Union(reach, guessed_balls[g]);
        grew = true;
      }
    }
    for (int j : reach) {
      if (owner[j] == -1) owner[j] = static_cast<int>(l);
    }
    strip();
  }

  std::vector<Pair> rest;
  for (size_t g = 0; g < guessed.size(); ++g) {
    if (alive[g]) rest.push_back(guessed[g]);
  }
  for (const auto& component : Components(instance, rest)) {
    PointSet reach = UnionOfBalls(instance, component);
    int best = -1;
    Rational best_radius;
    for (const Pair& p : component) {
      Rational radius = 0;
      bool ok = true;
      for (int j : reach) {
        if (!instance.reachable(p.center, j)) {
          ok = false;
          break;
        }
        radius = std::max(radius, instance.distance(p.center, j));
      }
      if (!ok) continue;
      if (best == -1 || radius < best_radius || (radius == best_radius && p.center < best)) {
        best = p.center;
        best_radius = radius;
      }
    }
    if (best == -1) throw InternalError("guessed component has no reaching center");
    int id = static_cast<int>(cluster_center.size());
    cluster_center.push_back(best);
    for (int j : reach) {
      if (owner[j] != -1) throw InternalError("guessed component reuses an assigned point");
      owner[j] = id;
    }
  }

  // Merge clusters that share a center.
  std::map<int, int> slot;
  std::vector<int> remap(cluster_center.size());
  Solution out;
  for (size_t c = 0; c < cluster_center.size(); ++c) {
    auto [it, fresh] = slot.emplace(cluster_center[c], static_cast<int>(out.pairs.size()));
    if (fresh) out.pairs.push_back(Pair{cluster_center[c], Rational(0), cluster_center[c]});
    remap[c] = it->second;
  }
  std::vector<char> active(n, 0);
  for (int j : instance.active()) active[j] = 1;
  out.assignment.assign(n, kUnassigned);
  for (int j = 0; j < n; ++j) {
    if (owner[j] == -1) {
      if (active[j]) {
        out.assignment[j] = kOutlier;
        out.outliers.push_back(j);
      }
      continue;
    }
    int c = remap[owner[j]];
    out.assignment[j] = c;
    Pair& p = out.pairs[c];
    if (instance.distance(p.center, j) > p.radius) {
      p.radius = instance.distance(p.center, j);
      p.anchor = j;
    }
  }
  out.cost = 0;
  for (const Pair& p : out.pairs) out.cost += p.radius;

  if (instance.lower_bounds()) {
    std::vector<PointSet> members(out.pairs.size());
    for (int j = 0; j < n; ++j) {
      if (out.assignment[j] >= 0) members[out.assignment[j]].push_back(j);
    }
    for (size_t c = 0; c < out.pairs.size(); ++c) {
      if (!AllowedClientSet(instance, out.pairs[c].center, members[c])) {
        throw InternalError("cluster at " + std::to_string(out.pairs[c].center) +
                            " violates its lower bound");
      }
    }
  }
  Rational limit = 0;
  for (const GlbInput& in : pairs) limit += in.pair.radius;
  limit += 2 * RadiusSum(guessed);
  if (out.cost > limit) {
    throw InternalError("assignment cost " + ToString(out.cost) + " exceeds " + ToString(limit));
  }
  return out;
}

std::vector<std::string> ValidateSolution(const MetricInstance& instance,
                                          const Solution& solution) {
  std::vector<std::string> issues;
  const int n = instance.size();
  const int count = static_cast<int>(solution.pairs.size());
  if (count > instance.k()) {
    issues.push_back(std::to_string(count) + " pairs exceed k = " + std::to_string(instance.k()));
  }
  if (static_cast<int>(solution.assignment.size()) != n) {
    issues.push_back("assignment has the wrong length");
    return issues;
  }
  std::vector<char> active(n, 0);
  for (int j : instance.active()) active[j] = 1;
  PointSet outliers;
  std::vector<PointSet> members(count);
  for (int j = 0; j < n; ++j) {
    int a = solution.assignment[j];
    if (a >= 0) {
      if (a >= count) {
        issues.push_back("point " + std::to_string(j) + " assigned to a missing pair");
        continue;
      }
      const Pair& p = solution.pairs[a];
      if (!instance.Within(p.center, j, p.radius)) {
        issues.push_back("point " + std::to_string(j) + " lies outside " + Describe(p));
      }
      members[a].push_back(j);
    } else if (a == kOutlier) {
      if (!active[j]) issues.push_back("inactive point " + std::to_string(j) + " marked outlier");
      outliers.push_back(j);
    } else if (a == kUnassigned) {
      if (active[j]) issues.push_back("active point " + std::to_string(j) + " left unassigned");
    } else {
      issues.push_back("point " + std::to_string(j) + " has an invalid assignment");
    }
  }
  if (outliers != solution.outliers) issues.push_back("outlier list disagrees with assignment");
  if (static_cast<int>(outliers.size()) > instance.m()) {
    issues.push_back(std::to_string(outliers.size()) + " outliers exceed m = " +
                     std::to_string(instance.m()));
  }
  if (instance.lower_bounds()) {
    for (int c = 0; c < count; ++c) {
      if (!AllowedClientSet(instance, solution.pairs[c].center, members[c])) {
        issues.push_back("cluster " + Describe(solution.pairs[c]) + " violates its lower bound");
      }
    }
  }
  if (RadiusSum(solution.pairs) != solution.cost) issues.push_back("cost is not the radius sum");
  return issues;
}

Rational DiameterCost(const MetricInstance& instance, const Solution& solution) {
  std::vector<PointSet> members(solution.pairs.size());
  for (int j = 0; j < static_cast<int>(solution.assignment.size()); ++j) {
    if (solution.assignment[j] >= 0) members[solution.assignment[j]].push_back(j);
  }
  Rational total = 0;
  for (const PointSet& group : members) {
    Rational widest = 0;
    for (size_t a = 0; a < group.size(); ++a) {
      for (size_t b = a + 1; b < group.size(); ++b) {
        if (!instance.reachable(group[a], group[b])) {
          throw InternalError("cluster joins unreachable points");
        }
        widest = std::max(widest, instance.distance(group[a], group[b]));
      }
    }
    total += widest;
  }
  return total;
}

std::optional<bool> DisjointDualBound(const PairUniverse& universe, const DualSolution& dual,
                                      const std::vector<int>& disjoint,
                                      const PointSet& tight_out) {
  if (!dual.gamma) return std::nullopt;
  PointSet covered;
  for (int p : disjoint) {
    if (Slack(universe, dual, p) != 0) return std::nullopt;
    if (Intersects(covered, universe.active_ball(p))) return std::nullopt;
    covered = Union(covered, universe.active_ball(p));
  }
  for (int j : tight_out) {
    if (!universe.is_active(j) || dual.alpha[j] != *dual.gamma) return std::nullopt;
  }
  if (Intersects(covered, tight_out)) return std::nullopt;

  Rational lhs = 0;
  for (int p : disjoint) lhs += universe.pair(p).radius;
  Rational rhs = 0;
  for (int j : universe.residual().active) rhs += dual.alpha[j];
  rhs -= Rational(static_cast<long>(disjoint.size())) * dual.lambda;
  rhs -= Rational(static_cast<long>(tight_out.size())) * *dual.gamma;
  return lhs <= rhs;
}

}  // namespace msr
