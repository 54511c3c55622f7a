#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.h"
#include "msr/component_graph.h"
#include "msr/pipeline.h"
#include "msr/rounding.h"

using namespace msr;
using msr::testing::LineInstance;
using msr::testing::Q;

namespace {

MetricInstance WithCardinality(const MetricInstance& base, int L) {
  const int n = base.size();
  std::vector<std::optional<Rational>> d;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      d.push_back(base.reachable(i, j) ? std::optional<Rational>(base.distance(i, j))
                                       : std::nullopt);
    }
  }
  return MetricInstance(n, d, base.k(), base.m(), CardinalityBound{std::vector<int>(n, L)});
}

Rational ExhaustiveDisjoint(const MetricInstance& inst, const std::vector<Pair>& members) {
  const int s = static_cast<int>(members.size());
  Rational best = 0;
  for (int mask = 0; mask < (1 << s); ++mask) {
    PointSet used;
    Rational sum = 0;
    bool ok = true;
    for (int q = 0; q < s && ok; ++q) {
      if (!(mask >> q & 1)) continue;
      PointSet b = Ball(inst, members[q]);
      if (Intersects(used, b)) ok = false;
      used = Union(used, b);
      sum += members[q].radius;
    }
    if (ok) best = std::max(best, sum);
  }
  return best;
}

}  // namespace

TEST_SUITE("rounding") {
  TEST_CASE("cover of a two-ball component on a line") {
    MetricInstance line = LineInstance({0, 1, 2, 3, 4}, 2);
    std::vector<Pair> members = {Pair{0, Q(2)}, Pair{4, Q(2)}};
    CoverResult any = CoverComponent(line, members, CoverMode::kAnyCenter);
    CHECK(any.pair.center == 2);
    CHECK(any.pair.radius == 2);
    CHECK(any.points == PointSet{0, 1, 2, 3, 4});
    CHECK_FALSE(any.witness.has_value());
    CoverResult colo = CoverComponent(line, members, CoverMode::kColocated);
    CHECK(colo.pair.center == 0);
    CHECK(colo.pair.radius == 4);
    REQUIRE(colo.witness.has_value());
    CHECK(*colo.witness == Pair{0, Q(2)});
  }

  TEST_CASE("cover radius is the farthest point of the component from the center") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      MetricInstance inst = RandomInstance(9, 2, 3, 0, seed);
      auto pairs = CandidatePairs(FullResidual(inst));
      std::vector<Pair> chosen = {pairs[pairs.size() / 3], pairs[pairs.size() / 2]};
      for (const auto& comp : Components(inst, chosen)) {
        CoverResult c = CoverComponent(inst, comp, CoverMode::kAnyCenter);
        Rational far = 0;
        for (int j : c.points) far = std::max(far, inst.distance(c.pair.center, j));
        CHECK(c.pair.radius == far);
        // No other center does better.
        for (int i = 0; i < 9; ++i) {
          Rational r = 0;
          for (int j : c.points) r = std::max(r, inst.distance(i, j));
          CHECK(r >= c.pair.radius);
        }
      }
    }
  }

  TEST_CASE("creplaced on the tight family gives one radius-3 ball per copy") {
    for (int k = 1; k <= 3; ++k) {
      MetricInstance g = TightInstance(3, k);
      std::vector<Pair> pairs;
      for (int c = 0; c < k; ++c) {
        for (int l = 1; l <= 3; ++l) pairs.push_back(Pair{TightVertex(3, c, l), Q(1)});
      }
      auto covers = Creplaced(g, pairs, CoverMode::kAnyCenter);
      REQUIRE(covers.size() == static_cast<size_t>(k));
      for (const auto& c : covers) {
        CHECK(c.pair.radius == 3);
        CHECK(c.points.size() == 12);
        CHECK(c.members.size() == 3);
      }
    }
  }

  TEST_CASE("no-outlier assembly on the tight family") {
    for (int k = 1; k <= 2; ++k) {
      MetricInstance g = TightInstance(4, k);
      PairUniverse u(FullResidual(g));
      Rational mu = Tolerance(u.residual());
      StructuredPairs s = BuildStructuredPairs(u, RaiseDuals(u, mu), mu);
      Assembly a = AssembleNoOutliers(u, s, CoverMode::kAnyCenter);
      CHECK(a.outlier_case == 0);
      CHECK(a.input == s.pairs);
      REQUIRE(a.covers.size() == static_cast<size_t>(k));
      for (const auto& c : a.covers) CHECK(c.pair.radius == 3);
    }
  }

  TEST_CASE("outlier assembly stays within k' pairs and m outliers") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      MetricInstance inst = RandomInstance(8, 2, 1 + seed % 3, 1 + seed % 2, seed);
      PairUniverse u(FullResidual(inst));
      OrderlyStructured os = MixOrderlyStructured(u, IterateToFixpoint(u));
      Assembly a = AssembleOutliers(u, os, CoverMode::kAnyCenter);
      CHECK(a.outlier_case >= 1);
      CHECK(a.outlier_case <= 4);
      CHECK(a.covers.size() <= static_cast<size_t>(inst.k()));
      std::vector<Pair> chosen;
      for (const auto& c : a.covers) chosen.push_back(c.pair);
      CHECK(Uncovered(inst, chosen, inst.active()).size() <= static_cast<size_t>(inst.m()));
      CHECK(msr::testing::Contains(a.input, os.special));
    }
  }

  TEST_CASE("outlier mode with m = 0 on the tight graph costs 3") {
    MetricInstance g = TightInstance(3, 1);
    PipelineResult r = RunPipeline(g, {Mode::kOutliers, 0, false});
    CHECK(r.solution.cost == 3);
    CHECK(r.solution.outliers.empty());
    CHECK(ValidateSolution(*r.instance, r.solution).empty());
  }

  TEST_CASE("first-ball assignment and validation") {
    MetricInstance line = LineInstance({0, 1, 5, 9}, 2, 1);
    Solution s = AssignToFirstBall(line, {Pair{0, Q(1)}, Pair{2, Q(4)}});
    CHECK(s.assignment == std::vector<int>{0, 0, 1, 1});
    CHECK(s.cost == 5);
    CHECK(ValidateSolution(line, s).empty());

    Solution partial = AssignToFirstBall(line, {Pair{0, Q(1)}, Pair{2, Q(0)}});
    CHECK(partial.outliers == PointSet{3});
    CHECK(ValidateSolution(line, partial).empty());

    Solution too_many = AssignToFirstBall(line, {Pair{0, Q(0)}, Pair{1, Q(0)}});
    CHECK_FALSE(ValidateSolution(line, too_many).empty());  // two outliers, m = 1

    Solution bad = s;
    bad.pairs.push_back(Pair{3, Q(0)});
    CHECK_FALSE(ValidateSolution(line, bad).empty());  // three pairs, k = 2
    bad = s;
    bad.assignment[3] = 0;
    CHECK_FALSE(ValidateSolution(line, bad).empty());  // 9 is outside (0, 1)
    bad = s;
    bad.cost = 4;
    CHECK_FALSE(ValidateSolution(line, bad).empty());
    bad = s;
    bad.assignment[0] = kUnassigned;
    CHECK_FALSE(ValidateSolution(line, bad).empty());
  }

  TEST_CASE("diameter cost") {
    MetricInstance line = LineInstance({0, 1, 5}, 2);
    Solution s = AssignToFirstBall(line, {Pair{1, Q(1)}, Pair{2, Q(0)}});
    CHECK(DiameterCost(line, s) == 1);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      MetricInstance inst = RandomInstance(9, 2, 2, 0, seed);
      PipelineResult r = RunPipeline(inst, {Mode::kPlain, 0, false});
      CHECK(DiameterCost(*r.instance, r.solution) <= 2 * r.solution.cost);
    }
  }

  TEST_CASE("lower-bound assignment: witness balls only") {
    MetricInstance inst = WithCardinality(LineInstance({0, 1, 2, 10, 11, 12}, 2), 3);
    Solution s = GlbAssign(inst, {{Pair{1, Q(1)}, Pair{1, Q(1)}}, {Pair{4, Q(1)}, Pair{4, Q(1)}}}, {});
    CHECK(s.cost == 2);
    CHECK(s.assignment == std::vector<int>{0, 0, 0, 1, 1, 1});
    CHECK(ValidateSolution(inst, s).empty());
  }

  TEST_CASE("lower-bound assignment: a guessed ball stands alone") {
    MetricInstance inst = WithCardinality(LineInstance({0, 1, 2, 10, 11, 12}, 2), 3);
    Solution s = GlbAssign(inst, {{Pair{1, Q(1)}, Pair{1, Q(1)}}}, {Pair{4, Q(1)}});
    REQUIRE(s.pairs.size() == 2);
    CHECK(s.pairs[1].center == 4);
    CHECK(s.cost == 2);
    CHECK(ValidateSolution(inst, s).empty());
  }

  TEST_CASE("lower-bound assignment: a guessed ball touching a pair joins it") {
    MetricInstance inst = WithCardinality(LineInstance({0, 1, 2, 3, 4}, 2), 2);
    Solution s = GlbAssign(inst, {{Pair{1, Q(2)}, Pair{1, Q(1)}}}, {Pair{4, Q(1)}});
    REQUIRE(s.pairs.size() == 1);
    CHECK(s.pairs[0].center == 1);
    CHECK(s.pairs[0].radius == 3);
    CHECK(s.assignment == std::vector<int>{0, 0, 0, 0, 0});
    CHECK(s.cost <= Q(2) + 2 * Q(1));
  }

  TEST_CASE("lower-bound assignment rejects bad input") {
    MetricInstance inst = WithCardinality(LineInstance({0, 1, 2, 3, 4}, 2), 3);
    CHECK_THROWS_AS(GlbAssign(inst, {{Pair{1, Q(1)}, Pair{2, Q(1)}}}, {}), InternalError);
    CHECK_THROWS_AS(GlbAssign(inst, {{Pair{1, Q(1)}, Pair{1, Q(2)}}}, {}), InternalError);
    // Cluster {1} is below the bound of three clients.
    CHECK_THROWS_AS(GlbAssign(inst, {{Pair{1, Q(0)}, Pair{1, Q(0)}}}, {}), InternalError);
    CHECK_THROWS_AS(
        GlbAssign(inst, {{Pair{1, Q(1)}, Pair{1, Q(1)}}, {Pair{2, Q(1)}, Pair{2, Q(1)}}}, {}),
        InternalError);
  }

  TEST_CASE("component graph radius of a single ball is its radius") {
    MetricInstance line = LineInstance({0, 1, 2, 3, 4}, 1);
    ComponentGraph graph(line, {Pair{2, Q(2)}});
    CHECK(graph.antichain().size() == 1);
    CHECK(graph.vertices().size() == 5 + 2);
    GraphRadius r = RadiusOf(graph);
    CHECK(r.radius == 2);
    CHECK(r.center_point == 2);
  }

  TEST_CASE("nested balls collapse to the outer one") {
    MetricInstance line = LineInstance({0, 1, 2, 3, 4}, 1);
    ComponentGraph graph(line, {Pair{2, Q(1)}, Pair{2, Q(2)}});
    REQUIRE(graph.antichain().size() == 1);
    CHECK(graph.antichain()[0].radius == 2);
  }

  TEST_CASE("cover radius never exceeds the component graph radius") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      MetricInstance inst = RandomInstance(8, 2, 3, 0, seed);
      auto pairs = CandidatePairs(FullResidual(inst));
      std::mt19937_64 rng(seed);
      std::vector<Pair> chosen;
      for (const Pair& p : pairs) {
        if (rng() % 5 == 0) chosen.push_back(p);
      }
      for (const auto& comp : Components(inst, chosen)) {
        ComponentGraph graph(inst, comp);
        GraphRadius gr = RadiusOf(graph);
        CoverResult c = CoverComponent(inst, comp, CoverMode::kAnyCenter);
        CHECK(c.pair.radius <= gr.radius);
      }
    }
  }

  TEST_CASE("max disjoint subset matches exhaustive enumeration") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      MetricInstance inst = RandomInstance(9, 2, 3, 0, seed);
      auto pairs = CandidatePairs(FullResidual(inst));
      std::mt19937_64 rng(seed * 7);
      std::vector<Pair> members;
      for (int q = 0; q < 10; ++q) members.push_back(pairs[rng() % pairs.size()]);
      std::sort(members.begin(), members.end(), PairLess);
      members.erase(std::unique(members.begin(), members.end()), members.end());
      DisjointSubset d = MaxDisjointSubset(inst, members);
      CHECK(d.exact);
      CHECK(d.radius_sum == ExhaustiveDisjoint(inst, members));
      PointSet used;
      Rational sum = 0;
      for (const Pair& p : d.pairs) {
        CHECK_FALSE(Intersects(used, Ball(inst, p)));
        used = Union(used, Ball(inst, p));
        sum += p.radius;
      }
      CHECK(sum == d.radius_sum);
    }
  }

  TEST_CASE("max disjoint subset stays exact on a long chain") {
    std::vector<long> xs;
    for (long x = 0; x < 30; ++x) xs.push_back(x);
    MetricInstance line = LineInstance(xs, 1);
    std::vector<Pair> members;
    for (int i = 0; i < 30; ++i) members.push_back(Pair{i, Q(1)});
    DisjointSubset d = MaxDisjointSubset(line, members);
    // Balls at i and j meet when |i - j| <= 2: every third one fits.
    CHECK(d.exact);
    CHECK(d.radius_sum == 10);
  }

  TEST_CASE("disjoint dual bound") {
    MetricInstance g = TightInstance(3, 1);
    PairUniverse u(FullResidual(g));
    SubroutineRun run = RunSubroutine(u, Q(1, 6));
    int v1 = u.Find(Pair{TightVertex(3, 0, 1), Q(1)});
    REQUIRE(v1 >= 0);
    // One tight ball of radius 1 plus the five tight points outside it.
    PointSet outside = Difference(g.active(), u.active_ball(v1));
    auto ok = DisjointDualBound(u, run.dual, {v1}, outside);
    REQUIRE(ok.has_value());
    CHECK(*ok);
    int v2 = u.Find(Pair{TightVertex(3, 0, 2), Q(1)});
    CHECK_FALSE(DisjointDualBound(u, run.dual, {v1, v2}, {}).has_value());  // overlapping
    int big = u.Find(Pair{TightVertex(3, 0, 1), Q(3)});
    CHECK_FALSE(DisjointDualBound(u, run.dual, {big}, {}).has_value());  // not tight
    DualSolution no_gamma = run.dual;
    no_gamma.gamma.reset();
    CHECK_FALSE(DisjointDualBound(u, no_gamma, {v1}, {}).has_value());
  }
}
