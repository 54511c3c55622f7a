#include <algorithm>

#include "doctest.h"
#include "helpers.h"
#include "msr/metric.h"

using namespace msr;
using msr::testing::Q;

TEST_SUITE("metric_core") {
  TEST_CASE("ball of v_1 at radius 1 in the h=3 tight graph has seven points") {
    MetricInstance g = TightInstance(3, 1);
    PointSet ball = Ball(g, Pair{TightVertex(3, 0, 1), Q(1)});
    CHECK(ball.size() == 7);
    CHECK(msr::testing::Contains(ball, TightVertex(3, 0, 1)));
    for (int i = 2; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) CHECK(msr::testing::Contains(ball, TightVertex(3, 0, i, j)));
    }
    CHECK_FALSE(msr::testing::Contains(ball, TightVertex(3, 0, 1, 1)));
  }

  TEST_CASE("zero-radius ball is the center alone") {
    MetricInstance inst = RandomInstance(6, 2, 2, 0, 3);
    for (int p = 0; p < 6; ++p) CHECK(Ball(inst, Pair{p, Q(0)}) == PointSet{p});
  }

  TEST_CASE("ball matches a direct distance scan") {
    MetricInstance inst = RandomInstance(8, 2, 2, 0, 42);
    Pair pair{0, inst.distance(0, 3), 3};
    PointSet expected;
    for (int j = 0; j < 8; ++j) {
      if (inst.distance(0, j) <= pair.radius) expected.push_back(j);
    }
    CHECK(Ball(inst, pair) == expected);
  }

  TEST_CASE("ball rejects an invalid center") {
    MetricInstance inst = RandomInstance(3, 2, 1, 0, 1);
    CHECK_THROWS_AS(Ball(inst, Pair{7, Q(1)}), UsageError);
  }

  TEST_CASE("balls grow with the radius") {
    MetricInstance inst = RandomInstance(9, 2, 2, 0, 11);
    for (int i = 0; i < 9; ++i) {
      for (int a = 0; a < 9; ++a) {
        for (int b = 0; b < 9; ++b) {
          const Rational& ra = inst.distance(i, a);
          const Rational& rb = inst.distance(i, b);
          if (ra <= rb) CHECK(IsSubset(Ball(inst, Pair{i, ra}), Ball(inst, Pair{i, rb})));
        }
      }
    }
  }

  TEST_CASE("unreachable points never enter a ball") {
    MetricInstance g = TightInstance(3, 2);
    PointSet ball = Ball(g, Pair{0, Q(1000)});
    CHECK(ball.size() == 12);
    for (int j : ball) CHECK(j < 12);
  }

  TEST_CASE("smallest feasible radius under cardinality bounds") {
    MetricInstance base = RandomInstance(7, 2, 2, 0, 5);
    std::vector<std::optional<Rational>> d;
    for (int i = 0; i < 7; ++i) {
      for (int j = 0; j < 7; ++j) d.push_back(base.distance(i, j));
    }
    SUBCASE("one client is the center itself") {
      MetricInstance inst(7, d, 2, 0, CardinalityBound{std::vector<int>(7, 1)});
      for (int i = 0; i < 7; ++i) CHECK(*MinFeasibleRadius(inst, i) == 0);
    }
    SUBCASE("L-th smallest row entry") {
      for (int L = 1; L <= 7; ++L) {
        MetricInstance inst(7, d, 2, 0, CardinalityBound{std::vector<int>(7, L)});
        for (int i = 0; i < 7; ++i) {
          std::vector<Rational> row;
          for (int j = 0; j < 7; ++j) row.push_back(base.distance(i, j));
          std::sort(row.begin(), row.end());
          CHECK(*MinFeasibleRadius(inst, i) == row[L - 1]);
        }
      }
    }
    SUBCASE("more clients than points is infeasible") {
      MetricInstance inst(7, d, 2, 0, CardinalityBound{std::vector<int>(7, 8)});
      CHECK_FALSE(MinFeasibleRadius(inst, 0).has_value());
      CHECK(CandidatePairs(FullResidual(inst)).empty());
    }
  }

  TEST_CASE("cardinality seven at v_1 of the h=3 tight graph needs radius 1") {
    MetricInstance g = TightInstance(3, 1);
    std::vector<std::optional<Rational>> d;
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 12; ++j) d.push_back(g.distance(i, j));
    }
    MetricInstance inst(12, d, 1, 0, CardinalityBound{std::vector<int>(12, 7)});
    CHECK(*MinFeasibleRadius(inst, TightVertex(3, 0, 1)) == 1);
  }

  TEST_CASE("colored weights: smallest radius by sort-and-scan") {
    MetricInstance base = RandomInstance(8, 2, 2, 0, 42);
    std::vector<std::optional<Rational>> d;
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) d.push_back(base.distance(i, j));
    }
    ColoredWeightBound b;
    for (int p = 0; p < 8; ++p) {
      b.weight.push_back(Q(1 + p % 3, 2));
      b.color.push_back(p % 2);
    }
    b.minimum.assign(8, {Q(3, 2), Q(1)});
    MetricInstance inst(8, d, 2, 0, b);
    for (int i = 0; i < 8; ++i) {
      // Oracle: try each distinct radius in increasing order.
      std::vector<Rational> radii;
      for (int j = 0; j < 8; ++j) radii.push_back(base.distance(i, j));
      std::sort(radii.begin(), radii.end());
      std::optional<Rational> expected;
      for (const Rational& r : radii) {
        Rational w0 = 0, w1 = 0;
        for (int j = 0; j < 8; ++j) {
          if (base.distance(i, j) > r) continue;
          (b.color[j] == 0 ? w0 : w1) += b.weight[j];
        }
        if (w0 >= Q(3, 2) && w1 >= 1) {
          expected = r;
          break;
        }
      }
      CHECK(MinFeasibleRadius(inst, i) == expected);
    }
  }

  TEST_CASE("explicit radius bound requires the whole ball") {
    MetricInstance line = msr::testing::LineInstance({0, 1, 3, 7}, 2);
    std::vector<std::optional<Rational>> d;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) d.push_back(line.distance(i, j));
    }
    ExplicitRadiusBound b{{Q(1), Q(2), std::nullopt, Q(0)}};
    MetricInstance inst(4, d, 2, 0, b);
    CHECK(AllowedClientSet(inst, 0, {0, 1}));
    CHECK_FALSE(AllowedClientSet(inst, 0, {0}));
    CHECK(AllowedClientSet(inst, 1, {0, 1, 2}));
    CHECK_FALSE(AllowedClientSet(inst, 2, {0, 1, 2, 3}));
    CHECK(AllowedClientSet(inst, 3, {3}));
    CHECK(*MinFeasibleRadius(inst, 0) == 1);
    CHECK_FALSE(MinFeasibleRadius(inst, 2).has_value());
  }

  TEST_CASE("candidate pairs of a single point") {
    MetricInstance one(1, {Rational(0)}, 1, 0);
    Residual r = FullResidual(one);
    r.radius_cap = 0;
    auto pairs = CandidatePairs(r);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].center == 0);
    CHECK(pairs[0].radius == 0);
  }

  TEST_CASE("tight graph h=3 with cap 1 has 24 candidate pairs") {
    MetricInstance g = TightInstance(3, 1);
    Residual r = FullResidual(g);
    r.radius_cap = 1;
    auto pairs = CandidatePairs(r);
    CHECK(pairs.size() == 24);
    int zero = 0;
    for (const Pair& p : pairs) zero += p.radius == 0;
    CHECK(zero == 12);
  }

  TEST_CASE("candidate pairs are ordered, bounded in number and reproducible") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      MetricInstance inst = RandomInstance(9, 2, 2, 0, seed);
      Residual r = FullResidual(inst);
      auto pairs = CandidatePairs(r);
      CHECK(pairs.size() <= 81);
      CHECK(std::is_sorted(pairs.begin(), pairs.end(), PairLess));
      CHECK(pairs == CandidatePairs(r));
      for (const Pair& p : pairs) CHECK(inst.distance(p.center, p.anchor) == p.radius);
    }
  }

  TEST_CASE("candidate radii respect the lower-bound floor") {
    MetricInstance base = RandomInstance(8, 2, 2, 0, 9);
    std::vector<std::optional<Rational>> d;
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) d.push_back(base.distance(i, j));
    }
    MetricInstance inst(8, d, 2, 0, CardinalityBound{std::vector<int>(8, 3)});
    for (const Pair& p : CandidatePairs(FullResidual(inst))) {
      CHECK(p.radius >= *MinFeasibleRadius(inst, p.center));
    }
  }

  TEST_CASE("guess depth 0 yields the input once") {
    MetricInstance inst = RandomInstance(6, 2, 2, 1, 4);
    auto residuals = GuessPrefixes(inst, 0);
    REQUIRE(residuals.size() == 1);
    CHECK(residuals[0].active == inst.active());
    CHECK(residuals[0].k == 2);
    CHECK(residuals[0].radius_cap == inst.max_finite_distance());
  }

  TEST_CASE("guess depth 1 on the h=3 tight graph") {
    MetricInstance g = TightInstance(3, 1);
    auto residuals = GuessPrefixes(g, 1);
    CHECK(residuals.size() == CandidatePairs(FullResidual(g)).size());
    bool found = false;
    for (const Residual& r : residuals) {
      if (r.guessed[0] == Pair{TightVertex(3, 0, 1), Q(3)}) {
        found = true;
        CHECK(r.active.empty());
        CHECK(r.k == 0);
      }
    }
    CHECK(found);
  }

  TEST_CASE("guess depth 2 enumerates distinct pairs") {
    MetricInstance inst = RandomInstance(5, 2, 3, 0, 8);
    size_t b = CandidatePairs(FullResidual(inst)).size();
    auto residuals = GuessPrefixes(inst, 2);
    CHECK(residuals.size() == b * (b - 1) / 2);
    for (const Residual& r : residuals) {
      CHECK_FALSE(r.guessed[0] == r.guessed[1]);
      CHECK(r.radius_cap == std::min(r.guessed[0].radius, r.guessed[1].radius));
    }
  }

  TEST_CASE("guess depth above k is rejected") {
    MetricInstance inst = RandomInstance(5, 2, 1, 0, 8);
    CHECK_THROWS_AS(GuessPrefixes(inst, 2), UsageError);
  }

  TEST_CASE("metric verification") {
    CHECK(VerifyMetric(RandomInstance(10, 3, 2, 0, 1)).empty());
    CHECK(VerifyMetric(TightInstance(3, 2)).empty());
    CHECK(VerifyMetric(TightInstance(5, 1)).empty());
    std::vector<std::optional<Rational>> raw = {Q(0), Q(1), Q(2), Q(0)};
    auto v = VerifyMetric(2, raw);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == MetricViolation::Kind::kSymmetry);
    std::vector<std::optional<Rational>> bad = {Q(0), Q(1), Q(5), Q(1), Q(0), Q(1),
                                                Q(5), Q(1), Q(0)};
    auto t = VerifyMetric(3, bad);
    CHECK(std::any_of(t.begin(), t.end(),
                      [](const auto& x) { return x.kind == MetricViolation::Kind::kTriangle; }));
  }

  TEST_CASE("instance validation") {
    CHECK_THROWS_AS(MetricInstance(2, {Q(0), Q(1), Q(2), Q(0)}, 1, 0), UsageError);
    CHECK_THROWS_AS(MetricInstance(2, {Q(0), Q(1), Q(1), Q(0)}, 0, 0), UsageError);
    CHECK_THROWS_AS(MetricInstance(2, {Q(1), Q(1), Q(1), Q(0)}, 1, 0), UsageError);
    CHECK_THROWS_AS(MetricInstance(2, {Q(0), Q(1), Q(1), Q(0)}, 1, 2), UsageError);
    CHECK_NOTHROW(MetricInstance(2, {Q(0), Q(1), Q(1), Q(0)}, 1, 1));
  }

  TEST_CASE("euclidean distances are exact when the root is dyadic") {
    std::vector<std::vector<Rational>> pts = {{Q(0), Q(0)}, {Q(3), Q(4)}, {Q(1, 2), Q(0)}};
    auto d = EuclideanDistances(pts);
    CHECK(*d[1] == 5);
    CHECK(*d[2] == Q(1, 2));
    auto rough = EuclideanDistances({{Q(0)}, {Q(1)}, {Q(2)}}, 4);
    CHECK(*rough[1] == 1);
    auto irrational = EuclideanDistances({{Q(0), Q(0)}, {Q(1), Q(1)}}, 8);
    CHECK(*irrational[1] == Q(362, 256));  // floor(sqrt(2) * 256) / 256
  }
}
