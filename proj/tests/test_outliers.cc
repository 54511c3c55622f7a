#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.h"
#include "msr/oracle.h"
#include "msr/outliers.h"

using namespace msr;
using msr::testing::Q;

TEST_SUITE("pd_outliers") {
  TEST_CASE("subroutine at lambda 0 on the h=3 tight graph picks every zero-radius pair") {
    MetricInstance g = TightInstance(3, 1);
    PairUniverse u(FullResidual(g));
    SubroutineRun run = RunSubroutine(u, Q(0));
    CHECK(run.components == 12);
    CHECK(run.picked.size() == 12);
    for (int p : run.picked) CHECK(u.pair(p).radius == 0);
    CHECK(*run.dual.gamma == 0);
  }

  TEST_CASE("subroutine at lambda 1/6 closes its first phase at 1/6") {
    MetricInstance g = TightInstance(3, 1);
    PairUniverse u(FullResidual(g));
    SubroutineRun run = RunSubroutine(u, Q(1, 6));
    REQUIRE(run.phases.size() == 1);
    CHECK(run.phases[0].end_time == Q(1, 6));
    CHECK(run.phases[0].rising == g.active());
    for (int l = 1; l <= 3; ++l) {
      int idx = u.Find(Pair{TightVertex(3, 0, l), Q(1)});
      REQUIRE(idx >= 0);
      CHECK(msr::testing::Contains(run.phases[0].became_tight, idx));
      CHECK(msr::testing::Contains(run.tight, idx));
    }
    CHECK(*run.dual.gamma == Q(1, 6));
  }

  TEST_CASE("subroutine at a large lambda merges into at most k' components") {
    for (int k = 1; k <= 3; ++k) {
      MetricInstance g = TightInstance(3, k);
      PairUniverse u(FullResidual(g));
      SubroutineRun run = RunSubroutine(u, UpperLambda(u.residual()));
      CHECK(run.components <= k);
    }
    CHECK_THROWS_AS(RunSubroutine(PairUniverse(FullResidual(TightInstance(3, 1))), Q(-1)),
                    UsageError);
  }

  TEST_CASE("subroutine invariants on random instances") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      MetricInstance inst = RandomInstance(8, 2, 2, 1 + seed % 2, seed);
      PairUniverse u(FullResidual(inst));
      for (const Rational& lambda : {Q(0), Q(1, 10), Q(1, 2), Q(3)}) {
        SubroutineRun run = RunSubroutine(u, lambda);
        CHECK(IsFeasible(u, run.dual));
        CHECK(Uncovered(u, run.picked).size() <= static_cast<size_t>(inst.m()));
        // One fewer pair leaves more than m points.
        std::vector<int> shorter(run.picked.begin(), run.picked.end() - 1);
        CHECK(Uncovered(u, shorter).size() > static_cast<size_t>(inst.m()));
        for (int p : run.picked) CHECK(Slack(u, run.dual, p) == 0);
        for (int p = 0; p < u.size(); ++p) {
          CHECK((Slack(u, run.dual, p) == 0) == msr::testing::Contains(run.tight, p));
        }
        Rational prev = 0;
        for (const Phase& ph : run.phases) {
          CHECK(ph.end_time >= prev);
          prev = ph.end_time;
        }
        CHECK(*run.dual.gamma == prev);
        CHECK(run.components == ComponentCount(u, run.picked));
      }
    }
  }

  TEST_CASE("first phase end on the h=3 tight graph bends at 1/6") {
    MetricInstance g = TightInstance(3, 1);
    PairUniverse u(FullResidual(g));
    Rational hi = UpperLambda(u.residual());
    CHECK(hi == 73);
    PhaseEnd f = PhaseEndFunction(u, {}, Q(0), hi);
    REQUIRE(f.end_time.breakpoints.size() >= 3);
    CHECK(f.end_time.breakpoints[1] == Q(1, 6));
    // min(x, (1+x)/7, (2+x)/11, (3+x)/12)
    CHECK(f.end_time.breakpoints == std::vector<Rational>{Q(0), Q(1, 6), Q(3, 4), Q(9), Q(73)});
    CHECK(f.end_time.pieces[0] == Affine{Q(0), Q(1)});
    CHECK(f.end_time.pieces[1] == Affine{Q(1, 7), Q(1, 7)});
    for (const Rational& x : {Q(0), Q(1, 12), Q(1, 6), Q(1, 2), Q(5), Q(70)}) {
      SubroutineRun run = RunSubroutine(u, x);
      CHECK(f.end_time(x) == run.phases[0].end_time);
    }
  }

  TEST_CASE("phase end functions follow the simulation inside the fixpoint interval") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      MetricInstance inst = RandomInstance(7, 2, 2, 1, seed);
      PairUniverse u(FullResidual(inst));
      FixpointResult fp = IterateToFixpoint(u);
      for (const EnvelopeRecord& rec : fp.envelopes) {
        const auto& bp = rec.function.end_time.breakpoints;
        for (size_t q = 0; q + 1 < bp.size(); ++q) {
          Rational x = (bp[q] + bp[q + 1]) / 2;
          SubroutineRun run = RunSubroutine(u, x);
          if (run.phases.size() < rec.history.size() + 1) continue;
          CHECK(rec.function.end_time(x) == run.phases[rec.history.size()].end_time);
        }
      }
    }
  }

  TEST_CASE("lower envelope examples") {
    SUBCASE("two crossing lines") {
      auto e = LowerEnvelope({{Q(0), Q(1)}, {Q(1), Q(-1)}}, Q(0), Q(1));
      CHECK(e.breakpoints == std::vector<Rational>{Q(0), Q(1, 2), Q(1)});
      CHECK(e.sources == std::vector<int>{0, 1});
      CHECK(e(Q(1, 2)) == Q(1, 2));
      CHECK(e(Q(1)) == 0);
    }
    SUBCASE("parallel lines keep the lower one") {
      auto e = LowerEnvelope({{Q(2), Q(1)}, {Q(1), Q(1)}}, Q(0), Q(5));
      CHECK(e.pieces.size() == 1);
      CHECK(e.sources[0] == 1);
    }
    SUBCASE("crossing outside the domain") {
      auto e = LowerEnvelope({{Q(0), Q(1)}, {Q(10), Q(-1)}}, Q(0), Q(2));
      CHECK(e.pieces.size() == 1);
      CHECK(e(Q(2)) == 2);
    }
    SUBCASE("tie at lo goes to the smaller slope") {
      auto e = LowerEnvelope({{Q(1), Q(1)}, {Q(1), Q(0)}}, Q(0), Q(3));
      CHECK(e.pieces.size() == 1);
      CHECK(e.sources[0] == 1);
    }
    SUBCASE("bad input") {
      CHECK_THROWS_AS(LowerEnvelope({}, Q(0), Q(1)), UsageError);
      CHECK_THROWS_AS(LowerEnvelope({{Q(0), Q(1)}}, Q(1), Q(0)), UsageError);
      auto e = LowerEnvelope({{Q(0), Q(1)}}, Q(0), Q(1));
      CHECK_THROWS_AS(e(Q(2)), UsageError);
    }
  }

  TEST_CASE("lower envelope equals a direct minimum over random lines") {
    std::mt19937_64 rng(42);
    auto draw = [&](int range) { return static_cast<long>(rng() % (2 * range + 1)) - range; };
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Affine> lines;
      int count = 1 + static_cast<int>(rng() % 8);
      for (int q = 0; q < count; ++q) lines.push_back({Q(draw(20), 3), Q(draw(10), 4)});
      Rational lo = Q(draw(5)), hi = lo + Q(1 + static_cast<long>(rng() % 10));
      auto e = LowerEnvelope(lines, lo, hi);
      CHECK(e.pieces.size() <= lines.size());
      CHECK(std::is_sorted(e.breakpoints.begin(), e.breakpoints.end()));
      for (int s = 0; s <= 40; ++s) {
        Rational x = lo + (hi - lo) * Q(s, 40);
        Rational direct = lines[0](x);
        for (const Affine& l : lines) direct = std::min(direct, l(x));
        CHECK(e(x) == direct);
      }
      for (size_t q = 1; q + 1 < e.breakpoints.size(); ++q) {
        const Rational& x = e.breakpoints[q];
        CHECK(e.pieces[q - 1](x) == e.pieces[q](x));
      }
    }
  }

  TEST_CASE("bracket search") {
    std::vector<Rational> pts;
    for (int i = 0; i < 10; ++i) pts.push_back(Q(i));
    SUBCASE("two points need no probe") {
      int calls = 0;
      Bracket b = BreakpointBinarySearch({Q(0), Q(1)}, [&](const Rational&) {
        ++calls;
        return Side::kMore;
      });
      CHECK(calls == 0);
      CHECK(b.probes.empty());
      CHECK(b.left == 0);
      CHECK(b.right == 1);
    }
    SUBCASE("single flip") {
      for (int flip = 1; flip < 10; ++flip) {
        Bracket b = BreakpointBinarySearch(
            pts, [&](const Rational& x) { return x < flip ? Side::kMore : Side::kLessEq; });
        CHECK(b.left == static_cast<size_t>(flip - 1));
        CHECK(b.right == static_cast<size_t>(flip));
        CHECK(b.probes.size() <= 2 + 4);
      }
    }
    SUBCASE("non-monotone labels still give an adjacent flip") {
      Bracket b = BreakpointBinarySearch(pts, [](const Rational& x) {
        return (x == 0 || x == 3 || x == 4 || x == 7) ? Side::kMore : Side::kLessEq;
      });
      CHECK(b.right == b.left + 1);
    }
    SUBCASE("wrong endpoint labels") {
      CHECK_THROWS_AS(BreakpointBinarySearch(pts, [](const Rational&) { return Side::kMore; }),
                      UsageError);
      CHECK_THROWS_AS(BreakpointBinarySearch({Q(0)}, [](const Rational&) { return Side::kMore; }),
                      UsageError);
    }
  }

  TEST_CASE("fixpoint on the h=3 tight graph") {
    MetricInstance g = TightInstance(3, 1);
    PairUniverse u(FullResidual(g));
    FixpointResult fp = IterateToFixpoint(u);
    CHECK_FALSE(fp.zero_lambda);
    CHECK(fp.lo == Q(1, 6));
    CHECK(fp.left.components > 1);
    CHECK(fp.right.components <= 1);
  }

  TEST_CASE("fixpoint endpoints straddle k' and the interior is stable") {
    for (std::uint64_t seed = 40; seed <= 55; ++seed) {
      MetricInstance inst = RandomInstance(8, 2, 2, 1, seed);
      PairUniverse u(FullResidual(inst));
      FixpointResult fp = IterateToFixpoint(u);
      if (fp.zero_lambda) continue;
      CHECK(fp.lo < fp.hi);
      CHECK(fp.left.components > 2);
      CHECK(fp.right.components <= 2);
      SubroutineRun a = RunSubroutine(u, fp.lo + (fp.hi - fp.lo) / 3);
      SubroutineRun b = RunSubroutine(u, fp.lo + (fp.hi - fp.lo) * 2 / 3);
      CHECK(a.picked == fp.middle.picked);
      CHECK(b.picked == fp.middle.picked);
      CHECK(fp.final_iteration <= u.size() + 1);
    }
  }

  TEST_CASE("covering procedure reproduces the subroutine's picks") {
    for (std::uint64_t seed = 42; seed <= 50; ++seed) {
      MetricInstance inst = RandomInstance(8, 2, 2, 1, seed);
      PairUniverse u(FullResidual(inst));
      FixpointResult fp = IterateToFixpoint(u);
      CHECK(CoveringProcedure(u, {}, fp.middle.picked) == fp.middle.picked);
      CHECK(CoveringProcedure(u, {}, fp.left.picked) == fp.left.picked);
      CHECK_THROWS_AS(CoveringProcedure(u, {}, {}), InternalError);
    }
  }

  TEST_CASE("orderly structured sets pass every structural check") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      MetricInstance inst = RandomInstance(8, 2, 1 + seed % 3, 1 + seed % 2, seed);
      PairUniverse u(FullResidual(inst));
      FixpointResult fp = IterateToFixpoint(u);
      OrderlyStructured os = MixOrderlyStructured(u, fp);
      CHECK(CheckOrderly(u, os).empty());
      CHECK(os.pairs.back() == os.special);
      ++checked;
    }
    CHECK(checked == 40);
  }

  TEST_CASE("orderly check rejects a set with the special pair removed") {
    MetricInstance inst = RandomInstance(8, 2, 2, 1, 42);
    PairUniverse u(FullResidual(inst));
    OrderlyStructured os = MixOrderlyStructured(u, IterateToFixpoint(u));
    REQUIRE(CheckOrderly(u, os).empty());
    OrderlyStructured broken = os;
    broken.special = os.pairs.front();
    CHECK_FALSE(CheckOrderly(u, broken).empty());
    broken = os;
    broken.dual.gamma.reset();
    CHECK_FALSE(CheckOrderly(u, broken).empty());
  }
}
