#ifndef MSR_ORACLE_H_
#define MSR_ORACLE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "msr/metric.h"
#include "msr/rounding.h"

namespace msr {

struct OracleResult {
  Rational cost;
  Solution solution;
  std::uint64_t subsets_checked = 0;
};

enum class EnumerationOrder { kForward, kReverse };

// Exhaustive search over at most k distinct candidate pairs (full residual).
// Under lower bounds a subset also needs a client assignment meeting every
// bound, found by backtracking. Returns nullopt when the number of subsets
// exceeds `max_subsets`.
std::optional<OracleResult> BruteForceOpt(const MetricInstance& instance,
                                          std::uint64_t max_subsets = 10'000'000,
                                          EnumerationOrder order = EnumerationOrder::kForward);

// k disjoint copies of the graph on v_1..v_h and v_ij (i, j in 1..h) with
// edges {v_l, v_ij} for l != i; shortest-path metric, unreachable across
// copies. Point ids per copy: v_l -> l-1, v_ij -> h + (i-1)h + (j-1).
MetricInstance TightInstance(int h, int k);

int TightVertex(int h, int copy, int l);
int TightVertex(int h, int copy, int i, int j);

// Uniform points in [0,1)^dim, each coordinate the top 32 bits of a
// mt19937_64 draw divided by 2^32.
std::vector<std::vector<Rational>> RandomPoints(int n, int dim, std::uint64_t seed);

MetricInstance RandomInstance(int n, int dim, int k, int m, std::uint64_t seed,
                              std::optional<LowerBoundSpec> lower_bounds = {});

}  // namespace msr

#endif  // MSR_ORACLE_H_
