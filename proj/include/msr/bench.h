#ifndef MSR_BENCH_H_
#define MSR_BENCH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msr/io.h"
#include "msr/pipeline.h"

namespace msr {

struct BenchConfig {
  std::string suite = "random";  // random | tight
  int n = 8;
  int dim = 2;
  int k = 2;
  int m = 0;
  int count = 10;
  std::uint64_t seed = 1;
  bool oracle = false;
  Mode mode = Mode::kPlain;
  int guess = 0;
  int lb_cardinality = 0;  // > 0 adds a uniform cardinality bound
  bool timing = true;      // wall-clock column
};

struct BenchRow {
  int index = 0;
  std::string digest;
  std::string label;  // seed or family parameters
  Rational cost;
  std::optional<Rational> oracle_cost;
  std::optional<Rational> dual_objective;
  std::optional<Rational> ratio;       // cost / oracle
  std::optional<Rational> dual_ratio;  // cost / dual objective
  bool feasible = false;
  std::string error;
  double wall_ms = 0;
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;
  int feasible = 0;
  int with_oracle = 0;
  std::optional<Rational> max_ratio;
  std::string digest;  // over every deterministic column
};

// Random suite: instance q uses seed + q. Tight suite: h = 3 + q with
// k copies.
BenchReport RatioReport(const BenchConfig& config);

Json BenchToJson(const BenchReport& report);
std::string BenchTable(const BenchReport& report);

}  // namespace msr

#endif  // MSR_BENCH_H_
