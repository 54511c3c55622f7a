#include "msr/bench.h"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "msr/oracle.h"

namespace msr {
namespace {

std::string OptString(const std::optional<Rational>& value) {
  return value ? ToString(*value) : "-";
}

}  // namespace

BenchReport RatioReport(const BenchConfig& config) {
  if (config.count < 0) throw UsageError("count must be nonnegative");
  if (config.suite != "random" && config.suite != "tight") {
    throw UsageError("unknown suite '" + config.suite + "'");
  }
  BenchReport report;
  report.config = config;
  std::string digest_text;
  for (int q = 0; q < config.count; ++q) {
    BenchRow row;
    row.index = q;
    std::optional<MetricInstance> instance;
    if (config.suite == "tight") {
      instance = TightInstance(3 + q, config.k);
      row.label = "h=" + std::to_string(3 + q) + ",k=" + std::to_string(config.k);
    } else {
      std::optional<LowerBoundSpec> lb;
      if (config.lb_cardinality > 0) {
        lb = CardinalityBound{std::vector<int>(config.n, config.lb_cardinality)};
      }
      std::uint64_t seed = config.seed + static_cast<std::uint64_t>(q);
      instance = RandomInstance(config.n, config.dim, config.k, config.m, seed, lb);
      row.label = "seed=" + std::to_string(seed);
    }
    row.digest = InstanceDigest(*instance);

    auto start = std::chrono::steady_clock::now();
    try {
      PipelineResult result = RunPipeline(*instance, {config.mode, config.guess, false});
      row.cost = result.solution.cost;
      row.feasible = ValidateSolution(*result.instance, result.solution).empty();
      if (result.best && result.best->dual) {
        row.dual_objective = result.best->dual_objective;
        if (*row.dual_objective > 0) row.dual_ratio = row.cost / *row.dual_objective;
      }
      if (config.oracle) {
        if (auto exact = BruteForceOpt(*result.instance)) {
          row.oracle_cost = exact->cost;
          if (exact->cost > 0) {
            row.ratio = row.cost / exact->cost;
          } else if (row.cost == 0) {
            row.ratio = Rational(1);
          }
        }
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                      .count();

    if (row.feasible) ++report.feasible;
    if (row.oracle_cost) ++report.with_oracle;
    if (row.ratio && (!report.max_ratio || *row.ratio > *report.max_ratio)) {
      report.max_ratio = row.ratio;
    }
    digest_text += row.digest + "|" + ToString(row.cost) + "|" + OptString(row.oracle_cost) + "|" +
                   OptString(row.dual_objective) + "|" + row.error + "\n";
    report.rows.push_back(std::move(row));
  }
  report.digest = Hex64(Fnv1a64(digest_text));
  return report;
}

Json BenchToJson(const BenchReport& report) {
  auto opt = [](const std::optional<Rational>& v) { return v ? Json(ToString(*v)) : Json(nullptr); };
  Json rows = Json::array();
  for (const BenchRow& r : report.rows) {
    Json row;
    row["index"] = r.index;
    row["instance"] = r.label;
    row["instance_digest"] = r.digest;
    row["mode"] = ModeName(report.config.mode);
    row["cost"] = ToString(r.cost);
    row["oracle_cost"] = opt(r.oracle_cost);
    row["dual_objective"] = opt(r.dual_objective);
    row["ratio"] = opt(r.ratio);
    row["dual_ratio"] = opt(r.dual_ratio);
    row["feasible"] = r.feasible;
    if (!r.error.empty()) row["error"] = r.error;
    if (report.config.timing) row["wall_ms"] = r.wall_ms;
    rows.push_back(row);
  }
  Json out;
  out["suite"] = report.config.suite;
  out["rows"] = rows;
  out["aggregate"] = {{"count", report.rows.size()},
                      {"feasible", report.feasible},
                      {"with_oracle", report.with_oracle},
                      {"max_ratio", opt(report.max_ratio)},
                      {"digest", report.digest}};
  return out;
}

std::string BenchTable(const BenchReport& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-5s %-22s %-12s %-12s %-12s %-10s %s\n", "#", "instance",
                "cost", "oracle", "dual", "ratio", "ok");
  out << line;
  for (const BenchRow& r : report.rows) {
    auto approx = [](const std::optional<Rational>& v) {
      if (!v) return std::string("-");
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", ToDouble(*v));
      return std::string(buf);
    };
    std::snprintf(line, sizeof line, "%-5d %-22s %-12s %-12s %-12s %-10s %s\n", r.index,
                  r.label.c_str(), approx(r.cost).c_str(), approx(r.oracle_cost).c_str(),
                  approx(r.dual_objective).c_str(), approx(r.ratio).c_str(),
                  r.error.empty() ? (r.feasible ? "yes" : "NO") : "error");
    out << line;
  }
  out << "feasible " << report.feasible << "/" << report.rows.size() << ", oracle "
      << report.with_oracle << ", max ratio "
      << (report.max_ratio ? ToString(*report.max_ratio) : std::string("-")) << ", digest "
      << report.digest << "\n";
  return out.str();
}

}  // namespace msr
