// msr: solve, generate and benchmark sum-of-radii instances.
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "msr/bench.h"
#include "msr/io.h"
#include "msr/oracle.h"
#include "msr/pipeline.h"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInternal = 4;

std::string NowUtc() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void Emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw msr::UsageError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum sum of radii solver"};
  app.require_subcommand(1);

  std::string mode = "plain";
  int guess = 0;
  std::optional<int> k_override, m_override;
  bool oracle = false, trace = false, no_timestamp = false;
  std::string out_path;
  std::string instance_path;

  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("--mode", mode, "plain | outliers | glb | glb-outliers");
  solve->add_option("--guess", guess, "guess depth g (the 1/eps of the analysis)");
  solve->add_option("--k", k_override, "override k");
  solve->add_option("--m", m_override, "override m");
  solve->add_flag("--oracle", oracle, "also run exhaustive search");
  solve->add_flag("--trace", trace, "include per-iteration traces");
  solve->add_option("--out", out_path, "report path (default stdout)");
  solve->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
  solve->add_option("instance", instance_path, "instance JSON file")->required();

  auto* gen = app.add_subcommand("gen", "write an instance file");
  gen->require_subcommand(1);
  int h = 3, gen_k = 1;
  auto* gen_tight = gen->add_subcommand("tight", "tight family");
  gen_tight->set_help_flag("--help", "print help");  // -h would clash with --h
  gen_tight->add_option("--h", h);
  gen_tight->add_option("--k", gen_k);
  gen_tight->add_option("--out", out_path);
  int n = 8, dim = 2, rk = 2, rm = 0, lb_card = 0;
  std::uint64_t seed = 42;
  auto* gen_random = gen->add_subcommand("random", "uniform points in the unit cube");
  gen_random->add_option("--n", n);
  gen_random->add_option("--dim", dim);
  gen_random->add_option("--k", rk);
  gen_random->add_option("--m", rm);
  gen_random->add_option("--seed", seed);
  gen_random->add_option("--lb-cardinality", lb_card, "uniform cardinality lower bound");
  gen_random->add_option("--out", out_path);

  msr::BenchConfig bench_config;
  std::string bench_mode = "plain";
  bool bench_json = false;
  auto* bench = app.add_subcommand("bench", "batch run with ratio report");
  bench->add_option("--suite", bench_config.suite, "random | tight");
  bench->add_option("--n", bench_config.n);
  bench->add_option("--dim", bench_config.dim);
  bench->add_option("--k", bench_config.k);
  bench->add_option("--m", bench_config.m);
  bench->add_option("--count", bench_config.count);
  bench->add_option("--seed", bench_config.seed);
  bench->add_option("--guess", bench_config.guess);
  bench->add_option("--lb-cardinality", bench_config.lb_cardinality);
  bench->add_option("--mode", bench_mode);
  bench->add_flag("--oracle", bench_config.oracle);
  bench->add_flag("--json", bench_json, "print the JSON report instead of a table");
  bench->add_flag("--no-timestamp", no_timestamp, "omit wall-clock columns");
  bench->add_option("--out", out_path, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*solve) {
      msr::LoadedInstance loaded = msr::ReadInstanceFile(instance_path);
      msr::MetricInstance instance = loaded.instance;
      if (k_override || m_override) {
        instance = instance.WithBudgets(k_override.value_or(instance.k()),
                                        m_override.value_or(instance.m()));
      }
      msr::Mode parsed = msr::ParseMode(mode);
      if (guess > instance.k()) throw msr::ConfigError("guess depth exceeds k");
      msr::PipelineResult result = msr::RunPipeline(instance, {parsed, guess, false});
      msr::ReportOptions options;
      options.trace = trace;
      if (oracle) {
        auto exact = msr::BruteForceOpt(*result.instance);
        if (exact) options.oracle_cost = exact->cost;
      }
      if (!no_timestamp) options.timestamp = NowUtc();
      Emit(msr::BuildReport(instance, result, options).dump(2) + "\n", out_path);
    } else if (*gen) {
      if (*gen_tight) {
        Emit(msr::InstanceToJson(msr::TightInstance(h, gen_k)).dump(2) + "\n", out_path);
      } else {
        std::optional<msr::LowerBoundSpec> lb;
        if (lb_card > 0) lb = msr::CardinalityBound{std::vector<int>(n, lb_card)};
        auto points = msr::RandomPoints(n, dim, seed);
        msr::MetricInstance instance(n, msr::EuclideanDistances(points), rk, rm, lb);
        Emit(msr::InstanceToJson(instance, points).dump(2) + "\n", out_path);
      }
    } else if (*bench) {
      bench_config.mode = msr::ParseMode(bench_mode);
      bench_config.timing = !no_timestamp;
      msr::BenchReport report = msr::RatioReport(bench_config);
      if (bench_json) {
        std::cout << msr::BenchToJson(report).dump(2) << "\n";
      } else {
        std::cout << msr::BenchTable(report);
      }
      if (!out_path.empty()) Emit(msr::BenchToJson(report).dump(2) + "\n", out_path);
    }
  } catch (const msr::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const msr::ConfigError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const msr::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
