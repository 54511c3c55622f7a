#ifndef MSR_IO_H_
#define MSR_IO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "msr/metric.h"
#include "msr/pipeline.h"

namespace msr {

using Json = nlohmann::ordered_json;

struct LoadedInstance {
  MetricInstance instance;
  std::optional<std::vector<std::vector<Rational>>> points;
  int sqrt_bits = 32;
};

// Throws UsageError on any malformed document.
LoadedInstance ParseInstance(const Json& doc);
LoadedInstance ParseInstanceText(const std::string& text);
LoadedInstance ReadInstanceFile(const std::string& path);

// Euclidean points are written when given, the distance matrix otherwise.
Json InstanceToJson(const MetricInstance& instance,
                    const std::optional<std::vector<std::vector<Rational>>>& points = {},
                    int sqrt_bits = 32);

// Canonical text the digest is computed over.
std::string CanonicalForm(const MetricInstance& instance);
std::uint64_t Fnv1a64(const std::string& bytes);
std::string Hex64(std::uint64_t value);
std::string InstanceDigest(const MetricInstance& instance);

Json PairToJson(const Pair& pair);
Json DualToJson(const DualSolution& dual, const PointSet& active, const Rational& objective);
Json SolutionToJson(const Solution& solution);

struct ReportOptions {
  bool trace = false;
  std::optional<Rational> oracle_cost;
  std::optional<std::string> timestamp;
};

Json BuildReport(const MetricInstance& original, const PipelineResult& result,
                 const ReportOptions& options);

}  // namespace msr

#endif  // MSR_IO_H_
