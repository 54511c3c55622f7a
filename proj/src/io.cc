#include "msr/io.h"

#include <fstream>
#include <sstream>

#include "msr/component_graph.h"

namespace msr {
namespace {

Rational JsonRational(const Json& value, const std::string& where) {
  if (value.is_string()) return ParseRational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(mpz_class(value.dump()));
  if (value.is_number_float()) {
    std::string text = value.dump();
    if (text.find_first_of("eE") == std::string::npos) return ParseRational(text);
    return FromDouble(value.get<double>());
  }
  throw UsageError(where + ": expected a number or rational string");
}

int JsonInt(const Json& doc, const std::string& key, std::optional<int> fallback = {}) {
  if (!doc.contains(key)) {
    if (fallback) return *fallback;
    throw UsageError("missing field '" + key + "'");
  }
  const Json& v = doc.at(key);
  if (!v.is_number_integer()) throw UsageError("field '" + key + "' must be an integer");
  return v.get<int>();
}

const Json& JsonArray(const Json& doc, const std::string& key, size_t size) {
  if (!doc.contains(key) || !doc.at(key).is_array()) {
    throw UsageError("field '" + key + "' must be an array");
  }
  const Json& v = doc.at(key);
  if (size != 0 && v.size() != size) {
    throw UsageError("field '" + key + "' must have " + std::to_string(size) + " entries");
  }
  return v;
}

LowerBoundSpec ParseLowerBounds(const Json& lb, int n) {
  if (!lb.is_object() || !lb.contains("variant") || !lb.at("variant").is_string()) {
    throw UsageError("lower_bounds needs a string 'variant'");
  }
  const std::string variant = lb.at("variant").get<std::string>();
  if (variant == "cardinality") {
    CardinalityBound b;
    if (lb.contains("L")) {
      b.min_clients.assign(n, JsonInt(lb, "L"));
    } else {
      for (const Json& v : JsonArray(lb, "min_clients", n)) {
        if (!v.is_number_integer()) throw UsageError("min_clients entries must be integers");
        b.min_clients.push_back(v.get<int>());
      }
    }
    return b;
  }
  if (variant == "colored_weight") {
    ColoredWeightBound b;
    for (const Json& v : JsonArray(lb, "weights", n)) b.weight.push_back(JsonRational(v, "weights"));
    for (const Json& v : JsonArray(lb, "colors", n)) {
      if (!v.is_number_integer()) throw UsageError("colors entries must be integers");
      b.color.push_back(v.get<int>());
    }
    for (const Json& row : JsonArray(lb, "min_weight", n)) {
      if (!row.is_array()) throw UsageError("min_weight rows must be arrays");
      std::vector<Rational> values;
      for (const Json& v : row) values.push_back(JsonRational(v, "min_weight"));
      b.minimum.push_back(std::move(values));
    }
    return b;
  }
  if (variant == "explicit_radius") {
    ExplicitRadiusBound b;
    for (const Json& v : JsonArray(lb, "radius", n)) {
      if (v.is_null()) {
        b.radius.push_back(std::nullopt);
      } else {
        b.radius.push_back(JsonRational(v, "radius"));
      }
    }
    return b;
  }
  throw UsageError("unknown lower-bound variant '" + variant + "'");
}

Json LowerBoundsToJson(const LowerBoundSpec& spec) {
  return std::visit(
      [](const auto& b) -> Json {
        using T = std::decay_t<decltype(b)>;
        Json out;
        if constexpr (std::is_same_v<T, CardinalityBound>) {
          out["variant"] = "cardinality";
          out["min_clients"] = b.min_clients;
        } else if constexpr (std::is_same_v<T, ColoredWeightBound>) {
          out["variant"] = "colored_weight";
          Json w = Json::array(), rows = Json::array();
          for (const auto& x : b.weight) w.push_back(ToString(x));
          for (const auto& row : b.minimum) {
            Json r = Json::array();
            for (const auto& x : row) r.push_back(ToString(x));
            rows.push_back(r);
          }
          out["weights"] = w;
          out["colors"] = b.color;
          out["min_weight"] = rows;
        } else {
          out["variant"] = "explicit_radius";
          Json r = Json::array();
          for (const auto& x : b.radius) r.push_back(x ? Json(ToString(*x)) : Json(nullptr));
          out["radius"] = r;
        }
        return out;
      },
      spec);
}

Json DiagnosticsFor(const MetricInstance& instance, const CoverResult& cover) {
  Json out;
  Json members = Json::array();
  for (const Pair& p : cover.members) members.push_back(PairToJson(p));
  out["members"] = members;
  out["cover"] = PairToJson(cover.pair);
  out["mode"] = ModeName(cover.mode);
  out["points"] = cover.points.size();
  DisjointSubset cd = MaxDisjointSubset(instance, cover.members);
  out["disjoint_radius_sum"] = ToString(cd.radius_sum);
  out["disjoint_exact"] = cd.exact;
  GraphRadius g = RadiusOf(ComponentGraph(instance, cover.members));
  out["graph_radius"] = ToString(g.radius);
  return out;
}

}  // namespace

LoadedInstance ParseInstance(const Json& doc) {
  if (!doc.is_object()) throw UsageError("instance must be a JSON object");
  int n = 0;
  std::vector<std::optional<Rational>> dist;
  std::optional<std::vector<std::vector<Rational>>> points;
  int bits = JsonInt(doc, "sqrt_denominator_bits", 32);
  if (bits < 0 || bits > 256) throw UsageError("sqrt_denominator_bits out of range");

  if (doc.contains("points")) {
    if (doc.value("metric", std::string("euclidean")) != "euclidean") {
      throw UsageError("points need \"metric\": \"euclidean\"");
    }
    points.emplace();
    for (const Json& p : JsonArray(doc, "points", 0)) {
      if (!p.is_array()) throw UsageError("each point must be an array of coordinates");
      std::vector<Rational> coords;
      for (const Json& c : p) coords.push_back(JsonRational(c, "points"));
      points->push_back(std::move(coords));
    }
    n = static_cast<int>(points->size());
    if (n == 0) throw UsageError("instance has no points");
    dist = EuclideanDistances(*points, bits);
  } else if (doc.contains("distances")) {
    const Json& rows = JsonArray(doc, "distances", 0);
    n = static_cast<int>(rows.size());
    dist.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) {
        throw UsageError("distance matrix must be square");
      }
      for (int j = 0; j < n; ++j) {
        const Json& v = rows[i][j];
        if (v.is_string() && v.get<std::string>() == "inf") continue;
        dist[static_cast<size_t>(i) * n + j] = JsonRational(v, "distances");
      }
    }
  } else {
    throw UsageError("instance needs 'points' or 'distances'");
  }

  int k = JsonInt(doc, "k");
  int m = JsonInt(doc, "m", 0);
  std::optional<LowerBoundSpec> lb;
  if (doc.contains("lower_bounds") && !doc.at("lower_bounds").is_null()) {
    lb = ParseLowerBounds(doc.at("lower_bounds"), n);
  }
  std::optional<PointSet> active;
  if (doc.contains("active")) {
    active.emplace();
    for (const Json& v : JsonArray(doc, "active", 0)) {
      if (!v.is_number_integer()) throw UsageError("active entries must be integers");
      active->push_back(v.get<int>());
    }
  }
  return LoadedInstance{MetricInstance(n, std::move(dist), k, m, std::move(lb), std::move(active)),
                        std::move(points), bits};
}

LoadedInstance ParseInstanceText(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
  return ParseInstance(doc);
}

LoadedInstance ReadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseInstanceText(buffer.str());
}

Json InstanceToJson(const MetricInstance& instance,
                    const std::optional<std::vector<std::vector<Rational>>>& points,
                    int sqrt_bits) {
  Json out;
  const int n = instance.size();
  if (points) {
    out["metric"] = "euclidean";
    out["sqrt_denominator_bits"] = sqrt_bits;
    Json rows = Json::array();
    for (const auto& p : *points) {
      Json coords = Json::array();
      for (const auto& x : p) coords.push_back(ToString(x));
      rows.push_back(coords);
    }
    out["points"] = rows;
  } else {
    Json rows = Json::array();
    for (int i = 0; i < n; ++i) {
      Json row = Json::array();
      for (int j = 0; j < n; ++j) {
        row.push_back(instance.reachable(i, j) ? ToString(instance.distance(i, j)) : "inf");
      }
      rows.push_back(row);
    }
    out["distances"] = rows;
  }
  out["k"] = instance.k();
  out["m"] = instance.m();
  if (static_cast<int>(instance.active().size()) != n) out["active"] = instance.active();
  if (instance.lower_bounds()) out["lower_bounds"] = LowerBoundsToJson(*instance.lower_bounds());
  return out;
}

std::string CanonicalForm(const MetricInstance& instance) {
  std::string out = "n=" + std::to_string(instance.size()) + ";k=" +
                    std::to_string(instance.k()) + ";m=" + std::to_string(instance.m()) + ";active=";
  for (int j : instance.active()) out += std::to_string(j) + ",";
  out += ";d=";
  for (int i = 0; i < instance.size(); ++i) {
    for (int j = 0; j < instance.size(); ++j) {
      out += instance.reachable(i, j) ? ToString(instance.distance(i, j)) : "inf";
      out += ',';
    }
  }
  out += ";lb=";
  if (instance.lower_bounds()) out += LowerBoundsToJson(*instance.lower_bounds()).dump();
  return out;
}

std::uint64_t Fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string Hex64(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int q = 15; q >= 0; --q) {
    out[q] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::string InstanceDigest(const MetricInstance& instance) {
  return Hex64(Fnv1a64(CanonicalForm(instance)));
}

Json PairToJson(const Pair& pair) {
  return Json{{"center", pair.center}, {"radius", ToString(pair.radius)}, {"anchor", pair.anchor}};
}

Json DualToJson(const DualSolution& dual, const PointSet& active, const Rational& objective) {
  Json alpha = Json::object();
  for (int j : active) alpha[std::to_string(j)] = ToString(dual.alpha[j]);
  Json out;
  out["lambda"] = ToString(dual.lambda);
  out["gamma"] = dual.gamma ? Json(ToString(*dual.gamma)) : Json(nullptr);
  out["alpha"] = alpha;
  out["objective"] = ToString(objective);
  return out;
}

Json SolutionToJson(const Solution& solution) {
  Json out;
  Json pairs = Json::array();
  for (const Pair& p : solution.pairs) pairs.push_back(PairToJson(p));
  out["pairs"] = pairs;
  Json assignment = Json::array();
  for (int a : solution.assignment) {
    if (a >= 0) {
      assignment.push_back(a);
    } else {
      assignment.push_back(a == kOutlier ? "out" : "none");
    }
  }
  out["assignment"] = assignment;
  out["outliers"] = solution.outliers;
  out["cost"] = ToString(solution.cost);
  return out;
}

Json BuildReport(const MetricInstance& original, const PipelineResult& result,
                 const ReportOptions& options) {
  const MetricInstance& instance = *result.instance;
  Json out;
  out["instance_digest"] = InstanceDigest(original);
  out["mode"] = ModeName(result.mode);
  out["guess"] = result.guess;
  out["by_enumeration"] = result.by_enumeration;
  out["cost"] = ToString(result.solution.cost);
  Json sol = SolutionToJson(result.solution);
  out["pairs"] = sol["pairs"];
  out["assignment"] = sol["assignment"];
  out["outliers"] = sol["outliers"];
  out["diameter_cost"] = ToString(DiameterCost(instance, result.solution));
  out["residuals"] = {{"total", result.residuals},
                      {"stalled", result.stalled},
                      {"infeasible", result.infeasible}};

  out["dual"] = nullptr;
  out["special_pair"] = nullptr;
  out["components"] = Json::array();
  if (result.best) {
    const ResidualOutcome& best = *result.best;
    out["residual_status"] = StatusName(best.status);
    out["guessed_pairs"] = Json::array();
    for (const Pair& p : best.residual.guessed) out["guessed_pairs"].push_back(PairToJson(p));
    if (best.dual) out["dual"] = DualToJson(*best.dual, best.residual.active, best.dual_objective);
    if (best.special) out["special_pair"] = PairToJson(*best.special);
    if (best.orderly) {
      out["outlier_case"] = best.assembly->outlier_case;
      out["ell"] = best.orderly->ell;
      out["ell_prime"] = best.orderly->ell_prime;
    }
    if (best.assembly) {
      for (const CoverResult& c : best.assembly->covers) {
        out["components"].push_back(DiagnosticsFor(instance, c));
      }
    }
    out["invariant_failures"] = best.invariant_failures;
    if (options.trace) {
      Json trace;
      if (best.raise) {
        Json rows = Json::array();
        for (const auto& r : best.raise->trace) {
          rows.push_back({{"iteration", r.iteration},
                          {"delta", ToString(r.delta)},
                          {"independent_points", r.independent_points},
                          {"components", r.components},
                          {"lambda", ToString(r.lambda)},
                          {"objective", ToString(r.objective)}});
        }
        trace["raise"] = rows;
        trace["warmup_steps"] = best.raise->warmup_steps;
      }
      if (best.fixpoint) {
        Json rows = Json::array();
        for (const auto& r : best.fixpoint->trace) {
          Json probes = Json::array();
          for (const auto& p : r.probes) {
            probes.push_back({{"lambda", ToString(p.at)},
                              {"side", p.side == Side::kMore ? "more" : "at-most"}});
          }
          rows.push_back({{"iteration", r.iteration},
                          {"lo", ToString(r.lo)},
                          {"hi", ToString(r.hi)},
                          {"breakpoints", r.breakpoints},
                          {"probes", probes}});
        }
        trace["fixpoint"] = rows;
        trace["zero_lambda"] = best.fixpoint->zero_lambda;
      }
      out["trace"] = trace;
    }
  }

  if (options.oracle_cost) {
    out["oracle_cost"] = ToString(*options.oracle_cost);
    out["ratio"] = *options.oracle_cost == 0
                       ? Json(result.solution.cost == 0 ? "1" : "inf")
                       : Json(ToString(result.solution.cost / *options.oracle_cost));
  } else {
    out["oracle_cost"] = nullptr;
    out["ratio"] = nullptr;
  }
  if (options.timestamp) out["timestamp"] = *options.timestamp;
  return out;
}

}  // namespace msr
