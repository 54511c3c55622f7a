#include "msr/oracle.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <random>

namespace msr {
namespace {

using Mask = std::uint64_t;

std::uint64_t SubsetCount(std::uint64_t pairs, int k, std::uint64_t limit) {
  std::uint64_t total = 1;  // empty set
  std::uint64_t binom = 1;
  for (int s = 1; s <= k && static_cast<std::uint64_t>(s) <= pairs; ++s) {
    // binom = C(pairs, s), saturating
    long double next = static_cast<long double>(binom) * (pairs - s + 1) / s;
    if (next > static_cast<long double>(limit)) return limit + 1;
    binom = static_cast<std::uint64_t>(next + 0.5L);
    total += binom;
    if (total > limit) return limit + 1;
  }
  return total;
}

// Backtracking over coverable points: each goes to one covering chosen
// center. Superset-closed bounds mean leaving a coverable point out never
// helps, so only truly uncovered points are outliers.
std::optional<std::vector<int>> FindAssignment(const MetricInstance& instance,
                                               const std::vector<Pair>& chosen) {
  const int n = instance.size();
  const int count = static_cast<int>(chosen.size());
  std::vector<std::vector<int>> options(n);
  for (int j = 0; j < n; ++j) {
    for (int c = 0; c < count; ++c) {
      if (instance.Within(chosen[c].center, j, chosen[c].radius)) options[j].push_back(c);
    }
  }
  std::vector<int> order;
  for (int j = 0; j < n; ++j) {
    if (!options[j].empty()) order.push_back(j);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return options[a].size() < options[b].size(); });

  std::vector<PointSet> assigned(count);
  // potential[c]: assigned plus still-open points that could join c.
  std::vector<int> choice(n, kUnassigned);
  auto potential_ok = [&](size_t from) {
    for (int c = 0; c < count; ++c) {
      PointSet pool = assigned[c];
      for (size_t q = from; q < order.size(); ++q) {
        int j = order[q];
        if (std::find(options[j].begin(), options[j].end(), c) != options[j].end()) {
          pool.push_back(j);
        }
      }
      std::sort(pool.begin(), pool.end());
      if (!AllowedClientSet(instance, chosen[c].center, pool)) return false;
    }
    return true;
  };
  std::function<bool(size_t)> place = [&](size_t q) {
    if (!potential_ok(q)) return false;
    if (q == order.size()) return true;
    int j = order[q];
    for (int c : options[j]) {
      auto& set = assigned[c];
      set.insert(std::upper_bound(set.begin(), set.end(), j), j);
      choice[j] = c;
      if (place(q + 1)) return true;
      set.erase(std::find(set.begin(), set.end(), j));
    }
    choice[j] = kUnassigned;
    return false;
  };
  if (!place(0)) return std::nullopt;
  return choice;
}

}  // namespace

std::optional<OracleResult> BruteForceOpt(const MetricInstance& instance,
                                          std::uint64_t max_subsets, EnumerationOrder order) {
  if (instance.size() > 64) throw UsageError("oracle supports at most 64 points");
  const bool glb = instance.lower_bounds().has_value();
  std::vector<Pair> pairs = CandidatePairs(FullResidual(instance));
  if (order == EnumerationOrder::kReverse) std::reverse(pairs.begin(), pairs.end());
  const int size = static_cast<int>(pairs.size());
  if (SubsetCount(size, instance.k(), max_subsets) > max_subsets) return std::nullopt;

  Mask active = 0;
  for (int j : instance.active()) active |= Mask{1} << j;
  std::vector<Mask> cover(size, 0);
  for (int p = 0; p < size; ++p) {
    for (int j : Ball(instance, pairs[p])) cover[p] |= Mask{1} << j;
  }
  const int m = instance.m();

  OracleResult best;
  bool found = false;
  std::vector<int> chosen;
  std::function<void(int, Mask, const Rational&)> search = [&](int from, Mask covered,
                                                               const Rational& cost) {
    if (found && cost >= best.cost) return;
    ++best.subsets_checked;
    int uncovered = __builtin_popcountll(active & ~covered);
    if (uncovered <= m) {
      std::vector<Pair> picked;
      for (int p : chosen) picked.push_back(pairs[p]);
      if (!glb) {
        best.cost = cost;
        best.solution = AssignToFirstBall(instance, picked);
        found = true;
        return;  // adding pairs only costs more
      }
      if (auto assignment = FindAssignment(instance, picked)) {
        Solution s;
        s.pairs = picked;
        s.assignment = *assignment;
        for (int j : instance.active()) {
          if (s.assignment[j] == kUnassigned) {
            s.assignment[j] = kOutlier;
            s.outliers.push_back(j);
          }
        }
        s.cost = cost;
        best.cost = cost;
        best.solution = std::move(s);
        found = true;
        return;
      }
    }
    if (static_cast<int>(chosen.size()) == instance.k()) return;
    for (int p = from; p < size; ++p) {
      if (glb && std::any_of(chosen.begin(), chosen.end(),
                             [&](int c) { return pairs[c].center == pairs[p].center; })) {
        continue;
      }
      chosen.push_back(p);
      search(p + 1, covered | cover[p], cost + pairs[p].radius);
      chosen.pop_back();
    }
  };
  search(0, 0, Rational(0));
  if (!found) return std::nullopt;
  return best;
}

int TightVertex(int h, int copy, int l) { return copy * (h + h * h) + (l - 1); }

int TightVertex(int h, int copy, int i, int j) {
  return copy * (h + h * h) + h + (i - 1) * h + (j - 1);
}

MetricInstance TightInstance(int h, int k) {
  if (h < 3) throw UsageError("tight family needs h >= 3");
  if (k < 1) throw UsageError("tight family needs k >= 1");
  const int per = h + h * h;
  const int n = per * k;
  std::vector<std::vector<int>> adj(per);
  for (int l = 1; l <= h; ++l) {
    for (int i = 1; i <= h; ++i) {
      if (i == l) continue;
      for (int j = 1; j <= h; ++j) {
        int a = TightVertex(h, 0, l);
        int b = TightVertex(h, 0, i, j);
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  }
  std::vector<std::vector<int>> hops(per, std::vector<int>(per, -1));
  for (int s = 0; s < per; ++s) {
    std::queue<int> queue;
    hops[s][s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (int w : adj[u]) {
        if (hops[s][w] == -1) {
          hops[s][w] = hops[s][u] + 1;
          queue.push(w);
        }
      }
    }
  }
  std::vector<std::optional<Rational>> dist(static_cast<size_t>(n) * n);
  for (int c = 0; c < k; ++c) {
    for (int a = 0; a < per; ++a) {
      for (int b = 0; b < per; ++b) {
        if (hops[a][b] >= 0) dist[static_cast<size_t>(c * per + a) * n + c * per + b] = hops[a][b];
      }
    }
  }
  return MetricInstance(n, std::move(dist), k, 0);
}

std::vector<std::vector<Rational>> RandomPoints(int n, int dim, std::uint64_t seed) {
  if (n < 1 || dim < 1) throw UsageError("random instance needs n >= 1 and dim >= 1");
  std::mt19937_64 engine(seed);
  const Rational scale = PowerOfTwo(-32);
  std::vector<std::vector<Rational>> points(n, std::vector<Rational>(dim));
  for (auto& point : points) {
    for (auto& x : point) {
      std::uint64_t top = engine() >> 32;
      x = Rational(mpz_class(std::to_string(top))) * scale;
    }
  }
  return points;
}

MetricInstance RandomInstance(int n, int dim, int k, int m, std::uint64_t seed,
                              std::optional<LowerBoundSpec> lower_bounds) {
  return MetricInstance(n, EuclideanDistances(RandomPoints(n, dim, seed)), k, m,
                        std::move(lower_bounds));
}

}  // namespace msr
