#include "msr/component_graph.h"

#include <algorithm>

namespace msr {

ComponentGraph::ComponentGraph(const MetricInstance& instance, const std::vector<Pair>& members) {
  if (members.empty()) throw UsageError("component graph of no pairs");
  std::vector<Pair> sorted = members;
  std::sort(sorted.begin(), sorted.end(), PairLess);
  std::vector<PointSet> balls;
  for (const Pair& p : sorted) balls.push_back(Ball(instance, p));

  PointSet points;
  std::vector<PointSet> kept_balls;
  for (size_t a = 0; a < sorted.size(); ++a) {
    points = Union(points, balls[a]);
    bool dominated = false;
    for (size_t b = 0; b < sorted.size() && !dominated; ++b) {
      if (a == b || !IsSubset(balls[a], balls[b])) continue;
      // Equal balls: the earlier pair stands for both.
      dominated = balls[a] != balls[b] || b < a;
    }
    if (!dominated) {
      antichain_.push_back(sorted[a]);
      kept_balls.push_back(balls[a]);
    }
  }

  std::vector<int> point_vertex(instance.size(), -1);
  for (int j : points) {
    point_vertex[j] = static_cast<int>(vertices_.size());
    vertices_.push_back({Kind::kPoint, j, -1});
  }
  const size_t first_pair = vertices_.size();
  for (size_t q = 0; q < antichain_.size(); ++q) {
    vertices_.push_back({Kind::kPair, -1, static_cast<int>(q)});
    vertices_.push_back({Kind::kFrontier, -1, static_cast<int>(q)});
  }

  const size_t v = vertices_.size();
  dist_.assign(v * v, std::nullopt);
  auto relax = [&](size_t a, size_t b, const Rational& w) {
    auto& cell = dist_[a * v + b];
    if (!cell || w < *cell) cell = w;
  };
  for (size_t a = 0; a < v; ++a) dist_[a * v + a] = Rational(0);
  for (size_t q = 0; q < antichain_.size(); ++q) {
    size_t pv = first_pair + 2 * q;
    const Rational& r = antichain_[q].radius;
    for (int j : kept_balls[q]) {
      relax(pv, point_vertex[j], r);
      relax(point_vertex[j], pv, r);
      ++edges_;
    }
    relax(pv, pv + 1, r);
    relax(pv + 1, pv, r);
    ++edges_;
  }
  for (size_t mid = 0; mid < v; ++mid) {
    for (size_t a = 0; a < v; ++a) {
      const auto& am = dist_[a * v + mid];
      if (!am) continue;
      for (size_t b = 0; b < v; ++b) {
        const auto& mb = dist_[mid * v + b];
        if (!mb) continue;
        relax(a, b, *am + *mb);
      }
    }
  }
}

GraphRadius RadiusOf(const ComponentGraph& graph) {
  GraphRadius best;
  const auto& vs = graph.vertices();
  for (size_t u = 0; u < vs.size(); ++u) {
    if (vs[u].kind == ComponentGraph::Kind::kFrontier) continue;
    Rational ecc = 0;
    bool connected = true;
    for (size_t w = 0; w < vs.size(); ++w) {
      const auto& d = graph.distance(static_cast<int>(u), static_cast<int>(w));
      if (!d) {
        connected = false;
        break;
      }
      ecc = std::max(ecc, *d);
    }
    if (!connected) continue;
    if (best.vertex == -1 || ecc < best.radius) {
      best.vertex = static_cast<int>(u);
      best.radius = ecc;
      best.center_point = vs[u].kind == ComponentGraph::Kind::kPoint
                              ? vs[u].point
                              : graph.antichain()[vs[u].pair].center;
    }
  }
  if (best.vertex == -1) throw InternalError("component graph is disconnected");
  return best;
}

}  // namespace msr
