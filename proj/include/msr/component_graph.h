#ifndef MSR_COMPONENT_GRAPH_H_
#define MSR_COMPONENT_GRAPH_H_

#include <optional>
#include <vector>

#include "msr/metric.h"

namespace msr {

// Weighted graph of one component: a point vertex per point of X(C), and a
// pair vertex plus a pendant frontier vertex per pair of the inclusion
// antichain. Pair-point and pair-frontier edges weigh the pair's radius.
class ComponentGraph {
 public:
  enum class Kind { kPoint, kPair, kFrontier };
  struct Vertex {
    Kind kind;
    int point = -1;  // kPoint
    int pair = -1;   // kPair / kFrontier: index into antichain()
  };

  ComponentGraph(const MetricInstance& instance, const std::vector<Pair>& members);

  const std::vector<Pair>& antichain() const { return antichain_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  // Shortest path weight; nullopt when disconnected.
  const std::optional<Rational>& distance(int u, int v) const {
    return dist_[static_cast<size_t>(u) * vertices_.size() + v];
  }
  int edge_count() const { return edges_; }

 private:
  std::vector<Pair> antichain_;
  std::vector<Vertex> vertices_;
  std::vector<std::optional<Rational>> dist_;
  int edges_ = 0;
};

struct GraphRadius {
  int vertex = -1;
  int center_point = -1;  // the point a ball would be centered at
  Rational radius;
};

// Smallest eccentricity over point and pair vertices.
GraphRadius RadiusOf(const ComponentGraph& graph);

}  // namespace msr

#endif  // MSR_COMPONENT_GRAPH_H_
