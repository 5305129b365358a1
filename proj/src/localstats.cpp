#include "sofic/localstats.hpp"

#include <cstdlib>
#include <deque>
#include <set>
#include <unordered_map>

#include "sofic/errors.hpp"
#include "sofic/kernels.hpp"

namespace sofic {

RootedBall extract_ball(const MultiGraph& g, Vertex v, std::size_t radius) {
  if (v >= g.vertex_count()) throw InputError("ball root " + std::to_string(v) + " out of range");
  // Local map kept sparse so that extracting many small balls from a large
  // graph does not cost O(n) each.
  std::vector<Vertex> order{v};
  std::vector<std::size_t> dist{0};
  std::unordered_map<Vertex, Vertex> local{{v, 0}};
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex x = order[head];
    if (dist[head] == radius) continue;
    for (Vertex y : g.neighbors(x)) {
      if (!local.contains(y)) {
        local.emplace(y, static_cast<Vertex>(order.size()));
        order.push_back(y);
        dist.push_back(dist[head] + 1);
      }
    }
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Vertex x = order[i];
    const auto neighbors = g.neighbors(x);
    const auto incident = g.incident_edges(x);
    for (std::size_t k = 0; k < neighbors.size(); ++k) {
      const auto it = local.find(neighbors[k]);
      if (it == local.end()) continue;
      // Each edge instance once: from its lower original endpoint.
      const Edge& e = g.edge(incident[k]);
      if (x != e.lo()) continue;
      edges.push_back({static_cast<Vertex>(i), it->second});
    }
  }
  RootedBall ball;
  ball.radius = radius;
  ball.graph = MultiGraph(order.size(), std::move(edges));
  ball.root = 0;
  ball.origin = std::move(order);
  return ball;
}

Rational LocalDistribution::weight(const std::string& key) const {
  const auto it = counts.find(key);
  if (it == counts.end() || total == 0) return Rational(0);
  return Rational(it->second, total);
}

LocalDistribution local_statistics(const MultiGraph& g, std::size_t radius, std::size_t cap) {
  LocalDistribution dist;
  dist.radius = radius;
  const auto keys = kernels::parallel::ball_keys(g, radius, cap);
  for (const std::string& k : keys) ++dist.counts[k];
  dist.total = static_cast<std::int64_t>(keys.size());
  return dist;
}

Rational tv_distance(const LocalDistribution& p, const LocalDistribution& q) {
  if (p.radius != q.radius) {
    throw InputError("tv_distance needs equal radii (" + std::to_string(p.radius) + " vs " +
                     std::to_string(q.radius) + ")");
  }
  if (p.total == 0 || q.total == 0) throw InputError("tv_distance of an empty distribution");
  std::set<std::string> keys;
  for (const auto& [k, c] : p.counts) keys.insert(k);
  for (const auto& [k, c] : q.counts) keys.insert(k);
  // Common denominator p.total * q.total keeps the sum in integers.
  std::int64_t numerator = 0;
  for (const std::string& k : keys) {
    const auto pc = p.counts.contains(k) ? p.counts.at(k) : 0;
    const auto qc = q.counts.contains(k) ? q.counts.at(k) : 0;
    numerator += std::llabs(pc * q.total - qc * p.total);
  }
  return Rational(numerator, 2 * p.total * q.total);
}

}  // namespace sofic
