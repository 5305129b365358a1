#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "sofic/graph.hpp"

namespace sofic {

inline constexpr std::size_t kDefaultBallCap = 10000;

/// Induced r-ball around a root. The root is always local vertex 0 and the
/// remaining vertices follow BFS order.
struct RootedBall {
  std::size_t radius = 0;
  MultiGraph graph;
  Vertex root = 0;
  /// Original vertex ids, aligned with local ids (empty for oracle balls).
  std::vector<Vertex> origin;
};

/// BFS ball of radius r with every edge between its vertices (parallel
/// edges kept). Throws InputError for an out-of-range vertex.
RootedBall extract_ball(const MultiGraph& g, Vertex v, std::size_t radius);

/// Canonical byte string of a rooted multigraph, equal for two inputs iff
/// they are isomorphic by a map sending root to root.
///
/// Colour refinement seeded with (is_root, distance to root) followed by an
/// individualisation-refinement search with automorphism pruning; the key is
/// the lexicographically least relabelled edge list over all leaves.
/// Throws LimitError above `cap` vertices.
std::string canonical_form(const RootedBall& ball, std::size_t cap = kDefaultBallCap);
std::string canonical_form(const MultiGraph& graph, Vertex root, std::size_t cap = kDefaultBallCap);

std::string to_hex(const std::string& bytes);

/// Exact distribution of ball classes: counts per canonical key.
struct LocalDistribution {
  std::size_t radius = 0;
  std::map<std::string, std::int64_t> counts;
  std::int64_t total = 0;

  Rational weight(const std::string& key) const;
};

/// Enumerates every vertex (no sampling).
LocalDistribution local_statistics(const MultiGraph& g, std::size_t radius,
                                   std::size_t cap = kDefaultBallCap);

/// (1/2) * sum over keys of |p - q|. Throws InputError on a radius mismatch.
Rational tv_distance(const LocalDistribution& p, const LocalDistribution& q);

}  // namespace sofic
