#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/rational.hpp>

namespace sofic {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Rational = boost::rational<std::int64_t>;

/// One edge instance. Endpoints are stored as given; the pair is unordered.
struct Edge {
  Vertex u;
  Vertex v;

  Vertex other(Vertex x) const { return x == u ? v : u; }
  Vertex lo() const { return u < v ? u : v; }
  Vertex hi() const { return u < v ? v : u; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite undirected loopless multigraph with a CSR incidence index.
///
/// Parallel edges are separate instances with distinct EdgeIds. The object
/// is immutable after construction; every query is const and thread safe.
class MultiGraph {
 public:
  MultiGraph() = default;

  /// Throws InputError on a loop or an endpoint >= vertex_count.
  MultiGraph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  /// Neighbours of v, one entry per incident edge instance.
  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], degree(v)};
  }

  /// Edge instances incident to v, aligned with neighbors(v).
  std::span<const EdgeId> incident_edges(Vertex v) const {
    return {incident_.data() + offsets_[v], degree(v)};
  }

  /// True when every vertex has the same positive degree.
  bool is_regular() const { return regular_; }
  /// Common degree when regular, otherwise the maximum degree.
  std::size_t regular_degree() const { return degree_; }

  /// Edge multiset as sorted (lo, hi) pairs; used for equality and diffs.
  std::vector<Edge> sorted_edge_multiset() const;

  bool same_multigraph(const MultiGraph& other) const;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> neighbors_;
  std::vector<EdgeId> incident_;
  bool regular_ = false;
  std::size_t degree_ = 0;
};

/// Sorted, duplicate-free subset of {0..universe-1}.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : universe_(universe) {}

  /// Sorts and dedups; throws InputError on an index >= universe.
  VertexSet(std::size_t universe, std::vector<Vertex> members);

  static VertexSet all(std::size_t universe);
  static VertexSet from_mask(std::size_t universe, const std::vector<char>& mask);

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::span<const Vertex> members() const { return members_; }
  bool contains(Vertex v) const;

  /// |S| / n as an exact fraction (0 for an empty universe).
  Rational mass() const;

  std::vector<char> mask() const;
  VertexSet complement() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  /// Size first, then lexicographic on the sorted member lists.
  friend bool size_lex_less(const VertexSet& a, const VertexSet& b);

 private:
  std::size_t universe_ = 0;
  std::vector<Vertex> members_;
};

struct RegularityWitness {
  std::size_t degree = 0;
  bool valid = false;
};

/// Reports the common degree, or valid=false and the maximum degree.
RegularityWitness degree_check(const MultiGraph& g);

/// Raw count (with multiplicity) of edges with exactly one endpoint in s.
std::size_t edge_boundary(const MultiGraph& g, const VertexSet& s);

/// |E(g) Δ E(h)| as multisets. Throws InputError on vertex-count mismatch.
std::size_t edit_count(const MultiGraph& g, const MultiGraph& h);

/// edit_count / n.
double edit_distance(const MultiGraph& g, const MultiGraph& h);

/// Subgraph induced on `members` (relabelled 0..k-1 in the given order).
MultiGraph induced_subgraph(const MultiGraph& g, std::span<const Vertex> members);

/// Disjoint union with the second graph's vertices shifted by g.vertex_count().
MultiGraph disjoint_union(const MultiGraph& g, const MultiGraph& h);

/// Component id per vertex, ids numbered in order of smallest member.
std::vector<std::uint32_t> connected_components(const MultiGraph& g, std::size_t* count = nullptr);

/// BFS distances from `source`; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const MultiGraph& g, Vertex source);

/// Vertices within distance `radius` of any vertex in `seeds`.
VertexSet neighborhood(const MultiGraph& g, const VertexSet& seeds, std::size_t radius);

}  // namespace sofic
