#include "sofic/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "sofic/errors.hpp"

namespace sofic {

MultiGraph::MultiGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  std::vector<std::size_t> deg(vertex_count_, 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u >= vertex_count_ || e.v >= vertex_count_) {
      throw InputError("edge " + std::to_string(i) + " has an endpoint out of range");
    }
    if (e.u == e.v) {
      throw InputError("edge " + std::to_string(i) + " is a loop at vertex " + std::to_string(e.u));
    }
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(vertex_count_ + 1, 0);
  for (std::size_t v = 0; v < vertex_count_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  neighbors_.resize(offsets_.back());
  incident_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    neighbors_[fill[e.u]] = e.v;
    incident_[fill[e.u]++] = i;
    neighbors_[fill[e.v]] = e.u;
    incident_[fill[e.v]++] = i;
  }

  if (vertex_count_ > 0) {
    const auto [lo, hi] = std::minmax_element(deg.begin(), deg.end());
    degree_ = *hi;
    regular_ = (*lo == *hi) && *hi > 0;
  }
}

std::vector<Edge> MultiGraph::sorted_edge_multiset() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back({e.lo(), e.hi()});
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return out;
}

bool MultiGraph::same_multigraph(const MultiGraph& other) const {
  return vertex_count_ == other.vertex_count_ &&
         sorted_edge_multiset() == other.sorted_edge_multiset();
}

VertexSet::VertexSet(std::size_t universe, std::vector<Vertex> members)
    : universe_(universe), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= universe_) {
    throw InputError("vertex " + std::to_string(members_.back()) + " out of range for " +
                     std::to_string(universe_) + " vertices");
  }
}

VertexSet VertexSet::all(std::size_t universe) {
  std::vector<Vertex> m(universe);
  for (std::size_t i = 0; i < universe; ++i) m[i] = static_cast<Vertex>(i);
  return VertexSet(universe, std::move(m));
}

VertexSet VertexSet::from_mask(std::size_t universe, const std::vector<char>& mask) {
  std::vector<Vertex> m;
  for (std::size_t i = 0; i < universe && i < mask.size(); ++i)
    if (mask[i]) m.push_back(static_cast<Vertex>(i));
  return VertexSet(universe, std::move(m));
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

Rational VertexSet::mass() const {
  if (universe_ == 0) return Rational(0);
  return Rational(static_cast<std::int64_t>(members_.size()), static_cast<std::int64_t>(universe_));
}

std::vector<char> VertexSet::mask() const {
  std::vector<char> m(universe_, 0);
  for (Vertex v : members_) m[v] = 1;
  return m;
}

VertexSet VertexSet::complement() const {
  std::vector<char> m = mask();
  for (char& c : m) c = !c;
  return from_mask(universe_, m);
}

bool size_lex_less(const VertexSet& a, const VertexSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.members_ < b.members_;
}

RegularityWitness degree_check(const MultiGraph& g) {
  return {g.regular_degree(), g.is_regular()};
}

std::size_t edge_boundary(const MultiGraph& g, const VertexSet& s) {
  if (s.universe() != g.vertex_count()) {
    throw InputError("vertex set universe does not match the graph");
  }
  const std::vector<char> in = s.mask();
  std::size_t count = 0;
  for (const Edge& e : g.edges()) count += (in[e.u] != in[e.v]);
  return count;
}

std::size_t edit_count(const MultiGraph& g, const MultiGraph& h) {
  if (g.vertex_count() != h.vertex_count()) {
    throw InputError("edit distance needs equal vertex sets (" + std::to_string(g.vertex_count()) +
                     " vs " + std::to_string(h.vertex_count()) + ")");
  }
  const auto a = g.sorted_edge_multiset();
  const auto b = h.sorted_edge_multiset();
  auto less = [](const Edge& x, const Edge& y) { return x.u != y.u ? x.u < y.u : x.v < y.v; };
  std::size_t i = 0, j = 0, diff = 0;
  while (i < a.size() && j < b.size()) {
    if (less(a[i], b[j])) {
      ++diff, ++i;
    } else if (less(b[j], a[i])) {
      ++diff, ++j;
    } else {
      ++i, ++j;
    }
  }
  return diff + (a.size() - i) + (b.size() - j);
}

double edit_distance(const MultiGraph& g, const MultiGraph& h) {
  const std::size_t diff = edit_count(g, h);
  if (g.vertex_count() == 0) return 0.0;
  return static_cast<double>(diff) / static_cast<double>(g.vertex_count());
}

MultiGraph induced_subgraph(const MultiGraph& g, std::span<const Vertex> members) {
  constexpr Vertex kAbsent = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> local(g.vertex_count(), kAbsent);
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (local[e.u] != kAbsent && local[e.v] != kAbsent) edges.push_back({local[e.u], local[e.v]});
  }
  return MultiGraph(members.size(), std::move(edges));
}

MultiGraph disjoint_union(const MultiGraph& g, const MultiGraph& h) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  const auto shift = static_cast<Vertex>(g.vertex_count());
  for (const Edge& e : h.edges()) edges.push_back({e.u + shift, e.v + shift});
  return MultiGraph(g.vertex_count() + h.vertex_count(), std::move(edges));
}

std::vector<std::uint32_t> connected_components(const MultiGraph& g, std::size_t* count) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> comp(g.vertex_count(), kUnset);
  std::uint32_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] != kUnset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x)) {
        if (comp[y] == kUnset) {
          comp[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

std::vector<std::size_t> bfs_distances(const MultiGraph& g, Vertex source) {
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  if (source >= g.vertex_count()) throw InputError("BFS source out of range");
  std::vector<std::size_t> dist(g.vertex_count(), kInf);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] == kInf) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

VertexSet neighborhood(const MultiGraph& g, const VertexSet& seeds, std::size_t radius) {
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.vertex_count(), kInf);
  std::deque<Vertex> queue;
  for (Vertex s : seeds.members()) {
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    if (dist[x] == radius) continue;
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] == kInf) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (dist[v] != kInf) out.push_back(v);
  return VertexSet(g.vertex_count(), std::move(out));
}

}  // namespace sofic
