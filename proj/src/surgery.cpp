#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>

#include "sofic/decompose.hpp"
#include "sofic/errors.hpp"
#include "sofic/generators.hpp"
#include "sofic/rng.hpp"
#include "sofic/spectral.hpp"

namespace sofic {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
constexpr int kMatchingRestarts = 50;
constexpr int kReplacementAttempts = 100;

void move_vertex(Partition& p, Vertex v, std::size_t from, std::size_t to) {
  const std::size_t n = p.classes[from].universe();
  std::vector<Vertex> a(p.classes[from].members().begin(), p.classes[from].members().end());
  a.erase(std::find(a.begin(), a.end(), v));
  std::vector<Vertex> b(p.classes[to].members().begin(), p.classes[to].members().end());
  b.push_back(v);
  p.classes[from] = VertexSet(n, std::move(a));
  p.classes[to] = VertexSet(n, std::move(b));
}

// Edge counts between classes, as a map per class.
std::vector<std::map<std::size_t, std::size_t>> class_adjacency(const MultiGraph& g, const Partition& p) {
  const auto label = p.labels(g.vertex_count());
  std::vector<std::map<std::size_t, std::size_t>> adj(p.classes.size());
  for (const Edge& e : g.edges()) {
    const std::size_t a = label[e.u], b = label[e.v];
    if (a == b) continue;
    ++adj[a][b];
    ++adj[b][a];
  }
  return adj;
}

// BFS path of classes from `source` to the nearest other odd class.
std::vector<std::size_t> path_to_odd_class(const Partition& p,
                                           const std::vector<std::map<std::size_t, std::size_t>>& adj,
                                           std::size_t source) {
  std::vector<std::size_t> parent(p.classes.size(), kUnreached);
  std::deque<std::size_t> queue{source};
  parent[source] = source;
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    if (c != source && p.classes[c].size() % 2 == 1) {
      std::vector<std::size_t> path{c};
      while (path.back() != source) path.push_back(parent[path.back()]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (const auto& [next, count] : adj[c]) {
      if (parent[next] == kUnreached) {
        parent[next] = c;
        queue.push_back(next);
      }
    }
  }
  throw Error("odd class without an odd partner; the graph has an odd component of odd degree");
}

}  // namespace

ParityFix fix_class_parity(const MultiGraph& g, Partition& p) {
  if (!g.is_regular()) throw PreconditionError("fix_class_parity needs a regular graph");
  ParityFix out;
  const std::size_t n = g.vertex_count();

  for (std::size_t i = 0; i < p.classes.size(); ++i) {
    if (p.classes[i].size() != 1) continue;
    const Vertex v = p.classes[i].members()[0];
    const auto label = p.labels(n);
    std::map<std::size_t, std::size_t> counts;
    for (Vertex y : g.neighbors(v)) ++counts[label[y]];
    std::size_t target = i, best = 0;
    for (const auto& [c, count] : counts) {
      if (c != i && count > best) {
        best = count;
        target = c;
      }
    }
    if (target == i) continue;
    move_vertex(p, v, i, target);
    ++out.merged_singletons;
  }

  if (g.regular_degree() % 2 == 1) {
    for (;;) {
      std::size_t odd = p.classes.size();
      for (std::size_t i = 0; i < p.classes.size(); ++i) {
        if (p.classes[i].size() % 2 == 1) {
          odd = i;
          break;
        }
      }
      if (odd == p.classes.size()) break;
      const auto adj = class_adjacency(g, p);
      const auto path = path_to_odd_class(p, adj, odd);
      for (std::size_t j = 0; j + 1 < path.size(); ++j) {
        const auto label = p.labels(n);
        const std::size_t from = path[j], to = path[j + 1];
        Vertex chosen = static_cast<Vertex>(n);
        for (Vertex v : p.classes[from].members()) {
          const auto nb = g.neighbors(v);
          if (std::any_of(nb.begin(), nb.end(), [&](Vertex y) { return label[y] == to; })) {
            chosen = v;
            break;
          }
        }
        if (chosen == n) throw Error("parity path lost its adjacency");
        move_vertex(p, chosen, from, to);
        ++out.moved_vertices;
      }
    }
  }

  Partition kept;
  for (std::size_t i = 0; i < p.classes.size(); ++i) {
    if (i == 0 || !p.classes[i].empty()) {
      kept.classes.push_back(p.classes[i]);
      kept.origins.push_back(i < p.origins.size() ? p.origins[i] : ClassOrigin::kRemainder);
    }
  }
  p = std::move(kept);
  return out;
}

MultiGraph replacement_expander(std::size_t s, std::size_t d, double target, std::uint64_t seed,
                                bool* certified) {
  if (s < 2) throw Error("cannot build a loopless regular graph on one vertex");
  if (d % 2 == 1 && s % 2 == 1) throw Error("odd degree needs an even number of vertices");
  auto cycle_copies = [&](std::size_t copies, std::vector<Edge>& edges) {
    for (std::size_t c = 0; c < copies; ++c) {
      if (s == 2) {
        edges.push_back({0, 1});
        edges.push_back({0, 1});
      } else {
        for (std::size_t i = 0; i < s; ++i) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % s)});
      }
    }
  };

  auto check = [&](const MultiGraph& q) { return certify_expansion(q, kDefaultCertifyExactLimit).value > target; };

  if (s <= d) {
    std::vector<Edge> edges;
    cycle_copies(d / 2, edges);
    if (d % 2 == 1) {
      for (std::size_t i = 0; i + 1 < s; i += 2) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
    }
    MultiGraph q(s, std::move(edges));
    if (certified) *certified = check(q);
    return q;
  }

  if (d % 2 == 0) {
    std::vector<std::int64_t> offsets;
    for (std::size_t o = 1; o <= d / 2; ++o) offsets.push_back(static_cast<std::int64_t>(o));
    MultiGraph q = make_circulant(s, offsets);
    if (check(q)) {
      if (certified) *certified = true;
      return q;
    }
  }

  MultiGraph best;
  double best_value = -1.0;
  for (int attempt = 0; attempt < kReplacementAttempts; ++attempt) {
    MultiGraph q = make_random_regular(s, d, mix64(seed + static_cast<std::uint64_t>(attempt)));
    const double value = certify_expansion(q, kDefaultCertifyExactLimit).value;
    if (value > target) {
      if (certified) *certified = true;
      return q;
    }
    if (value > best_value) {
      best_value = value;
      best = std::move(q);
    }
  }
  if (certified) *certified = false;
  return best;
}

namespace {

struct LocalClass {
  std::vector<Vertex> members;
  MultiGraph h;                     // induced subgraph, local ids
  std::vector<std::size_t> deficit;  // cross edges per local vertex
  std::size_t cross = 0;
};

LocalClass localize(const MultiGraph& g, const VertexSet& cls) {
  LocalClass out;
  out.members.assign(cls.members().begin(), cls.members().end());
  out.h = induced_subgraph(g, out.members);
  out.deficit.resize(out.members.size());
  for (std::size_t i = 0; i < out.members.size(); ++i) {
    out.deficit[i] = g.degree(out.members[i]) - out.h.degree(static_cast<Vertex>(i));
    out.cross += out.deficit[i];
  }
  return out;
}

std::size_t diameter(const MultiGraph& h) {
  std::size_t best = 0;
  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    for (std::size_t x : bfs_distances(h, v)) {
      if (x == kUnreached) return kUnreached;
      best = std::max(best, x);
    }
  }
  return best;
}

// Greedy matching of eligible edges with pairwise distance > sep, scanning
// in `order`. Returns the chosen local edge ids (may be short).
std::vector<EdgeId> greedy_matching(const MultiGraph& h, const std::vector<EdgeId>& order,
                                    std::size_t sep, std::size_t wanted) {
  std::vector<std::size_t> dist(h.vertex_count(), kUnreached);
  std::vector<EdgeId> chosen;
  std::deque<Vertex> queue;
  for (EdgeId e : order) {
    if (chosen.size() == wanted) break;
    const Edge& edge = h.edge(e);
    if (dist[edge.u] <= sep || dist[edge.v] <= sep) continue;
    chosen.push_back(e);
    // Truncated multi-source BFS keeping dist = distance to the nearest
    // chosen endpoint, up to sep.
    for (Vertex x : {edge.u, edge.v}) {
      dist[x] = 0;
      queue.push_back(x);
    }
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      if (dist[x] == sep) continue;
      for (Vertex y : h.neighbors(x)) {
        if (dist[y] == kUnreached || dist[y] > dist[x] + 1) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
  }
  return chosen;
}

bool is_connected(const MultiGraph& h) {
  std::size_t count = 0;
  connected_components(h, &count);
  return count <= 1;
}

}  // namespace

ClassSurgery regularize_class(const MultiGraph& g, const Partition& p, std::size_t class_id,
                              double gamma0, std::uint64_t seed) {
  if (!g.is_regular()) throw PreconditionError("regularize_class needs a regular graph");
  if (class_id >= p.classes.size()) throw InputError("class id out of range");
  const VertexSet& cls = p.classes[class_id];
  if (cls.empty()) throw PreconditionError("regularize_class needs a nonempty class");
  if (!(gamma0 > 0.0)) throw InputError("gamma0 must be positive");
  const std::size_t d = g.regular_degree();
  const std::size_t s = cls.size();

  LocalClass lc = localize(g, cls);
  ClassSurgery out;
  SurgeryPlan& plan = out.plan;
  plan.class_id = class_id;
  plan.r = static_cast<std::size_t>(std::ceil(6.0 / gamma0));
  plan.separation = 2 * plan.r;
  plan.cross_edges = lc.cross;
  {
    std::vector<Vertex> b;
    for (std::size_t i = 0; i < s; ++i)
      if (lc.deficit[i] > 0) b.push_back(lc.members[i]);
    plan.boundary = VertexSet(g.vertex_count(), std::move(b));
  }
  if (lc.cross % 2 == 1) {
    throw PreconditionError("class " + std::to_string(class_id) + " has an odd number of cross edges");
  }

  auto replace = [&](std::string reason) {
    plan.replaced_by_expander = true;
    plan.replacement_reason = std::move(reason);
    plan.matching_m.clear();
    plan.matching_n.clear();
    const double target = gamma0 / (6.0 * static_cast<double>(d));
    out.graph = replacement_expander(s, d, target, mix64(seed ^ (streams::kSurgery + class_id)));
  };

  if (class_id == 0) {
    replace("exceptional class");
  } else if (s < 2) {
    throw PreconditionError("class " + std::to_string(class_id) + " is a singleton");
  } else if (lc.cross == 0) {
    out.graph = lc.h;
  } else {
    std::vector<char> blocked(s, 0);
    for (std::size_t i = 0; i < s; ++i) {
      if (lc.deficit[i] == 0) continue;
      blocked[i] = 1;
      for (Vertex y : lc.h.neighbors(static_cast<Vertex>(i))) blocked[y] = 1;
    }
    std::vector<EdgeId> eligible;
    for (EdgeId e = 0; e < lc.h.edge_count(); ++e) {
      const Edge& edge = lc.h.edge(e);
      if (!blocked[edge.u] && !blocked[edge.v]) eligible.push_back(e);
    }
    const std::size_t wanted = lc.cross / 2;

    auto attempt = [&](std::size_t sep) -> std::vector<EdgeId> {
      std::vector<EdgeId> order = eligible;
      for (int k = 0; k < kMatchingRestarts; ++k) {
        if (k > 0) {
          auto rng = stream_engine(seed, streams::kSurgery + (class_id << 20) + (sep << 8) + static_cast<std::uint64_t>(k));
          std::shuffle(order.begin(), order.end(), rng);
        }
        auto chosen = greedy_matching(lc.h, order, sep, wanted);
        plan.restarts = static_cast<std::size_t>(k);
        if (chosen.size() == wanted) return chosen;
      }
      return {};
    };

    std::vector<EdgeId> matching = attempt(plan.separation);
    if (matching.empty()) {
      const std::size_t diam = diameter(lc.h);
      if (diam != kUnreached && diam <= plan.separation) {
        for (std::size_t sep = diam; sep-- > 0;) {
          matching = attempt(sep);
          if (!matching.empty()) {
            plan.separation = sep;
            break;
          }
        }
      }
    }

    if (matching.empty()) {
      replace("no admissible matching");
    } else {
      std::vector<char> removed(lc.h.edge_count(), 0);
      std::vector<Vertex> freed;
      for (EdgeId e : matching) {
        removed[e] = 1;
        freed.push_back(lc.h.edge(e).u);
        freed.push_back(lc.h.edge(e).v);
      }
      std::sort(freed.begin(), freed.end());
      std::vector<Vertex> slots;
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t k = 0; k < lc.deficit[i]; ++k) slots.push_back(static_cast<Vertex>(i));

      std::vector<Edge> edges;
      for (EdgeId e = 0; e < lc.h.edge_count(); ++e)
        if (!removed[e]) edges.push_back(lc.h.edge(e));
      for (std::size_t i = 0; i < slots.size(); ++i) {
        edges.push_back({slots[i], freed[i]});
        plan.matching_n.push_back({lc.members[slots[i]], lc.members[freed[i]]});
      }
      for (EdgeId e : matching) {
        plan.matching_m.push_back({lc.members[lc.h.edge(e).u], lc.members[lc.h.edge(e).v]});
      }
      out.graph = MultiGraph(s, std::move(edges));
      if (!is_connected(out.graph)) replace("rebuilt class is disconnected");
    }
  }

  if (!plan.replaced_by_expander && lc.cross == 0 && !is_connected(out.graph)) {
    replace("class is disconnected");
  }
  if (!out.graph.is_regular() || out.graph.regular_degree() != d) {
    throw Error("surgery on class " + std::to_string(class_id) + " did not produce a " + std::to_string(d) +
                "-regular graph");
  }
  out.internal_edits = edit_count(lc.h, out.graph);
  return out;
}

}  // namespace sofic
