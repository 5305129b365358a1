#include "sofic/generators.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "sofic/errors.hpp"
#include "sofic/rng.hpp"

namespace sofic {

GraphKind parse_graph_kind(const std::string& name) {
  if (name == "cycle") return GraphKind::kCycle;
  if (name == "complete") return GraphKind::kComplete;
  if (name == "circulant") return GraphKind::kCirculant;
  if (name == "random_regular" || name == "random-regular") return GraphKind::kRandomRegular;
  throw InputError("unknown graph kind '" + name + "'");
}

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::kCycle: return "cycle";
    case GraphKind::kComplete: return "complete";
    case GraphKind::kCirculant: return "circulant";
    case GraphKind::kRandomRegular: return "random_regular";
  }
  return "?";
}

MultiGraph make_cycle(std::size_t n) {
  if (n < 3) throw InputError("a cycle needs at least 3 vertices");
  return make_circulant(n, {1});
}

MultiGraph make_complete(std::size_t n) {
  if (n < 2) throw InputError("a complete graph needs at least 2 vertices");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return MultiGraph(n, std::move(edges));
}

namespace {

std::vector<std::size_t> normalized_offsets(std::size_t n, const std::vector<std::int64_t>& offsets) {
  if (n < 2) throw InputError("a circulant needs at least 2 vertices");
  const auto sn = static_cast<std::int64_t>(n);
  std::vector<std::size_t> out;
  std::set<std::size_t> seen;
  for (std::int64_t o : offsets) {
    const auto r = static_cast<std::size_t>(((o % sn) + sn) % sn);
    if (r == 0) throw InputError("circulant offset " + std::to_string(o) + " is 0 mod n");
    const std::size_t canon = std::min(r, n - r);
    if (!seen.insert(canon).second) {
      throw InputError("circulant offsets must be distinct up to sign mod n");
    }
    out.push_back(canon);
  }
  if (out.empty()) throw InputError("circulant needs at least one offset");
  return out;
}

}  // namespace

std::size_t circulant_degree(std::size_t n, const std::vector<std::int64_t>& offsets) {
  std::size_t d = 0;
  for (std::size_t o : normalized_offsets(n, offsets)) d += (2 * o == n) ? 1 : 2;
  return d;
}

MultiGraph make_circulant(std::size_t n, const std::vector<std::int64_t>& offsets) {
  std::vector<Edge> edges;
  for (std::size_t o : normalized_offsets(n, offsets)) {
    const std::size_t count = (2 * o == n) ? n / 2 : n;
    for (std::size_t i = 0; i < count; ++i) {
      edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + o) % n)});
    }
  }
  return MultiGraph(n, std::move(edges));
}

MultiGraph make_random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (d == 0 || n <= d) throw InputError("random_regular needs 1 <= d < n");
  if ((n * d) % 2 != 0) throw InputError("random_regular needs n*d even");

  auto rng = stream_engine(seed, streams::kGenerator);
  for (int attempt = 0; attempt < kPairingRetryCap; ++attempt) {
    std::vector<Vertex> points;
    points.reserve(n * d);
    for (Vertex v = 0; v < n; ++v)
      for (std::size_t k = 0; k < d; ++k) points.push_back(v);
    std::shuffle(points.begin(), points.end(), rng);

    std::set<std::pair<Vertex, Vertex>> present;
    std::vector<Edge> edges;
    std::vector<std::size_t> candidates;
    bool stuck = false;
    while (!points.empty()) {
      const Vertex a = points.back();
      points.pop_back();
      candidates.clear();
      for (std::size_t i = 0; i < points.size(); ++i) {
        const Vertex b = points[i];
        if (b != a && !present.contains({std::min(a, b), std::max(a, b)})) candidates.push_back(i);
      }
      if (candidates.empty()) {
        stuck = true;
        break;
      }
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      const std::size_t idx = candidates[pick(rng)];
      const Vertex b = points[idx];
      points[idx] = points.back();
      points.pop_back();
      present.insert({std::min(a, b), std::max(a, b)});
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
    if (!stuck) {
      std::sort(edges.begin(), edges.end(),
                [](const Edge& x, const Edge& y) { return x.u != y.u ? x.u < y.u : x.v < y.v; });
      return MultiGraph(n, std::move(edges));
    }
  }
  throw Error("random_regular: pairing model exceeded " + std::to_string(kPairingRetryCap) +
              " restarts");
}

MultiGraph make_petersen() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});                   // outer 5-cycle 0..4
    edges.push_back({i, i + 5});                          // spokes
    edges.push_back({i + 5, static_cast<Vertex>((i + 2) % 5 + 5)});  // inner pentagram
  }
  return MultiGraph(10, std::move(edges));
}

MultiGraph generate(GraphKind kind, std::size_t n, std::size_t d,
                    const std::vector<std::int64_t>& offsets, std::uint64_t seed) {
  switch (kind) {
    case GraphKind::kCycle: return make_cycle(n);
    case GraphKind::kComplete: return make_complete(n);
    case GraphKind::kCirculant: {
      const std::size_t actual = circulant_degree(n, offsets);
      if (d != 0 && d != actual) {
        throw InputError("circulant offsets give degree " + std::to_string(actual) +
                         ", not the requested " + std::to_string(d));
      }
      return make_circulant(n, offsets);
    }
    case GraphKind::kRandomRegular: return make_random_regular(n, d, seed);
  }
  throw InputError("unknown graph kind");
}

}  // namespace sofic
