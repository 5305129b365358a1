#include <algorithm>
#include <cmath>
#include <numeric>

#include "internal.hpp"
#include "sofic/decompose.hpp"
#include "sofic/errors.hpp"
#include "sofic/kernels.hpp"
#include "sofic/spectral.hpp"

namespace sofic {

std::string to_string(CutMode mode) {
  return mode == CutMode::kExact ? "exact" : "spectral";
}

bool is_sparse_set(const MultiGraph& g, const VertexSet& s, double gamma) {
  if (s.empty()) return false;
  const double boundary = static_cast<double>(edge_boundary(g, s));
  return boundary < gamma * static_cast<double>(g.regular_degree()) / 2.0 * static_cast<double>(s.size());
}

namespace detail {

std::vector<Vertex> spectral_order(const MultiGraph& g, const VertexSet& active, std::uint64_t seed) {
  const auto members = active.members();
  const std::size_t m = members.size();
  std::vector<Vertex> order(members.begin(), members.end());
  if (m < 2) return order;

  std::vector<std::int64_t> local(g.vertex_count(), -1);
  for (std::size_t i = 0; i < m; ++i) local[members[i]] = static_cast<std::int64_t>(i);
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> adj;
  std::vector<double> lazy(m);
  const double d = static_cast<double>(g.regular_degree());
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t inside = 0;
    for (Vertex y : g.neighbors(members[i])) {
      if (local[y] >= 0) {
        adj.push_back(static_cast<std::uint32_t>(local[y]));
        ++inside;
      }
    }
    offsets.push_back(adj.size());
    lazy[i] = (d - static_cast<double>(inside)) / d;
  }
  const LinearOperator op = [&](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) s += x[adj[k]];
      y[i] = s / d + lazy[i] * x[i];
    }
  };
  const PowerResult top = shifted_power_iteration(op, m, +1, 1e-8, 20000, seed);
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&top](std::size_t a, std::size_t b) { return top.vector[a] < top.vector[b]; });
  for (std::size_t i = 0; i < m; ++i) order[i] = members[idx[i]];
  return order;
}

std::vector<std::int64_t> prefix_boundaries(const MultiGraph& g, const std::vector<Vertex>& order) {
  std::vector<char> in(g.vertex_count(), 0);
  std::vector<std::int64_t> out(order.size() + 1, 0);
  std::int64_t boundary = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::int64_t inside = 0;
    for (Vertex y : g.neighbors(order[i])) inside += in[y];
    boundary += static_cast<std::int64_t>(g.degree(order[i])) - 2 * inside;
    in[order[i]] = 1;
    out[i + 1] = boundary;
  }
  return out;
}

}  // namespace detail

namespace {

std::optional<VertexSet> exact_cut(const MultiGraph& g, const VertexSet& active, double gamma,
                                   std::size_t exact_limit) {
  if (active.size() > exact_limit) {
    throw LimitError("exact sparse-cut search limited to " + std::to_string(exact_limit) +
                     " active vertices, got " + std::to_string(active.size()));
  }
  const kernels::SubsetTable table(g, active.members());
  const double threshold = gamma * static_cast<double>(g.regular_degree()) / 2.0;
  const kernels::SubsetHit hit = kernels::parallel::min_size_sparse_subset(table, threshold);
  if (!hit.found) return std::nullopt;
  std::vector<Vertex> members;
  for (std::size_t i = 0; i < table.size(); ++i)
    if (hit.mask >> i & 1ULL) members.push_back(table.active[i]);
  return VertexSet(g.vertex_count(), std::move(members));
}

std::optional<VertexSet> spectral_cut(const MultiGraph& g, const VertexSet& active, double gamma,
                                      std::uint64_t seed) {
  const std::size_t m = active.size();
  const double threshold = gamma * static_cast<double>(g.regular_degree()) / 2.0;
  std::optional<VertexSet> best;
  std::int64_t best_boundary = 0;

  auto consider = [&](const std::vector<Vertex>& order) {
    const auto boundary = detail::prefix_boundaries(g, order);
    for (std::size_t size = 1; 2 * size <= m; ++size) {
      const std::int64_t b = boundary[size];
      if (!(static_cast<double>(b) < threshold * static_cast<double>(size))) continue;
      if (best) {
        const auto lhs = static_cast<long double>(b) * static_cast<long double>(best->size());
        const auto rhs = static_cast<long double>(best_boundary) * static_cast<long double>(size);
        if (lhs > rhs) continue;
        if (lhs == rhs && size > best->size()) continue;
        VertexSet candidate(g.vertex_count(), std::vector<Vertex>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(size)));
        if (lhs == rhs && size == best->size() && !size_lex_less(candidate, *best)) continue;
        best = std::move(candidate);
      } else {
        best = VertexSet(g.vertex_count(), std::vector<Vertex>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(size)));
      }
      best_boundary = b;
    }
  };

  std::vector<Vertex> order = detail::spectral_order(g, active, seed);
  consider(order);
  std::reverse(order.begin(), order.end());
  consider(order);
  if (best) return best;
  if (is_sparse_set(g, active, gamma)) return active;
  return std::nullopt;
}

}  // namespace

std::optional<VertexSet> find_sparse_cut(const MultiGraph& g, const VertexSet& active, double gamma,
                                         CutMode mode, std::size_t exact_limit, std::uint64_t seed) {
  if (!g.is_regular()) throw PreconditionError("find_sparse_cut needs a regular graph");
  if (active.universe() != g.vertex_count()) throw InputError("active set universe mismatch");
  if (active.empty()) return std::nullopt;
  return mode == CutMode::kExact ? exact_cut(g, active, gamma, exact_limit)
                                 : spectral_cut(g, active, gamma, seed);
}

}  // namespace sofic
