#include "sofic/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <exception>
#include <random>

#include "sofic/errors.hpp"
#include "sofic/localstats.hpp"
#include "sofic/rng.hpp"

namespace sofic::kernels {

SubsetTable::SubsetTable(const MultiGraph& g, std::span<const Vertex> active_vertices)
    : active(active_vertices.begin(), active_vertices.end()) {
  if (active.size() > 62) throw LimitError("subset enumeration supports at most 62 vertices");
  std::vector<int> index(g.vertex_count(), -1);
  for (std::size_t i = 0; i < active.size(); ++i) index[active[i]] = static_cast<int>(i);
  degree.resize(active.size());
  layers.resize(active.size());
  for (std::size_t i = 0; i < active.size(); ++i) {
    const Vertex v = active[i];
    degree[i] = static_cast<std::uint32_t>(g.degree(v));
    std::vector<std::uint32_t> mult(active.size(), 0);
    for (Vertex y : g.neighbors(v))
      if (index[y] >= 0) ++mult[static_cast<std::size_t>(index[y])];
    const std::uint32_t top = mult.empty() ? 0 : *std::max_element(mult.begin(), mult.end());
    layers[i].assign(top, 0);
    for (std::size_t j = 0; j < active.size(); ++j)
      for (std::uint32_t k = 0; k < mult[j]; ++k) layers[i][k] |= (1ULL << j);
  }
}

std::uint64_t SubsetTable::boundary(std::uint64_t mask) const {
  std::uint64_t total = 0;
  for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
    const int i = std::countr_zero(rest);
    std::uint64_t inside = 0;
    for (std::uint64_t layer : layers[static_cast<std::size_t>(i)])
      inside += static_cast<std::uint64_t>(std::popcount(layer & mask));
    total += degree[static_cast<std::size_t>(i)] - inside;
  }
  return total;
}

bool size_lex_before(std::uint64_t a, std::uint64_t b) {
  const int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & (~diff + 1))) != 0;
}

namespace {

bool ratio_better(const SubsetHit& a, const SubsetHit& b) {
  if (!b.found) return a.found;
  if (!a.found) return false;
  const auto lhs = a.boundary * b.size;
  const auto rhs = b.boundary * a.size;
  if (lhs != rhs) return lhs < rhs;
  return size_lex_before(a.mask, b.mask);
}

bool size_better(const SubsetHit& a, const SubsetHit& b) {
  if (!b.found) return a.found;
  if (!a.found) return false;
  return size_lex_before(a.mask, b.mask);
}

std::uint64_t mask_limit(const SubsetTable& t) {
  return t.size() == 0 ? 1 : (1ULL << t.size());
}

void step_walk(const MultiGraph& g, std::span<const std::int64_t> phi, std::int64_t p,
               std::size_t steps, std::mt19937_64& rng, std::int64_t& sum, char& closed) {
  std::uniform_int_distribution<Vertex> start_pick(0, static_cast<Vertex>(g.vertex_count() - 1));
  const Vertex start = start_pick(rng);
  Vertex x = start;
  std::int64_t acc = 0;
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t deg = g.degree(x);
    if (deg == 0) break;
    std::uniform_int_distribution<std::size_t> pick(0, deg - 1);
    const std::size_t k = pick(rng);
    const EdgeId e = g.incident_edges(x)[k];
    const Vertex y = g.neighbors(x)[k];
    acc += (x == g.edge(e).lo()) ? phi[e] : -phi[e];
    acc %= p;
    x = y;
  }
  sum = ((acc % p) + p) % p;
  closed = (x == start);
}

}  // namespace

namespace serial {

void markov_apply(const MultiGraph& g, std::span<const double> f, std::span<double> out) {
  const double inv = 1.0 / static_cast<double>(g.regular_degree());
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    double acc = 0.0;
    for (Vertex y : g.neighbors(x)) acc += f[y];
    out[x] = acc * inv;
  }
}

SubsetHit min_ratio_subset(const SubsetTable& t, std::size_t max_size) {
  SubsetHit best;
  for (std::uint64_t mask = 1; mask < mask_limit(t); ++mask) {
    const auto size = static_cast<std::uint32_t>(std::popcount(mask));
    if (size > max_size) continue;
    const SubsetHit hit{true, mask, t.boundary(mask), size};
    if (ratio_better(hit, best)) best = hit;
  }
  return best;
}

SubsetHit min_size_sparse_subset(const SubsetTable& t, double threshold) {
  SubsetHit best;
  for (std::uint64_t mask = 1; mask < mask_limit(t); ++mask) {
    const auto size = static_cast<std::uint32_t>(std::popcount(mask));
    if (best.found && size > best.size) continue;
    const std::uint64_t b = t.boundary(mask);
    if (static_cast<double>(b) < threshold * size) {
      const SubsetHit hit{true, mask, b, size};
      if (size_better(hit, best)) best = hit;
    }
  }
  return best;
}

std::vector<std::string> ball_keys(const MultiGraph& g, std::size_t radius, std::size_t cap) {
  std::vector<std::string> keys(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    keys[v] = canonical_form(extract_ball(g, v, radius), cap);
  }
  return keys;
}

void walk_sums(const MultiGraph& g, std::span<const std::int64_t> phi_lo_hi, std::int64_t p,
               std::size_t steps, std::size_t trials, std::uint64_t seed, std::uint64_t stream_base,
               std::span<std::int64_t> sums, std::span<char> closed) {
  for (std::size_t i = 0; i < trials; ++i) {
    auto rng = stream_engine(seed, stream_base + i);
    step_walk(g, phi_lo_hi, p, steps, rng, sums[i], closed[i]);
  }
}

}  // namespace serial

namespace parallel {

void markov_apply(const MultiGraph& g, std::span<const double> f, std::span<double> out) {
  const double inv = 1.0 / static_cast<double>(g.regular_degree());
  const auto n = static_cast<std::int64_t>(g.vertex_count());
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto x = static_cast<Vertex>(i);
    double acc = 0.0;
    for (Vertex y : g.neighbors(x)) acc += f[y];
    out[x] = acc * inv;
  }
}

SubsetHit min_ratio_subset(const SubsetTable& t, std::size_t max_size) {
  SubsetHit best;
  const auto limit = static_cast<std::int64_t>(mask_limit(t));
#pragma omp parallel
  {
    SubsetHit local;
#pragma omp for schedule(static) nowait
    for (std::int64_t m = 1; m < limit; ++m) {
      const auto mask = static_cast<std::uint64_t>(m);
      const auto size = static_cast<std::uint32_t>(std::popcount(mask));
      if (size > max_size) continue;
      const SubsetHit hit{true, mask, t.boundary(mask), size};
      if (ratio_better(hit, local)) local = hit;
    }
#pragma omp critical(sofic_min_ratio)
    if (ratio_better(local, best)) best = local;
  }
  return best;
}

SubsetHit min_size_sparse_subset(const SubsetTable& t, double threshold) {
  SubsetHit best;
  const auto limit = static_cast<std::int64_t>(mask_limit(t));
#pragma omp parallel
  {
    SubsetHit local;
#pragma omp for schedule(static) nowait
    for (std::int64_t m = 1; m < limit; ++m) {
      const auto mask = static_cast<std::uint64_t>(m);
      const auto size = static_cast<std::uint32_t>(std::popcount(mask));
      if (local.found && size > local.size) continue;
      const std::uint64_t b = t.boundary(mask);
      if (static_cast<double>(b) < threshold * size) {
        const SubsetHit hit{true, mask, b, size};
        if (size_better(hit, local)) local = hit;
      }
    }
#pragma omp critical(sofic_min_size)
    if (size_better(local, best)) best = local;
  }
  return best;
}

std::vector<std::string> ball_keys(const MultiGraph& g, std::size_t radius, std::size_t cap) {
  std::vector<std::string> keys(g.vertex_count());
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      keys[static_cast<std::size_t>(i)] =
          canonical_form(extract_ball(g, static_cast<Vertex>(i), radius), cap);
    } catch (...) {
#pragma omp critical(sofic_ball_keys_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return keys;
}

void walk_sums(const MultiGraph& g, std::span<const std::int64_t> phi_lo_hi, std::int64_t p,
               std::size_t steps, std::size_t trials, std::uint64_t seed, std::uint64_t stream_base,
               std::span<std::int64_t> sums, std::span<char> closed) {
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    auto rng = stream_engine(seed, stream_base + idx);
    step_walk(g, phi_lo_hi, p, steps, rng, sums[idx], closed[idx]);
  }
}

}  // namespace parallel

}  // namespace sofic::kernels
