#include "sofic/covers.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sofic/errors.hpp"
#include "sofic/kernels.hpp"
#include "sofic/rng.hpp"

namespace sofic {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) {
  const std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

}  // namespace

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

std::int64_t EdgeWeighting::oriented(const MultiGraph& g, EdgeId e, Vertex from) const {
  return from == g.edge(e).lo() ? phi[e] : -phi[e];
}

void EdgeWeighting::validate(const MultiGraph& g) const {
  if (p == 2 || !is_prime(p)) throw InputError("p must be an odd prime, got " + std::to_string(p));
  if (L < 1 || 2 * L >= p) {
    throw InputError("L must satisfy 1 <= L < p/2 (L = " + std::to_string(L) + ", p = " + std::to_string(p) + ")");
  }
  if (phi.size() != g.edge_count()) {
    throw InputError("weighting has " + std::to_string(phi.size()) + " values for " +
                     std::to_string(g.edge_count()) + " edges");
  }
  for (std::size_t e = 0; e < phi.size(); ++e) {
    if (phi[e] < -L || phi[e] > L) {
      throw InputError("weight " + std::to_string(phi[e]) + " on edge " + std::to_string(e) + " outside [-" +
                       std::to_string(L) + ", " + std::to_string(L) + "]");
    }
  }
}

EdgeWeighting zero_weighting(const MultiGraph& g, std::int64_t p, std::int64_t L) {
  EdgeWeighting w{p, L > 0 ? L : (p - 1) / 2, std::vector<std::int64_t>(g.edge_count(), 0)};
  w.validate(g);
  return w;
}

EdgeWeighting coboundary_weighting(const MultiGraph& g, std::int64_t p, std::int64_t L,
                                   const std::vector<std::int64_t>& h) {
  if (h.size() != g.vertex_count()) throw InputError("coboundary needs one value per vertex");
  EdgeWeighting w{p, L, std::vector<std::int64_t>(g.edge_count())};
  for (EdgeId e = 0; e < g.edge_count(); ++e) w.phi[e] = h[g.edge(e).hi()] - h[g.edge(e).lo()];
  w.validate(g);
  return w;
}

EdgeWeighting random_sign_weighting(const MultiGraph& g, std::int64_t p, std::uint64_t seed) {
  EdgeWeighting w{p, 1, std::vector<std::int64_t>(g.edge_count())};
  auto rng = stream_engine(seed, streams::kGenerator + 0x57);
  std::bernoulli_distribution coin(0.5);
  for (auto& x : w.phi) x = coin(rng) ? 1 : -1;
  w.validate(g);
  return w;
}

Vertex CoverGraph::lift(Vertex x, std::int64_t z) const {
  return static_cast<Vertex>(mod(z, p) * static_cast<std::int64_t>(base.vertex_count()) + x);
}

CoverGraph build_cover(const MultiGraph& g, const EdgeWeighting& w) {
  w.validate(g);
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  if (n * w.p > static_cast<std::int64_t>(UINT32_MAX)) throw LimitError("cover too large");
  CoverGraph c;
  c.base = g;
  c.p = w.p;
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() * static_cast<std::size_t>(w.p));
  for (std::int64_t z = 0; z < w.p; ++z) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& base = g.edge(e);
      edges.push_back({c.lift(base.lo(), z), c.lift(base.hi(), z - w.phi[e])});
    }
  }
  c.graph = MultiGraph(static_cast<std::size_t>(n * w.p), std::move(edges));
  return c;
}

bool is_deck_automorphism(const CoverGraph& c, std::int64_t shift) {
  std::vector<Edge> moved;
  moved.reserve(c.graph.edge_count());
  for (const Edge& e : c.graph.edges()) {
    moved.push_back({c.lift(c.base_vertex(e.u), c.fiber(e.u) + shift), c.lift(c.base_vertex(e.v), c.fiber(e.v) + shift)});
  }
  return MultiGraph(c.graph.vertex_count(), std::move(moved)).same_multigraph(c.graph);
}

bool projects_onto_base(const CoverGraph& c) {
  std::vector<Edge> projected;
  for (const Edge& e : c.graph.edges()) {
    if (c.base_vertex(e.u) == c.base_vertex(e.v)) return false;
    projected.push_back({c.base_vertex(e.u), c.base_vertex(e.v)});
  }
  std::vector<Edge> expected;
  for (const Edge& e : c.base.edges())
    for (std::int64_t z = 0; z < c.p; ++z) expected.push_back(e);
  return MultiGraph(c.base.vertex_count(), std::move(projected))
      .same_multigraph(MultiGraph(c.base.vertex_count(), std::move(expected)));
}

std::int64_t cycle_sum(const MultiGraph& g, const EdgeWeighting& w, const std::vector<Vertex>& cycle) {
  w.validate(g);
  if (cycle.size() < 2 || cycle.front() != cycle.back()) throw InputError("cycle must start and end at the same vertex");
  std::int64_t acc = 0;
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
    const Vertex a = cycle[i], b = cycle[i + 1];
    if (a >= g.vertex_count() || b >= g.vertex_count()) throw InputError("cycle vertex out of range");
    EdgeId best = static_cast<EdgeId>(g.edge_count());
    const auto nb = g.neighbors(a);
    const auto inc = g.incident_edges(a);
    for (std::size_t k = 0; k < nb.size(); ++k)
      if (nb[k] == b) best = std::min(best, inc[k]);
    if (best == g.edge_count()) {
      throw InputError("cycle step " + std::to_string(a) + " -> " + std::to_string(b) + " is not an edge");
    }
    acc = mod(acc + w.oriented(g, best, a), w.p);
  }
  return acc;
}

namespace {

// Counts of closed walks of the given length, split by sum zero / nonzero,
// by dynamic programming over (current vertex, running sum) per start.
CycleSampleResult enumerate_closed_walks(const MultiGraph& g, const EdgeWeighting& w, std::size_t length) {
  const std::size_t n = g.vertex_count();
  const auto p = static_cast<std::size_t>(w.p);
  double closed = 0.0, nonzero = 0.0;
  std::vector<double> cur(n * p), next(n * p);
  for (Vertex s = 0; s < n; ++s) {
    std::fill(cur.begin(), cur.end(), 0.0);
    cur[s * p] = 1.0;
    for (std::size_t step = 0; step < length; ++step) {
      std::fill(next.begin(), next.end(), 0.0);
      for (Vertex x = 0; x < n; ++x) {
        const auto nb = g.neighbors(x);
        const auto inc = g.incident_edges(x);
        for (std::size_t z = 0; z < p; ++z) {
          const double c = cur[x * p + z];
          if (c == 0.0) continue;
          for (std::size_t k = 0; k < nb.size(); ++k) {
            const auto z2 = static_cast<std::size_t>(mod(static_cast<std::int64_t>(z) + w.oriented(g, inc[k], x), w.p));
            next[nb[k] * p + z2] += c;
          }
        }
      }
      std::swap(cur, next);
    }
    for (std::size_t z = 0; z < p; ++z) {
      closed += cur[s * p + z];
      if (z != 0) nonzero += cur[s * p + z];
    }
  }
  CycleSampleResult out;
  out.exhaustive = true;
  out.accepted = static_cast<std::size_t>(closed);
  out.nonzero = static_cast<std::size_t>(nonzero);
  out.fraction_nonzero = closed > 0 ? nonzero / closed : 0.0;
  if (closed == 0.0) throw ConvergenceError("no closed walks of length " + std::to_string(length));
  return out;
}

}  // namespace

CycleSampleResult sample_cycle_sums(const MultiGraph& g, const EdgeWeighting& w, std::size_t length,
                                    std::size_t trials, std::uint64_t seed) {
  w.validate(g);
  if (length < 3) throw InputError("cycle length must be at least 3");
  if (g.vertex_count() == 0) throw InputError("empty graph");
  if (g.vertex_count() <= kExhaustiveWalkLimit) {
    CycleSampleResult out = enumerate_closed_walks(g, w, length);
    out.trials = trials;
    return out;
  }
  std::vector<std::int64_t> sums(trials);
  std::vector<char> closed(trials);
  kernels::parallel::walk_sums(g, w.phi, w.p, length, trials, seed, streams::kCycleSampling, sums, closed);
  CycleSampleResult out;
  out.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    if (!closed[i]) continue;
    ++out.accepted;
    out.nonzero += sums[i] != 0;
  }
  if (out.accepted == 0) {
    throw ConvergenceError("no closed walk among " + std::to_string(trials) + " trials");
  }
  out.fraction_nonzero = static_cast<double>(out.nonzero) / static_cast<double>(out.accepted);
  return out;
}

WalkSumDistribution walk_sum_distribution(const MultiGraph& g, const EdgeWeighting& w, std::size_t steps,
                                          std::size_t trials, std::uint64_t seed) {
  w.validate(g);
  if (steps < 1) throw InputError("walk length must be at least 1");
  if (trials < 1) throw InputError("need at least one trial");
  if (g.vertex_count() == 0) throw InputError("empty graph");
  std::vector<std::int64_t> sums(trials);
  std::vector<char> closed(trials);
  kernels::parallel::walk_sums(g, w.phi, w.p, steps, trials, seed, streams::kWalkSampling, sums, closed);
  WalkSumDistribution out;
  out.trials = trials;
  out.counts.assign(static_cast<std::size_t>(w.p), 0);
  for (std::int64_t s : sums) ++out.counts[static_cast<std::size_t>(s)];
  double tv = 0.0;
  for (std::int64_t c : out.counts) {
    tv += std::abs(static_cast<double>(c) / static_cast<double>(trials) - 1.0 / static_cast<double>(w.p));
  }
  out.tv_to_uniform = tv / 2.0;
  return out;
}

FiberBalance fiber_balance(const CoverGraph& c) {
  FiberBalance out;
  const auto comp = connected_components(c.graph, &out.components);
  const auto p = static_cast<std::size_t>(c.p);
  std::vector<std::vector<std::size_t>> counts(out.components, std::vector<std::size_t>(p, 0));
  std::vector<std::size_t> sizes(out.components, 0);
  for (Vertex v = 0; v < c.graph.vertex_count(); ++v) {
    ++counts[comp[v]][static_cast<std::size_t>(c.fiber(v))];
    ++sizes[comp[v]];
  }
  const double uniform = 1.0 / static_cast<double>(p);
  out.masses.resize(out.components);
  for (std::size_t k = 0; k < out.components; ++k) {
    for (std::size_t z = 0; z < p; ++z) {
      const double m = static_cast<double>(counts[k][z]) / static_cast<double>(sizes[k]);
      out.masses[k].push_back(m);
      out.max_deviation = std::max(out.max_deviation, std::abs(m - uniform));
    }
  }
  return out;
}

PfoldReport pfold_bound_check(const CoverGraph& c, const EdgeWeighting& w, double gamma) {
  if (!(gamma > 0.0)) throw InputError("gamma must be positive");
  w.validate(c.base);
  if (w.p != c.p) throw InputError("weighting and cover disagree on p");
  if (!c.base.is_regular()) throw PreconditionError("pfold_bound_check needs a regular base");
  PfoldReport rep;
  rep.p = c.p;
  rep.L = w.L;
  rep.degree = c.base.regular_degree();
  rep.gamma = gamma;
  const auto n = c.base.vertex_count();
  const auto half = (c.p - 1) / 2;
  auto in_s = [&](Vertex v) {
    const auto z = c.fiber(v);
    return z >= 1 && z <= half;
  };
  rep.cut_set_size = static_cast<std::size_t>(half) * n;
  for (const Edge& e : c.graph.edges()) rep.cut_edges += in_s(e.u) != in_s(e.v);
  const double cover_n = static_cast<double>(c.graph.vertex_count());
  rep.cut_normalized = static_cast<double>(rep.cut_edges) / cover_n;
  rep.ceiling_normalized = 2.0 * static_cast<double>(rep.degree * static_cast<std::size_t>(w.L)) / static_cast<double>(c.p);
  // cut / (p n) <= 2 d L / p  <=>  cut <= 2 d L n.
  rep.within_ceiling = rep.cut_edges <= 2 * rep.degree * static_cast<std::size_t>(w.L) * n;
  for (std::int64_t x : w.phi) rep.weight_ceiling += static_cast<std::size_t>(2 * std::abs(x));
  rep.within_weight_ceiling = rep.cut_edges <= rep.weight_ceiling;
  rep.p_limit = 1.0 + 4.0 * static_cast<double>(w.L) / gamma;
  rep.p_exceeds_bound = static_cast<double>(c.p) > rep.p_limit;
  rep.not_gamma_expander =
      static_cast<double>(rep.cut_edges) < gamma * static_cast<double>(rep.degree) * static_cast<double>(rep.cut_set_size);
  connected_components(c.graph, &rep.components);
  rep.consistent = !rep.p_exceeds_bound || rep.not_gamma_expander;
  return rep;
}

}  // namespace sofic
