#include <algorithm>
#include <cmath>
#include <sstream>

#include "internal.hpp"
#include "sofic/decompose.hpp"
#include "sofic/errors.hpp"
#include "sofic/kernels.hpp"

namespace sofic {

namespace {

struct IndicatorNorms {
  double chi = 0.0;    // ||chi_S||
  double first = 0.0;  // ||M chi_S - chi_S||
  double power = 0.0;  // ||M^{k+1} chi_S - M^k chi_S||
};

IndicatorNorms indicator_norms(const MultiGraph& g, const std::vector<double>& chi, std::size_t k) {
  const std::size_t n = g.vertex_count();
  std::vector<double> cur(chi), next(n);
  IndicatorNorms out;
  out.chi = l2_norm(chi);
  for (std::size_t step = 1; step <= k + 1; ++step) {
    kernels::parallel::markov_apply(g, cur, next);
    if (step == 1 || step == k + 1) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += (next[i] - cur[i]) * (next[i] - cur[i]);
      const double norm = std::sqrt(s / static_cast<double>(n));
      if (step == 1) out.first = norm;
      if (step == k + 1) out.power = norm;
    }
    std::swap(cur, next);
  }
  return out;
}

bool violates(const IndicatorNorms& x, const DecomposeParams& params) {
  return x.chi > 0.0 && x.first >= params.alpha * x.chi && x.power >= params.c_prime * x.first;
}

std::vector<double> indicator_of(std::size_t n, const std::vector<char>& mask) {
  std::vector<double> chi(n);
  for (std::size_t i = 0; i < n; ++i) chi[i] = mask[i] ? 1.0 : 0.0;
  return chi;
}

VertexSet exhaustive_core(const MultiGraph& g, const DecomposeParams& params, PruneResult& out) {
  const std::size_t n = g.vertex_count();
  const std::uint64_t limit = 1ULL << n;
  const double c = params.contraction_rate();
  std::uint64_t core = 0;
  bool hypothesis = true;
  bool first_pass = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint64_t t = 1; t < limit; ++t) {
      std::vector<char> mask(n);
      if (first_pass) {
        for (std::size_t i = 0; i < n; ++i) mask[i] = static_cast<char>(t >> i & 1ULL);
        const IndicatorNorms alone = indicator_norms(g, indicator_of(n, mask), params.k);
        hypothesis = hypothesis && alone.power < c * alone.first + params.delta;
      }
      const std::uint64_t u = core | t;
      if (u == core) continue;
      ++out.candidates;
      for (std::size_t i = 0; i < n; ++i) mask[i] = static_cast<char>(u >> i & 1ULL);
      if (violates(indicator_norms(g, indicator_of(n, mask), params.k), params)) {
        core = u;
        changed = true;
      }
    }
    first_pass = false;
  }
  out.hypothesis_holds = hypothesis;
  std::vector<Vertex> members;
  for (std::size_t i = 0; i < n; ++i)
    if (core >> i & 1ULL) members.push_back(static_cast<Vertex>(i));
  return VertexSet(n, std::move(members));
}

// Greedy over an ordered candidate stream. Each batch is evaluated in
// parallel against the current core; the first violator in stream order is
// absorbed and evaluation resumes right after it, which reproduces the
// sequential greedy exactly.
void absorb_batch(const MultiGraph& g, const DecomposeParams& params, const std::vector<VertexSet>& batch,
                  std::vector<char>& core, PruneResult& out) {
  const std::size_t n = g.vertex_count();
  std::size_t from = 0;
  while (from < batch.size()) {
    std::vector<char> hit(batch.size(), 0);
    const auto count = static_cast<std::int64_t>(batch.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = static_cast<std::int64_t>(from); i < count; ++i) {
      const VertexSet& t = batch[static_cast<std::size_t>(i)];
      bool grows = false;
      for (Vertex v : t.members()) grows = grows || !core[v];
      if (!grows) continue;
      std::vector<char> u = core;
      for (Vertex v : t.members()) u[v] = 1;
      hit[static_cast<std::size_t>(i)] = violates(indicator_norms(g, indicator_of(n, u), params.k), params);
    }
    out.candidates += batch.size() - from;
    std::size_t first = from;
    while (first < batch.size() && !hit[first]) ++first;
    if (first == batch.size()) break;
    for (Vertex v : batch[first].members()) core[v] = 1;
    from = first + 1;
  }
}

VertexSet heuristic_core(const MultiGraph& g, const DecomposeParams& params, PruneResult& out) {
  const std::size_t n = g.vertex_count();
  std::vector<char> core(n, 0);
  const std::size_t max_radius = 2 * params.k + 2;
  constexpr std::size_t kCentersPerBatch = 32;

  for (std::size_t first = 0; first < n; first += kCentersPerBatch) {
    std::vector<VertexSet> batch;
    for (std::size_t v = first; v < std::min(n, first + kCentersPerBatch); ++v) {
      const VertexSet seed(n, {static_cast<Vertex>(v)});
      std::size_t previous = 0;
      for (std::size_t r = 0; r <= max_radius; ++r) {
        VertexSet ball = neighborhood(g, seed, r);
        if (ball.size() == previous) break;
        previous = ball.size();
        batch.push_back(std::move(ball));
      }
    }
    absorb_batch(g, params, batch, core, out);
  }

  std::vector<Vertex> order = detail::spectral_order(g, VertexSet::all(n), params.seed);
  std::vector<VertexSet> prefixes;
  for (int side = 0; side < 2; ++side) {
    for (std::size_t size = 1; 2 * size <= n; ++size) {
      prefixes.emplace_back(n, std::vector<Vertex>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(size)));
    }
    std::reverse(order.begin(), order.end());
  }
  absorb_batch(g, params, prefixes, core, out);
  return VertexSet::from_mask(n, core);
}

}  // namespace

bool is_violator(const MultiGraph& g, const VertexSet& s, const DecomposeParams& params) {
  if (!g.is_regular()) throw PreconditionError("needs a regular graph");
  const RealVertexFunction chi = RealVertexFunction::indicator(s);
  return violates(indicator_norms(g, std::vector<double>(chi.values().begin(), chi.values().end()), params.k),
                  params);
}

PruneResult prune_exceptional_set(const MultiGraph& g, const DecomposeParams& params) {
  if (!g.is_regular()) throw PreconditionError("prune_exceptional_set needs a regular graph");
  params.validate();
  PruneResult out;
  const double d = static_cast<double>(g.regular_degree());
  const double gap = params.c_prime - params.contraction_rate();
  out.size_bound = params.delta * params.delta / (params.alpha * params.alpha * gap * gap) *
                   (std::pow(d, static_cast<double>(2 * params.k + 2)) + 1.0);
  out.exhaustive = g.vertex_count() <= params.exact_prune_limit;
  out.core = out.exhaustive ? exhaustive_core(g, params, out) : heuristic_core(g, params, out);
  out.set = out.core.empty() ? out.core : neighborhood(g, out.core, 2 * params.k + 2);
  return out;
}

std::string to_string(ClassOrigin origin) {
  switch (origin) {
    case ClassOrigin::kExceptional: return "exceptional";
    case ClassOrigin::kSparse: return "sparse_cut";
    case ClassOrigin::kSweep: return "sweep";
    case ClassOrigin::kFallback: return "fallback";
    case ClassOrigin::kRemainder: return "remainder";
  }
  return "?";
}

bool Partition::is_partition_of(std::size_t n) const {
  std::vector<int> seen(n, 0);
  for (const VertexSet& c : classes) {
    if (c.universe() != n) return false;
    for (Vertex v : c.members()) ++seen[v];
  }
  return std::all_of(seen.begin(), seen.end(), [](int x) { return x == 1; });
}

std::vector<std::uint32_t> Partition::labels(std::size_t n) const {
  std::vector<std::uint32_t> out(n, 0);
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (Vertex v : classes[i].members()) out[v] = static_cast<std::uint32_t>(i);
  return out;
}

double partition_boundary_mass(const MultiGraph& g, const Partition& p) {
  double total = 0.0;
  for (const VertexSet& c : p.classes) {
    if (!c.empty()) total += indicator_boundary_l1(g, c);
  }
  return total;
}

CarveResult carve_partition(const MultiGraph& g, const DecomposeParams& params) {
  if (!g.is_regular()) throw PreconditionError("carve_partition needs a regular graph");
  params.validate();
  const std::size_t n = g.vertex_count();
  const double d = static_cast<double>(g.regular_degree());

  CarveResult out;
  out.prune = prune_exceptional_set(g, params);
  std::vector<char> assigned = out.prune.set.mask();
  out.partition.classes.push_back(out.prune.set);
  out.partition.origins.push_back(ClassOrigin::kExceptional);

  auto active_set = [&] {
    std::vector<char> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = !assigned[i];
    return VertexSet::from_mask(n, m);
  };

  VertexSet active = active_set();
  for (std::size_t iter = 1; !active.empty(); ++iter) {
    if (iter > n) throw LimitError("carving did not finish within n iterations");
    const CutMode mode = active.size() <= params.exact_cut_limit ? CutMode::kExact : CutMode::kSpectral;
    const auto cut = find_sparse_cut(g, active, params.gamma, mode, params.exact_cut_limit, params.seed + iter);
    if (!cut) break;
    ++(mode == CutMode::kExact ? out.exact_cuts : out.spectral_cuts);
    const VertexSet& s = *cut;

    VertexSet piece;
    ClassOrigin origin = ClassOrigin::kSparse;
    const double boundary = static_cast<double>(edge_boundary(g, s));
    if (boundary < params.alpha * d / 2.0 * static_cast<double>(s.size())) {
      piece = s;
    } else {
      const RealVertexFunction f = apply_markov_power(g, RealVertexFunction::indicator(s), params.k);
      try {
        const SweepResult sweep = sweep_round(g, s, f);
        std::vector<Vertex> fresh;
        for (Vertex v : sweep.set.members())
          if (!assigned[v]) fresh.push_back(v);
        piece = VertexSet(n, std::move(fresh));
        origin = ClassOrigin::kSweep;
        if (!(sweep.size_ok && sweep.overlap_ok && sweep.bound_ok)) {
          out.log.push_back("iteration " + std::to_string(iter) + ": sweep guarantee violated");
        }
        if (piece.empty()) {
          out.log.push_back("iteration " + std::to_string(iter) + ": sweep set already assigned, using S");
          piece = s;
          origin = ClassOrigin::kFallback;
        }
      } catch (const PreconditionError& e) {
        ++out.sweep_precondition_misses;
        out.log.push_back("iteration " + std::to_string(iter) + ": " + e.what() + "; using S");
        piece = s;
        origin = ClassOrigin::kFallback;
      }
    }
    for (Vertex v : piece.members()) assigned[v] = 1;
    out.partition.classes.push_back(std::move(piece));
    out.partition.origins.push_back(origin);
    active = active_set();
  }
  if (!active.empty()) {
    out.partition.classes.push_back(active);
    out.partition.origins.push_back(ClassOrigin::kRemainder);
  }
  if (!out.partition.is_partition_of(n)) throw Error("carving produced an invalid partition");
  out.boundary_mass = partition_boundary_mass(g, out.partition);
  return out;
}

}  // namespace sofic
