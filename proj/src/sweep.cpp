#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sofic/decompose.hpp"
#include "sofic/errors.hpp"

namespace sofic {

bool SweepPreconditions::hold() const {
  return boxed && mass_slack <= 1e-12 && distance < distance_limit;
}

SweepPreconditions check_sweep_preconditions(const VertexSet& s, const RealVertexFunction& f) {
  if (f.size() != s.universe()) throw InputError("function and set live on different vertex sets");
  SweepPreconditions pre;
  const double n = static_cast<double>(s.universe());
  const double mass = static_cast<double>(s.size()) / n;
  pre.boxed = f.boxed();
  pre.mass_slack = std::abs(l1_norm(f) - mass);
  pre.distance = l2_distance(f, RealVertexFunction::indicator(s));
  pre.distance_limit = std::sqrt(mass) / 6.0;
  return pre;
}

SweepResult sweep_round(const MultiGraph& g, const VertexSet& s, const RealVertexFunction& f) {
  if (!g.is_regular()) throw PreconditionError("sweep_round needs a regular graph");
  if (s.universe() != g.vertex_count()) throw InputError("set universe does not match the graph");
  const SweepPreconditions pre = check_sweep_preconditions(s, f);
  if (!pre.hold()) {
    std::ostringstream msg;
    msg << "sweep_round preconditions fail: boxed=" << pre.boxed << " mass slack " << pre.mass_slack
        << " (limit 1e-12), ||f - chi_S|| = " << pre.distance << " vs limit " << pre.distance_limit;
    throw PreconditionError(msg.str());
  }

  const std::size_t n = g.vertex_count();
  const double d = static_cast<double>(g.regular_degree());
  const auto values = f.values();

  std::vector<Vertex> order;
  for (Vertex v = 0; v < n; ++v) {
    if (values[v] > 0.5) order.push_back(v);
  }
  std::sort(order.begin(), order.end(), [&values](Vertex a, Vertex b) {
    return values[a] != values[b] ? values[a] > values[b] : a < b;
  });

  // boundary_at[i]: boundary of the first i vertices of `order`.
  std::vector<char> in(n, 0);
  std::vector<std::int64_t> boundary_at(order.size() + 1, 0);
  std::int64_t boundary = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Vertex v = order[i];
    std::int64_t inside = 0;
    for (Vertex y : g.neighbors(v)) inside += in[y];
    boundary += static_cast<std::int64_t>(g.degree(v)) - 2 * inside;
    in[v] = 1;
    boundary_at[i + 1] = boundary;
  }

  // Levels in increasing order: 1/2, then each distinct value in (1/2, 2/3).
  // {f > level} is a prefix of `order`.
  struct Level {
    double t;
    std::size_t prefix;
  };
  std::vector<Level> levels{{0.5, order.size()}};
  for (std::size_t i = order.size(); i-- > 0;) {
    const double a = values[order[i]];
    if (a >= 2.0 / 3.0) break;
    if (levels.back().t == a) continue;
    std::size_t prefix = i;
    while (prefix > 0 && values[order[prefix - 1]] == a) --prefix;
    levels.push_back({a, prefix});
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (boundary_at[levels[i].prefix] < boundary_at[levels[best].prefix]) best = i;
  }

  SweepResult out;
  out.candidates = levels.size();
  out.threshold = levels[best].t;
  const std::size_t size = levels[best].prefix;
  out.set = VertexSet(n, std::vector<Vertex>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(size)));
  out.boundary_l1 = 2.0 * static_cast<double>(boundary_at[size]) / (d * static_cast<double>(n));

  const RealVertexFunction mf = apply_markov(g, f);
  const double mass = static_cast<double>(s.size()) / static_cast<double>(n);
  out.bound = 4.0 * std::sqrt(d) * std::pow(72.0, 0.25) * std::pow(mass, 0.75) *
              std::sqrt(l2_distance(f, mf));

  std::size_t overlap = 0;
  for (Vertex v : out.set.members()) overlap += s.contains(v);
  out.size_ok = out.set.size() < 2 * s.size();
  out.overlap_ok = 4 * overlap > 3 * s.size();
  out.bound_ok = out.boundary_l1 <= out.bound;
  return out;
}

}  // namespace sofic
