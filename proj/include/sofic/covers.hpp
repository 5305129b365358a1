#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sofic/graph.hpp"

namespace sofic {

bool is_prime(std::int64_t p);

/// Antisymmetric Z_p weighting of the edge instances of a base graph.
///
/// phi[e] is the weight of edge instance e traversed from its lower to its
/// higher endpoint; the reverse traversal carries -phi[e]. Values are kept
/// as representatives in [-L, L].
struct EdgeWeighting {
  std::int64_t p = 3;
  std::int64_t L = 1;
  std::vector<std::int64_t> phi;

  /// phi(from -> other end) for edge instance e.
  std::int64_t oriented(const MultiGraph& g, EdgeId e, Vertex from) const;

  /// Throws InputError unless p is an odd prime, 1 <= L < p/2, phi covers
  /// every edge instance of g and every value lies in [-L, L].
  void validate(const MultiGraph& g) const;
};

/// L defaults to (p - 1) / 2.
EdgeWeighting zero_weighting(const MultiGraph& g, std::int64_t p, std::int64_t L = 0);

/// phi(x -> y) = h(y) - h(x). Throws InputError if a difference leaves [-L, L].
EdgeWeighting coboundary_weighting(const MultiGraph& g, std::int64_t p, std::int64_t L,
                                   const std::vector<std::int64_t>& h);

/// Independent uniform +-1 per edge instance (L = 1).
EdgeWeighting random_sign_weighting(const MultiGraph& g, std::int64_t p, std::uint64_t seed);

// Weights file: one line `u v w` per weighted edge, meaning phi(u -> v) = w
// with |w| <= L. Repeated lines for the same ordered pair bind successive
// parallel instances of {u, v} in edge-list order; a line for (v, u) that
// reaches an instance already bound must agree by antisymmetry. Unlisted
// instances get 0. Blank lines are ignored.
EdgeWeighting parse_weights(std::istream& in, const MultiGraph& g, std::int64_t p, std::int64_t L);
EdgeWeighting read_weights(const std::string& path, const MultiGraph& g, std::int64_t p, std::int64_t L);
void format_weights(const MultiGraph& g, const EdgeWeighting& w, std::ostream& out);

/// p-fold lift. Vertex (x, z) has id z * n + x; every base instance e = {x, x'}
/// with phi(x -> x') = a gives the p edges (x, z) -- (x', z - a).
struct CoverGraph {
  MultiGraph base;
  std::int64_t p = 0;
  MultiGraph graph;

  Vertex lift(Vertex x, std::int64_t z) const;
  Vertex base_vertex(Vertex v) const { return static_cast<Vertex>(v % base.vertex_count()); }
  std::int64_t fiber(Vertex v) const { return static_cast<std::int64_t>(v / base.vertex_count()); }
};

CoverGraph build_cover(const MultiGraph& g, const EdgeWeighting& w);

/// True when (x, z) -> (x, z + shift) maps the cover's edge multiset onto itself.
bool is_deck_automorphism(const CoverGraph& c, std::int64_t shift);

/// True when every cover edge projects to a base edge, each base instance p times.
bool projects_onto_base(const CoverGraph& c);

/// Sum of phi along the closed vertex sequence (first == last), in [0, p).
/// Each step uses the lowest-id edge instance between the two vertices.
/// Throws InputError on a non-edge step or an open sequence.
std::int64_t cycle_sum(const MultiGraph& g, const EdgeWeighting& w, const std::vector<Vertex>& cycle);

struct CycleSampleResult {
  double fraction_nonzero = 0.0;
  std::size_t accepted = 0;
  std::size_t nonzero = 0;
  std::size_t trials = 0;
  /// Enumerated all closed walks instead of sampling (n <= 16).
  bool exhaustive = false;
};

inline constexpr std::size_t kExhaustiveWalkLimit = 16;

/// Closed walks of length l: uniform random walks from a uniform start,
/// kept when they return to the start. Throws ConvergenceError when no
/// trial closes.
CycleSampleResult sample_cycle_sums(const MultiGraph& g, const EdgeWeighting& w, std::size_t length,
                                    std::size_t trials, std::uint64_t seed);

struct WalkSumDistribution {
  std::vector<std::int64_t> counts;  // per residue
  std::size_t trials = 0;
  double tv_to_uniform = 0.0;
};

/// Empirical law of the phi-sum of t-step walks with a uniform start.
WalkSumDistribution walk_sum_distribution(const MultiGraph& g, const EdgeWeighting& w, std::size_t steps,
                                          std::size_t trials, std::uint64_t seed);

struct FiberBalance {
  double max_deviation = 0.0;
  std::size_t components = 0;
  /// masses[c][z] = |component c within fiber z| / |component c|.
  std::vector<std::vector<double>> masses;
};

FiberBalance fiber_balance(const CoverGraph& c);

struct PfoldReport {
  std::int64_t p = 0;
  std::int64_t L = 0;
  std::size_t degree = 0;
  double gamma = 0.0;
  std::size_t cut_set_size = 0;     // vertices in fibers 1..(p-1)/2
  std::size_t cut_edges = 0;        // raw |E(S, S^c)|
  double cut_normalized = 0.0;      // cut_edges / (p n)
  double ceiling_normalized = 0.0;  // 2 d L / p
  std::size_t weight_ceiling = 0;   // sum over instances of 2 |phi|
  bool within_ceiling = false;      // cut_normalized <= 2 d L / p, checked in integers
  bool within_weight_ceiling = false;
  double p_limit = 0.0;             // 1 + 4L / gamma
  bool p_exceeds_bound = false;
  bool not_gamma_expander = false;  // cut_edges < gamma d |S|
  std::size_t components = 0;
  bool consistent = false;          // !p_exceeds_bound || not_gamma_expander
};

PfoldReport pfold_bound_check(const CoverGraph& c, const EdgeWeighting& w, double gamma);

}  // namespace sofic
