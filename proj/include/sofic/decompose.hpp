#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sofic/graph.hpp"
#include "sofic/markov.hpp"

namespace sofic {

// All norms below are taken with respect to the uniform probability measure
// on V, and |S| in a bound means the measure |S|/n. For an indicator,
// ||M chi_S - chi_S||_1 = 2 |E(S, S^c)| / (d n), so "sparse at gamma"
// (||M chi_S - chi_S||_1 < gamma |S|) is the raw-count test
// |E(S, S^c)| < (gamma d / 2) |S|.

struct DecomposeParams {
  double epsilon = 0.1;
  std::size_t k = 1;
  double alpha = 0.0;
  double beta = 0.0;
  double c_prime = 0.0;
  double gamma = 0.0;
  double delta = 0.01;
  std::size_t exact_cut_limit = 20;
  /// Exhaustive search for the exceptional set below this many vertices.
  std::size_t exact_prune_limit = 16;
  std::uint64_t seed = 0;

  /// (1 - epsilon)^k.
  double contraction_rate() const;
  /// Throws InputError unless (1-eps)^k < c' < 1 and every real is positive.
  void validate() const;
};

/// User overrides; unset fields fall back to the defaults described at
/// make_params.
struct ParamOverrides {
  std::optional<std::size_t> k;
  std::optional<double> alpha, beta, c_prime, gamma, delta;
  std::optional<std::size_t> exact_cut_limit;
};

/// Defaults from epsilon and the degree: k is the least integer with
/// (1-eps)^k < 1/2, c' = 2 (1-eps)^k, gamma = eps^2 / (36 d), alpha = gamma/4,
/// delta = 0.01, beta = delta/4. Overrides replace single values; alpha
/// follows an overridden gamma unless alpha is overridden too.
DecomposeParams make_params(double epsilon, std::size_t degree, std::uint64_t seed,
                            const ParamOverrides& overrides = {});

/// ||M chi_S - chi_S||_1 < gamma |S| as a raw count comparison.
bool is_sparse_set(const MultiGraph& g, const VertexSet& s, double gamma);

// ---------------------------------------------------------------------------
// Threshold rounding

struct SweepResult {
  VertexSet set;
  /// Level t' such that set = {f > t'}; t' = 1/2 or a value of f in (1/2, 2/3).
  double threshold = 0.5;
  std::size_t candidates = 0;
  double boundary_l1 = 0.0;  // ||chi_U - M chi_U||_1
  double bound = 0.0;        // 4 d^(1/2) 72^(1/4) |S|^(3/4) ||f - Mf||^(1/2)
  bool size_ok = false;      // |U| < 2|S|
  bool overlap_ok = false;   // |U cap S| > 3|S|/4
  bool bound_ok = false;
};

struct SweepPreconditions {
  double mass_slack = 0.0;      // | ||f||_1 - |S| |, must be <= 1e-12
  double distance = 0.0;        // ||f - chi_S||
  double distance_limit = 0.0;  // |S|^(1/2) / 6
  bool boxed = false;
  bool hold() const;
};

SweepPreconditions check_sweep_preconditions(const VertexSet& s, const RealVertexFunction& f);

/// Best level set {f > t}, t in (1/2, 2/3), by boundary; ties to the lowest
/// level. Throws PreconditionError (with the measured slack) when the
/// preconditions fail; the three guarantees are evaluated exactly and
/// reported, never assumed.
SweepResult sweep_round(const MultiGraph& g, const VertexSet& s, const RealVertexFunction& f);

// ---------------------------------------------------------------------------
// Sparse cuts

enum class CutMode { kExact, kSpectral };

std::string to_string(CutMode mode);

/// Subset S of `active` with ||M chi_S - chi_S||_1 < gamma |S| (boundary
/// counted in all of g).
///
/// kExact: a minimum-size such set, lexicographically least among those;
/// throws LimitError when |active| > exact_limit.
/// kSpectral: sweep over the second eigenvector of the Markov operator of
/// the subgraph induced on `active` (lazy at edges leaving it). Among
/// passing prefixes of size <= |active|/2 from either end, the sparsest
/// (then smallest, then lexicographically least) wins; if none passes,
/// `active` itself is returned when it passes.
std::optional<VertexSet> find_sparse_cut(const MultiGraph& g, const VertexSet& active, double gamma,
                                         CutMode mode, std::size_t exact_limit = 20,
                                         std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Exceptional set

struct PruneResult {
  VertexSet core;  // B'
  VertexSet set;   // B = N_{2k+2}(B')
  /// delta^2 / (alpha^2 (c' - c)^2) (d^{2k+2} + 1), c = (1-eps)^k, as a measure.
  double size_bound = 0.0;
  bool exhaustive = false;
  std::size_t candidates = 0;
  /// Only evaluated when exhaustive: whether every S satisfies
  /// ||M^{k+1} chi_S - M^k chi_S|| < c ||M chi_S - chi_S|| + delta.
  std::optional<bool> hypothesis_holds;
};

/// True when S fails both alternatives: ||M chi_S - chi_S|| >= alpha ||chi_S||
/// and ||M^{k+1} chi_S - M^k chi_S|| >= c' ||M chi_S - chi_S||.
bool is_violator(const MultiGraph& g, const VertexSet& s, const DecomposeParams& params);

/// Greedy B': a candidate T is absorbed whenever B' u T is a violator.
/// Candidates are all subsets (repeated until stable, so B' is maximal)
/// when n <= exact_prune_limit, otherwise BFS balls of radius 0..2k+2 around
/// every vertex and the spectral sweep prefixes of g.
PruneResult prune_exceptional_set(const MultiGraph& g, const DecomposeParams& params);

// ---------------------------------------------------------------------------
// Carving

enum class ClassOrigin { kExceptional, kSparse, kSweep, kFallback, kRemainder };

std::string to_string(ClassOrigin origin);

struct Partition {
  /// classes[0] is the exceptional class P_0 (possibly empty).
  std::vector<VertexSet> classes;
  std::vector<ClassOrigin> origins;

  bool is_partition_of(std::size_t n) const;
  /// Class index per vertex.
  std::vector<std::uint32_t> labels(std::size_t n) const;
};

struct CarveResult {
  Partition partition;
  double boundary_mass = 0.0;  // sum_i ||M chi_{P_i} - chi_{P_i}||_1
  PruneResult prune;
  std::size_t exact_cuts = 0;
  std::size_t spectral_cuts = 0;
  std::size_t sweep_precondition_misses = 0;
  std::vector<std::string> log;
};

CarveResult carve_partition(const MultiGraph& g, const DecomposeParams& params);

/// sum over classes of 2 |E(P, P^c)| / (d n).
double partition_boundary_mass(const MultiGraph& g, const Partition& p);

// ---------------------------------------------------------------------------
// Surgery

struct ParityFix {
  std::size_t moved_vertices = 0;
  std::size_t merged_singletons = 0;
};

/// Makes every class usable for a d-regular rebuild: singleton classes are
/// merged into the neighbouring class they share most edges with, and for
/// odd d single vertices are moved along paths of adjacent classes until
/// every class has even size. Empty classes other than P_0 are dropped.
ParityFix fix_class_parity(const MultiGraph& g, Partition& p);

struct SurgeryPlan {
  std::size_t class_id = 0;
  VertexSet boundary;  // B
  std::size_t r = 0;   // ceil(6 / gamma0)
  /// Separation actually enforced between matching edges (2r unless relaxed).
  std::size_t separation = 0;
  std::size_t cross_edges = 0;
  std::vector<Edge> matching_m;  // original vertex ids
  std::vector<Edge> matching_n;
  bool replaced_by_expander = false;
  std::string replacement_reason;
  std::size_t restarts = 0;
};

struct ClassSurgery {
  /// Q on the class vertices (local ids follow the sorted class members).
  MultiGraph graph;
  SurgeryPlan plan;
  /// |E(induced class) delta E(Q)|.
  std::size_t internal_edits = 0;
};

ClassSurgery regularize_class(const MultiGraph& g, const Partition& p, std::size_t class_id,
                              double gamma0, std::uint64_t seed);

/// d-regular loopless multigraph on s >= 2 vertices with a certified
/// Cheeger constant above `target` when one can be found (circulant
/// {1..d/2} for even d, resampled random regular for odd d, cycles plus a
/// matching when s <= d).
MultiGraph replacement_expander(std::size_t s, std::size_t d, double target, std::uint64_t seed,
                                bool* certified = nullptr);

// ---------------------------------------------------------------------------
// End to end

inline constexpr std::size_t kDefaultCertifyExactLimit = 20;

struct ClassCertificate {
  std::size_t size = 0;
  std::string kind;  // "brute_force" or "cheeger"
  double value = 0.0;
};

/// Exact constant when the graph has at most `exact_limit` vertices,
/// otherwise the Cheeger lower bound.
/// A Cheeger estimate that does not converge certifies 0.
ClassCertificate certify_expansion(const MultiGraph& q, std::size_t exact_limit = kDefaultCertifyExactLimit);

struct DecompositionReport {
  double gamma_required = 0.0;  // gamma0 / (6 d)
  double gamma_prime_achieved = 0.0;
  double edit_distance = 0.0;
  std::size_t edit_count = 0;
  double boundary_mass = 0.0;
  std::vector<ClassCertificate> per_class;
  std::vector<std::size_t> replaced_classes;

  // Diagnostics.
  Partition partition;
  CarveResult carve;
  ParityFix parity;
  std::vector<SurgeryPlan> plans;
  std::size_t accounted_edits = 0;
};

struct DecomposeResult {
  MultiGraph graph;
  DecompositionReport report;
};

DecomposeResult decompose(const MultiGraph& g, const DecomposeParams& params);

struct ComponentCheck {
  std::size_t size = 0;
  bool regular = false;
  ClassCertificate certificate;
  bool pass = false;
};

struct VerifyReport {
  bool same_vertex_set = false;
  std::size_t edit_count = 0;
  double edit_distance = 0.0;
  std::vector<ComponentCheck> components;
  bool all_components_pass = false;
  bool pass = false;
};

/// Checks V(g) = V(g'), measures the edit distance and certifies every
/// component of g' at gamma (exact up to exact_limit vertices, Cheeger above).
VerifyReport verify_decomposition(const MultiGraph& g, const MultiGraph& g_prime, double gamma,
                                  std::size_t exact_limit = 20);

}  // namespace sofic
