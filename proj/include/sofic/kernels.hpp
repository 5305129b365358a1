#pragma once

// Data-parallel inner loops. Each kernel exists twice: `serial` is the
// plain reference kept for testing, `parallel` is the OpenMP version the
// library calls. Both produce bit-identical results; the tests check that.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sofic/graph.hpp"

namespace sofic::kernels {

/// Precomputed bit masks for exact subset enumeration over an ordered list
/// of at most 62 "active" vertices of a graph.
///
/// Bit i of a subset mask stands for active[i]. For a subset S the boundary
/// is counted in the full graph: sum over v in S of (deg(v) - edges from v
/// into S).
struct SubsetTable {
  std::vector<Vertex> active;
  std::vector<std::uint32_t> degree;
  /// layers[i][k] has bit j set iff active[i] and active[j] share more than k edges.
  std::vector<std::vector<std::uint64_t>> layers;

  SubsetTable(const MultiGraph& g, std::span<const Vertex> active_vertices);

  std::size_t size() const { return active.size(); }
  std::uint64_t boundary(std::uint64_t mask) const;
};

/// Subset with its raw boundary; `found` is false when nothing qualified.
struct SubsetHit {
  bool found = false;
  std::uint64_t mask = 0;
  std::uint64_t boundary = 0;
  std::uint32_t size = 0;
};

/// True when `a` precedes `b` in (size, lexicographic member list) order.
bool size_lex_before(std::uint64_t a, std::uint64_t b);

namespace serial {

void markov_apply(const MultiGraph& g, std::span<const double> f, std::span<double> out);

/// Nonempty subset with |S| <= max_size minimising boundary/|S|; ties by
/// smaller size, then lexicographically smaller member list.
SubsetHit min_ratio_subset(const SubsetTable& t, std::size_t max_size);

/// Minimum-size subset (lexicographic tie-break) with boundary < threshold*|S|.
SubsetHit min_size_sparse_subset(const SubsetTable& t, double threshold);

/// Canonical key of the radius-r ball around every vertex.
std::vector<std::string> ball_keys(const MultiGraph& g, std::size_t radius, std::size_t cap);

/// Sum of phi along `trials` uniform random walks of `steps` steps with a
/// uniform start; trial i uses stream_engine(seed, stream_base + i).
/// `closed` is set per trial when the walk returns to its start.
void walk_sums(const MultiGraph& g, std::span<const std::int64_t> phi_lo_hi, std::int64_t p,
               std::size_t steps, std::size_t trials, std::uint64_t seed, std::uint64_t stream_base,
               std::span<std::int64_t> sums, std::span<char> closed);

}  // namespace serial

namespace parallel {

void markov_apply(const MultiGraph& g, std::span<const double> f, std::span<double> out);
SubsetHit min_ratio_subset(const SubsetTable& t, std::size_t max_size);
SubsetHit min_size_sparse_subset(const SubsetTable& t, double threshold);
std::vector<std::string> ball_keys(const MultiGraph& g, std::size_t radius, std::size_t cap);
void walk_sums(const MultiGraph& g, std::span<const std::int64_t> phi_lo_hi, std::int64_t p,
               std::size_t steps, std::size_t trials, std::uint64_t seed, std::uint64_t stream_base,
               std::span<std::int64_t> sums, std::span<char> closed);

}  // namespace parallel

}  // namespace sofic::kernels
