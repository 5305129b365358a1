#pragma once

// Helpers shared by the decomposition sources; not part of the public API.

#include <cstdint>
#include <vector>

#include "sofic/graph.hpp"

namespace sofic::detail {

/// Members of `active` sorted by their entry in the second eigenvector of
/// the induced Markov operator (lazy at edges leaving `active`), ties by
/// vertex id.
std::vector<Vertex> spectral_order(const MultiGraph& g, const VertexSet& active, std::uint64_t seed);

/// Raw boundary (in all of g) of every prefix of `order`: out[i] is the
/// boundary of the first i vertices.
std::vector<std::int64_t> prefix_boundaries(const MultiGraph& g, const std::vector<Vertex>& order);

}  // namespace sofic::detail
