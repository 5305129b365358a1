#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sofic/graph.hpp"

namespace sofic {

enum class GraphKind { kCycle, kComplete, kCirculant, kRandomRegular };

GraphKind parse_graph_kind(const std::string& name);
std::string to_string(GraphKind kind);

MultiGraph make_cycle(std::size_t n);
MultiGraph make_complete(std::size_t n);

/// Circulant on Z_n: i ~ i+o for every offset o. An offset with 2o = n
/// contributes degree 1, every other offset degree 2.
/// Throws InputError for zero offsets or offsets that coincide up to sign.
MultiGraph make_circulant(std::size_t n, const std::vector<std::int64_t>& offsets);

/// Degree of make_circulant(n, offsets) without building it.
std::size_t circulant_degree(std::size_t n, const std::vector<std::int64_t>& offsets);

inline constexpr int kPairingRetryCap = 1000;

/// Simple d-regular graph from the pairing (configuration) model.
///
/// Points are matched one pair at a time, drawing the partner uniformly
/// from the remaining points that would not form a loop or a parallel edge;
/// if no such point remains the whole pairing restarts. Throws InputError
/// for infeasible (n, d) and Error after kPairingRetryCap restarts.
MultiGraph make_random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

MultiGraph make_petersen();

/// Dispatch used by the CLI. `d` is checked against circulant offsets when
/// positive; it is ignored for cycle and complete graphs.
MultiGraph generate(GraphKind kind, std::size_t n, std::size_t d,
                    const std::vector<std::int64_t>& offsets, std::uint64_t seed);

}  // namespace sofic
