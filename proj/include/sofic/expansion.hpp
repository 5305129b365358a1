#pragma once

#include "sofic/graph.hpp"

namespace sofic {

inline constexpr std::size_t kDefaultExactLimit = 20;

struct ExpansionResult {
  bool expander = false;
  /// Minimiser of boundary / (d |S|) over nonempty |S| <= n/2; empty when n < 2.
  VertexSet worst_set;
  std::size_t worst_boundary = 0;
  /// Exact edge-expansion constant min boundary / (d |S|); +inf when n < 2.
  double constant = 0.0;
};

/// Brute-force gamma-expansion test over all vertex subsets.
///
/// Raw counts on both sides: boundary(S) >= gamma * d * |S| for every
/// nonempty S with |S| <= n/2. The comparison allows 1e-12 relative slack
/// so that rational gammas such as 2/3 pass on their binding sets.
/// Throws PreconditionError for irregular graphs and LimitError when
/// n > exact_limit.
ExpansionResult is_gamma_expander(const MultiGraph& g, double gamma,
                                  std::size_t exact_limit = kDefaultExactLimit);

/// Just the exact constant (same enumeration).
double exact_expansion_constant(const MultiGraph& g, std::size_t exact_limit = kDefaultExactLimit);

}  // namespace sofic
