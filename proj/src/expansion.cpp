#include "sofic/expansion.hpp"

#include <bit>
#include <limits>
#include <string>

#include "sofic/errors.hpp"
#include "sofic/kernels.hpp"

namespace sofic {

ExpansionResult is_gamma_expander(const MultiGraph& g, double gamma, std::size_t exact_limit) {
  if (!g.is_regular()) throw PreconditionError("is_gamma_expander needs a regular graph");
  const std::size_t n = g.vertex_count();
  if (n > exact_limit) {
    throw LimitError("exact expansion test limited to " + std::to_string(exact_limit) +
                     " vertices (graph has " + std::to_string(n) + "); use cheeger_certificate");
  }
  ExpansionResult result;
  result.worst_set = VertexSet(n);
  if (n < 2) {
    result.expander = true;
    result.constant = std::numeric_limits<double>::infinity();
    return result;
  }

  const VertexSet all = VertexSet::all(n);
  const kernels::SubsetTable table(g, all.members());
  const auto hit = kernels::parallel::min_ratio_subset(table, n / 2);

  std::vector<Vertex> members;
  for (std::uint64_t rest = hit.mask; rest; rest &= rest - 1)
    members.push_back(static_cast<Vertex>(std::countr_zero(rest)));
  result.worst_set = VertexSet(n, std::move(members));
  result.worst_boundary = hit.boundary;

  const double d = static_cast<double>(g.regular_degree());
  result.constant = static_cast<double>(hit.boundary) / (d * hit.size);
  const double needed = gamma * d * hit.size;
  result.expander = static_cast<double>(hit.boundary) >= needed - 1e-12 * std::max(1.0, needed);
  return result;
}

double exact_expansion_constant(const MultiGraph& g, std::size_t exact_limit) {
  return is_gamma_expander(g, 0.0, exact_limit).constant;
}

}  // namespace sofic
