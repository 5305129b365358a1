#include "sofic/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "sofic/errors.hpp"
#include "sofic/expansion.hpp"
#include "sofic/rng.hpp"
#include "sofic/spectral.hpp"

namespace sofic {

double DecomposeParams::contraction_rate() const {
  return std::pow(1.0 - epsilon, static_cast<double>(k));
}

void DecomposeParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  if (k < 1) throw InputError("k must be a positive integer");
  if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0) || !(delta > 0.0)) {
    throw InputError("alpha, beta, gamma and delta must be positive");
  }
  if (!(c_prime > contraction_rate() && c_prime < 1.0)) {
    throw InputError("c' must satisfy (1-epsilon)^k < c' < 1 (got c' = " + std::to_string(c_prime) +
                     ", (1-epsilon)^k = " + std::to_string(contraction_rate()) + ")");
  }
  if (exact_cut_limit > 62) throw InputError("exact_cut_limit is at most 62");
  if (exact_prune_limit > 24) throw InputError("exact_prune_limit is at most 24");
}

DecomposeParams make_params(double epsilon, std::size_t degree, std::uint64_t seed,
                            const ParamOverrides& overrides) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  if (degree == 0) throw InputError("degree must be positive");
  DecomposeParams p;
  p.epsilon = epsilon;
  p.seed = seed;
  if (overrides.k) {
    p.k = *overrides.k;
  } else {
    p.k = 1;
    while (std::pow(1.0 - epsilon, static_cast<double>(p.k)) >= 0.5) ++p.k;
  }
  p.c_prime = overrides.c_prime.value_or(2.0 * p.contraction_rate());
  p.gamma = overrides.gamma.value_or(epsilon * epsilon / (36.0 * static_cast<double>(degree)));
  p.alpha = overrides.alpha.value_or(p.gamma / 4.0);
  p.delta = overrides.delta.value_or(0.01);
  p.beta = overrides.beta.value_or(p.delta / 4.0);
  if (overrides.exact_cut_limit) p.exact_cut_limit = *overrides.exact_cut_limit;
  p.validate();
  return p;
}

ClassCertificate certify_expansion(const MultiGraph& q, std::size_t exact_limit) {
  ClassCertificate cert;
  cert.size = q.vertex_count();
  if (q.vertex_count() <= exact_limit) {
    cert.kind = "brute_force";
    cert.value = q.vertex_count() < 2 ? 0.0 : exact_expansion_constant(q, exact_limit);
    return cert;
  }
  cert.kind = "cheeger";
  try {
    cert.value = cheeger_certificate(q).gamma_lower;
  } catch (const ConvergenceError&) {
    cert.value = 0.0;
  }
  return cert;
}

DecomposeResult decompose(const MultiGraph& g, const DecomposeParams& params) {
  if (!g.is_regular()) throw PreconditionError("decompose needs a regular graph");
  params.validate();
  const std::size_t n = g.vertex_count();
  const double d = static_cast<double>(g.regular_degree());

  DecomposeResult out;
  DecompositionReport& rep = out.report;
  rep.carve = carve_partition(g, params);
  rep.partition = rep.carve.partition;
  rep.parity = fix_class_parity(g, rep.partition);
  if (!rep.partition.is_partition_of(n)) throw Error("parity fix broke the partition");

  const double gamma0 = params.gamma;
  rep.gamma_required = gamma0 / (6.0 * d);

  const std::size_t classes = rep.partition.classes.size();
  std::vector<ClassSurgery> surgery(classes);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(classes); ++i) {
    const auto c = static_cast<std::size_t>(i);
    if (rep.partition.classes[c].empty()) continue;
    try {
      surgery[c] = regularize_class(g, rep.partition, c, gamma0, params.seed);
    } catch (...) {
#pragma omp critical(sofic_decompose_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Edge> edges;
  std::size_t internal = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    const VertexSet& cls = rep.partition.classes[c];
    if (cls.empty()) continue;
    const auto members = cls.members();
    for (const Edge& e : surgery[c].graph.edges()) edges.push_back({members[e.u], members[e.v]});
    internal += surgery[c].internal_edits;
    rep.plans.push_back(surgery[c].plan);
    if (surgery[c].plan.replaced_by_expander) rep.replaced_classes.push_back(c);
    rep.per_class.push_back(certify_expansion(surgery[c].graph, params.exact_cut_limit));
  }
  out.graph = MultiGraph(n, std::move(edges));

  const auto label = rep.partition.labels(n);
  std::size_t cross = 0;
  for (const Edge& e : g.edges()) cross += label[e.u] != label[e.v];
  rep.accounted_edits = cross + internal;
  rep.edit_count = edit_count(g, out.graph);
  if (rep.edit_count != rep.accounted_edits) {
    throw Error("edit accounting mismatch: " + std::to_string(rep.accounted_edits) + " accounted vs " +
                std::to_string(rep.edit_count) + " measured");
  }
  rep.edit_distance = static_cast<double>(rep.edit_count) / static_cast<double>(n);
  rep.boundary_mass = partition_boundary_mass(g, rep.partition);

  rep.gamma_prime_achieved = std::numeric_limits<double>::infinity();
  for (const ClassCertificate& c : rep.per_class) rep.gamma_prime_achieved = std::min(rep.gamma_prime_achieved, c.value);
  if (rep.per_class.empty()) rep.gamma_prime_achieved = 0.0;
  return out;
}

VerifyReport verify_decomposition(const MultiGraph& g, const MultiGraph& g_prime, double gamma,
                                  std::size_t exact_limit) {
  VerifyReport rep;
  rep.same_vertex_set = g.vertex_count() == g_prime.vertex_count();
  if (rep.same_vertex_set) {
    rep.edit_count = edit_count(g, g_prime);
    rep.edit_distance =
        g.vertex_count() == 0 ? 0.0 : static_cast<double>(rep.edit_count) / static_cast<double>(g.vertex_count());
  } else {
    rep.edit_distance = std::numeric_limits<double>::quiet_NaN();
  }

  std::size_t count = 0;
  const auto comp = connected_components(g_prime, &count);
  std::vector<std::vector<Vertex>> members(count);
  for (Vertex v = 0; v < g_prime.vertex_count(); ++v) members[comp[v]].push_back(v);
  rep.all_components_pass = true;
  for (const auto& m : members) {
    ComponentCheck check;
    const MultiGraph h = induced_subgraph(g_prime, m);
    check.size = m.size();
    check.regular = h.is_regular();
    if (check.regular) {
      check.certificate = certify_expansion(h, exact_limit);
      const double slack = check.certificate.kind == "brute_force" ? 1e-12 * gamma : 0.0;
      check.pass = check.certificate.value >= gamma - slack;
    } else {
      check.certificate.size = m.size();
      check.certificate.kind = "none";
    }
    rep.all_components_pass = rep.all_components_pass && check.pass;
    rep.components.push_back(std::move(check));
  }
  rep.pass = rep.same_vertex_set && rep.all_components_pass;
  return rep;
}

}  // namespace sofic
