#include "sofic/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "sofic/errors.hpp"
#include "sofic/kernels.hpp"
#include "sofic/rng.hpp"
#include "sofic/spectral.hpp"

namespace sofic {

RealVertexFunction::RealVertexFunction(std::vector<double> values) : values_(std::move(values)) {
  boxed_ = std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

RealVertexFunction RealVertexFunction::constant(std::size_t n, double c) {
  return RealVertexFunction(std::vector<double>(n, c));
}

RealVertexFunction RealVertexFunction::indicator(const VertexSet& s) {
  std::vector<double> v(s.universe(), 0.0);
  for (Vertex x : s.members()) v[x] = 1.0;
  return RealVertexFunction(std::move(v));
}

RealVertexFunction apply_markov(const MultiGraph& g, const RealVertexFunction& f) {
  if (!g.is_regular()) throw PreconditionError("the Markov operator needs a regular graph of degree >= 1");
  if (f.size() != g.vertex_count()) {
    throw InputError("function has " + std::to_string(f.size()) + " values for " +
                     std::to_string(g.vertex_count()) + " vertices");
  }
  std::vector<double> out(g.vertex_count());
  kernels::parallel::markov_apply(g, f.values(), out);
  if (f.boxed()) {
    // Averages of values in [0,1] stay there; clamp away the last ulp.
    for (double& v : out) v = std::clamp(v, 0.0, 1.0);
  }
  return RealVertexFunction(std::move(out));
}

RealVertexFunction apply_markov_power(const MultiGraph& g, const RealVertexFunction& f,
                                      std::size_t power) {
  RealVertexFunction cur = f;
  for (std::size_t i = 0; i < power; ++i) cur = apply_markov(g, cur);
  return cur;
}

double l2_norm(std::span<const double> f) {
  if (f.empty()) return 0.0;
  double s = 0.0;
  for (double v : f) s += v * v;
  return std::sqrt(s / static_cast<double>(f.size()));
}

double l1_norm(std::span<const double> f) {
  if (f.empty()) return 0.0;
  double s = 0.0;
  for (double v : f) s += std::abs(v);
  return s / static_cast<double>(f.size());
}

double l2_distance(const RealVertexFunction& a, const RealVertexFunction& b) {
  if (a.size() != b.size()) throw InputError("length mismatch");
  if (a.size() == 0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s / static_cast<double>(a.size()));
}

double l1_distance(const RealVertexFunction& a, const RealVertexFunction& b) {
  if (a.size() != b.size()) throw InputError("length mismatch");
  if (a.size() == 0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / static_cast<double>(a.size());
}

double contraction_defect(const MultiGraph& g, const RealVertexFunction& f, double epsilon) {
  if (!f.boxed()) throw PreconditionError("contraction_defect needs f with values in [0,1]");
  const RealVertexFunction mf = apply_markov(g, f);
  const RealVertexFunction m2f = apply_markov(g, mf);
  return l2_distance(m2f, mf) - (1.0 - epsilon) * l2_distance(mf, f);
}

double markov_power_defect(const MultiGraph& g, const VertexSet& s, std::size_t k, double epsilon) {
  if (k < 1) throw PreconditionError("markov_power_defect needs k >= 1");
  const RealVertexFunction chi = RealVertexFunction::indicator(s);
  const RealVertexFunction m1 = apply_markov(g, chi);
  const RealVertexFunction mk = apply_markov_power(g, m1, k - 1);
  const RealVertexFunction mk1 = apply_markov(g, mk);
  return l2_distance(mk1, mk) - std::pow(1.0 - epsilon, static_cast<double>(k)) * l2_distance(m1, chi);
}

double indicator_boundary_l1(const MultiGraph& g, const VertexSet& s) {
  if (!g.is_regular()) throw PreconditionError("needs a regular graph");
  const double b = static_cast<double>(edge_boundary(g, s));
  return 2.0 * b / (static_cast<double>(g.regular_degree()) * static_cast<double>(g.vertex_count()));
}

FunctionFamily standard_family(const MultiGraph& g, std::uint64_t seed, const FamilySpec& spec) {
  const std::size_t n = g.vertex_count();
  FunctionFamily fam;
  fam.seed = seed;
  auto add = [&fam](std::string name, std::vector<double> v) {
    fam.names.push_back(std::move(name));
    fam.functions.emplace_back(std::move(v));
  };

  add("constant_0", std::vector<double>(n, 0.0));
  add("constant_half", std::vector<double>(n, 0.5));
  add("constant_1", std::vector<double>(n, 1.0));

  auto rng = stream_engine(seed, streams::kFunctionFamily);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < spec.random_boxed; ++i) {
    std::vector<double> v(n);
    for (double& x : v) x = unit(rng);
    add("random_boxed_" + std::to_string(i), std::move(v));
  }
  for (std::size_t i = 0; i < spec.random_indicators; ++i) {
    const double density = unit(rng);
    std::vector<double> v(n);
    for (double& x : v) x = unit(rng) < density ? 1.0 : 0.0;
    add("random_indicator_" + std::to_string(i), std::move(v));
  }

  if (n > 0) {
    const auto dist = bfs_distances(g, 0);
    std::size_t ecc = 0;
    for (std::size_t d : dist)
      if (d != std::numeric_limits<std::size_t>::max()) ecc = std::max(ecc, d);
    for (std::size_t r = 0; r < spec.ball_radii && r <= ecc; ++r) {
      std::vector<double> v(n);
      for (std::size_t x = 0; x < n; ++x) v[x] = dist[x] <= r ? 1.0 : 0.0;
      add("ball_" + std::to_string(r), std::move(v));
    }
    if (ecc > 0) {
      std::vector<double> v(n);
      for (std::size_t x = 0; x < n; ++x)
        v[x] = dist[x] == std::numeric_limits<std::size_t>::max() ? 1.0
                                                                   : static_cast<double>(dist[x]) / ecc;
      add("distance_profile", std::move(v));
    }
  }

  if (n >= 2 && g.is_regular()) {
    const SpectralEstimate est = second_eigenvalue(g, 1e-8, 20000);
    auto clamped = [n](const std::vector<double>& e) {
      double top = 0.0;
      for (double x : e) top = std::max(top, std::abs(x));
      std::vector<double> v(n, 0.5);
      if (top > 0)
        for (std::size_t i = 0; i < n; ++i) v[i] = std::clamp(0.5 * (1.0 + e[i] / top), 0.0, 1.0);
      return v;
    };
    add("eigen_lambda2", clamped(est.vector2));
    add("eigen_lambda_min", clamped(est.vector_min));
    std::vector<double> sorted = est.vector2;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t l = 1; l <= spec.eigen_levels; ++l) {
      const double level = sorted[(l * (n - 1)) / (spec.eigen_levels + 1)];
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = est.vector2[i] <= level ? 1.0 : 0.0;
      add("eigen_level_" + std::to_string(l), std::move(v));
    }
  }
  return fam;
}

DefectSummary family_defects(const MultiGraph& g, const FunctionFamily& family, double epsilon) {
  DefectSummary out;
  out.defects.assign(family.functions.size(), 0.0);
  const auto count = static_cast<std::int64_t>(family.functions.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      out.defects[static_cast<std::size_t>(i)] =
          contraction_defect(g, family.functions[static_cast<std::size_t>(i)], epsilon);
    } catch (...) {
#pragma omp critical(sofic_family_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  out.max_defect = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.defects.size(); ++i) {
    if (out.defects[i] > out.max_defect) {
      out.max_defect = out.defects[i];
      out.argmax = i;
    }
  }
  return out;
}

}  // namespace sofic
