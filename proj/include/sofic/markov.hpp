#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sofic/graph.hpp"

namespace sofic {

/// Real function on the vertices of a graph. `boxed()` records whether all
/// values lie in [0, 1], the domain of the contraction condition.
class RealVertexFunction {
 public:
  RealVertexFunction() = default;
  explicit RealVertexFunction(std::vector<double> values);

  static RealVertexFunction constant(std::size_t n, double c);
  static RealVertexFunction indicator(const VertexSet& s);

  std::size_t size() const { return values_.size(); }
  bool boxed() const { return boxed_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
  bool boxed_ = true;
};

/// (Mf)(x) = (1/d) * sum over edge instances {x,y} of f(y).
/// Throws PreconditionError unless g is regular, InputError on length mismatch.
RealVertexFunction apply_markov(const MultiGraph& g, const RealVertexFunction& f);

/// M^power f.
RealVertexFunction apply_markov_power(const MultiGraph& g, const RealVertexFunction& f,
                                      std::size_t power);

// Norms with respect to the uniform probability measure on the vertices.
double l2_norm(std::span<const double> f);
double l1_norm(std::span<const double> f);
inline double l2_norm(const RealVertexFunction& f) { return l2_norm(f.values()); }
inline double l1_norm(const RealVertexFunction& f) { return l1_norm(f.values()); }

/// ||a - b|| and ||a - b||_1.
double l2_distance(const RealVertexFunction& a, const RealVertexFunction& b);
double l1_distance(const RealVertexFunction& a, const RealVertexFunction& b);

/// ||M^2 f - Mf|| - (1 - epsilon) ||Mf - f||. Throws PreconditionError for unboxed f.
double contraction_defect(const MultiGraph& g, const RealVertexFunction& f, double epsilon);

/// ||M^{k+1} chi_S - M^k chi_S|| - (1 - epsilon)^k ||M chi_S - chi_S||, k >= 1.
double markov_power_defect(const MultiGraph& g, const VertexSet& s, std::size_t k, double epsilon);

/// ||M chi_S - chi_S||_1 = 2 |E(S, S^c)| / (d n), exact from the raw boundary.
double indicator_boundary_l1(const MultiGraph& g, const VertexSet& s);

/// A named, seeded family of boxed test functions for the contraction condition.
struct FunctionFamily {
  std::uint64_t seed = 0;
  std::vector<std::string> names;
  std::vector<RealVertexFunction> functions;
};

struct FamilySpec {
  std::size_t random_boxed = 32;
  std::size_t random_indicators = 16;
  std::size_t ball_radii = 8;
  std::size_t eigen_levels = 8;
};

/// Constants, uniform random boxed functions, random indicator sets,
/// BFS-ball indicators around vertex 0, a distance profile, clamped
/// eigenvectors for lambda_2 and lambda_min, and level-set indicators of
/// the lambda_2 eigenvector.
FunctionFamily standard_family(const MultiGraph& g, std::uint64_t seed, const FamilySpec& spec = {});

struct DefectSummary {
  double max_defect = 0.0;
  std::size_t argmax = 0;
  std::vector<double> defects;
};

/// Contraction defect of every family member, evaluated in parallel.
DefectSummary family_defects(const MultiGraph& g, const FunctionFamily& family, double epsilon);

}  // namespace sofic
