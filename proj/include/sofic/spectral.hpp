#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sofic/graph.hpp"

namespace sofic {

inline constexpr double kEigenTolerance = 1e-9;
inline constexpr std::size_t kEigenMaxIter = 100000;

struct SpectralEstimate {
  double lambda2 = 1.0;
  double lambda_min = -1.0;
  std::size_t iterations = 0;
  /// Larger of the two residuals ||Mx - lambda x|| for unit mean-zero x.
  double residual = 0.0;
  bool converged = false;
  /// Unit-norm (uniform measure) mean-zero eigenvector estimates.
  std::vector<double> vector2;
  std::vector<double> vector_min;

  double spectral_radius() const;
};

/// Symmetric operator y = A x on R^n that preserves constants.
using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

struct PowerResult {
  double eigenvalue = 0.0;
  std::vector<double> vector;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Largest eigenvalue of (I + sign * A) / 2 on the complement of constants,
/// returned as the corresponding eigenvalue of A: sign=+1 gives the top
/// nontrivial eigenvalue, sign=-1 the bottom one.
PowerResult shifted_power_iteration(const LinearOperator& op, std::size_t n, int sign,
                                    double tolerance, std::size_t max_iter, std::uint64_t seed);

/// lambda_2 and lambda_min of the Markov operator by two deflated shifted
/// power iterations. Does not throw on non-convergence; check `converged`.
SpectralEstimate second_eigenvalue(const MultiGraph& g, double tolerance = kEigenTolerance,
                                   std::size_t max_iter = kEigenMaxIter);

struct CheegerCertificate {
  /// (1 - lambda2_upper) / 2, clamped at 0.
  double gamma_lower = 0.0;
  double lambda2 = 1.0;
  /// lambda2 plus its residual plus 1e-12: the value the bound is taken from.
  double lambda2_upper = 1.0;
  bool meets_target = false;
};

/// Discrete Cheeger lower bound on the edge expansion of a regular graph.
/// Throws ConvergenceError if the eigenvalue estimate did not converge.
CheegerCertificate cheeger_certificate(const MultiGraph& g, double epsilon_target = 0.0,
                                       double tolerance = kEigenTolerance,
                                       std::size_t max_iter = kEigenMaxIter);

}  // namespace sofic
