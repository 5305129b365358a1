#include "sofic/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sofic/errors.hpp"
#include "sofic/kernels.hpp"
#include "sofic/rng.hpp"

namespace sofic {

namespace {

constexpr std::size_t kStallWindow = 1000;
constexpr double kStallResidual = 1e-3;

double mean(std::span<const double> x) {
  return x.empty() ? 0.0 : std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return x.empty() ? 0.0 : std::sqrt(s / static_cast<double>(x.size()));
}

void center_and_normalize(std::vector<double>& x) {
  const double m = mean(x);
  for (double& v : x) v -= m;
  const double nrm = norm(x);
  if (nrm > 0) {
    for (double& v : x) v /= nrm;
  }
}

}  // namespace

double SpectralEstimate::spectral_radius() const {
  return std::max(std::abs(lambda2), std::abs(lambda_min));
}

PowerResult shifted_power_iteration(const LinearOperator& op, std::size_t n, int sign,
                                    double tolerance, std::size_t max_iter, std::uint64_t seed) {
  PowerResult out;
  if (n < 2) {
    out.converged = true;
    return out;
  }
  auto rng = stream_engine(seed, streams::kPowerIteration + static_cast<std::uint64_t>(sign + 1));
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> x(n), y(n);
  for (double& v : x) v = unit(rng);
  center_and_normalize(x);

  const double s = sign >= 0 ? 1.0 : -1.0;
  double lambda = 0.0, residual = 0.0, window_lambda = 0.0;
  std::size_t it = 0;
  for (; it < max_iter; ++it) {
    op(x, y);
    double xy = 0.0, xx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      xy += x[i] * y[i];
      xx += x[i] * x[i];
    }
    lambda = xx > 0 ? xy / xx : 0.0;
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = y[i] - lambda * x[i];
      r += e * e;
    }
    residual = std::sqrt(r / static_cast<double>(n));
    if (residual < tolerance) {
      out.converged = true;
      break;
    }
    // A near-degenerate pair stalls the vector long after the Rayleigh
    // quotient has settled; the residual is kept in the reported bound.
    if (it % kStallWindow == 0) {
      if (it > 0 && std::abs(lambda - window_lambda) < tolerance && residual < kStallResidual) {
        out.converged = true;
        break;
      }
      window_lambda = lambda;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = 0.5 * (x[i] + s * y[i]);
    center_and_normalize(x);
    if (norm(x) == 0.0) {
      // x fell into the kernel of the shifted operator: the extreme
      // eigenvalue on this side is -s, which is exact.
      lambda = -s;
      residual = 0.0;
      out.converged = true;
      break;
    }
  }
  out.eigenvalue = lambda;
  out.vector = std::move(x);
  out.iterations = it + (out.converged ? 1 : 0);
  out.residual = residual;
  return out;
}

SpectralEstimate second_eigenvalue(const MultiGraph& g, double tolerance, std::size_t max_iter) {
  if (!g.is_regular()) throw PreconditionError("second_eigenvalue needs a regular graph");
  const LinearOperator op = [&g](std::span<const double> in, std::span<double> out) {
    kernels::parallel::markov_apply(g, in, out);
  };
  const std::size_t n = g.vertex_count();
  SpectralEstimate est;
  const PowerResult top = shifted_power_iteration(op, n, +1, tolerance, max_iter, n);
  const PowerResult bottom = shifted_power_iteration(op, n, -1, tolerance, max_iter, n);
  est.lambda2 = std::clamp(top.eigenvalue, -1.0, 1.0);
  est.lambda_min = std::clamp(bottom.eigenvalue, -1.0, est.lambda2);
  est.iterations = top.iterations + bottom.iterations;
  est.residual = std::max(top.residual, bottom.residual);
  est.converged = top.converged && bottom.converged;
  est.vector2 = top.vector;
  est.vector_min = bottom.vector;
  return est;
}

CheegerCertificate cheeger_certificate(const MultiGraph& g, double epsilon_target, double tolerance,
                                       std::size_t max_iter) {
  if (!g.is_regular()) throw PreconditionError("cheeger_certificate needs a regular graph");
  const LinearOperator op = [&g](std::span<const double> in, std::span<double> out) {
    kernels::parallel::markov_apply(g, in, out);
  };
  const PowerResult top = shifted_power_iteration(op, g.vertex_count(), +1, tolerance, max_iter,
                                                  g.vertex_count());
  if (!top.converged) {
    throw ConvergenceError("lambda_2 estimate did not converge (residual " +
                           std::to_string(top.residual) + ")");
  }
  CheegerCertificate cert;
  cert.lambda2 = std::clamp(top.eigenvalue, -1.0, 1.0);
  cert.lambda2_upper = std::min(1.0, cert.lambda2 + top.residual + 1e-12);
  cert.gamma_lower = std::max(0.0, (1.0 - cert.lambda2_upper) / 2.0);
  cert.meets_target = cert.gamma_lower >= epsilon_target;
  return cert;
}

}  // namespace sofic
