#pragma once

#include <vector>

#include "grid.hpp"
#include "report.hpp"
#include "smooth.hpp"

namespace mfmaps {

struct HolderExponent {
  double lambda;
  explicit HolderExponent(double l) : lambda(l) {
    if (!(l > 0.0 && l <= 1.0))
      throw Error(Err::ConfigError, "Holder exponent must lie in (0,1]");
  }
};

/// Exact maximum of ||f(x)-f(y)|| / ||x-y||^lambda over all distinct node
/// pairs. Sequential row-major pair order; the per-pair arithmetic matches
/// oracle_holder operation for operation so the two agree bit for bit.
double holder_seminorm(const SampledFunction& f, HolderExponent lambda);

/// Sup of ||f(x)|| over nodes plus the seminorm.
double holder_norm(const SampledFunction& f, HolderExponent lambda);

/// Restriction to an index-aligned sub-box. The result shares f's lattice, so
/// seminorm(restrict_to(f)) <= seminorm(f) holds as an exact float statement.
SampledFunction restrict_to(const SampledFunction& f, const CornerGrid& sub);

/// Extension by zero from f's grid to `super`. Requires exact zeros on every
/// f-node outside the declared support box K, with K strictly inside f's box;
/// then the sampled seminorm is preserved. When the rebased lattice would
/// leave [0,inf)^m by rounding, falls back to super's own lattice.
SampledFunction extend_by_zero(const SampledFunction& f, const CornerGrid& support,
                               const CornerGrid& super);

/// Pointwise product with a scalar cut-off sampled on the same grid.
SampledFunction multiply_cutoff(const SampledFunction& h, const SampledFunction& f);

/// Node-wise f(x, gamma(x)) on the sub-box W. f must accept m + codim inputs.
SampledFunction pushforward(const SmoothFn& f, const SampledFunction& gamma,
                            const CornerGrid& w);

/// gamma o Theta for a node-aligned reparameterization; exact relabeling.
SampledFunction pullback(const NodeMap& theta, const SampledFunction& gamma);

/// Piecewise definition from overlapping pieces; pieces must agree exactly on
/// shared nodes and jointly cover the target.
SampledFunction glue(const std::vector<SampledFunction>& pieces, const CornerGrid& target);

/// Smooth cut-off: product of one-dimensional e^{-1/t} plateau ramps, exactly
/// 1 on K-nodes and exactly 0 outside U-nodes.
struct BumpFunction {
  SampledFunction samples;
  SmoothFn fn;
};
BumpFunction bump_function(const CornerGrid& grid, Vec k_lo, Vec k_hi, Vec u_lo, Vec u_hi);

/// Mean-value estimates for the superposition of a scalar smooth f:
///   sup |F2(eta)|            <= L * ||eta||_lambda
///   sup |F2(eta) - F2(gamma)| <= G * (||eta-gamma||_inf + ||eta-gamma||_lambda)
/// with F2(eta)(x,y) = (f(eta(x)) - f(eta(y))) / ||x-y||^lambda, L a sampled
/// sup of ||grad f|| over the range (including pair segments) and G the
/// sampled Lipschitz bound of df. Reports the margins of both inequalities.
Report lipschitz_estimate_check(const SmoothFn& f, const SampledFunction& eta,
                                const SampledFunction& gamma, HolderExponent lambda);

/// Seminorm comparison across exponents beta <= lambda:
///   ||f||_beta <= max(1, diam^{lambda-beta}) * ||f||_lambda.
Report exponent_embedding_check(const SampledFunction& f, HolderExponent lambda,
                                HolderExponent beta);

}  // namespace mfmaps
