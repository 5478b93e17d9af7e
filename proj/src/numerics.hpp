#pragma once

#include <functional>
#include <optional>

#include "grid.hpp"
#include "report.hpp"
#include "smooth.hpp"
#include "vecs.hpp"

namespace mfmaps {

/// Central finite-difference policy shared by every derivative check.
struct FDConfig {
  Vec steps{1e-2, 1e-3, 1e-4};  // strictly decreasing, positive
  double min_order = 1.8;

  void validate() const;
};

/// Log-log slope fitted through the two smallest steps whose error sits above
/// the rounding floor (1e-13). Errors all below the floor count as exact.
struct OrderFit {
  std::optional<double> order;
  bool exact = false;
};
OrderFit fit_order(Span steps, Span errors, double floor = 1e-13);

struct FdResult {
  Vec value;                       // Richardson-extrapolated derivative
  std::vector<Vec> per_step;       // raw central-difference estimates
  Vec step_errors;                 // distance of each estimate to `value`
  std::optional<double> order;     // slope of step_errors
  bool exact = false;
  bool pass(double min_order) const { return exact || (order && *order >= min_order); }
};

/// Central differences of a vector-valued map along `direction`, with
/// Richardson extrapolation over the two smallest steps. Errors are rated
/// against the extrapolated value since no exact derivative is available.
FdResult fd_directional(const std::function<Vec(Span)>& F, Span x, Span direction,
                        const FDConfig& cfg);

/// Gauss-Legendre rule on [0,1]. Construction verifies exactness on all
/// monomials of degree <= 2*points-1 to 1e-14 relative.
class QuadratureRule {
 public:
  explicit QuadratureRule(int points = 32);
  int points() const { return static_cast<int>(nodes_.size()); }
  const Vec& nodes() const { return nodes_; }
  const Vec& weights() const { return weights_; }
  double integrate(const std::function<double(double)>& g) const;

 private:
  Vec nodes_, weights_;
};

/// Difference-quotient vs weak-integral identity: for each node x,
///   Delta(t)(x) = (f(gamma(x)+t*eta(x)) - f(gamma(x))) / t
/// must match the s-quadrature of df(gamma(x)+s*t*eta(x); eta(x)) over [0,1].
Report weak_integral_check(const SmoothFn& f, const SampledFunction& gamma,
                           const SampledFunction& eta, double t, const QuadratureRule& rule,
                           double tol = 1e-8);

/// Difference quotients converge to the pushforward of df:
///   || Delta(t) - df o (gamma, eta) ||_inf  ->  0  with order >= min_order in t.
Report derivative_identity_check(const SmoothFn& f, const SampledFunction& gamma,
                                 const SampledFunction& eta, Span t_steps,
                                 double min_order = 0.9);

/// Independent reference for the Holder seminorm: a deliberately naive
/// sequential double loop that re-derives node coordinates per pair. Must stay
/// free of the holder module's code paths.
double oracle_holder(const SampledFunction& f, double lambda);

}  // namespace mfmaps
