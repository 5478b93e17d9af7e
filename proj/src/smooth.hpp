#pragma once

#include <functional>
#include <string>

#include "rng.hpp"
#include "vecs.hpp"

namespace mfmaps {

/// Smooth map R^arity -> R^out_dim supplied as callables with a hand-coded
/// directional derivative. `deriv(x, h)` must return df(x; h). Registration
/// goes through validate(), which cross-checks deriv against central finite
/// differences; wrong hand-coded derivatives would otherwise poison every
/// derivative-identity test downstream.
struct SmoothFn {
  std::string name;
  std::size_t arity = 1;
  std::size_t out_dim = 1;
  std::function<void(Span x, double* out)> eval;
  std::function<void(Span x, Span h, double* out)> deriv;

  Vec operator()(Span x) const {
    Vec r(out_dim);
    eval(x, r.data());
    return r;
  }
  Vec d(Span x, Span h) const {
    Vec r(out_dim);
    deriv(x, h, r.data());
    return r;
  }

  /// Relative FD mismatch <= rel_tol at `probes` random points of [lo,hi]^arity.
  void validate(Span lo, Span hi, SplitMix64& rng, int probes = 50,
                double rel_tol = 1e-5) const;
};

SmoothFn smooth_linear_form(Vec weights, double offset = 0.0);
/// f(u) = |u|^2 componentwise sum; deriv 2<u,h>.
SmoothFn smooth_square_norm(std::size_t arity);
/// f(x,y) = x * y^2 on R^2.
SmoothFn smooth_x_times_y_sq();
/// Projection (x, y) in R^(m+n) -> y (last n components).
SmoothFn smooth_project_tail(std::size_t arity, std::size_t tail);
/// Projection (x, y) -> x (first m components).
SmoothFn smooth_project_head(std::size_t arity, std::size_t head);

/// Random trigonometric-polynomial map with exact hand-coded derivative:
/// each output is  c + <b,u> + sum_k a_k cos(<w_k, u> + p_k).
/// Frequencies stay below `max_freq` so quadrature identities hold at
/// spectral accuracy.
SmoothFn random_trig_fn(std::size_t arity, std::size_t out_dim, SplitMix64& rng,
                        int terms = 3, double max_freq = 2.0, double amp = 1.0);

}  // namespace mfmaps
