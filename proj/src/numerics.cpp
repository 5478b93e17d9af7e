#include "numerics.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace mfmaps {

void FDConfig::validate() const {
  if (steps.size() < 2) throw Error(Err::ConfigError, "need at least two FD steps");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0.0)) throw Error(Err::ConfigError, "FD steps must be positive");
    if (i > 0 && !(steps[i] < steps[i - 1]))
      throw Error(Err::ConfigError, "FD steps must be strictly decreasing");
  }
}

OrderFit fit_order(Span steps, Span errors, double floor) {
  OrderFit fit;
  // two smallest steps with error above the rounding floor
  int a = -1, b = -1;  // b = smallest, a = next
  for (int i = static_cast<int>(steps.size()) - 1; i >= 0; --i) {
    if (errors[i] > floor) {
      if (b < 0)
        b = i;
      else if (a < 0) {
        a = i;
        break;
      }
    }
  }
  if (b < 0) {
    fit.exact = true;
    return fit;
  }
  if (a < 0) {
    // only one informative step; cannot rate a slope
    return fit;
  }
  fit.order = std::log(errors[a] / errors[b]) / std::log(steps[a] / steps[b]);
  return fit;
}

FdResult fd_directional(const std::function<Vec(Span)>& F, Span x, Span direction,
                        const FDConfig& cfg) {
  cfg.validate();
  FdResult r;
  const std::size_t n = x.size();
  Vec xp(n), xm(n);
  for (double h : cfg.steps) {
    for (std::size_t i = 0; i < n; ++i) {
      xp[i] = x[i] + h * direction[i];
      xm[i] = x[i] - h * direction[i];
    }
    Vec fp, fm;
    try {
      fp = F(xp);
      fm = F(xm);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(Err::EvalFailure,
                  "evaluation failed at step " + std::to_string(h) + ": " + e.what());
    }
    Vec est(fp.size());
    for (std::size_t k = 0; k < fp.size(); ++k) est[k] = (fp[k] - fm[k]) / (2.0 * h);
    r.per_step.push_back(std::move(est));
  }
  // Richardson over the two smallest steps, assuming the order-2 kernel
  const std::size_t last = cfg.steps.size() - 1;
  const double hb = cfg.steps[last], ha = cfg.steps[last - 1];
  const Vec& Db = r.per_step[last];
  const Vec& Da = r.per_step[last - 1];
  r.value.resize(Db.size());
  const double wa = hb * hb / (hb * hb - ha * ha);
  const double wb = -ha * ha / (hb * hb - ha * ha);
  for (std::size_t k = 0; k < Db.size(); ++k) r.value[k] = wa * Da[k] + wb * Db[k];

  r.step_errors.resize(cfg.steps.size());
  for (std::size_t i = 0; i < cfg.steps.size(); ++i)
    r.step_errors[i] = dist(r.per_step[i], r.value);
  const OrderFit fit = fit_order(cfg.steps, r.step_errors);
  r.order = fit.order;
  r.exact = fit.exact;
  return r;
}

QuadratureRule::QuadratureRule(int points) {
  if (points < 1) throw Error(Err::ConfigError, "quadrature needs at least one point");
  nodes_.resize(points);
  weights_.resize(points);
  const int n = points;
  // Newton on the Legendre polynomial in long double, mapped to [0,1].
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double x = std::cos(3.141592653589793238L * (static_cast<long double>(i) + 0.75L) /
                             (static_cast<long double>(n) + 0.5L));
    long double pp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / pp;
      x -= dx;
      if (std::fabs(static_cast<double>(dx)) < 1e-19) break;
    }
    const long double w = 2.0L / ((1.0L - x * x) * pp * pp);
    // map [-1,1] -> [0,1]; rule is symmetric
    nodes_[i] = static_cast<double>(0.5L * (1.0L - x));
    nodes_[n - 1 - i] = static_cast<double>(0.5L * (1.0L + x));
    weights_[i] = static_cast<double>(0.5L * w);
    weights_[n - 1 - i] = weights_[i];
  }
  // exactness gate: integrates s^k for all k <= 2n-1
  for (int k = 0; k <= 2 * n - 1; ++k) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += weights_[i] * std::pow(nodes_[i], k);
    const double expect = 1.0 / (k + 1.0);
    if (std::fabs(acc - expect) / expect > 1e-14)
      throw Error(Err::EvalFailure, "Gauss-Legendre rule failed its monomial exactness gate at k=" +
                                        std::to_string(k));
  }
}

double QuadratureRule::integrate(const std::function<double(double)>& g) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * g(nodes_[i]);
  return acc;
}

Report weak_integral_check(const SmoothFn& f, const SampledFunction& gamma,
                           const SampledFunction& eta, double t, const QuadratureRule& rule,
                           double tol) {
  if (t == 0.0) throw Error(Err::ConfigError, "difference quotient needs t != 0");
  if (!gamma.grid.same_nodes(eta.grid) || gamma.codim != eta.codim)
    throw Error(Err::GridMismatch, "gamma and eta must share grid and codim");
  if (f.arity != gamma.codim) throw Error(Err::GridMismatch, "f arity != codim");

  Report rep;
  rep.check = "fnew.weak_integral";
  rep.bound = 0.0;
  rep.tolerance = tol;
  double sup = 0.0;
  Vec shifted(gamma.codim), integral(f.out_dim), df(f.out_dim);
  for (std::int64_t node = 0; node < gamma.grid.node_count(); ++node) {
    const Span g = gamma.value(node);
    const Span e = eta.value(node);
    const Vec f0 = f(g);
    for (std::size_t i = 0; i < gamma.codim; ++i) shifted[i] = g[i] + t * e[i];
    const Vec f1 = f(shifted);
    std::fill(integral.begin(), integral.end(), 0.0);
    for (int q = 0; q < rule.points(); ++q) {
      const double s = rule.nodes()[q];
      for (std::size_t i = 0; i < gamma.codim; ++i) shifted[i] = g[i] + s * t * e[i];
      f.deriv(shifted, e, df.data());
      for (std::size_t k = 0; k < f.out_dim; ++k) integral[k] += rule.weights()[q] * df[k];
    }
    double err = 0.0;
    for (std::size_t k = 0; k < f.out_dim; ++k) {
      const double delta = (f1[k] - f0[k]) / t;
      err += (delta - integral[k]) * (delta - integral[k]);
    }
    sup = std::max(sup, std::sqrt(err));
  }
  rep.value = sup;
  rep.measured.emplace_back("t", t);
  rep.measured.emplace_back("sup_node_difference", sup);
  rep.finalize();
  return rep;
}

Report derivative_identity_check(const SmoothFn& f, const SampledFunction& gamma,
                                 const SampledFunction& eta, Span t_steps, double min_order) {
  if (!gamma.grid.same_nodes(eta.grid) || gamma.codim != eta.codim)
    throw Error(Err::GridMismatch, "gamma and eta must share grid and codim");
  Report rep;
  rep.check = "fnew.derivative_identity";
  rep.order_required = min_order;
  rep.tolerance = 0.0;

  Vec shifted(gamma.codim), df(f.out_dim);
  Vec errs(t_steps.size(), 0.0);
  for (std::size_t ti = 0; ti < t_steps.size(); ++ti) {
    const double t = t_steps[ti];
    double sup = 0.0;
    for (std::int64_t node = 0; node < gamma.grid.node_count(); ++node) {
      const Span g = gamma.value(node);
      const Span e = eta.value(node);
      const Vec f0 = f(g);
      for (std::size_t i = 0; i < gamma.codim; ++i) shifted[i] = g[i] + t * e[i];
      const Vec f1 = f(shifted);
      f.deriv(g, e, df.data());
      double err = 0.0;
      for (std::size_t k = 0; k < f.out_dim; ++k) {
        const double delta = (f1[k] - f0[k]) / t;
        err += (delta - df[k]) * (delta - df[k]);
      }
      sup = std::max(sup, std::sqrt(err));
    }
    errs[ti] = sup;
    rep.measured.emplace_back("t=" + std::to_string(t), sup);
  }
  const OrderFit fit = fit_order(t_steps, errs, 1e-12);
  rep.order_estimate = fit.order;
  rep.exact = fit.exact;
  rep.value = 0.0;  // pass is carried by the order gate
  rep.finalize();
  return rep;
}

double oracle_holder(const SampledFunction& f, double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw Error(Err::ConfigError, "Holder exponent must lie in (0,1]");
  const CornerGrid& g = f.grid;
  const std::size_t m = g.dim();
  const std::size_t n = f.codim;
  Vec xi(m), xj(m);
  double best = 0.0;
  for (std::int64_t i = 0; i < g.node_count(); ++i) {
    g.node(i, xi.data());
    const double* fi = f.values.data() + i * static_cast<std::int64_t>(n);
    for (std::int64_t j = i + 1; j < g.node_count(); ++j) {
      g.node(j, xj.data());
      const double* fj = f.values.data() + j * static_cast<std::int64_t>(n);
      double sd = 0.0;
      for (std::size_t a = 0; a < m; ++a) {
        const double d = xi[a] - xj[a];
        sd += d * d;
      }
      double sf = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double d = fi[k] - fj[k];
        sf += d * d;
      }
      const double q = sf / std::pow(sd, lambda);
      if (q > best) best = q;
    }
  }
  return std::sqrt(best);
}

}  // namespace mfmaps
