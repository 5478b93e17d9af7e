#include "holder.hpp"

#include <algorithm>
#include <cmath>

namespace mfmaps {

double holder_seminorm(const SampledFunction& f, HolderExponent lambda) {
  const CornerGrid& g = f.grid;
  const std::size_t m = g.dim();
  const std::size_t n = f.codim;
  const std::int64_t count = g.node_count();
  const Vec coords = g.all_coords();
  double best = 0.0;
  for (std::int64_t i = 0; i < count; ++i) {
    const double* xi = coords.data() + i * static_cast<std::int64_t>(m);
    const double* fi = f.values.data() + i * static_cast<std::int64_t>(n);
    for (std::int64_t j = i + 1; j < count; ++j) {
      const double* xj = coords.data() + j * static_cast<std::int64_t>(m);
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
      const double q = sf / std::pow(sd, lambda.lambda);
      if (q > best) best = q;
    }
  }
  return std::sqrt(best);
}

double holder_norm(const SampledFunction& f, HolderExponent lambda) {
  return f.sup_norm() + holder_seminorm(f, lambda);
}

SampledFunction restrict_to(const SampledFunction& f, const CornerGrid& sub) {
  const Index offset = f.grid.locate_sub(sub);
  const CornerGrid shared = f.grid.sub_box(offset, sub.shape());
  SampledFunction out(shared, f.codim);
  for (std::int64_t i = 0; i < shared.node_count(); ++i) {
    Index idx = shared.unflatten(i);
    for (std::size_t a = 0; a < idx.size(); ++a) idx[a] += offset[a];
    const Span v = f.value(f.grid.flatten(idx));
    std::copy(v.begin(), v.end(), out.value_mut(i));
  }
  return out;
}

SampledFunction extend_by_zero(const SampledFunction& f, const CornerGrid& support,
                               const CornerGrid& super) {
  const Index k_off = f.grid.locate_sub(support);
  const Index& k_shape = support.shape();
  for (std::size_t a = 0; a < f.grid.dim(); ++a) {
    if (k_off[a] < 1 || k_off[a] + k_shape[a] > f.grid.shape()[a] - 1)
      throw Error(Err::BadNesting, "support box must sit strictly inside the sample grid");
  }
  // exact zeros required outside K
  for (std::int64_t i = 0; i < f.grid.node_count(); ++i) {
    const Index idx = f.grid.unflatten(i);
    bool in_k = true;
    for (std::size_t a = 0; a < idx.size(); ++a)
      if (idx[a] < k_off[a] || idx[a] >= k_off[a] + k_shape[a]) {
        in_k = false;
        break;
      }
    if (in_k) continue;
    for (double v : f.value(i))
      if (v != 0.0)
        throw Error(Err::NotCompactlySupported, "nonzero sample outside the declared support", i);
  }

  const Index f_off = super.locate_sub(f.grid);
  CornerGrid target = super;
  try {
    // prefer f's lattice so retained pair quotients are reproduced bit for bit
    target = f.grid.super_box(f_off, super.shape());
  } catch (const Error&) {
    target = super;
  }
  SampledFunction out(target, f.codim);
  for (std::int64_t i = 0; i < f.grid.node_count(); ++i) {
    Index idx = f.grid.unflatten(i);
    for (std::size_t a = 0; a < idx.size(); ++a) idx[a] += f_off[a];
    const Span v = f.value(i);
    std::copy(v.begin(), v.end(), out.value_mut(target.flatten(idx)));
  }
  return out;
}

SampledFunction multiply_cutoff(const SampledFunction& h, const SampledFunction& f) {
  if (h.codim != 1) throw Error(Err::GridMismatch, "cut-off must be scalar-valued");
  if (!h.grid.same_nodes(f.grid)) throw Error(Err::GridMismatch, "cut-off grid differs");
  SampledFunction out(f.grid, f.codim);
  for (std::int64_t i = 0; i < f.grid.node_count(); ++i) {
    const double c = h.value(i)[0];
    const Span v = f.value(i);
    double* o = out.value_mut(i);
    for (std::size_t k = 0; k < f.codim; ++k) o[k] = c * v[k];
  }
  return out;
}

SampledFunction pushforward(const SmoothFn& f, const SampledFunction& gamma,
                            const CornerGrid& w) {
  const std::size_t m = gamma.grid.dim();
  if (f.arity != m + gamma.codim)
    throw Error(Err::GridMismatch, "pushforward map must accept (x, gamma(x))");
  const Index offset = gamma.grid.locate_sub(w);
  const CornerGrid shared = gamma.grid.sub_box(offset, w.shape());
  SampledFunction out(shared, f.out_dim);
  Vec arg(f.arity);
  for (std::int64_t i = 0; i < shared.node_count(); ++i) {
    shared.node(i, arg.data());
    Index idx = shared.unflatten(i);
    for (std::size_t a = 0; a < m; ++a) idx[a] += offset[a];
    const Span v = gamma.value(gamma.grid.flatten(idx));
    std::copy(v.begin(), v.end(), arg.begin() + static_cast<std::ptrdiff_t>(m));
    try {
      f.eval(arg, out.value_mut(i));
    } catch (const std::exception& e) {
      throw Error(Err::DomainViolation, std::string("pushforward eval: ") + e.what(), i);
    }
    for (std::size_t k = 0; k < f.out_dim; ++k)
      if (!std::isfinite(out.value(i)[k]))
        throw Error(Err::DomainViolation, "pushforward produced a non-finite value", i);
  }
  return out;
}

SampledFunction pullback(const NodeMap& theta, const SampledFunction& gamma) {
  if (!theta.codomain().same_nodes(gamma.grid))
    throw Error(Err::NotNodeAligned, "reparameterization codomain differs from sample grid");
  SampledFunction out(theta.domain(), gamma.codim);
  for (std::int64_t i = 0; i < theta.domain().node_count(); ++i) {
    const Span v = gamma.value(theta.map_node(i));
    std::copy(v.begin(), v.end(), out.value_mut(i));
  }
  return out;
}

SampledFunction glue(const std::vector<SampledFunction>& pieces, const CornerGrid& target) {
  if (pieces.empty()) throw Error(Err::CoverageGap, "no pieces given");
  const std::size_t codim = pieces.front().codim;
  const std::size_t m = target.dim();
  for (const auto& p : pieces)
    if (p.codim != codim || p.grid.dim() != m)
      throw Error(Err::GridMismatch, "pieces must share rank and codim");

  std::vector<Index> offsets;  // piece node 0 relative to target node 0
  offsets.reserve(pieces.size());
  for (const auto& p : pieces) offsets.push_back(target.offset_to(p.grid));

  // pairwise agreement on every shared lattice node
  for (std::size_t a = 0; a < pieces.size(); ++a) {
    for (std::size_t b = a + 1; b < pieces.size(); ++b) {
      Index lo(m), hi(m);
      bool overlap = true;
      for (std::size_t ax = 0; ax < m; ++ax) {
        lo[ax] = std::max(offsets[a][ax], offsets[b][ax]);
        hi[ax] = std::min(offsets[a][ax] + pieces[a].grid.shape()[ax],
                          offsets[b][ax] + pieces[b].grid.shape()[ax]);
        if (lo[ax] >= hi[ax]) overlap = false;
      }
      if (!overlap) continue;
      Index cnt(m);
      std::int64_t total = 1;
      for (std::size_t ax = 0; ax < m; ++ax) {
        cnt[ax] = hi[ax] - lo[ax];
        total *= cnt[ax];
      }
      for (std::int64_t flat = 0; flat < total; ++flat) {
        Index idx(m);
        std::int64_t rest = flat;
        for (std::size_t ax = m; ax-- > 0;) {
          idx[ax] = lo[ax] + rest % cnt[ax];
          rest /= cnt[ax];
        }
        Index ia(m), ib(m);
        for (std::size_t ax = 0; ax < m; ++ax) {
          ia[ax] = idx[ax] - offsets[a][ax];
          ib[ax] = idx[ax] - offsets[b][ax];
        }
        const Span va = pieces[a].value(pieces[a].grid.flatten(ia));
        const Span vb = pieces[b].value(pieces[b].grid.flatten(ib));
        for (std::size_t k = 0; k < codim; ++k)
          if (va[k] != vb[k])
            throw Error(Err::OverlapConflict,
                        "pieces " + std::to_string(a) + " and " + std::to_string(b) +
                            " disagree on a shared node",
                        pieces[a].grid.flatten(ia));
      }
    }
  }

  SampledFunction out(target, codim);
  for (std::int64_t i = 0; i < target.node_count(); ++i) {
    const Index idx = target.unflatten(i);
    bool covered = false;
    for (std::size_t p = 0; p < pieces.size() && !covered; ++p) {
      Index local(m);
      bool inside = true;
      for (std::size_t ax = 0; ax < m; ++ax) {
        local[ax] = idx[ax] - offsets[p][ax];
        if (local[ax] < 0 || local[ax] >= pieces[p].grid.shape()[ax]) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      const Span v = pieces[p].value(pieces[p].grid.flatten(local));
      std::copy(v.begin(), v.end(), out.value_mut(i));
      covered = true;
    }
    if (!covered) throw Error(Err::CoverageGap, "target node not covered by any piece", i);
  }
  return out;
}

namespace {

double psi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double dpsi(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

// smooth step: 0 for t<=0, 1 for t>=1
double step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = psi(t), b = psi(1.0 - t);
  return a / (a + b);
}

double dstep(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double a = psi(t), b = psi(1.0 - t);
  const double s = a + b;
  return (dpsi(t) * b + a * dpsi(1.0 - t)) / (s * s);
}

struct Ramp {
  double u0, k0, k1, u1;
  bool left, right;  // whether a ramp exists on that side

  double value(double x) const {
    double v = 1.0;
    if (left) v *= step((x - u0) / (k0 - u0));
    if (right) v *= step((u1 - x) / (u1 - k1));
    return v;
  }
  double slope(double x) const {
    const double l = left ? step((x - u0) / (k0 - u0)) : 1.0;
    const double r = right ? step((u1 - x) / (u1 - k1)) : 1.0;
    double d = 0.0;
    if (left) d += dstep((x - u0) / (k0 - u0)) / (k0 - u0) * r;
    if (right) d -= dstep((u1 - x) / (u1 - k1)) / (u1 - k1) * l;
    return d;
  }
};

}  // namespace

BumpFunction bump_function(const CornerGrid& grid, Vec k_lo, Vec k_hi, Vec u_lo, Vec u_hi) {
  const std::size_t m = grid.dim();
  if (k_lo.size() != m || k_hi.size() != m || u_lo.size() != m || u_hi.size() != m)
    throw Error(Err::BadNesting, "box rank mismatch");
  const Vec g_lo = grid.lo();
  const Vec g_hi = grid.hi();
  auto ramps = std::make_shared<std::vector<Ramp>>();
  for (std::size_t a = 0; a < m; ++a) {
    if (!(k_lo[a] <= k_hi[a]) || u_lo[a] > k_lo[a] || k_hi[a] > u_hi[a] ||
        u_lo[a] < g_lo[a] - 1e-12 || u_hi[a] > g_hi[a] + 1e-12)
      throw Error(Err::BadNesting, "need K inside U inside the grid box on axis " +
                                       std::to_string(a));
    Ramp r{u_lo[a], k_lo[a], k_hi[a], u_hi[a], k_lo[a] > u_lo[a], k_hi[a] < u_hi[a]};
    // a flush side is only smooth when there is no room below/above it
    if (!r.left && u_lo[a] > g_lo[a] + 1e-12)
      throw Error(Err::BadNesting, "K touches U strictly inside the box on axis " +
                                       std::to_string(a));
    if (!r.right && u_hi[a] < g_hi[a] - 1e-12)
      throw Error(Err::BadNesting, "K touches U strictly inside the box on axis " +
                                       std::to_string(a));
    ramps->push_back(r);
  }

  SmoothFn fn;
  fn.name = "plateau_bump";
  fn.arity = m;
  fn.out_dim = 1;
  fn.eval = [ramps](Span x, double* out) {
    double v = 1.0;
    for (std::size_t a = 0; a < ramps->size(); ++a) v *= (*ramps)[a].value(x[a]);
    out[0] = v;
  };
  fn.deriv = [ramps](Span x, Span h, double* out) {
    const std::size_t m = ramps->size();
    Vec vals(m);
    for (std::size_t a = 0; a < m; ++a) vals[a] = (*ramps)[a].value(x[a]);
    double d = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      double term = (*ramps)[a].slope(x[a]) * h[a];
      for (std::size_t b = 0; b < m; ++b)
        if (b != a) term *= vals[b];
      d += term;
    }
    out[0] = d;
  };

  SampledFunction samples(grid, 1);
  Vec x(m);
  for (std::int64_t i = 0; i < grid.node_count(); ++i) {
    grid.node(i, x.data());
    fn.eval(x, samples.value_mut(i));
  }
  return BumpFunction{std::move(samples), std::move(fn)};
}

namespace {

// ||grad f|| at u via the hand-coded directional derivative
double grad_norm(const SmoothFn& f, Span u, Vec& basis, Vec& out) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.arity; ++i) {
    std::fill(basis.begin(), basis.end(), 0.0);
    basis[i] = 1.0;
    f.deriv(u, basis, out.data());
    s += out[0] * out[0];
  }
  return std::sqrt(s);
}

// Frobenius norm of the Hessian at u, by central differences of deriv
double hess_frobenius(const SmoothFn& f, Span u) {
  const std::size_t n = f.arity;
  const double h = 1e-5;
  Vec ei(n, 0.0), up(n), um(n), dp(1), dm(1);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(ei.begin(), ei.end(), 0.0);
    ei[i] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        up[k] = u[k] + (k == j ? h : 0.0);
        um[k] = u[k] - (k == j ? h : 0.0);
      }
      f.deriv(up, ei, dp.data());
      f.deriv(um, ei, dm.data());
      const double hij = (dp[0] - dm[0]) / (2.0 * h);
      s += hij * hij;
    }
  }
  return std::sqrt(s);
}

}  // namespace

Report lipschitz_estimate_check(const SmoothFn& f, const SampledFunction& eta,
                                const SampledFunction& gamma, HolderExponent lambda) {
  if (!eta.grid.same_nodes(gamma.grid) || eta.codim != gamma.codim)
    throw Error(Err::GridMismatch, "eta and gamma must share grid and codim");
  if (f.arity != eta.codim || f.out_dim != 1)
    throw Error(Err::GridMismatch, "mean-value check needs scalar f on R^codim");

  const CornerGrid& g = eta.grid;
  const std::size_t m = g.dim();
  const std::size_t ell = eta.codim;
  const std::int64_t count = g.node_count();
  const Vec coords = g.all_coords();

  Vec f_eta(count), f_gamma(count);
  Vec tmp(1);
  for (std::int64_t i = 0; i < count; ++i) {
    f.eval(eta.value(i), tmp.data());
    f_eta[i] = tmp[0];
    f.eval(gamma.value(i), tmp.data());
    f_gamma[i] = tmp[0];
  }

  // quotient sups over node pairs, and the sampled gradient sup over all pair
  // segments of eta and gamma (17 points per segment)
  double lhs1 = 0.0, lhs2 = 0.0, grad_sup = 0.0, hess_sup = 0.0;
  Vec basis(ell), dout(1), seg(ell);
  const int seg_pts = 17;
  std::int64_t pair_counter = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    const double* xi = coords.data() + i * static_cast<std::int64_t>(m);
    for (std::int64_t j = i + 1; j < count; ++j, ++pair_counter) {
      const double* xj = coords.data() + j * static_cast<std::int64_t>(m);
      double sd = 0.0;
      for (std::size_t a = 0; a < m; ++a) {
        const double d = xi[a] - xj[a];
        sd += d * d;
      }
      const double dl = std::pow(sd, 0.5 * lambda.lambda);
      const double q1 = std::fabs(f_eta[i] - f_eta[j]) / dl;
      const double q2 = std::fabs((f_eta[i] - f_eta[j]) - (f_gamma[i] - f_gamma[j])) / dl;
      lhs1 = std::max(lhs1, q1);
      lhs2 = std::max(lhs2, q2);
      for (int s = 0; s < seg_pts; ++s) {
        const double t = static_cast<double>(s) / (seg_pts - 1);
        for (std::size_t k = 0; k < ell; ++k)
          seg[k] = eta.value(j)[k] + t * (eta.value(i)[k] - eta.value(j)[k]);
        grad_sup = std::max(grad_sup, grad_norm(f, seg, basis, dout));
        for (std::size_t k = 0; k < ell; ++k)
          seg[k] = gamma.value(j)[k] + t * (gamma.value(i)[k] - gamma.value(j)[k]);
        grad_sup = std::max(grad_sup, grad_norm(f, seg, basis, dout));
      }
      // Hessian sampling thinned to segment midpoints of a pair subset
      if (pair_counter % 7 == 0) {
        for (std::size_t k = 0; k < ell; ++k)
          seg[k] = 0.5 * (eta.value(i)[k] + eta.value(j)[k]);
        hess_sup = std::max(hess_sup, hess_frobenius(f, seg));
      }
    }
    hess_sup = std::max(hess_sup, hess_frobenius(f, eta.value(i)));
    hess_sup = std::max(hess_sup, hess_frobenius(f, gamma.value(i)));
    grad_sup = std::max(grad_sup, grad_norm(f, eta.value(i), basis, dout));
    grad_sup = std::max(grad_sup, grad_norm(f, gamma.value(i), basis, dout));
  }

  const double sem_eta = holder_seminorm(eta, lambda);
  const double sem_gamma = holder_seminorm(gamma, lambda);
  SampledFunction diff(g, ell, sub(eta.values, gamma.values));
  const double diff_sup = diff.sup_norm();
  const double diff_sem = holder_seminorm(diff, lambda);

  const double big_l = grad_sup;
  const double big_g = std::max(big_l, hess_sup * std::max(sem_eta, sem_gamma));
  const double rhs1 = big_l * sem_eta;
  const double rhs2 = big_g * (diff_sup + diff_sem);

  Report rep;
  rep.check = "holder.mean_value_estimates";
  rep.measured = {{"sup_F2_eta", lhs1},          {"L_times_sem", rhs1},
                  {"sup_F2_difference", lhs2},   {"G_times_dist", rhs2},
                  {"L", big_l},                  {"G", big_g},
                  {"margin_first", rhs1 - lhs1}, {"margin_second", rhs2 - lhs2}};
  rep.value = std::max(lhs1 - rhs1, lhs2 - rhs2);  // max violation; <= 0 passes
  rep.bound = 0.0;
  rep.tolerance = 0.0;
  rep.finalize();
  return rep;
}

Report exponent_embedding_check(const SampledFunction& f, HolderExponent lambda,
                                HolderExponent beta) {
  if (!(beta.lambda <= lambda.lambda))
    throw Error(Err::ConfigError, "embedding check needs beta <= lambda");
  const double sem_l = holder_seminorm(f, lambda);
  const double sem_b = holder_seminorm(f, beta);
  const double factor = std::max(1.0, std::pow(f.grid.diameter(), lambda.lambda - beta.lambda));
  Report rep;
  rep.check = "holder.exponent_embedding";
  rep.measured = {{"seminorm_beta", sem_b},
                  {"seminorm_lambda", sem_l},
                  {"embedding_factor", factor}};
  rep.value = sem_b;
  rep.bound = factor * sem_l;
  rep.tolerance = 1e-12 * (1.0 + rep.bound);  // ties at the bound are genuine equalities
  rep.finalize();
  return rep;
}

}  // namespace mfmaps
