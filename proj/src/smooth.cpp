#include "smooth.hpp"

#include <cmath>

#include "error.hpp"

namespace mfmaps {

void SmoothFn::validate(Span lo, Span hi, SplitMix64& rng, int probes, double rel_tol) const {
  const double h = 1e-5;
  Vec x(arity), dir(arity), xp(arity), xm(arity);
  for (int p = 0; p < probes; ++p) {
    for (std::size_t i = 0; i < arity; ++i) x[i] = rng.uniform(lo[i], hi[i]);
    double dn = 0.0;
    for (std::size_t i = 0; i < arity; ++i) {
      dir[i] = rng.gaussian();
      dn += dir[i] * dir[i];
    }
    dn = std::sqrt(dn);
    if (dn == 0.0) continue;
    for (std::size_t i = 0; i < arity; ++i) {
      dir[i] /= dn;
      xp[i] = x[i] + h * dir[i];
      xm[i] = x[i] - h * dir[i];
    }
    const Vec fp = (*this)(xp);
    const Vec fm = (*this)(xm);
    const Vec dv = d(x, dir);
    for (std::size_t k = 0; k < out_dim; ++k) {
      const double fd = (fp[k] - fm[k]) / (2.0 * h);
      const double mismatch = std::fabs(fd - dv[k]) / std::max(1.0, std::fabs(dv[k]));
      if (mismatch > rel_tol)
        throw Error(Err::EvalFailure,
                    "hand-coded derivative of '" + name + "' disagrees with finite differences (" +
                        std::to_string(mismatch) + " relative at probe " + std::to_string(p) + ")");
    }
  }
}

SmoothFn smooth_linear_form(Vec weights, double offset) {
  SmoothFn f;
  f.name = "linear_form";
  f.arity = weights.size();
  f.out_dim = 1;
  f.eval = [w = weights, offset](Span x, double* out) { out[0] = offset + dot(w, x); };
  f.deriv = [w = weights](Span, Span h, double* out) { out[0] = dot(w, h); };
  return f;
}

SmoothFn smooth_square_norm(std::size_t arity) {
  SmoothFn f;
  f.name = "square_norm";
  f.arity = arity;
  f.out_dim = 1;
  f.eval = [](Span x, double* out) { out[0] = sq_norm(x); };
  f.deriv = [](Span x, Span h, double* out) { out[0] = 2.0 * dot(x, h); };
  return f;
}

SmoothFn smooth_x_times_y_sq() {
  SmoothFn f;
  f.name = "x_y_squared";
  f.arity = 2;
  f.out_dim = 1;
  f.eval = [](Span x, double* out) { out[0] = x[0] * x[1] * x[1]; };
  f.deriv = [](Span x, Span h, double* out) {
    out[0] = h[0] * x[1] * x[1] + 2.0 * x[0] * x[1] * h[1];
  };
  return f;
}

SmoothFn smooth_project_tail(std::size_t arity, std::size_t tail) {
  SmoothFn f;
  f.name = "project_tail";
  f.arity = arity;
  f.out_dim = tail;
  const std::size_t head = arity - tail;
  f.eval = [head, tail](Span x, double* out) {
    for (std::size_t i = 0; i < tail; ++i) out[i] = x[head + i];
  };
  f.deriv = [head, tail](Span, Span h, double* out) {
    for (std::size_t i = 0; i < tail; ++i) out[i] = h[head + i];
  };
  return f;
}

SmoothFn smooth_project_head(std::size_t arity, std::size_t head) {
  SmoothFn f;
  f.name = "project_head";
  f.arity = arity;
  f.out_dim = head;
  f.eval = [head](Span x, double* out) {
    for (std::size_t i = 0; i < head; ++i) out[i] = x[i];
  };
  f.deriv = [head](Span, Span h, double* out) {
    for (std::size_t i = 0; i < head; ++i) out[i] = h[i];
  };
  return f;
}

SmoothFn random_trig_fn(std::size_t arity, std::size_t out_dim, SplitMix64& rng, int terms,
                        double max_freq, double amp) {
  struct Component {
    double constant;
    Vec linear;
    Vec amps;     // terms
    Vec phases;   // terms
    Vec freqs;    // terms x arity
  };
  auto comps = std::make_shared<std::vector<Component>>();
  comps->resize(out_dim);
  for (auto& c : *comps) {
    c.constant = rng.uniform(-amp, amp);
    c.linear.resize(arity);
    for (auto& v : c.linear) v = rng.uniform(-amp, amp);
    c.amps.resize(terms);
    c.phases.resize(terms);
    c.freqs.resize(static_cast<std::size_t>(terms) * arity);
    for (int k = 0; k < terms; ++k) {
      c.amps[k] = rng.uniform(0.2, amp);
      c.phases[k] = rng.uniform(0.0, 6.283185307179586);
      for (std::size_t a = 0; a < arity; ++a)
        c.freqs[static_cast<std::size_t>(k) * arity + a] = rng.uniform(-max_freq, max_freq);
    }
  }
  SmoothFn f;
  f.name = "random_trig";
  f.arity = arity;
  f.out_dim = out_dim;
  f.eval = [comps, arity, terms](Span x, double* out) {
    for (std::size_t j = 0; j < comps->size(); ++j) {
      const Component& c = (*comps)[j];
      double s = c.constant + dot(c.linear, x);
      for (int k = 0; k < terms; ++k) {
        const Span w(c.freqs.data() + static_cast<std::size_t>(k) * arity, arity);
        s += c.amps[k] * std::cos(dot(w, x) + c.phases[k]);
      }
      out[j] = s;
    }
  };
  f.deriv = [comps, arity, terms](Span x, Span h, double* out) {
    for (std::size_t j = 0; j < comps->size(); ++j) {
      const Component& c = (*comps)[j];
      double s = dot(c.linear, h);
      for (int k = 0; k < terms; ++k) {
        const Span w(c.freqs.data() + static_cast<std::size_t>(k) * arity, arity);
        s -= c.amps[k] * std::sin(dot(w, x) + c.phases[k]) * dot(w, h);
      }
      out[j] = s;
    }
  };
  return f;
}

}  // namespace mfmaps
