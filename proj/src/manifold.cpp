#include "manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "numerics.hpp"
#include "quaternion.hpp"

namespace mfmaps {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;

double wrap_angle(double x) {
  const double w = x - kTwoPi * std::floor(x / kTwoPi);
  return (w >= kTwoPi) ? 0.0 : w;  // guard the rounding case floor(x/2pi)*2pi > x - 2pi
}

double wrap_signed(double x) {
  double w = wrap_angle(x);
  if (w > kPi) w -= kTwoPi;
  return w;
}

}  // namespace

bool Manifold::tangent_ok(Span p, Span v, double tol) const {
  const Vec proj = project_tangent(p, v);
  return sup_dist(proj, v) <= tol;
}

Vec Manifold::random_tangent(Span p, double scale, SplitMix64& rng) const {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec raw(embed_dim());
    for (auto& x : raw) x = rng.gaussian();
    Vec t = project_tangent(p, raw);
    const double n = norm(t);
    if (n < 1e-9) continue;
    const double target = scale * rng.uniform(0.5, 1.0);
    for (auto& x : t) x *= target / n;
    return t;
  }
  throw Error(Err::EvalFailure, "random tangent generation degenerated");
}

// ---------------------------------------------------------------------------
// Euclidean R^n

namespace {

class EuclideanManifold final : public Manifold {
 public:
  explicit EuclideanManifold(std::size_t n) {
    id_ = "euclidean:" + std::to_string(n);
    dim_ = embed_dim_ = n;
    normalized_ = true;
    Chart c;
    c.name = "identity";
    c.contains = [](Span) { return true; };
    c.to_coords = [](Span p) { return Vec(p.begin(), p.end()); };
    c.from_coords = [](Span x) { return Vec(x.begin(), x.end()); };
    c.d_to_coords = [](Span, Span v) { return Vec(v.begin(), v.end()); };
    c.d_from_coords = [](Span, Span v) { return Vec(v.begin(), v.end()); };
    atlas_.push_back(std::move(c));
  }

  bool contains(Span p, double) const override { return all_finite(p); }
  Vec project(Span p) const override { return Vec(p.begin(), p.end()); }
  Vec project_tangent(Span, Span v) const override { return Vec(v.begin(), v.end()); }

  bool omega_contains(Span, Span) const override { return true; }
  Vec sigma(Span p, Span v) const override { return add(p, v); }
  bool omega_prime_contains(Span, Span) const override { return true; }
  Vec theta_inv(Span p, Span q) const override { return sub(q, p); }

  const LieStructure* lie() const override { return &lie_; }

  Vec random_point(SplitMix64& rng) const override {
    Vec p(dim_);
    for (auto& x : p) x = 1.5 * rng.gaussian();
    return p;
  }

  void init_lie() {
    lie_.algebra_dim = dim_;
    lie_.identity = Vec(dim_, 0.0);
    lie_.mul = [](Span a, Span b) { return add(a, b); };
    lie_.inv = [](Span a) { return scale(-1.0, a); };
    lie_.log = [](Span g) { return Vec(g.begin(), g.end()); };
    lie_.exp = [](Span u) { return Vec(u.begin(), u.end()); };
    lie_.algebra_norm = [](Span u) { return norm(u); };
    lie_.translate = [](Span, Span u) { return Vec(u.begin(), u.end()); };
    lie_.untranslate = [](Span, Span v) { return Vec(v.begin(), v.end()); };
    lie_.log_radius_cap = std::numeric_limits<double>::infinity();
  }

 private:
  LieStructure lie_;
};

// ---------------------------------------------------------------------------
// Unit sphere S^2, geodesic local addition

class Sphere2Manifold final : public Manifold {
 public:
  Sphere2Manifold() {
    id_ = "sphere2";
    dim_ = 2;
    embed_dim_ = 3;
    normalized_ = true;
    atlas_.push_back(stereo_chart(false));  // from the north pole, covers z < 0.5
    atlas_.push_back(stereo_chart(true));   // from the south pole, covers z > -0.5
  }

  bool contains(Span p, double tol) const override {
    return all_finite(p) && std::fabs(norm(p) - 1.0) <= tol;
  }
  Vec project(Span p) const override { return scale(1.0 / norm(p), p); }
  Vec project_tangent(Span p, Span v) const override {
    const double c = dot(p, v);
    return axpy(v, -c, p);
  }

  bool omega_contains(Span, Span v) const override { return norm(v) < kPi - 0.1; }

  Vec sigma(Span p, Span v) const override {
    const double t = norm(v);
    if (t == 0.0) return Vec(p.begin(), p.end());
    const double c = std::cos(t), s = std::sin(t) / t;
    Vec r(3);
    for (int i = 0; i < 3; ++i) r[i] = c * p[i] + s * v[i];
    return r;
  }

  bool omega_prime_contains(Span p, Span q) const override {
    return angle(p, q) < kPi - 0.1;
  }

  Vec theta_inv(Span p, Span q) const override {
    const double c = dot(p, q);
    const Vec u = axpy(q, -c, p);  // component of q orthogonal to p
    const double s = norm(u);
    if (s == 0.0) return Vec(3, 0.0);
    return scale(std::atan2(s, c) / s, u);
  }

  Vec random_point(SplitMix64& rng) const override {
    for (;;) {
      Vec p{rng.gaussian(), rng.gaussian(), rng.gaussian()};
      const double n = norm(p);
      if (n > 1e-6) return scale(1.0 / n, p);
    }
  }

 private:
  static double angle(Span p, Span q) {
    const double c = dot(p, q);
    const Vec u = axpy(q, -c, p);
    return std::atan2(norm(u), c);
  }

  // Stereographic projection from a pole onto the equatorial plane; domain is
  // the open cap reaching 0.5 beyond the equator, image inside the
  // [-sqrt(3), sqrt(3)]^2 box.
  static Chart stereo_chart(bool from_south) {
    const double sgn = from_south ? 1.0 : -1.0;  // sign in the 1 -/+ z denominators
    Chart c;
    c.name = from_south ? "stereo_south" : "stereo_north";
    c.box_lo = Vec{-1.7320508075688772, -1.7320508075688772};
    c.box_hi = Vec{1.7320508075688772, 1.7320508075688772};
    c.contains = [sgn](Span p) { return sgn * p[2] > -0.5; };
    c.to_coords = [sgn](Span p) {
      const double d = 1.0 + sgn * p[2];
      return Vec{p[0] / d, p[1] / d};
    };
    c.from_coords = [sgn](Span x) {
      const double r2 = x[0] * x[0] + x[1] * x[1];
      const double d = 1.0 + r2;
      return Vec{2.0 * x[0] / d, 2.0 * x[1] / d, sgn * (1.0 - r2) / d};
    };
    c.d_to_coords = [sgn](Span p, Span v) {
      const double d = 1.0 + sgn * p[2];
      const double a = p[0] / d, b = p[1] / d;
      return Vec{(v[0] - sgn * a * v[2]) / d, (v[1] - sgn * b * v[2]) / d};
    };
    c.d_from_coords = [sgn](Span x, Span w) {
      const double a = x[0], b = x[1];
      const double d = 1.0 + a * a + b * b;
      const double dd = d * d;
      const double xa = 2.0 * (1.0 - a * a + b * b) / dd, xb = -4.0 * a * b / dd;
      const double ya = -4.0 * a * b / dd, yb = 2.0 * (1.0 + a * a - b * b) / dd;
      const double za = -sgn * 4.0 * a / dd, zb = -sgn * 4.0 * b / dd;
      return Vec{xa * w[0] + xb * w[1], ya * w[0] + yb * w[1], za * w[0] + zb * w[1]};
    };
    return c;
  }
};

// ---------------------------------------------------------------------------
// Rotation group as unit quaternions, log-chart local addition

class So3Manifold final : public Manifold {
 public:
  So3Manifold() {
    id_ = "so3";
    dim_ = 3;
    embed_dim_ = 4;
    normalized_ = true;
    init_lie();
    // Left-translated log charts centered at the eight unit quaternions of
    // the quaternion group; their pi - 0.2 caps cover the whole group.
    const double centers[8][4] = {{1, 0, 0, 0},  {-1, 0, 0, 0}, {0, 1, 0, 0}, {0, -1, 0, 0},
                                  {0, 0, 1, 0},  {0, 0, -1, 0}, {0, 0, 0, 1}, {0, 0, 0, -1}};
    for (int i = 0; i < 8; ++i) {
      const Quat c{centers[i][0], centers[i][1], centers[i][2], centers[i][3]};
      Chart ch;
      ch.name = "log_chart_" + std::to_string(i);
      const double cap = kPi - 0.2;
      ch.box_lo = Vec{-cap, -cap, -cap};
      ch.box_hi = Vec{cap, cap, cap};
      ch.contains = [c, cap](Span p) {
        return quat_angle(quat_mul(quat_conj(c), Quat::from(p))) < cap;
      };
      ch.to_coords = [c](Span p) { return quat_log(quat_mul(quat_conj(c), Quat::from(p))); };
      ch.from_coords = [c](Span u) { return quat_mul(c, quat_exp(u)).to_vec(); };
      atlas_.push_back(std::move(ch));
    }
  }

  bool contains(Span p, double tol) const override {
    return all_finite(p) && std::fabs(norm(p) - 1.0) <= tol;
  }
  Vec project(Span p) const override { return scale(1.0 / norm(p), p); }
  Vec project_tangent(Span p, Span v) const override {
    const double c = dot(p, v);
    return axpy(v, -c, p);
  }

  bool omega_contains(Span p, Span v) const override {
    return norm(lie_.untranslate(p, v)) < lie_.log_radius_cap;
  }

  Vec sigma(Span p, Span v) const override {
    const Vec u = lie_.untranslate(p, v);
    if (u[0] == 0.0 && u[1] == 0.0 && u[2] == 0.0) return Vec(p.begin(), p.end());
    return quat_normalize(quat_mul(Quat::from(p), quat_exp(u))).to_vec();
  }

  bool omega_prime_contains(Span p, Span q) const override {
    return quat_angle(quat_mul(quat_conj(Quat::from(p)), Quat::from(q))) < lie_.log_radius_cap;
  }

  Vec theta_inv(Span p, Span q) const override {
    const Vec u = quat_log(quat_mul(quat_conj(Quat::from(p)), Quat::from(q)));
    return lie_.translate(p, u);
  }

  const LieStructure* lie() const override { return &lie_; }

  Vec random_point(SplitMix64& rng) const override {
    for (;;) {
      Quat q{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
      if (quat_norm(q) > 1e-6) return quat_normalize(q).to_vec();
    }
  }

 private:
  void init_lie() {
    lie_.algebra_dim = 3;
    lie_.identity = Vec{1.0, 0.0, 0.0, 0.0};
    lie_.mul = [](Span a, Span b) {
      return quat_normalize(quat_mul(Quat::from(a), Quat::from(b))).to_vec();
    };
    lie_.inv = [](Span a) { return quat_conj(Quat::from(a)).to_vec(); };
    lie_.log = [](Span g) { return quat_log(Quat::from(g)); };
    lie_.exp = [](Span u) { return quat_exp(u).to_vec(); };
    lie_.algebra_norm = [](Span u) { return norm(u); };
    lie_.translate = [](Span g, Span u) {
      return quat_mul(Quat::from(g), Quat{0.0, u[0], u[1], u[2]}).to_vec();
    };
    lie_.untranslate = [](Span g, Span v) {
      const Quat u = quat_mul(quat_conj(Quat::from(g)), Quat::from(v));
      return Vec{u.x, u.y, u.z};
    };
    lie_.log_radius_cap = 0.5 * kPi;
  }

  LieStructure lie_;
};

// ---------------------------------------------------------------------------
// Flat torus in angle coordinates mod 2*pi

class TorusManifold final : public Manifold {
 public:
  explicit TorusManifold(std::size_t n) {
    id_ = "torus:" + std::to_string(n);
    dim_ = embed_dim_ = n;
    normalized_ = true;
    init_lie();
    // shift charts: wrap(theta - s) with per-axis shifts s in {0, pi}
    const std::size_t chart_count = (n <= 3) ? (std::size_t(1) << n) : 2;
    for (std::size_t mask = 0; mask < chart_count; ++mask) {
      Vec shift(n, 0.0);
      if (n <= 3) {
        for (std::size_t a = 0; a < n; ++a)
          if (mask & (std::size_t(1) << a)) shift[a] = kPi;
      } else if (mask == 1) {
        shift.assign(n, kPi);
      }
      Chart c;
      c.name = "shift_chart_" + std::to_string(mask);
      c.box_lo = Vec(n, 0.0);
      c.box_hi = Vec(n, kTwoPi);
      c.contains = [shift, n](Span p) {
        for (std::size_t a = 0; a < n; ++a)
          if (wrap_angle(p[a] - shift[a]) <= 0.0) return false;
        return true;
      };
      c.to_coords = [shift, n](Span p) {
        Vec r(n);
        for (std::size_t a = 0; a < n; ++a) r[a] = wrap_angle(p[a] - shift[a]);
        return r;
      };
      c.from_coords = [shift, n](Span x) {
        Vec r(n);
        for (std::size_t a = 0; a < n; ++a) r[a] = wrap_angle(x[a] + shift[a]);
        return r;
      };
      c.d_to_coords = [](Span, Span v) { return Vec(v.begin(), v.end()); };
      c.d_from_coords = [](Span, Span v) { return Vec(v.begin(), v.end()); };
      atlas_.push_back(std::move(c));
    }
  }

  bool contains(Span p, double tol) const override {
    if (!all_finite(p)) return false;
    for (double x : p)
      if (std::fabs(wrap_angle(x) - x) > tol) return false;
    return true;
  }
  Vec project(Span p) const override {
    Vec r(dim_);
    for (std::size_t a = 0; a < dim_; ++a) r[a] = wrap_angle(p[a]);
    return r;
  }
  Vec project_tangent(Span, Span v) const override { return Vec(v.begin(), v.end()); }

  bool omega_contains(Span, Span v) const override { return sup_norm(v) < 0.5 * kPi; }

  Vec sigma(Span p, Span v) const override {
    Vec r(dim_);
    for (std::size_t a = 0; a < dim_; ++a) r[a] = wrap_angle(p[a] + v[a]);
    return r;
  }

  bool omega_prime_contains(Span p, Span q) const override {
    for (std::size_t a = 0; a < dim_; ++a)
      if (std::fabs(wrap_signed(q[a] - p[a])) >= 0.5 * kPi) return false;
    return true;
  }

  Vec theta_inv(Span p, Span q) const override {
    Vec r(dim_);
    for (std::size_t a = 0; a < dim_; ++a) r[a] = wrap_signed(q[a] - p[a]);
    return r;
  }

  const LieStructure* lie() const override { return &lie_; }

  double point_dist(Span p, Span q) const override {
    double s = 0.0;
    for (std::size_t a = 0; a < dim_; ++a) {
      const double d = wrap_signed(p[a] - q[a]);
      s += d * d;
    }
    return std::sqrt(s);
  }

  Vec random_point(SplitMix64& rng) const override {
    Vec p(dim_);
    for (auto& x : p) x = rng.uniform(0.0, kTwoPi);
    return p;
  }

 private:
  void init_lie() {
    const std::size_t n = dim_;
    lie_.algebra_dim = n;
    lie_.identity = Vec(n, 0.0);
    lie_.mul = [n](Span a, Span b) {
      Vec r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = wrap_angle(a[i] + b[i]);
      return r;
    };
    lie_.inv = [n](Span a) {
      Vec r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = wrap_angle(-a[i]);
      return r;
    };
    lie_.log = [n](Span g) {
      Vec r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = wrap_signed(g[i]);
      return r;
    };
    lie_.exp = [n](Span u) {
      Vec r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = wrap_angle(u[i]);
      return r;
    };
    lie_.algebra_norm = [](Span u) { return sup_norm(u); };
    lie_.translate = [](Span, Span u) { return Vec(u.begin(), u.end()); };
    lie_.untranslate = [](Span, Span v) { return Vec(v.begin(), v.end()); };
    lie_.log_radius_cap = 0.5 * kPi;
  }

  LieStructure lie_;
};

// ---------------------------------------------------------------------------
// Tangent manifold TN = N x algebra via left trivialization

class TangentBundleManifold final : public Manifold {
 public:
  explicit TangentBundleManifold(ManifoldPtr base) : base_(std::move(base)) {
    if (base_->lie() == nullptr)
      throw Error(Err::Unsupported,
                  "no tangent-manifold construction for " + base_->id() +
                      " (needs a group structure for the trivialization)");
    id_ = "tangent(" + base_->id() + ")";
    dim_ = 2 * base_->dim();
    embed_dim_ = base_->embed_dim() + base_->dim();
    normalized_ = base_->normalized();
    for (const Chart& bc : base_->atlas()) {
      Chart c;
      c.name = bc.name + "_x_fiber";
      const std::size_t bk = base_->embed_dim();
      const std::size_t fd = base_->dim();
      c.contains = [bc, bk](Span p) { return bc.contains(p.subspan(0, bk)); };
      c.to_coords = [bc, bk, fd](Span p) {
        Vec r = bc.to_coords(p.subspan(0, bk));
        r.insert(r.end(), p.begin() + bk, p.end());
        return r;
      };
      c.from_coords = [bc, fd](Span x) {
        Vec r = bc.from_coords(x.subspan(0, x.size() - fd));
        r.insert(r.end(), x.end() - fd, x.end());
        return r;
      };
      if (bc.has_tangent_maps()) {
        c.d_to_coords = [bc, bk](Span p, Span v) {
          Vec r = bc.d_to_coords(p.subspan(0, bk), v.subspan(0, bk));
          r.insert(r.end(), v.begin() + bk, v.end());
          return r;
        };
        c.d_from_coords = [bc, fd](Span x, Span w) {
          Vec r = bc.d_from_coords(x.subspan(0, x.size() - fd), w.subspan(0, w.size() - fd));
          r.insert(r.end(), w.end() - fd, w.end());
          return r;
        };
      }
      if (!bc.box_lo.empty()) {
        c.box_lo = bc.box_lo;
        c.box_hi = bc.box_hi;
        c.box_lo.insert(c.box_lo.end(), fd, -1e9);
        c.box_hi.insert(c.box_hi.end(), fd, 1e9);
      }
      atlas_.push_back(std::move(c));
    }
  }

  const ManifoldPtr& base() const { return base_; }

  bool contains(Span p, double tol) const override {
    return base_->contains(head(p), tol) && all_finite(tail(p));
  }
  Vec project(Span p) const override {
    Vec r = base_->project(head(p));
    r.insert(r.end(), p.end() - base_->dim(), p.end());
    return r;
  }
  Vec project_tangent(Span p, Span v) const override {
    Vec r = base_->project_tangent(head(p), head(v));
    r.insert(r.end(), v.end() - base_->dim(), v.end());
    return r;
  }

  bool omega_contains(Span p, Span v) const override {
    return base_->omega_contains(head(p), head(v));
  }
  Vec sigma(Span p, Span v) const override {
    Vec r = base_->sigma(head(p), head(v));
    for (std::size_t i = 0; i < base_->dim(); ++i)
      r.push_back(p[base_->embed_dim() + i] + v[base_->embed_dim() + i]);
    return r;
  }
  bool omega_prime_contains(Span p, Span q) const override {
    return base_->omega_prime_contains(head(p), head(q));
  }
  Vec theta_inv(Span p, Span q) const override {
    Vec r = base_->theta_inv(head(p), head(q));
    for (std::size_t i = 0; i < base_->dim(); ++i)
      r.push_back(q[base_->embed_dim() + i] - p[base_->embed_dim() + i]);
    return r;
  }

  double point_dist(Span p, Span q) const override {
    const double db = base_->point_dist(head(p), head(q));
    const double df = dist(tail(p), tail(q));
    return std::sqrt(db * db + df * df);
  }

  Vec random_point(SplitMix64& rng) const override {
    Vec r = base_->random_point(rng);
    for (std::size_t i = 0; i < base_->dim(); ++i) r.push_back(rng.gaussian());
    return r;
  }

 private:
  Span head(Span p) const { return p.subspan(0, base_->embed_dim()); }
  Span tail(Span p) const { return p.subspan(base_->embed_dim()); }

  ManifoldPtr base_;
};

// ---------------------------------------------------------------------------
// Product N1 x N2 with ambient concatenation and componentwise Sigma

class ProductManifoldImpl final : public Manifold {
 public:
  ProductManifoldImpl(ManifoldPtr a, ManifoldPtr b) : a_(std::move(a)), b_(std::move(b)) {
    id_ = "product(" + a_->id() + "," + b_->id() + ")";
    dim_ = a_->dim() + b_->dim();
    embed_dim_ = a_->embed_dim() + b_->embed_dim();
    normalized_ = a_->normalized() && b_->normalized();
    for (const Chart& ca : a_->atlas()) {
      for (const Chart& cb : b_->atlas()) {
        Chart c;
        c.name = ca.name + "*" + cb.name;
        const std::size_t ka = a_->embed_dim();
        const std::size_t da = a_->dim();
        c.contains = [ca, cb, ka](Span p) {
          return ca.contains(p.subspan(0, ka)) && cb.contains(p.subspan(ka));
        };
        c.to_coords = [ca, cb, ka](Span p) {
          Vec r = ca.to_coords(p.subspan(0, ka));
          const Vec s = cb.to_coords(p.subspan(ka));
          r.insert(r.end(), s.begin(), s.end());
          return r;
        };
        c.from_coords = [ca, cb, da](Span x) {
          Vec r = ca.from_coords(x.subspan(0, da));
          const Vec s = cb.from_coords(x.subspan(da));
          r.insert(r.end(), s.begin(), s.end());
          return r;
        };
        if (ca.has_tangent_maps() && cb.has_tangent_maps()) {
          c.d_to_coords = [ca, cb, ka](Span p, Span v) {
            Vec r = ca.d_to_coords(p.subspan(0, ka), v.subspan(0, ka));
            const Vec s = cb.d_to_coords(p.subspan(ka), v.subspan(ka));
            r.insert(r.end(), s.begin(), s.end());
            return r;
          };
          c.d_from_coords = [ca, cb, da](Span x, Span w) {
            Vec r = ca.d_from_coords(x.subspan(0, da), w.subspan(0, da));
            const Vec s = cb.d_from_coords(x.subspan(da), w.subspan(da));
            r.insert(r.end(), s.begin(), s.end());
            return r;
          };
        }
        atlas_.push_back(std::move(c));
      }
    }
    if (a_->lie() && b_->lie()) init_lie();
  }

  const ManifoldPtr& first() const { return a_; }
  const ManifoldPtr& second() const { return b_; }

  bool contains(Span p, double tol) const override {
    return a_->contains(pa(p), tol) && b_->contains(pb(p), tol);
  }
  Vec project(Span p) const override { return join(a_->project(pa(p)), b_->project(pb(p))); }
  Vec project_tangent(Span p, Span v) const override {
    return join(a_->project_tangent(pa(p), pa(v)), b_->project_tangent(pb(p), pb(v)));
  }

  bool omega_contains(Span p, Span v) const override {
    return a_->omega_contains(pa(p), pa(v)) && b_->omega_contains(pb(p), pb(v));
  }
  Vec sigma(Span p, Span v) const override {
    return join(a_->sigma(pa(p), pa(v)), b_->sigma(pb(p), pb(v)));
  }
  bool omega_prime_contains(Span p, Span q) const override {
    return a_->omega_prime_contains(pa(p), pa(q)) && b_->omega_prime_contains(pb(p), pb(q));
  }
  Vec theta_inv(Span p, Span q) const override {
    return join(a_->theta_inv(pa(p), pa(q)), b_->theta_inv(pb(p), pb(q)));
  }

  const LieStructure* lie() const override { return has_lie_ ? &lie_ : nullptr; }

  double point_dist(Span p, Span q) const override {
    const double da = a_->point_dist(pa(p), pa(q));
    const double db = b_->point_dist(pb(p), pb(q));
    return std::sqrt(da * da + db * db);
  }

  Vec random_point(SplitMix64& rng) const override {
    return join(a_->random_point(rng), b_->random_point(rng));
  }

 private:
  Span pa(Span p) const { return p.subspan(0, a_->embed_dim()); }
  Span pb(Span p) const { return p.subspan(a_->embed_dim()); }
  static Vec join(Vec x, const Vec& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  }

  void init_lie() {
    has_lie_ = true;
    const LieStructure* la = a_->lie();
    const LieStructure* lb = b_->lie();
    const std::size_t ka = a_->embed_dim();
    const std::size_t da = la->algebra_dim;
    lie_.algebra_dim = la->algebra_dim + lb->algebra_dim;
    lie_.identity = join(la->identity, lb->identity);
    lie_.mul = [la, lb, ka](Span x, Span y) {
      return join(la->mul(x.subspan(0, ka), y.subspan(0, ka)),
                  lb->mul(x.subspan(ka), y.subspan(ka)));
    };
    lie_.inv = [la, lb, ka](Span x) {
      return join(la->inv(x.subspan(0, ka)), lb->inv(x.subspan(ka)));
    };
    lie_.log = [la, lb, ka](Span g) {
      return join(la->log(g.subspan(0, ka)), lb->log(g.subspan(ka)));
    };
    lie_.exp = [la, lb, da](Span u) {
      return join(la->exp(u.subspan(0, da)), lb->exp(u.subspan(da)));
    };
    lie_.algebra_norm = [la, lb, da](Span u) {
      return std::max(la->algebra_norm(u.subspan(0, da)), lb->algebra_norm(u.subspan(da)));
    };
    lie_.translate = [la, lb, ka, da](Span g, Span u) {
      return join(la->translate(g.subspan(0, ka), u.subspan(0, da)),
                  lb->translate(g.subspan(ka), u.subspan(da)));
    };
    lie_.untranslate = [la, lb, ka](Span g, Span v) {
      return join(la->untranslate(g.subspan(0, ka), v.subspan(0, ka)),
                  lb->untranslate(g.subspan(ka), v.subspan(ka)));
    };
    lie_.log_radius_cap = std::min(la->log_radius_cap, lb->log_radius_cap);
  }

  ManifoldPtr a_, b_;
  bool has_lie_ = false;
  LieStructure lie_;
};

std::shared_ptr<EuclideanManifold> make_euclidean(std::size_t n) {
  auto m = std::make_shared<EuclideanManifold>(n);
  m->init_lie();
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------

Vec sigma_apply(const Manifold& n, const TangentVector& v) {
  if (!n.omega_contains(v.base, v.vec))
    throw Error(Err::OutsideOmega, "tangent vector leaves the local-addition domain of " + n.id());
  return n.sigma(v.base, v.vec);
}

TangentVector theta_inverse(const Manifold& n, Span p, Span q) {
  if (!n.omega_prime_contains(p, q))
    throw Error(Err::OutsidePrime, "point pair outside the (pi,Sigma) image of " + n.id());
  return TangentVector{Vec(p.begin(), p.end()), n.theta_inv(p, q)};
}

Report check_normalized(const Manifold& n, Span p, const std::vector<Vec>& dirs, Span steps,
                        double min_order) {
  if (steps.size() < 2) throw Error(Err::ConfigError, "need at least two steps");
  for (std::size_t i = 1; i < steps.size(); ++i)
    if (!(steps[i] < steps[i - 1]))
      throw Error(Err::ConfigError, "steps must be strictly decreasing");

  Report rep;
  rep.check = "manifold.normalization";
  rep.order_required = min_order;
  std::optional<double> worst_order;
  bool all_exact = true;
  double worst_err = 0.0;
  const std::size_t k = n.embed_dim();
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    const Vec& dir = dirs[d];
    Vec scaled(k);
    for (std::size_t i = 0; i < k; ++i) scaled[i] = steps[0] * dir[i];
    if (!n.omega_contains(p, scaled))
      throw Error(Err::OutsideOmega, "largest step leaves the local-addition domain");
    Vec errs(steps.size());
    for (std::size_t s = 0; s < steps.size(); ++s) {
      const double h = steps[s];
      Vec vp(k), vm(k);
      for (std::size_t i = 0; i < k; ++i) {
        vp[i] = h * dir[i];
        vm[i] = -h * dir[i];
      }
      const Vec fp = n.sigma(p, vp);
      const Vec fm = n.sigma(p, vm);
      double e = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const double fd = (fp[i] - fm[i]) / (2.0 * h);
        e += (fd - dir[i]) * (fd - dir[i]);
      }
      errs[s] = std::sqrt(e);
      rep.measured.emplace_back("dir" + std::to_string(d) + "_h=" + std::to_string(h), errs[s]);
      worst_err = std::max(worst_err, errs[s]);
    }
    const OrderFit fit = fit_order(steps, errs);
    if (!fit.exact) {
      all_exact = false;
      if (fit.order && (!worst_order || *fit.order < *worst_order)) worst_order = fit.order;
      if (!fit.order) worst_order = 0.0;  // one informative step only: cannot certify
      rep.measured.emplace_back("dir" + std::to_string(d) + "_order",
                                fit.order ? *fit.order : 0.0);
    }
  }
  rep.exact = all_exact;
  rep.order_estimate = worst_order;
  rep.measured.emplace_back("max_step_error", worst_err);
  rep.value = 0.0;
  rep.bound = 0.0;
  rep.finalize();
  return rep;
}

LocalAddition lie_local_addition(const Manifold& g, double radius) {
  const LieStructure* lie = g.lie();
  if (lie == nullptr)
    throw Error(Err::Unsupported, g.id() + " carries no group structure");
  if (!(radius > 0.0)) throw Error(Err::ConfigError, "radius must be positive");
  if (radius > lie->log_radius_cap)
    throw Error(Err::ChartTooLarge,
                "radius " + std::to_string(radius) + " exceeds the injectivity cap " +
                    std::to_string(lie->log_radius_cap) + " of " + g.id());
  LocalAddition out;
  out.normalized = true;  // the chart is the logarithm, whose derivative at e is the identity
  out.omega_contains = [lie, radius](Span p, Span v) {
    return lie->algebra_norm(lie->untranslate(p, v)) < radius;
  };
  out.sigma = [lie](Span p, Span v) { return lie->mul(p, lie->exp(lie->untranslate(p, v))); };
  out.omega_prime_contains = [lie, radius](Span p, Span q) {
    return lie->algebra_norm(lie->log(lie->mul(lie->inv(p), q))) < radius;
  };
  out.theta_inv = [lie](Span p, Span q) {
    return lie->translate(p, lie->log(lie->mul(lie->inv(p), q)));
  };
  return out;
}

ManifoldPtr tangent_manifold(const ManifoldPtr& n) {
  return std::make_shared<TangentBundleManifold>(n);
}

ManifoldPtr product_manifold(const ManifoldPtr& a, const ManifoldPtr& b) {
  return std::make_shared<ProductManifoldImpl>(a, b);
}

ProductParts product_parts(const Manifold& n) {
  const auto* p = dynamic_cast<const ProductManifoldImpl*>(&n);
  if (!p) throw Error(Err::NotProduct, n.id() + " is not a product instance");
  return ProductParts{p->first(), p->second()};
}

ManifoldPtr tangent_base(const Manifold& n) {
  const auto* t = dynamic_cast<const TangentBundleManifold*>(&n);
  if (!t) throw Error(Err::Unsupported, n.id() + " is not a tangent-manifold instance");
  return t->base();
}

ManifoldPtr make_manifold(const std::string& id) {
  auto parse_dim = [&id](const std::string& prefix) -> std::size_t {
    const std::string tail = id.substr(prefix.size());
    try {
      const long n = std::stol(tail);
      if (n < 1 || n > 16) throw std::out_of_range("dim");
      return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
      throw Error(Err::ConfigError, "bad dimension in manifold id '" + id + "'");
    }
  };
  if (id.rfind("euclidean:", 0) == 0) return make_euclidean(parse_dim("euclidean:"));
  if (id == "sphere2") return std::make_shared<Sphere2Manifold>();
  if (id == "so3") return std::make_shared<So3Manifold>();
  if (id.rfind("torus:", 0) == 0) return std::make_shared<TorusManifold>(parse_dim("torus:"));
  throw Error(Err::ConfigError, "unknown manifold id '" + id +
                                    "' (expected euclidean:n, sphere2, so3 or torus:n)");
}

}  // namespace mfmaps
