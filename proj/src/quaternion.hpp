#pragma once

#include <cmath>

#include "vecs.hpp"

namespace mfmaps {

// Unit quaternions as (w, x, y, z) in R^4; the ambient model of the rotation
// group instance.
struct Quat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  static Quat from(Span v) { return Quat{v[0], v[1], v[2], v[3]}; }
  Vec to_vec() const { return Vec{w, x, y, z}; }
  void write(double* out) const {
    out[0] = w;
    out[1] = x;
    out[2] = y;
    out[3] = z;
  }
};

inline Quat quat_mul(const Quat& a, const Quat& b) {
  return Quat{a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
              a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
              a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
              a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quat quat_conj(const Quat& a) { return Quat{a.w, -a.x, -a.y, -a.z}; }

inline double quat_norm(const Quat& a) {
  return std::sqrt(a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z);
}

inline Quat quat_normalize(const Quat& a) {
  const double n = quat_norm(a);
  return Quat{a.w / n, a.x / n, a.y / n, a.z / n};
}

/// exp of a pure quaternion (0, u); |u| is the quaternion angle.
inline Quat quat_exp(Span u) {
  const double t = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  if (t == 0.0) return Quat{1.0, 0.0, 0.0, 0.0};
  const double s = std::sin(t) / t;
  return Quat{std::cos(t), s * u[0], s * u[1], s * u[2]};
}

/// log of a unit quaternion, returned as the vector part coordinates;
/// the angle atan2(|im|, re) lies in [0, pi].
inline Vec quat_log(const Quat& q) {
  const double im = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  if (im == 0.0) return Vec{0.0, 0.0, 0.0};
  const double t = std::atan2(im, q.w);
  const double s = t / im;
  return Vec{s * q.x, s * q.y, s * q.z};
}

/// Quaternion angle to the identity.
inline double quat_angle(const Quat& q) {
  return std::atan2(std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z), q.w);
}

/// Rotate a 3-vector by the unit quaternion sandwich q (0,p) q^-1.
inline Vec quat_rotate(const Quat& q, Span p) {
  const Quat pp{0.0, p[0], p[1], p[2]};
  const Quat r = quat_mul(quat_mul(q, pp), quat_conj(q));
  return Vec{r.x, r.y, r.z};
}

}  // namespace mfmaps
