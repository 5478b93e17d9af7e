#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace mfmaps {

using Vec = std::vector<double>;
using Span = std::span<const double>;

inline double dot(Span a, Span b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double sq_norm(Span a) { return dot(a, a); }

inline double norm(Span a) { return std::sqrt(sq_norm(a)); }

inline double sq_dist(Span a, Span b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double dist(Span a, Span b) { return std::sqrt(sq_dist(a, b)); }

inline double sup_dist(Span a, Span b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::fabs(a[i] - b[i]));
  return s;
}

inline double sup_norm(Span a) {
  double s = 0.0;
  for (double x : a) s = std::max(s, std::fabs(x));
  return s;
}

inline Vec add(Span a, Span b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(Span a, Span b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scale(double c, Span a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

// r = a + c*b
inline Vec axpy(Span a, double c, Span b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + c * b[i];
  return r;
}

inline bool all_finite(Span a) {
  for (double x : a)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace mfmaps
