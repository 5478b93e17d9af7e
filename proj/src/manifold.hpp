#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "vecs.hpp"

namespace mfmaps {

/// One coordinate patch of a target manifold: a bijection from its domain
/// onto an open box in R^dim. The tangent pushforwards are optional; they are
/// required only by the frame operations (sphere and Euclidean charts carry
/// them).
struct Chart {
  std::string name;
  std::function<bool(Span point)> contains;
  std::function<Vec(Span point)> to_coords;
  std::function<Vec(Span coords)> from_coords;
  std::function<Vec(Span point, Span ambient_vec)> d_to_coords;   // may be empty
  std::function<Vec(Span coords, Span coord_vec)> d_from_coords;  // may be empty
  Vec box_lo, box_hi;  // declared image box; empty means unbounded

  bool has_tangent_maps() const { return bool(d_to_coords) && bool(d_from_coords); }
};

/// Group operations in ambient coordinates, present on Lie-group instances.
/// log/exp realize the chart at the identity with log(e) = 0; translate is
/// the left-translation isomorphism between algebra coordinates and the
/// ambient tangent space at g.
struct LieStructure {
  std::size_t algebra_dim = 0;
  Vec identity;
  std::function<Vec(Span, Span)> mul;
  std::function<Vec(Span)> inv;
  std::function<Vec(Span g)> log;                    // pre: within log_radius_cap
  std::function<Vec(Span u)> exp;
  std::function<double(Span u)> algebra_norm;        // norm fixing the chart ball
  std::function<Vec(Span g, Span u)> translate;      // algebra coords -> tangent at g
  std::function<Vec(Span g, Span v)> untranslate;    // tangent at g -> algebra coords
  double log_radius_cap = 0.0;                       // injectivity cap of the log chart
};

/// Σ/θ pair with explicit domain predicates; either an instance's built-in
/// local addition or the output of lie_local_addition.
struct LocalAddition {
  std::function<bool(Span p, Span v)> omega_contains;
  std::function<Vec(Span p, Span v)> sigma;
  std::function<bool(Span p, Span q)> omega_prime_contains;
  std::function<Vec(Span p, Span q)> theta_inv;
  bool normalized = false;
};

/// Finite-dimensional target manifold embedded in R^embed_dim, with a finite
/// chart atlas and a normalized local addition. Instances are immutable after
/// construction and safe to share across threads.
class Manifold {
 public:
  virtual ~Manifold() = default;

  const std::string& id() const { return id_; }
  std::size_t dim() const { return dim_; }
  std::size_t embed_dim() const { return embed_dim_; }
  bool normalized() const { return normalized_; }
  const std::vector<Chart>& atlas() const { return atlas_; }

  virtual bool contains(Span p, double tol) const = 0;
  virtual Vec project(Span p) const = 0;
  /// Orthogonal-style projection of an ambient vector onto T_p.
  virtual Vec project_tangent(Span p, Span v) const = 0;
  bool tangent_ok(Span p, Span v, double tol) const;

  /// Distance between two points in their ambient representation. The torus
  /// overrides this with the wrapped angle distance so that points straddling
  /// the 0/2pi seam compare as close.
  virtual double point_dist(Span p, Span q) const { return dist(p, q); }

  virtual bool omega_contains(Span p, Span v) const = 0;
  virtual Vec sigma(Span p, Span v) const = 0;
  virtual bool omega_prime_contains(Span p, Span q) const = 0;
  virtual Vec theta_inv(Span p, Span q) const = 0;

  virtual const LieStructure* lie() const { return nullptr; }

  virtual Vec random_point(SplitMix64& rng) const = 0;
  Vec random_tangent(Span p, double scale, SplitMix64& rng) const;

 protected:
  std::string id_;
  std::size_t dim_ = 0, embed_dim_ = 0;
  bool normalized_ = false;
  std::vector<Chart> atlas_;
};

using ManifoldPtr = std::shared_ptr<const Manifold>;

struct TangentVector {
  Vec base;
  Vec vec;
};

/// Σ applied to a tangent vector; OutsideOmega if it leaves the domain.
Vec sigma_apply(const Manifold& n, const TangentVector& v);

/// θ^-1(p,q): the tangent vector at p reaching q; OutsidePrime off Ω'.
TangentVector theta_inverse(const Manifold& n, Span p, Span q);

/// Central differences of Σ restricted to T_p against the identity:
/// slope >= min_order certifies the normalization T_0(Σ|_TpN) = id.
Report check_normalized(const Manifold& n, Span p, const std::vector<Vec>& dirs, Span steps,
                        double min_order = 1.8);

/// Local addition built from the group operations and the log chart:
///   Σ_φ(v) = π(v) · φ^-1(π(v)^-1 . v)   on Ω_φ = ∪_g g.V,
/// with V the radius ball of the chart. ChartTooLarge when radius exceeds the
/// instance cap, Unsupported when the manifold carries no group structure.
LocalAddition lie_local_addition(const Manifold& g, double radius);

/// Tangent manifold TN embedded in R^(embed+dim): pairs of a base point and
/// left-trivialized (Lie) or plain (Euclidean) fiber coordinates, with the
/// componentwise local addition. Unsupported for the sphere.
ManifoldPtr tangent_manifold(const ManifoldPtr& n);

ManifoldPtr product_manifold(const ManifoldPtr& a, const ManifoldPtr& b);

/// Parse "euclidean:n", "sphere2", "so3", "torus:n".
ManifoldPtr make_manifold(const std::string& id);

/// Accessors for product instances (NotProduct otherwise).
struct ProductParts {
  ManifoldPtr first, second;
};
ProductParts product_parts(const Manifold& n);

/// For tangent-bundle instances: the base manifold (Unsupported otherwise).
ManifoldPtr tangent_base(const Manifold& n);

}  // namespace mfmaps
