#pragma once

#include <memory>
#include <string>
#include <vector>

#include "grid.hpp"
#include "manifold.hpp"
#include "numerics.hpp"
#include "report.hpp"

namespace mfmaps {

/// Grid-indexed family of target-manifold points: the computational stand-in
/// for an element of the mapping space.
struct SampledMap {
  CornerGrid grid;
  ManifoldPtr target;
  Vec points;  // node_count x embed_dim

  SampledMap(CornerGrid g, ManifoldPtr n);

  Span point(std::int64_t node) const {
    return Span(points.data() + node * static_cast<std::int64_t>(target->embed_dim()),
                target->embed_dim());
  }
  double* point_mut(std::int64_t node) {
    return points.data() + node * static_cast<std::int64_t>(target->embed_dim());
  }

  /// Membership at every node; throws with the offending node index.
  void validate(double point_tol) const;

  double sup_dist_to(const SampledMap& other) const;
};

/// Section over a sampled map: one tangent vector per node, based at the
/// map's point there. The base map is stored alongside, so the bundle
/// condition (projection of the section equals the map) holds by layout.
struct SampledSection {
  SampledMap base;
  Vec vectors;  // node_count x embed_dim

  explicit SampledSection(SampledMap b);

  Span vector(std::int64_t node) const {
    return Span(vectors.data() + node * static_cast<std::int64_t>(base.target->embed_dim()),
                base.target->embed_dim());
  }
  double* vector_mut(std::int64_t node) {
    return vectors.data() + node * static_cast<std::int64_t>(base.target->embed_dim());
  }

  void validate(double point_tol) const;  // tangency at every node
  double sup_dist_to(const SampledSection& other) const;
  double sup_norm() const;
};

/// a*s + b*t over the same base map (the fiberwise linear structure).
SampledSection section_combine(double a, const SampledSection& s, double b,
                               const SampledSection& t);

SampledSection zero_section(const SampledMap& gamma);

/// Chart centered at a sampled map. Domain and codomain predicates are the
/// node-wise Omega / Omega' conditions.
struct ChartAtSampledMap {
  SampledMap center;

  bool section_in_domain(const SampledSection& s) const;
  bool map_in_codomain(const SampledMap& m) const;
};

/// Psi_gamma: node-wise Sigma applied to the section.
SampledMap chart_apply(const ChartAtSampledMap& chart, const SampledSection& s);

/// Psi_gamma^{-1}: node-wise theta^{-1}(gamma(x), xi(x)).
SampledSection chart_inverse(const ChartAtSampledMap& chart, const SampledMap& xi);

/// Transition between the charts at gamma and xi:
///   sigma  ->  theta^{-1} o (xi, Sigma o sigma).
SampledSection transition(const SampledMap& gamma, const SampledMap& xi,
                          const SampledSection& s);

/// Smooth map between target manifolds, with a hand-coded tangent map in
/// ambient coordinates. validate() cross-checks the tangent map against
/// central differences along Sigma-curves (legitimate because the local
/// additions are normalized).
struct ManifoldMap {
  std::string name;
  ManifoldPtr domain, codomain;
  std::function<Vec(Span p)> apply;
  std::function<Vec(Span p, Span v)> tangent;

  void validate(SplitMix64& rng, int probes = 20, double tol = 1e-5) const;
};

ManifoldMap manifold_identity(const ManifoldPtr& n);
ManifoldMap compose(const ManifoldMap& outer, const ManifoldMap& inner);
ManifoldMap sphere_antipodal();
/// Rotation of the sphere by a unit quaternion.
ManifoldMap sphere_rotation(Vec unit_quat);
/// Height function sphere2 -> euclidean:1.
ManifoldMap sphere_height();
ManifoldMap so3_square();
/// Orbit map so3 -> sphere2, q |-> q.(0,0,1).
ManifoldMap so3_act_on_north();
/// (cos, sin) embedding torus:n -> euclidean:2n.
ManifoldMap torus_embedding(std::size_t n);
/// Wrap a SmoothFn R^a -> R^b as a map between Euclidean instances.
ManifoldMap euclidean_map(const SmoothFn& f);

/// F(M,f): node-wise post-composition, membership revalidated.
SampledMap superpose(const ManifoldMap& f, const SampledMap& gamma);

/// Gamma(f): sigma -> Tf o sigma over f o gamma.
SampledSection section_pushforward(const ManifoldMap& f, const SampledSection& s);

/// gamma o Theta and sigma o Theta for a node-aligned reparameterization.
SampledMap precompose(const NodeMap& theta, const SampledMap& gamma);
SampledSection precompose_section(const NodeMap& theta, const SampledSection& s);

/// Product splitting of maps and sections (target must be a product instance).
std::pair<SampledMap, SampledMap> product_split(const SampledMap& gamma);
SampledMap product_join(const SampledMap& g1, const SampledMap& g2);
std::pair<SampledSection, SampledSection> product_split_section(const SampledSection& s);
SampledSection product_join_section(const SampledSection& s1, const SampledSection& s2);

/// Point evaluations; section evaluation is linear in the section.
Vec evaluate(const SampledMap& gamma, std::int64_t node);
TangentVector section_evaluate(const SampledSection& s, std::int64_t node);

/// Constant map p |-> q.
SampledMap constant_embed(const ManifoldPtr& n, Span q, const CornerGrid& grid);

// ---------------------------------------------------------------------------
// Local frames (finite chart covers of the section space)

/// Cover member: an index sub-box of the map grid (the window, an identity
/// chart of the box domain) together with the index of a target chart whose
/// domain contains the map's image over the window.
struct FrameWindow {
  Index offset;
  Index shape;
  std::size_t chart;
};

struct FrameLayout {
  SampledMap center;  // the map gamma the frame is taken at
  std::vector<FrameWindow> windows;
};

/// Validates the cover: every grid node in at least one window, each chart
/// with tangent maps, gamma inside each chart domain on its window.
FrameLayout frame_layout(const SampledMap& gamma, const std::vector<FrameWindow>& windows);

/// The per-window local representatives  d(phi_i) o sigma  of a section.
struct LocalFrame {
  FrameLayout layout;
  std::vector<SampledFunction> components;
};

LocalFrame frame_project(const FrameLayout& layout, const SampledSection& s);

/// Inverse of frame_project. Rejects frames whose windows disagree beyond
/// frame_tol under the chart-change compatibility condition.
SampledSection frame_reconstruct(const LocalFrame& frame, double frame_tol = 1e-10);

// ---------------------------------------------------------------------------
// Tangent identification and tangent functor

/// Node-wise central differences of s |-> Sigma(s*sigma) against sigma:
/// certifies that sections faithfully represent tangent vectors at gamma.
Report tangent_identify(const SampledMap& gamma, const SampledSection& s, const FDConfig& cfg);

/// Node-wise central differences of s |-> f(Sigma(s*sigma)) against
/// Tf o sigma: the tangent functor in ambient coordinates.
Report tangent_functor_check(const ManifoldMap& f, const SampledMap& gamma,
                             const SampledSection& s, const FDConfig& cfg);

/// Section -> map into the tangent manifold (left-trivialized fiber coords),
/// and back; the computable realization of the bundle identification.
SampledMap section_to_tangent_map(const SampledSection& s, const ManifoldPtr& tn);
SampledSection tangent_map_to_section(const SampledMap& tau, const ManifoldPtr& base_manifold);

/// Tf as a map between tangent-manifold instances.
ManifoldMap tangent_prolongation(const ManifoldMap& f, const ManifoldPtr& t_domain,
                                 const ManifoldPtr& t_codomain);

// ---------------------------------------------------------------------------
// Loop group structure on F(M,G)

SampledMap loop_mul(const SampledMap& g1, const SampledMap& g2);
SampledMap loop_inv(const SampledMap& g);
/// Node-wise log chart at the constant identity loop; OutsideChart when some
/// node leaves the injectivity cap.
SampledFunction identity_chart(const SampledMap& g);
SampledMap identity_chart_inverse(const SampledFunction& u, const ManifoldPtr& g);

}  // namespace mfmaps
