#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "vecs.hpp"

namespace mfmaps {

using Index = std::vector<std::int64_t>;

/// Uniform node lattice on an axis-aligned box inside [0,inf)^m.
///
/// Coordinates are defined through a shared lattice: node i on an axis sits at
/// origin + (first + i) * spacing. A grid produced by sub_box() re-uses the
/// parent's origin and spacing, so shared nodes have bit-identical
/// coordinates. That keeps "restriction never increases the seminorm" and
/// "extension by zero preserves the seminorm" exact statements about floating
/// point maxima instead of statements up to rounding.
class CornerGrid {
 public:
  CornerGrid(Vec lo, Vec hi, Index shape);

  std::size_t dim() const { return shape_.size(); }
  std::int64_t node_count() const { return count_; }
  const Index& shape() const { return shape_; }
  const Vec& spacing() const { return spacing_; }

  double coord(std::size_t axis, std::int64_t i) const {
    return origin_[axis] + static_cast<double>(first_[axis] + i) * spacing_[axis];
  }

  Vec lo() const;
  Vec hi() const;
  double diameter() const;  // Euclidean diagonal of the box

  Index unflatten(std::int64_t flat) const;
  std::int64_t flatten(const Index& idx) const;
  void node(std::int64_t flat, double* out) const;
  Vec node(std::int64_t flat) const;

  /// All node coordinates, row-major, node_count() x dim().
  Vec all_coords() const;

  /// Index-aligned sub-box sharing this lattice.
  CornerGrid sub_box(const Index& offset, const Index& sub_shape) const;

  /// Grid of `super_shape` nodes on this lattice whose node at `offset`
  /// coincides with this grid's node 0. Throws GridMismatch when the enlarged
  /// box would leave [0,inf)^m.
  CornerGrid super_box(const Index& offset, const Index& super_shape) const;

  /// Lattice offset of other's node 0 relative to this grid's node 0 (may be
  /// negative); throws GridMismatch if spacings differ or nodes sit off this
  /// lattice. No containment is implied.
  Index offset_to(const CornerGrid& other, double tol = 1e-9) const;

  /// Locate `other` as an index-aligned sub-box of this grid; throws
  /// GridMismatch if spacings differ or its nodes are off this lattice.
  Index locate_sub(const CornerGrid& other, double tol = 1e-9) const;

  /// True when both grids sample the same lattice points of the same box.
  bool same_nodes(const CornerGrid& other, double tol = 1e-12) const;

  std::string describe() const;

 private:
  CornerGrid() = default;
  Vec origin_, spacing_;
  Index first_, shape_;
  std::int64_t count_ = 0;
};

/// Grid-indexed family of n-vectors; the computational stand-in for a
/// function U -> R^n known through its node samples.
struct SampledFunction {
  CornerGrid grid;
  std::size_t codim = 1;
  Vec values;  // node_count x codim, row-major in the node index

  SampledFunction(CornerGrid g, std::size_t n);
  SampledFunction(CornerGrid g, std::size_t n, Vec vals);

  Span value(std::int64_t node) const {
    return Span(values.data() + node * static_cast<std::int64_t>(codim), codim);
  }
  double* value_mut(std::int64_t node) {
    return values.data() + node * static_cast<std::int64_t>(codim);
  }

  double sup_norm() const;
};

/// Node-aligned reparameterization W -> V: an axis permutation with optional
/// flips and index offsets, the lattice realization of an affine
/// diffeomorphism between boxes. Maps W-node index vectors to V-node indices.
class NodeMap {
 public:
  struct AxisRule {
    std::size_t target_axis = 0;
    bool flip = false;
    std::int64_t offset = 0;  // in V-lattice steps
  };

  NodeMap(CornerGrid domain, CornerGrid codomain, std::vector<AxisRule> rules);

  static NodeMap identity(const CornerGrid& g);
  /// Reversal of the listed axes of g onto itself.
  static NodeMap reversal(const CornerGrid& g, const std::vector<std::size_t>& axes);
  /// Swap of two axes of g onto itself (shapes must agree).
  static NodeMap axis_swap(const CornerGrid& g, std::size_t a, std::size_t b);

  const CornerGrid& domain() const { return domain_; }
  const CornerGrid& codomain() const { return codomain_; }

  std::int64_t map_node(std::int64_t domain_flat) const;

 private:
  CornerGrid domain_, codomain_;
  std::vector<AxisRule> rules_;
};

}  // namespace mfmaps
