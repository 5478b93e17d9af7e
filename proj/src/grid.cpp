#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mfmaps {

CornerGrid::CornerGrid(Vec lo, Vec hi, Index shape) {
  const std::size_t m = lo.size();
  if (m == 0 || hi.size() != m || shape.size() != m)
    throw Error(Err::GridMismatch, "lo/hi/shape must share a positive dimension");
  for (std::size_t a = 0; a < m; ++a) {
    if (!(lo[a] >= 0.0))
      throw Error(Err::GridMismatch, "grid box must lie in [0,inf)^m, lo[" +
                                         std::to_string(a) + "] = " + std::to_string(lo[a]));
    if (!(hi[a] > lo[a]))
      throw Error(Err::GridMismatch, "hi must exceed lo on axis " + std::to_string(a));
    if (shape[a] < 2)
      throw Error(Err::GridMismatch, "need at least 2 nodes per axis, axis " + std::to_string(a));
  }
  origin_ = lo;
  shape_ = std::move(shape);
  first_.assign(m, 0);
  spacing_.resize(m);
  for (std::size_t a = 0; a < m; ++a)
    spacing_[a] = (hi[a] - lo[a]) / static_cast<double>(shape_[a] - 1);
  count_ = 1;
  for (std::size_t a = 0; a < m; ++a) count_ *= shape_[a];
}

Vec CornerGrid::lo() const {
  Vec r(dim());
  for (std::size_t a = 0; a < dim(); ++a) r[a] = coord(a, 0);
  return r;
}

Vec CornerGrid::hi() const {
  Vec r(dim());
  for (std::size_t a = 0; a < dim(); ++a) r[a] = coord(a, shape_[a] - 1);
  return r;
}

double CornerGrid::diameter() const {
  double s = 0.0;
  for (std::size_t a = 0; a < dim(); ++a) {
    const double d = coord(a, shape_[a] - 1) - coord(a, 0);
    s += d * d;
  }
  return std::sqrt(s);
}

Index CornerGrid::unflatten(std::int64_t flat) const {
  Index idx(dim());
  for (std::size_t a = dim(); a-- > 0;) {
    idx[a] = flat % shape_[a];
    flat /= shape_[a];
  }
  return idx;
}

std::int64_t CornerGrid::flatten(const Index& idx) const {
  std::int64_t flat = 0;
  for (std::size_t a = 0; a < dim(); ++a) {
    if (idx[a] < 0 || idx[a] >= shape_[a])
      throw Error(Err::BadIndex, "node index out of range on axis " + std::to_string(a));
    flat = flat * shape_[a] + idx[a];
  }
  return flat;
}

void CornerGrid::node(std::int64_t flat, double* out) const {
  for (std::size_t a = dim(); a-- > 0;) {
    out[a] = coord(a, flat % shape_[a]);
    flat /= shape_[a];
  }
}

Vec CornerGrid::node(std::int64_t flat) const {
  Vec r(dim());
  node(flat, r.data());
  return r;
}

Vec CornerGrid::all_coords() const {
  Vec r(static_cast<std::size_t>(count_) * dim());
  for (std::int64_t i = 0; i < count_; ++i) node(i, r.data() + i * static_cast<std::int64_t>(dim()));
  return r;
}

CornerGrid CornerGrid::sub_box(const Index& offset, const Index& sub_shape) const {
  if (offset.size() != dim() || sub_shape.size() != dim())
    throw Error(Err::GridMismatch, "sub-box rank mismatch");
  CornerGrid g;
  g.origin_ = origin_;
  g.spacing_ = spacing_;
  g.first_.resize(dim());
  g.shape_ = sub_shape;
  for (std::size_t a = 0; a < dim(); ++a) {
    if (sub_shape[a] < 2) throw Error(Err::GridMismatch, "sub-box needs 2 nodes per axis");
    if (offset[a] < 0 || offset[a] + sub_shape[a] > shape_[a])
      throw Error(Err::GridMismatch, "sub-box exceeds parent on axis " + std::to_string(a));
    g.first_[a] = first_[a] + offset[a];
  }
  g.count_ = 1;
  for (std::size_t a = 0; a < dim(); ++a) g.count_ *= sub_shape[a];
  return g;
}

CornerGrid CornerGrid::super_box(const Index& offset, const Index& super_shape) const {
  if (offset.size() != dim() || super_shape.size() != dim())
    throw Error(Err::GridMismatch, "super-box rank mismatch");
  CornerGrid g;
  g.origin_ = origin_;
  g.spacing_ = spacing_;
  g.first_.resize(dim());
  g.shape_ = super_shape;
  for (std::size_t a = 0; a < dim(); ++a) {
    if (offset[a] < 0 || offset[a] + shape_[a] > super_shape[a])
      throw Error(Err::GridMismatch, "super-box does not contain this grid on axis " +
                                         std::to_string(a));
    g.first_[a] = first_[a] - offset[a];
    if (g.coord(a, 0) < 0.0)
      throw Error(Err::GridMismatch, "enlarged box leaves [0,inf) on axis " + std::to_string(a));
  }
  g.count_ = 1;
  for (std::size_t a = 0; a < dim(); ++a) g.count_ *= super_shape[a];
  return g;
}

Index CornerGrid::offset_to(const CornerGrid& other, double tol) const {
  if (other.dim() != dim()) throw Error(Err::GridMismatch, "rank mismatch");
  Index offset(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    const double rel = std::fabs(other.spacing_[a] - spacing_[a]) /
                       std::max(spacing_[a], other.spacing_[a]);
    if (rel > 1e-12)
      throw Error(Err::GridMismatch, "spacing differs on axis " + std::to_string(a));
    const double steps = (other.coord(a, 0) - coord(a, 0)) / spacing_[a];
    const double rounded = std::round(steps);
    if (std::fabs(steps - rounded) * spacing_[a] > tol)
      throw Error(Err::GridMismatch, "nodes off the lattice on axis " + std::to_string(a));
    offset[a] = static_cast<std::int64_t>(rounded);
  }
  return offset;
}

Index CornerGrid::locate_sub(const CornerGrid& other, double tol) const {
  Index offset = offset_to(other, tol);
  for (std::size_t a = 0; a < dim(); ++a) {
    if (offset[a] < 0 || offset[a] + other.shape_[a] > shape_[a])
      throw Error(Err::GridMismatch, "sub-box outside parent on axis " + std::to_string(a));
  }
  return offset;
}

bool CornerGrid::same_nodes(const CornerGrid& other, double tol) const {
  if (other.dim() != dim() || other.shape_ != shape_) return false;
  for (std::size_t a = 0; a < dim(); ++a) {
    if (std::fabs(other.coord(a, 0) - coord(a, 0)) > tol) return false;
    if (std::fabs(other.coord(a, shape_[a] - 1) - coord(a, shape_[a] - 1)) > tol) return false;
  }
  return true;
}

std::string CornerGrid::describe() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t a = 0; a < dim(); ++a)
    os << (a ? " x " : "") << coord(a, 0) << ".." << coord(a, shape_[a] - 1) << "/" << shape_[a];
  os << "]";
  return os.str();
}

SampledFunction::SampledFunction(CornerGrid g, std::size_t n)
    : grid(std::move(g)), codim(n), values(static_cast<std::size_t>(grid.node_count()) * n, 0.0) {
  if (n == 0) throw Error(Err::GridMismatch, "codim must be positive");
}

SampledFunction::SampledFunction(CornerGrid g, std::size_t n, Vec vals)
    : grid(std::move(g)), codim(n), values(std::move(vals)) {
  if (n == 0) throw Error(Err::GridMismatch, "codim must be positive");
  if (values.size() != static_cast<std::size_t>(grid.node_count()) * codim)
    throw Error(Err::GridMismatch, "values length != node count x codim");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i]))
      throw Error(Err::DomainViolation, "non-finite sample",
                  static_cast<std::int64_t>(i / codim));
}

double SampledFunction::sup_norm() const {
  double s = 0.0;
  for (std::int64_t i = 0; i < grid.node_count(); ++i) s = std::max(s, norm(value(i)));
  return s;
}

NodeMap::NodeMap(CornerGrid domain, CornerGrid codomain, std::vector<AxisRule> rules)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), rules_(std::move(rules)) {
  if (rules_.size() != domain_.dim() || codomain_.dim() != domain_.dim())
    throw Error(Err::NotNodeAligned, "axis rule count must match grid rank");
  std::vector<bool> hit(codomain_.dim(), false);
  for (std::size_t a = 0; a < rules_.size(); ++a) {
    const AxisRule& r = rules_[a];
    if (r.target_axis >= codomain_.dim() || hit[r.target_axis])
      throw Error(Err::NotNodeAligned, "axis rules must form a permutation");
    hit[r.target_axis] = true;
    const std::int64_t n = domain_.shape()[a];
    const std::int64_t lo = r.offset;
    const std::int64_t hi = r.offset + n - 1;
    if (lo < 0 || hi >= codomain_.shape()[r.target_axis])
      throw Error(Err::NotNodeAligned,
                  "mapped indices leave the codomain lattice on axis " + std::to_string(a));
  }
}

std::int64_t NodeMap::map_node(std::int64_t domain_flat) const {
  const Index src = domain_.unflatten(domain_flat);
  Index dst(codomain_.dim());
  for (std::size_t a = 0; a < rules_.size(); ++a) {
    const AxisRule& r = rules_[a];
    const std::int64_t i = r.flip ? (domain_.shape()[a] - 1 - src[a]) : src[a];
    dst[r.target_axis] = r.offset + i;
  }
  return codomain_.flatten(dst);
}

NodeMap NodeMap::identity(const CornerGrid& g) {
  std::vector<AxisRule> rules(g.dim());
  for (std::size_t a = 0; a < g.dim(); ++a) rules[a] = {a, false, 0};
  return NodeMap(g, g, std::move(rules));
}

NodeMap NodeMap::reversal(const CornerGrid& g, const std::vector<std::size_t>& axes) {
  std::vector<AxisRule> rules(g.dim());
  for (std::size_t a = 0; a < g.dim(); ++a) rules[a] = {a, false, 0};
  for (std::size_t a : axes) {
    if (a >= g.dim()) throw Error(Err::BadIndex, "reversal axis out of range");
    rules[a].flip = true;
  }
  return NodeMap(g, g, std::move(rules));
}

NodeMap NodeMap::axis_swap(const CornerGrid& g, std::size_t a, std::size_t b) {
  if (a >= g.dim() || b >= g.dim()) throw Error(Err::BadIndex, "swap axis out of range");
  if (g.shape()[a] != g.shape()[b])
    throw Error(Err::NotNodeAligned, "axis swap needs equal node counts");
  std::vector<AxisRule> rules(g.dim());
  for (std::size_t c = 0; c < g.dim(); ++c) rules[c] = {c, false, 0};
  rules[a].target_axis = b;
  rules[b].target_axis = a;
  return NodeMap(g, g, std::move(rules));
}

}  // namespace mfmaps
