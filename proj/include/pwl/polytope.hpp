#pragma once

#include <vector>

#include "pwl/linalg.hpp"
#include "pwl/rational.hpp"

namespace pwl {

/// Half-space normal . x <= offset.
struct HalfSpace {
  QVector normal;
  Rational offset;

  bool contains(const QVector& x) const { return dot(normal, x) <= offset; }
  bool strictly_contains(const QVector& x) const { return dot(normal, x) < offset; }
  bool operator==(const HalfSpace&) const = default;
};

/// Scales so the first nonzero normal entry has absolute value 1 (positive
/// scaling only, so the half-space is unchanged).
HalfSpace normalized(const HalfSpace& h);

/// Intersection of half-spaces in R^dim.
class HPolytope {
 public:
  HPolytope() = default;
  explicit HPolytope(std::size_t dim) : dim_(dim) {}
  HPolytope(std::size_t dim, std::vector<HalfSpace> constraints);

  /// Axis-aligned box lo <= x <= hi.
  static HPolytope box(const QVector& lo, const QVector& hi);

  std::size_t dim() const { return dim_; }
  const std::vector<HalfSpace>& constraints() const { return constraints_; }
  std::size_t size() const { return constraints_.size(); }

  void add(HalfSpace h);
  HPolytope with(HalfSpace h) const;
  HPolytope intersect(const HPolytope& other) const;

  bool contains(const QVector& x) const;
  bool interior_contains(const QVector& x) const;

  /// Normalizes every constraint, drops duplicates and trivially true rows
  /// (zero normal, nonnegative offset) and keeps the tightest offset per
  /// direction. Order becomes lexicographic on (normal, offset).
  HPolytope canonical() const;

 private:
  std::size_t dim_ = 0;
  std::vector<HalfSpace> constraints_;
};

class UnboundedError : public Error {
 public:
  UnboundedError() : Error("unbounded polytope") {}
};

/// Exact vertices by intersecting every dim-subset of constraints and keeping
/// the feasible points. Cost is C(#constraints, dim) small solves, which is
/// fine for dim <= 4 and a few dozen constraints. Empty polytopes yield an
/// empty list; unbounded ones throw UnboundedError. Output is deduplicated
/// and sorted lexicographically.
std::vector<QVector> enumerate_vertices(const HPolytope& p);

/// Throws UnboundedError when some coordinate is unbounded on a nonempty p.
void require_bounded(const HPolytope& p);

/// Constraints of p that define facets, i.e. are tight on an affinely
/// (dim-1)-dimensional subset of the given vertex set.
HPolytope facet_description(const HPolytope& p, const std::vector<QVector>& vertices);

/// Exact volume. Lower-dimensional polytopes have volume 0.
Rational polytope_volume(const HPolytope& p);
Rational polytope_volume(const HPolytope& p, const std::vector<QVector>& vertices);

/// Simplices (as vertex lists) of a pulling triangulation from the smallest
/// vertex; every simplex has dim+1 vertices.
std::vector<std::vector<QVector>> triangulate(const HPolytope& p, const std::vector<QVector>& vertices);

/// Image of p under x -> A x + b for invertible A.
HPolytope transform(const HPolytope& p, const AffineMap& phi);

}  // namespace pwl
