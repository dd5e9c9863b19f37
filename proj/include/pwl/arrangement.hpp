#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwl/linalg.hpp"
#include "pwl/polytope.hpp"
#include "pwl/rational.hpp"

namespace pwl {

/// Affine hyperplane {x : normal . x + offset = 0}.
struct Hyperplane {
  QVector normal;
  Rational offset;
  std::string label;

  Rational evaluate(const QVector& x) const { return dot(normal, x) + offset; }
  /// +1, -1 or 0 (on the hyperplane).
  int side(const QVector& x) const { return sign(evaluate(x)); }
  /// Closed-form half-space for the open side `s` (s = +1 or -1).
  HalfSpace half_space(int s) const;
  /// Same point set (ignores labels, allows any nonzero scaling).
  bool same_locus(const Hyperplane& other) const;
};

/// Representative of the hyperplane up to nonzero scaling: first nonzero
/// normal entry equal to 1.
Hyperplane canonical_locus(const Hyperplane& h);

struct ClipBox {
  QVector lo;
  QVector hi;

  HPolytope polytope() const { return HPolytope::box(lo, hi); }
  bool permutation_stable() const;
  QVector center() const;
  Rational volume() const;
};

class Arrangement {
 public:
  Arrangement() = default;
  /// Validates nonzero normals, dimensions and label uniqueness.
  Arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes, std::optional<ClipBox> clip_box = std::nullopt);

  std::size_t dim() const { return dim_; }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
  std::size_t size() const { return hyperplanes_.size(); }
  const std::optional<ClipBox>& clip_box() const { return clip_box_; }

  Arrangement with_clip_box(std::optional<ClipBox> box) const;
  Arrangement without(std::size_t index) const;
  Arrangement plus(const Arrangement& other) const;

  std::vector<int> sign_vector(const QVector& x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Hyperplane> hyperplanes_;
  std::optional<ClipBox> clip_box_;
};

/// A connected component of the complement (optionally intersected with the
/// open clip box).
struct Chamber {
  std::vector<int> signs;
  QVector witness;
  HPolytope h_rep;
};

/// Chambers of R^n by incremental insertion; each existing cell is tested
/// for straddling the new hyperplane with one strict LP (the witness decides
/// the other side). Sorted lexicographically by sign vector.
std::vector<Chamber> enumerate_chambers_ambient(const Arrangement& arr);

/// Cells meeting the interior of `box`.
std::vector<Chamber> enumerate_chambers_in_box(const Arrangement& arr, const ClipBox& box);

/// Box mode when the arrangement carries a clip box, ambient otherwise.
std::vector<Chamber> enumerate_chambers(const Arrangement& arr);

/// A symmetric box [-R, R]^n containing every nonempty intersection flat's
/// least-norm point strictly inside, so box and ambient counts agree.
ClipBox auto_clip_box(const Arrangement& arr);

/// Parameterized affine subspace x = basis * y + origin.
struct AffineChart {
  QMatrix basis;
  QVector origin;
};

/// Rational parameterization of a hyperplane by solving for the pivot
/// coordinate.
AffineChart chart_of(const Hyperplane& h);

/// Traces of the arrangement's hyperplanes on the subspace, in chart
/// coordinates. Empty traces and traces equal to the whole subspace are
/// dropped; coincident traces are merged keeping the first label.
Arrangement restrict_to(const Arrangement& arr, const AffineChart& chart);

/// A'' for the hyperplane at `index`: the other hyperplanes restricted to it.
Arrangement restriction(const Arrangement& arr, std::size_t index);

/// Chamber count via |Ch(A)| = |Ch(A')| + |Ch(A'')| on the last hyperplane,
/// memoized on canonical sub-arrangements. Ignores any clip box.
Integer count_chambers_deletion_restriction(const Arrangement& arr);

struct GeneralPositionReport {
  bool general = true;
  /// First violating index subset (lexicographic order by size, then index).
  std::vector<std::size_t> violating;
};

/// Every r <= n hyperplanes meet in codimension r; every n+1 have empty
/// intersection.
GeneralPositionReport is_general_position(const Arrangement& arr);

/// Codimension of the intersection of the given hyperplanes, or nullopt when
/// it is empty.
std::optional<std::size_t> intersection_codimension(const Arrangement& arr, const std::vector<std::size_t>& subset);

struct InvariantParams {
  Rational a;
  Rational b;
  Rational c;
};

struct DegeneracyReport {
  /// Blocks with a_i = b_i, whose n hyperplanes coincide (n >= 2).
  std::vector<std::size_t> collapsed_blocks;
  /// Pairs of labels whose hyperplanes coincide across blocks.
  std::vector<std::pair<std::string, std::string>> coincident;
  /// (i1, i2, i3, j) triples in one column that still meet.
  std::vector<std::vector<std::size_t>> column_triples_meeting;
  /// (i1, i2, j1, j2) where the three triple intersections differ.
  std::vector<std::vector<std::size_t>> square_intersections_differ;

  bool degenerate() const {
    return !collapsed_blocks.empty() || !coincident.empty() || !column_triples_meeting.empty() ||
           !square_intersections_differ.empty();
  }
};

struct InvariantArrangement {
  Arrangement arrangement;
  DegeneracyReport report;
};

/// The S_n-stable arrangement with hyperplanes
///   H_{i,j}: a_i x_j + b_i sum_{k != j} x_k + c_i = 0,
/// labeled "H_{i,j}" (1-based). Duplicate loci are kept (labels stay unique)
/// and reported.
InvariantArrangement build_invariant_arrangement(const std::vector<InvariantParams>& params, std::size_t n);

/// Coxeter arrangement of S_n: x_i - x_j = 0 for i < j, labeled "W_{i,j}".
Arrangement coxeter_arrangement(std::size_t n);

/// Keeps the first hyperplane of every locus.
Arrangement deduplicated(const Arrangement& arr);

}  // namespace pwl
