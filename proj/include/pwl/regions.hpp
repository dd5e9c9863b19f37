#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwl/arrangement.hpp"
#include "pwl/network.hpp"
#include "pwl/polytope.hpp"

namespace pwl {

/// An activation cell: convex, full-dimensional, clipped to the box.
struct Cell {
  HPolytope region;
  QVector witness;
  /// Per hidden layer, per unit: +1 active, -1 inactive.
  std::vector<std::vector<int>> trace;
};

/// A maximal linear region paired with its affine map.
struct LinearPiece {
  /// Facet description when convex; for a non-convex union of cells this is
  /// the description of the first cell only and `convex` is false.
  HPolytope region;
  std::vector<Cell> cells;
  bool convex = true;
  AffineMap map;
  std::vector<std::vector<int>> trace;  // of the first cell
  std::vector<QVector> vertices;        // of region, when convex
  Rational volume;                      // sum over cells

  QVector evaluate(const QVector& x) const { return map.apply(x); }
  /// Closed membership in some cell.
  bool contains(const QVector& x) const;
};

struct PieceSet {
  std::vector<LinearPiece> pieces;
  ClipBox box;
  std::string source;
};

struct EnumerationOptions {
  /// Refuse when the projected or actual piece count exceeds this.
  std::size_t cap = 1000000;
  bool override_cap = false;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Product over hidden layers of sum_{i <= n0} C(n_l, i); an upper bound on
/// the number of activation cells used by the guardrail.
Integer projected_piece_bound(const ReluNetwork& net);

/// Layer-by-layer refinement of the box into activation cells followed by a
/// merge of adjacent cells with identical affine maps.
PieceSet enumerate_pieces(const ReluNetwork& net, const ClipBox& box, const EnumerationOptions& opts = {});

/// Activation cells before merging, in trace order.
std::vector<std::pair<Cell, AffineMap>> enumerate_cells(const ReluNetwork& net, const ClipBox& box,
                                                        const EnumerationOptions& opts = {});

/// Groups cells into maximal pieces (same map and connected through shared
/// facets). Running it on its own output changes nothing.
std::vector<LinearPiece> merge_cells(std::vector<std::pair<Cell, AffineMap>> cells);
PieceSet remerge(const PieceSet& set);

/// The piece containing x; ties on boundaries go to the lexicographically
/// smallest trace.
const LinearPiece& piece_at(const PieceSet& set, const QVector& x);

/// Scalar piecewise-linear function on [breaks.front(), breaks.back()] with
/// f(x) = slopes[i] x + intercepts[i] on [breaks[i], breaks[i+1]]. Adjacent
/// pieces with equal maps are kept separate only when `merge` is false.
PieceSet piecewise_linear_1d(const QVector& breaks, const QVector& slopes, const QVector& intercepts,
                             const std::string& source, bool merge = true);

/// Vertices and volume filled in; region reduced to facets.
void finalize_piece(LinearPiece& p);

/// Sum of piece volumes equals the box volume.
bool volume_conserved(const PieceSet& set);

}  // namespace pwl
