#include "pwl/regions.hpp"

#include <algorithm>
#include <map>

#include "pwl/group.hpp"
#include "pwl/lp.hpp"

namespace pwl {

bool LinearPiece::contains(const QVector& x) const {
  return std::any_of(cells.begin(), cells.end(), [&](const Cell& c) { return c.region.contains(x); });
}

Integer projected_piece_bound(const ReluNetwork& net) {
  const auto w = net.widths();
  const std::size_t n0 = w.front();
  Integer total = 1;
  for (std::size_t l = 1; l + 1 < w.size(); ++l) {
    Integer s = 0;
    for (std::size_t i = 0; i <= std::min(n0, w[l]); ++i) s += binomial(static_cast<unsigned>(w[l]), static_cast<unsigned>(i));
    total *= s;
  }
  return total;
}

namespace {

struct Work {
  Cell cell;
  AffineMap map;
};

AffineMap compose(const AffineLayer& l, const AffineMap& inner) { return {l.weight * inner.matrix, l.weight * inner.offset + l.bias}; }

// Splits `w` by row . x + off = 0, appending the sign to the current trace
// layer.
void split_unit(Work&& w, const QVector& row, const Rational& off, std::vector<Work>& out) {
  if (is_zero(row)) {
    w.cell.trace.back().push_back(off > 0 ? 1 : -1);
    out.push_back(std::move(w));
    return;
  }
  const Hyperplane h{row, off, ""};
  const int s = h.side(w.cell.witness);
  if (s != 0) {
    auto other = w.cell.region.with(h.half_space(-s));
    auto f = interior_feasible(other);
    if (f.feasible) {
      Work d{Cell{std::move(other), f.witness, w.cell.trace}, w.map};
      d.cell.trace.back().push_back(-s);
      out.push_back(std::move(d));
    }
    w.cell.region.add(h.half_space(s));
    w.cell.trace.back().push_back(s);
    out.push_back(std::move(w));
    return;
  }
  for (int t : {1, -1}) {
    auto side = w.cell.region.with(h.half_space(t));
    auto f = interior_feasible(side);
    if (!f.feasible) throw Error("enumerate_pieces: open cell failed to straddle a unit hyperplane through its witness");
    Work d{Cell{std::move(side), f.witness, w.cell.trace}, w.map};
    d.cell.trace.back().push_back(t);
    out.push_back(std::move(d));
  }
}

void guard(std::size_t count, const EnumerationOptions& opts) {
  if (!opts.override_cap && count > opts.cap)
    throw CapExceeded("piece count " + std::to_string(count) + " exceeds the cap of " + std::to_string(opts.cap) +
                      "; raise --cap or pass the override flag");
}

}  // namespace

std::vector<std::pair<Cell, AffineMap>> enumerate_cells(const ReluNetwork& net, const ClipBox& box,
                                                        const EnumerationOptions& opts) {
  const std::size_t n = net.input_dim();
  if (box.lo.size() != n || box.hi.size() != n) throw DimensionError("enumerate_pieces: box dimension differs from input dimension");
  for (std::size_t i = 0; i < n; ++i)
    if (box.lo[i] >= box.hi[i]) throw Error("enumerate_pieces: box is not full-dimensional");
  if ((net.family() == Family::inv_shallow || net.family() == Family::deep_set) && !box.permutation_stable())
    throw Error("enumerate_pieces: box is not permutation-stable for an invariant network");
  const Integer projected = projected_piece_bound(net);
  if (!opts.override_cap && projected > Integer(opts.cap))
    throw CapExceeded("projected piece count " + projected.str() + " exceeds the cap of " + std::to_string(opts.cap) +
                      "; raise --cap or pass the override flag");

  std::vector<Work> cells;
  cells.push_back({Cell{box.polytope(), box.center(), {}}, AffineMap{QMatrix::identity(n), QVector(n)}});
  const auto& layers = net.layers();
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    for (auto& w : cells) {
      w.map = compose(layers[l], w.map);
      w.cell.trace.emplace_back();
    }
    for (std::size_t u = 0; u < layers[l].out_dim(); ++u) {
      std::vector<Work> next;
      next.reserve(cells.size() * 2);
      for (auto& w : cells) {
        QVector row = w.map.matrix.row(u);
        Rational off = w.map.offset[u];
        split_unit(std::move(w), row, off, next);
      }
      cells = std::move(next);
      guard(cells.size(), opts);
    }
    for (auto& w : cells) {
      const auto& signs = w.cell.trace.back();
      for (std::size_t u = 0; u < signs.size(); ++u) {
        if (signs[u] > 0) continue;
        for (std::size_t c = 0; c < n; ++c) w.map.matrix(u, c) = 0;
        w.map.offset[u] = 0;
      }
    }
  }
  std::vector<std::pair<Cell, AffineMap>> out;
  out.reserve(cells.size());
  for (auto& w : cells) out.emplace_back(std::move(w.cell), compose(layers.back(), w.map));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first.trace < b.first.trace; });
  return out;
}

namespace {

bool share_facet(const Cell& a, const Cell& b, std::size_t n) {
  auto meet = a.region.intersect(b.region);
  if (!lp_feasible(meet, std::vector<bool>(meet.size(), false)).feasible) return false;
  return affine_dimension(enumerate_vertices(meet)) == static_cast<int>(n) - 1;
}

bool map_less(const AffineMap& a, const AffineMap& b) {
  for (std::size_t r = 0; r < a.matrix.rows(); ++r) {
    auto ra = a.matrix.row(r), rb = b.matrix.row(r);
    if (ra != rb) return lex_less(ra, rb);
  }
  if (a.offset != b.offset) return lex_less(a.offset, b.offset);
  return false;
}

}  // namespace

void finalize_piece(LinearPiece& p) {
  if (p.convex) {
    p.vertices = enumerate_vertices(p.region);
    p.region = facet_description(p.region, p.vertices);
    p.volume = polytope_volume(p.region, p.vertices);
  } else {
    p.vertices.clear();
    p.volume = 0;
    for (const auto& c : p.cells) p.volume += polytope_volume(c.region);
  }
}

std::vector<LinearPiece> merge_cells(std::vector<std::pair<Cell, AffineMap>> cells) {
  if (cells.empty()) return {};
  const std::size_t n = cells.front().first.region.dim();
  std::map<AffineMap, std::vector<std::size_t>, bool (*)(const AffineMap&, const AffineMap&)> by_map(&map_less);
  for (std::size_t i = 0; i < cells.size(); ++i) by_map[cells[i].second].push_back(i);

  UnionFind uf(cells.size());
  for (const auto& [map, members] : by_map)
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x + 1; y < members.size(); ++y)
        if (uf.find(members[x]) != uf.find(members[y]) && share_facet(cells[members[x]].first, cells[members[y]].first, n))
          uf.unite(members[x], members[y]);

  std::vector<LinearPiece> pieces;
  for (const auto& group : uf.classes()) {
    LinearPiece p;
    p.map = cells[group.front()].second;
    p.trace = cells[group.front()].first.trace;
    for (auto i : group) p.cells.push_back(cells[i].first);
    if (group.size() == 1) {
      p.region = p.cells.front().region;
    } else {
      std::vector<QVector> pts;
      Rational cell_volume = 0;
      for (const auto& c : p.cells) {
        auto v = enumerate_vertices(c.region);
        cell_volume += polytope_volume(c.region, v);
        pts.insert(pts.end(), v.begin(), v.end());
      }
      HPolytope hull(n);
      for (const auto& c : p.cells)
        for (const auto& h : c.region.constraints())
          if (std::all_of(pts.begin(), pts.end(), [&](const QVector& v) { return h.contains(v); })) hull.add(h);
      hull = hull.canonical();
      if (polytope_volume(hull) == cell_volume) {
        p.region = hull;
        // One cell with the merged region keeps the piece self-describing.
        Cell merged{hull, p.cells.front().witness, p.trace};
        p.cells = {merged};
      } else {
        p.convex = false;
        p.region = p.cells.front().region;
      }
    }
    finalize_piece(p);
    for (auto& c : p.cells) c.region = c.region.canonical();
    pieces.push_back(std::move(p));
  }
  std::sort(pieces.begin(), pieces.end(), [](const LinearPiece& a, const LinearPiece& b) { return a.trace < b.trace; });
  return pieces;
}

PieceSet enumerate_pieces(const ReluNetwork& net, const ClipBox& box, const EnumerationOptions& opts) {
  PieceSet set;
  set.box = box;
  set.source = to_string(net.family());
  set.pieces = merge_cells(enumerate_cells(net, box, opts));
  return set;
}

PieceSet remerge(const PieceSet& set) {
  std::vector<std::pair<Cell, AffineMap>> cells;
  for (const auto& p : set.pieces)
    for (const auto& c : p.cells) cells.emplace_back(c, p.map);
  PieceSet out = set;
  out.pieces = merge_cells(std::move(cells));
  return out;
}

const LinearPiece& piece_at(const PieceSet& set, const QVector& x) {
  if (!set.box.polytope().contains(x)) throw Error("piece_at: point " + to_string(x) + " is outside the box");
  const LinearPiece* best = nullptr;
  for (const auto& p : set.pieces)
    if (p.contains(x) && (!best || p.trace < best->trace)) best = &p;
  if (!best) throw Error("piece_at: no piece contains " + to_string(x));
  return *best;
}

PieceSet piecewise_linear_1d(const QVector& breaks, const QVector& slopes, const QVector& intercepts,
                             const std::string& source, bool merge) {
  if (breaks.size() < 2 || slopes.size() + 1 != breaks.size() || intercepts.size() != slopes.size())
    throw DimensionError("piecewise_linear_1d: need k+1 breakpoints for k pieces");
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (!(breaks[i] < breaks[i + 1])) throw Error("piecewise_linear_1d: breakpoints must increase strictly");
  PieceSet set;
  set.box = {{breaks.front()}, {breaks.back()}};
  set.source = source;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    AffineMap map{QMatrix::from_rows({{slopes[i]}}), {intercepts[i]}};
    if (merge && !set.pieces.empty() && set.pieces.back().map == map) {
      auto& last = set.pieces.back();
      last.region = HPolytope::box({last.vertices.front()}, {breaks[i + 1]});
      last.cells = {Cell{last.region, {Rational(1, 2) * (last.vertices.front()[0] + breaks[i + 1])}, last.trace}};
      finalize_piece(last);
      continue;
    }
    LinearPiece p;
    p.region = HPolytope::box({breaks[i]}, {breaks[i + 1]});
    p.trace = {{static_cast<int>(i)}};
    p.cells = {Cell{p.region, {Rational(1, 2) * (breaks[i] + breaks[i + 1])}, p.trace}};
    p.map = std::move(map);
    finalize_piece(p);
    set.pieces.push_back(std::move(p));
  }
  return set;
}

bool volume_conserved(const PieceSet& set) {
  Rational total = 0;
  for (const auto& p : set.pieces) total += p.volume;
  return total == set.box.volume();
}

}  // namespace pwl
