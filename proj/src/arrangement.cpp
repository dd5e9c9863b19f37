#include "pwl/arrangement.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "combinatorics.hpp"
#include "pwl/lp.hpp"

namespace pwl {

HalfSpace Hyperplane::half_space(int s) const {
  // s = +1: normal.x + offset > 0  <=>  -normal.x < offset
  if (s > 0) return {Rational(-1) * normal, offset};
  return {normal, -offset};
}

Hyperplane canonical_locus(const Hyperplane& h) {
  for (const auto& x : h.normal) {
    if (x == 0) continue;
    Rational s = 1 / x;
    return {s * h.normal, s * h.offset, h.label};
  }
  return h;
}

bool Hyperplane::same_locus(const Hyperplane& other) const {
  auto a = canonical_locus(*this);
  auto b = canonical_locus(other);
  return a.normal == b.normal && a.offset == b.offset;
}

bool ClipBox::permutation_stable() const {
  for (std::size_t i = 1; i < lo.size(); ++i)
    if (lo[i] != lo[0] || hi[i] != hi[0]) return false;
  return true;
}

QVector ClipBox::center() const { return Rational(1, 2) * (lo + hi); }

Rational ClipBox::volume() const {
  Rational v = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

Arrangement::Arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes, std::optional<ClipBox> clip_box)
    : dim_(dim), hyperplanes_(std::move(hyperplanes)), clip_box_(std::move(clip_box)) {
  if (dim_ == 0) throw DimensionError("arrangement: ambient dimension must be at least 1");
  std::set<std::string> labels;
  for (std::size_t i = 0; i < hyperplanes_.size(); ++i) {
    auto& h = hyperplanes_[i];
    if (h.normal.size() != dim_) throw DimensionError("arrangement: hyperplane " + h.label + " has wrong dimension");
    if (is_zero(h.normal)) throw Error("arrangement: hyperplane " + h.label + " has zero normal");
    if (h.label.empty()) h.label = "H_" + std::to_string(i + 1);
    if (!labels.insert(h.label).second) throw Error("arrangement: duplicate label " + h.label);
  }
  if (clip_box_) {
    if (clip_box_->lo.size() != dim_ || clip_box_->hi.size() != dim_) throw DimensionError("arrangement: clip box dimension");
    for (std::size_t i = 0; i < dim_; ++i)
      if (clip_box_->lo[i] >= clip_box_->hi[i]) throw Error("arrangement: clip box is not full-dimensional");
  }
}

Arrangement Arrangement::with_clip_box(std::optional<ClipBox> box) const { return Arrangement(dim_, hyperplanes_, std::move(box)); }

Arrangement Arrangement::without(std::size_t index) const {
  auto hs = hyperplanes_;
  hs.erase(hs.begin() + static_cast<std::ptrdiff_t>(index));
  return Arrangement(dim_, std::move(hs), clip_box_);
}

Arrangement Arrangement::plus(const Arrangement& other) const {
  if (other.dim_ != dim_) throw DimensionError("arrangement union: dimension mismatch");
  auto hs = hyperplanes_;
  hs.insert(hs.end(), other.hyperplanes_.begin(), other.hyperplanes_.end());
  return Arrangement(dim_, std::move(hs), clip_box_);
}

std::vector<int> Arrangement::sign_vector(const QVector& x) const {
  std::vector<int> s;
  s.reserve(hyperplanes_.size());
  for (const auto& h : hyperplanes_) s.push_back(h.side(x));
  return s;
}

namespace {

struct Cell {
  std::vector<int> signs;
  QVector witness;
  HPolytope poly;
};

std::vector<Chamber> split_all(const Arrangement& arr, Cell start) {
  std::vector<Cell> cells{std::move(start)};
  for (const auto& h : arr.hyperplanes()) {
    std::vector<Cell> next;
    next.reserve(cells.size() * 2);
    for (auto& c : cells) {
      const int s = h.side(c.witness);
      if (s != 0) {
        auto other = c.poly.with(h.half_space(-s));
        auto f = interior_feasible(other);
        if (f.feasible) {
          Cell d{c.signs, f.witness, std::move(other)};
          d.signs.push_back(-s);
          next.push_back(std::move(d));
        }
        c.signs.push_back(s);
        c.poly.add(h.half_space(s));
        next.push_back(std::move(c));
      } else {
        // An open cell meeting the hyperplane lies on both sides of it.
        for (int t : {1, -1}) {
          auto side = c.poly.with(h.half_space(t));
          auto f = interior_feasible(side);
          if (!f.feasible) throw Error("enumerate_chambers: open cell failed to straddle a hyperplane through its witness");
          Cell d{c.signs, f.witness, std::move(side)};
          d.signs.push_back(t);
          next.push_back(std::move(d));
        }
      }
    }
    cells = std::move(next);
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.signs < b.signs; });
  std::vector<Chamber> out;
  out.reserve(cells.size());
  for (auto& c : cells) out.push_back({std::move(c.signs), std::move(c.witness), std::move(c.poly)});
  return out;
}

}  // namespace

std::vector<Chamber> enumerate_chambers_ambient(const Arrangement& arr) {
  return split_all(arr, Cell{{}, QVector(arr.dim()), HPolytope(arr.dim())});
}

std::vector<Chamber> enumerate_chambers_in_box(const Arrangement& arr, const ClipBox& box) {
  if (box.lo.size() != arr.dim()) throw DimensionError("enumerate_chambers: box dimension");
  return split_all(arr, Cell{{}, box.center(), box.polytope()});
}

std::vector<Chamber> enumerate_chambers(const Arrangement& arr) {
  if (arr.clip_box()) return enumerate_chambers_in_box(arr, *arr.clip_box());
  return enumerate_chambers_ambient(arr);
}

ClipBox auto_clip_box(const Arrangement& arr) {
  const std::size_t n = arr.dim();
  Rational reach = 0;
  const auto& hs = arr.hyperplanes();
  for (std::size_t k = 1; k <= std::min(n, hs.size()); ++k) {
    for_each_subset(hs.size(), k, [&](const std::vector<std::size_t>& idx) {
      QMatrix a(k, n);
      QVector b(k);
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < n; ++c) a(r, c) = hs[idx[r]].normal[c];
        b[r] = -hs[idx[r]].offset;
      }
      auto x = solve_least_norm(a, b);
      if (!x) return;
      for (const auto& v : *x) reach = std::max(reach, abs(v));
    });
  }
  Rational r = 2 * reach + 1;
  return {QVector(n, -r), QVector(n, r)};
}

AffineChart chart_of(const Hyperplane& h) {
  const std::size_t n = h.normal.size();
  std::size_t pivot = 0;
  while (h.normal[pivot] == 0) ++pivot;
  const Rational& ap = h.normal[pivot];
  // x_pivot = -(offset + sum_{j != pivot} a_j x_j) / a_p; the other
  // coordinates are the chart coordinates in order.
  AffineChart chart{QMatrix(n, n - 1), QVector(n)};
  chart.origin[pivot] = -h.offset / ap;
  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == pivot) continue;
    chart.basis(j, col) = 1;
    chart.basis(pivot, col) = -h.normal[j] / ap;
    ++col;
  }
  return chart;
}

Arrangement restrict_to(const Arrangement& arr, const AffineChart& chart) {
  const std::size_t k = chart.basis.cols();
  if (chart.basis.rows() != arr.dim()) throw DimensionError("restrict_to: chart dimension");
  std::vector<Hyperplane> out;
  for (const auto& h : arr.hyperplanes()) {
    QVector normal(k);
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t r = 0; r < arr.dim(); ++r) normal[c] += h.normal[r] * chart.basis(r, c);
    Rational offset = h.evaluate(chart.origin);
    if (is_zero(normal)) continue;  // empty trace or the whole subspace
    Hyperplane t{std::move(normal), std::move(offset), h.label};
    bool seen = false;
    for (const auto& o : out)
      if (o.same_locus(t)) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(std::move(t));
  }
  if (k == 0) return Arrangement();
  return Arrangement(k, std::move(out));
}

Arrangement restriction(const Arrangement& arr, std::size_t index) {
  if (arr.dim() < 2) throw DimensionError("restriction: ambient dimension must be at least 2");
  return restrict_to(arr.without(index), chart_of(arr.hyperplanes()[index]));
}

namespace {

// Hyperplane loci as (normal..., offset) rows, scaled so the first nonzero
// normal entry is 1, deduplicated and sorted.
using Locus = QVector;
using LocusSet = std::vector<Locus>;

LocusSet canonical_set(const std::vector<Hyperplane>& hs) {
  std::set<Locus, bool (*)(const QVector&, const QVector&)> seen(&lex_less);
  for (const auto& h : hs) {
    auto c = canonical_locus(h);
    Locus l = c.normal;
    l.push_back(c.offset);
    seen.insert(std::move(l));
  }
  return {seen.begin(), seen.end()};
}

std::string key_of(std::size_t dim, const LocusSet& s) {
  std::ostringstream os;
  os << dim << ':';
  for (const auto& l : s) {
    for (const auto& x : l) os << x << ',';
    os << ';';
  }
  return os.str();
}

std::vector<Hyperplane> as_hyperplanes(const LocusSet& s) {
  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < s.size(); ++i) {
    QVector normal(s[i].begin(), s[i].end() - 1);
    hs.push_back({std::move(normal), s[i].back(), "L" + std::to_string(i)});
  }
  return hs;
}

Integer count_dr(std::size_t dim, const LocusSet& s, std::map<std::string, Integer>& memo) {
  if (s.empty()) return 1;
  if (dim == 1) return Integer(s.size() + 1);
  auto key = key_of(dim, s);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  auto hs = as_hyperplanes(s);
  Arrangement a(dim, hs);
  const std::size_t last = hs.size() - 1;
  LocusSet deleted(s.begin(), s.end() - 1);
  auto restricted = restriction(a, last);
  Integer total = count_dr(dim, deleted, memo) + count_dr(dim - 1, canonical_set(restricted.hyperplanes()), memo);
  memo.emplace(std::move(key), total);
  return total;
}

}  // namespace

Integer count_chambers_deletion_restriction(const Arrangement& arr) {
  std::map<std::string, Integer> memo;
  return count_dr(arr.dim(), canonical_set(arr.hyperplanes()), memo);
}

std::optional<std::size_t> intersection_codimension(const Arrangement& arr, const std::vector<std::size_t>& subset) {
  const std::size_t n = arr.dim();
  QMatrix aug(subset.size(), n + 1);
  for (std::size_t r = 0; r < subset.size(); ++r) {
    const auto& h = arr.hyperplanes()[subset[r]];
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = h.normal[c];
    aug(r, n) = -h.offset;
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  return pivots.size();
}

GeneralPositionReport is_general_position(const Arrangement& arr) {
  const std::size_t n = arr.dim();
  const std::size_t k = arr.size();
  GeneralPositionReport rep;
  for (std::size_t r = 1; r <= std::min(n + 1, k) && rep.general; ++r) {
    for_each_subset(k, r, [&](const std::vector<std::size_t>& idx) {
      if (!rep.general) return;
      auto codim = intersection_codimension(arr, idx);
      bool ok = r <= n ? (codim && *codim == r) : !codim.has_value();
      if (!ok) {
        rep.general = false;
        rep.violating = idx;
      }
    });
  }
  return rep;
}

InvariantArrangement build_invariant_arrangement(const std::vector<InvariantParams>& params, std::size_t n) {
  if (params.empty()) throw Error("build_invariant_arrangement: need at least one block (m >= 1)");
  if (n == 0) throw DimensionError("build_invariant_arrangement: n must be at least 1");
  const std::size_t m = params.size();
  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& p = params[i];
    if (p.a == 0 && p.b == 0) throw Error("build_invariant_arrangement: block " + std::to_string(i + 1) + " has a = b = 0");
    for (std::size_t j = 0; j < n; ++j) {
      QVector normal(n, p.b);
      normal[j] = p.a;
      hs.push_back({std::move(normal), p.c, "H_{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}"});
    }
  }
  InvariantArrangement out{Arrangement(n, hs), {}};
  auto& rep = out.report;
  auto index = [n](std::size_t i, std::size_t j) { return i * n + j; };

  for (std::size_t i = 0; i < m; ++i)
    if (n >= 2 && params[i].a == params[i].b) rep.collapsed_blocks.push_back(i);
  for (std::size_t u = 0; u < hs.size(); ++u)
    for (std::size_t v = u + 1; v < hs.size(); ++v)
      if (u / n != v / n && hs[u].same_locus(hs[v])) rep.coincident.emplace_back(hs[u].label, hs[v].label);

  const auto& arr = out.arrangement;
  if (n >= 2) {
    for (std::size_t j = 0; j < n; ++j)
      for_each_subset(m, 3, [&](const std::vector<std::size_t>& t) {
        if (intersection_codimension(arr, {index(t[0], j), index(t[1], j), index(t[2], j)}))
          rep.column_triples_meeting.push_back({t[0], t[1], t[2], j});
      });
    // H_{i1,j1} n H_{i1,j2} n H_{i2,j1} = ... n H_{i2,j2}: all three-way
    // intersections among the four agree. Two empty sets count as equal.
    for (std::size_t i1 = 0; i1 < m; ++i1)
      for (std::size_t i2 = i1 + 1; i2 < m; ++i2)
        for (std::size_t j1 = 0; j1 < n; ++j1)
          for (std::size_t j2 = j1 + 1; j2 < n; ++j2) {
            std::vector<std::size_t> four{index(i1, j1), index(i1, j2), index(i2, j1), index(i2, j2)};
            // The three-way intersections all agree iff they are all empty,
            // or all equal the four-way intersection (same codimension,
            // since it is contained in each).
            auto all = intersection_codimension(arr, four);
            std::size_t empty = 0, equal_all = 0;
            for_each_subset(4, 3, [&](const std::vector<std::size_t>& pick) {
              auto c = intersection_codimension(arr, {four[pick[0]], four[pick[1]], four[pick[2]]});
              if (!c) ++empty;
              else if (all && *c == *all) ++equal_all;
            });
            const bool differ = !(empty == 4 || equal_all == 4);
            if (differ) rep.square_intersections_differ.push_back({i1, i2, j1, j2});
          }
  }
  return out;
}

Arrangement coxeter_arrangement(std::size_t n) {
  if (n < 2) throw DimensionError("coxeter_arrangement: n must be at least 2");
  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      QVector normal(n);
      normal[i] = 1;
      normal[j] = -1;
      hs.push_back({std::move(normal), Rational(0), "W_{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}"});
    }
  return Arrangement(n, std::move(hs));
}

Arrangement deduplicated(const Arrangement& arr) {
  std::vector<Hyperplane> out;
  for (const auto& h : arr.hyperplanes()) {
    bool seen = std::any_of(out.begin(), out.end(), [&](const Hyperplane& o) { return o.same_locus(h); });
    if (!seen) out.push_back(h);
  }
  return Arrangement(arr.dim(), std::move(out), arr.clip_box());
}

}  // namespace pwl
