#include "pwl/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "combinatorics.hpp"
#include "pwl/lp.hpp"

namespace pwl {

HalfSpace normalized(const HalfSpace& h) {
  for (const auto& x : h.normal) {
    if (x == 0) continue;
    Rational s = 1 / abs(x);
    return {s * h.normal, s * h.offset};
  }
  return h;
}

HPolytope::HPolytope(std::size_t dim, std::vector<HalfSpace> constraints) : dim_(dim) {
  for (auto& h : constraints) add(std::move(h));
}

HPolytope HPolytope::box(const QVector& lo, const QVector& hi) {
  if (lo.size() != hi.size()) throw DimensionError("box: bound sizes differ");
  HPolytope p(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    QVector e(lo.size());
    e[i] = 1;
    p.add({e, hi[i]});
    e[i] = -1;
    p.add({e, -lo[i]});
  }
  return p;
}

void HPolytope::add(HalfSpace h) {
  if (h.normal.size() != dim_) throw DimensionError("HPolytope::add: normal has wrong dimension");
  constraints_.push_back(std::move(h));
}

HPolytope HPolytope::with(HalfSpace h) const {
  HPolytope p = *this;
  p.add(std::move(h));
  return p;
}

HPolytope HPolytope::intersect(const HPolytope& other) const {
  if (other.dim_ != dim_) throw DimensionError("HPolytope::intersect: dimension mismatch");
  HPolytope p = *this;
  for (const auto& h : other.constraints_) p.add(h);
  return p;
}

bool HPolytope::contains(const QVector& x) const {
  return std::all_of(constraints_.begin(), constraints_.end(), [&](const HalfSpace& h) { return h.contains(x); });
}

bool HPolytope::interior_contains(const QVector& x) const {
  return std::all_of(constraints_.begin(), constraints_.end(), [&](const HalfSpace& h) { return h.strictly_contains(x); });
}

HPolytope HPolytope::canonical() const {
  std::map<QVector, Rational, bool (*)(const QVector&, const QVector&)> tightest(&lex_less);
  bool empty = false;
  for (const auto& h : constraints_) {
    auto n = normalized(h);
    if (is_zero(n.normal)) {
      if (n.offset < 0) empty = true;
      continue;
    }
    auto it = tightest.find(n.normal);
    if (it == tightest.end()) tightest.emplace(n.normal, n.offset);
    else if (n.offset < it->second) it->second = n.offset;
  }
  HPolytope out(dim_);
  if (empty) {
    out.add({QVector(dim_), Rational(-1)});
    return out;
  }
  for (auto& [normal, offset] : tightest) out.add({normal, offset});
  return out;
}

void require_bounded(const HPolytope& p) {
  for (std::size_t i = 0; i < p.dim(); ++i) {
    for (int s : {1, -1}) {
      QVector obj(p.dim());
      obj[i] = s;
      auto sol = maximize(p, obj);
      if (sol.status == LpStatus::infeasible) return;
      if (sol.status == LpStatus::unbounded) throw UnboundedError();
    }
  }
}


std::vector<QVector> enumerate_vertices(const HPolytope& input) {
  HPolytope p = input.canonical();
  const std::size_t n = p.dim();
  require_bounded(p);
  std::set<QVector, bool (*)(const QVector&, const QVector&)> found(&lex_less);
  const auto& cs = p.constraints();
  for_each_subset(cs.size(), n, [&](const std::vector<std::size_t>& idx) {
    QMatrix a(n, n);
    QVector b(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) a(r, c) = cs[idx[r]].normal[c];
      b[r] = cs[idx[r]].offset;
    }
    auto x = solve_square(a, b);
    if (x && p.contains(*x)) found.insert(*x);
  });
  return {found.begin(), found.end()};
}

HPolytope facet_description(const HPolytope& input, const std::vector<QVector>& vertices) {
  HPolytope p = input.canonical();
  HPolytope out(p.dim());
  for (const auto& h : p.constraints()) {
    std::vector<QVector> tight;
    for (const auto& v : vertices)
      if (dot(h.normal, v) == h.offset) tight.push_back(v);
    if (affine_dimension(tight) == static_cast<int>(p.dim()) - 1) out.add(h);
  }
  return out;
}

namespace {

using IndexSet = std::vector<std::size_t>;

void pull(const std::vector<QVector>& verts, const std::vector<std::vector<bool>>& tight, const IndexSet& face, int k,
          std::vector<IndexSet>& out, IndexSet& prefix) {
  if (k == 0) {
    prefix.push_back(face.front());
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  const std::size_t apex = face.front();
  std::set<IndexSet> facets;
  for (const auto& row : tight) {
    if (row[apex]) continue;
    IndexSet sub;
    for (auto v : face)
      if (row[v]) sub.push_back(v);
    if (sub.size() < static_cast<std::size_t>(k)) continue;
    if (facets.count(sub)) continue;
    std::vector<QVector> pts;
    for (auto v : sub) pts.push_back(verts[v]);
    if (affine_dimension(pts) == k - 1) facets.insert(std::move(sub));
  }
  prefix.push_back(apex);
  for (const auto& f : facets) pull(verts, tight, f, k - 1, out, prefix);
  prefix.pop_back();
}

}  // namespace

std::vector<std::vector<QVector>> triangulate(const HPolytope& input, const std::vector<QVector>& vertices) {
  HPolytope p = input.canonical();
  const int n = static_cast<int>(p.dim());
  if (affine_dimension(vertices) < n) return {};
  std::vector<std::vector<bool>> tight;
  for (const auto& h : p.constraints()) {
    std::vector<bool> row(vertices.size());
    for (std::size_t v = 0; v < vertices.size(); ++v) row[v] = dot(h.normal, vertices[v]) == h.offset;
    tight.push_back(std::move(row));
  }
  IndexSet all(vertices.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<IndexSet> simplices;
  IndexSet prefix;
  pull(vertices, tight, all, n, simplices, prefix);
  std::vector<std::vector<QVector>> out;
  for (const auto& s : simplices) {
    std::vector<QVector> pts;
    for (auto v : s) pts.push_back(vertices[v]);
    out.push_back(std::move(pts));
  }
  return out;
}

Rational polytope_volume(const HPolytope& p, const std::vector<QVector>& vertices) {
  const std::size_t n = p.dim();
  Rational total = 0;
  for (const auto& simplex : triangulate(p, vertices)) {
    QMatrix edges(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) edges(r, c) = simplex[r + 1][c] - simplex[0][c];
    total += abs(determinant(edges));
  }
  return total / Rational(factorial(static_cast<unsigned>(n)));
}

Rational polytope_volume(const HPolytope& p) { return polytope_volume(p, enumerate_vertices(p)); }

HPolytope transform(const HPolytope& p, const AffineMap& phi) {
  const std::size_t n = p.dim();
  if (phi.matrix.rows() != n || phi.matrix.cols() != n) throw DimensionError("transform: map must be square of polytope dimension");
  // Rows of inv^T: solve A^T u = a for each normal a.
  QMatrix at = phi.matrix.transpose();
  HPolytope out(n);
  for (const auto& h : p.constraints()) {
    auto u = solve_square(at, h.normal);
    if (!u) throw Error("transform: map is not invertible");
    out.add({*u, h.offset + dot(*u, phi.offset)});
  }
  return out;
}

}  // namespace pwl
