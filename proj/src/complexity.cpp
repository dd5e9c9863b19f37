#include "pwl/complexity.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pwl {

EuclideanTransform EuclideanTransform::identity(std::size_t n) { return {QMatrix::identity(n), QVector(n)}; }

EuclideanTransform EuclideanTransform::inverse() const {
  QMatrix at = a.transpose();
  return {at, Rational(-1) * (at * b)};
}

EuclideanTransform EuclideanTransform::after(const EuclideanTransform& first) const {
  return {a * first.a, a * first.b + b};
}

std::string to_string(Method m) {
  switch (m) {
    case Method::one_dim_exact: return "one_dim_exact";
    case Method::isometry_search_exact: return "isometry_search_exact";
    case Method::orbit_kamiya: return "orbit_kamiya";
    case Method::signature_bounded: return "signature_bounded";
  }
  return "";
}

std::string ComplexityReport::c_tilde_text() const {
  if (exact()) return std::to_string(c_tilde_lower);
  return "[" + std::to_string(c_tilde_lower) + ", " + std::to_string(c_tilde_upper) + "]";
}

PieceSignature signature(const LinearPiece& p) {
  PieceSignature s;
  s.volume = p.volume;
  s.vertex_count = p.vertices.size();
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < p.vertices.size(); ++j) s.distances.push_back(squared_norm(p.vertices[i] - p.vertices[j]));
  std::sort(s.distances.begin(), s.distances.end());
  s.gram_charpoly = characteristic_polynomial(p.map.matrix.transpose() * p.map.matrix);
  for (const auto& v : p.vertices) s.values.push_back(p.map.apply(v));
  std::sort(s.values.begin(), s.values.end(), lex_less);
  return s;
}

WitnessCheck verify_witness(const LinearPiece& p, const LinearPiece& q, const EuclideanTransform& phi) {
  WitnessCheck out;
  if (!phi.orthogonal()) return out;
  if (p.convex && q.convex && p.vertices.size() == q.vertices.size()) {
    std::vector<QVector> image;
    for (const auto& v : p.vertices) image.push_back(phi.apply(v));
    std::sort(image.begin(), image.end(), lex_less);
    out.region_mapped = image == q.vertices;
  }
  out.function_composed = q.map.matrix * phi.a == p.map.matrix && q.map.matrix * phi.b + q.map.offset == p.map.offset;
  return out;
}

namespace {

EquivalenceResult inconclusive(std::string why) { return {Verdict::inconclusive, std::nullopt, std::move(why)}; }
EquivalenceResult inequivalent(std::string why) { return {Verdict::inequivalent, std::nullopt, std::move(why)}; }

}  // namespace

EquivalenceResult search_witness(const LinearPiece& p, const LinearPiece& q, std::size_t vertex_cap) {
  const std::size_t n = p.region.dim();
  if (q.region.dim() != n) throw DimensionError("pieces_equivalent: pieces live in different dimensions");
  if (!p.convex || !q.convex) return inconclusive("non-convex piece");
  if (p.vertices.size() > vertex_cap || q.vertices.size() > vertex_cap) return inconclusive("cap");
  if (p.vertices.size() != q.vertices.size()) return inequivalent("vertex count");
  const auto& vp = p.vertices;
  const auto& vq = q.vertices;

  // Affinely independent basis of n+1 vertices of p, greedily.
  std::vector<std::size_t> basis;
  std::vector<QVector> pts;
  for (std::size_t i = 0; i < vp.size() && basis.size() < n + 1; ++i) {
    pts.push_back(vp[i]);
    if (affine_dimension(pts) == static_cast<int>(basis.size())) basis.push_back(i);
    else pts.pop_back();
  }
  if (basis.size() < n + 1) return inconclusive("lower-dimensional region");

  std::vector<QVector> fq;
  for (const auto& v : vq) fq.push_back(q.map.apply(v));
  std::vector<std::size_t> target(basis.size());
  std::vector<bool> used(vq.size());
  std::optional<EuclideanTransform> found;

  auto try_complete = [&]() {
    std::vector<QVector> src, dst;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      src.push_back(vp[basis[k]]);
      dst.push_back(vq[target[k]]);
    }
    auto solved = solve_affine_from_point_pairs(src, dst);
    if (!std::holds_alternative<AffineMap>(solved)) return;
    const auto& m = std::get<AffineMap>(solved);
    EuclideanTransform phi{m.matrix, m.offset};
    if (!phi.orthogonal()) return;
    if (verify_witness(p, q, phi).ok()) found = phi;
  };

  auto extend = [&](auto&& self, std::size_t k) -> void {
    if (found) return;
    if (k == basis.size()) {
      try_complete();
      return;
    }
    const QVector& src = vp[basis[k]];
    const QVector fsrc = p.map.apply(src);
    for (std::size_t t = 0; t < vq.size() && !found; ++t) {
      if (used[t] || fq[t] != fsrc) continue;
      bool ok = true;
      for (std::size_t l = 0; l < k && ok; ++l)
        ok = squared_norm(vq[t] - vq[target[l]]) == squared_norm(src - vp[basis[l]]);
      if (!ok) continue;
      used[t] = true;
      target[k] = t;
      self(self, k + 1);
      used[t] = false;
    }
  };
  extend(extend, 0);
  if (found) return {Verdict::equivalent, found, ""};
  return inequivalent("no isometric vertex correspondence");
}

EquivalenceResult pieces_equivalent(const LinearPiece& p, const LinearPiece& q, std::size_t vertex_cap) {
  if (p.region.dim() != q.region.dim()) throw DimensionError("pieces_equivalent: pieces live in different dimensions");
  if (!p.convex || !q.convex) return inconclusive("non-convex piece");
  if (p.volume != q.volume) return inequivalent("volume");
  auto sp = signature(p), sq = signature(q);
  if (sp.vertex_count != sq.vertex_count) return inequivalent("vertex count");
  if (sp.distances != sq.distances) return inequivalent("vertex distances");
  if (sp.gram_charpoly != sq.gram_charpoly) return inequivalent("singular values");
  if (sp.values != sq.values) return inequivalent("vertex values");
  return search_witness(p, q, vertex_cap);
}

EquivalenceResult pieces_equivalent_1d(const LinearPiece& p, const LinearPiece& q) {
  if (p.region.dim() != 1 || q.region.dim() != 1) throw DimensionError("pieces_equivalent_1d: pieces are not 1-D");
  if (p.map.matrix.rows() != q.map.matrix.rows()) return inequivalent("output dimension");
  const Rational pl = p.vertices.front()[0], pr = p.vertices.back()[0];
  const Rational ql = q.vertices.front()[0], qr = q.vertices.back()[0];
  if (pr - pl != qr - ql) return inequivalent("length");
  // f_p = f_q o phi with phi(x) = a x + b: alpha_p = a alpha_q and
  // beta_p = b alpha_q + beta_q, for each output row.
  for (int a : {1, -1}) {
    const Rational b = a == 1 ? Rational(ql - pl) : Rational(ql + pr);
    bool ok = true;
    for (std::size_t r = 0; r < p.map.matrix.rows() && ok; ++r) {
      const Rational& ap = p.map.matrix(r, 0);
      const Rational& aq = q.map.matrix(r, 0);
      ok = ap == a * aq && p.map.offset[r] == b * aq + q.map.offset[r];
    }
    if (ok) return {Verdict::equivalent, EuclideanTransform{QMatrix::from_rows({{Rational(a)}}), {b}}, ""};
  }
  return inequivalent("slope or intercept");
}

std::size_t c_sharp(const PieceSet& set) { return set.pieces.size(); }

ComplexityReport c_tilde(const PieceSet& set, const ComplexityOptions& opts) {
  ComplexityReport rep;
  const auto& ps = set.pieces;
  rep.c_sharp = ps.size();
  if (ps.empty()) return rep;
  const std::size_t n = ps.front().region.dim();
  EquivalencePath path = opts.path;
  if (path == EquivalencePath::automatic) path = n == 1 ? EquivalencePath::one_dim : EquivalencePath::isometry_search;
  if (path == EquivalencePath::one_dim && n != 1) throw DimensionError("c_tilde: the 1-D path needs a 1-D piece set");

  // Buckets of pieces sharing the cheap invariants.
  std::map<PieceSignature, std::vector<std::size_t>> buckets;
  std::vector<std::size_t> nonconvex;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!ps[i].convex) {
      nonconvex.push_back(i);
      continue;
    }
    auto s = signature(ps[i]);
    if (path == EquivalencePath::one_dim) {
      // Length and |slope| decide the bucket; the closed form does the rest.
      QVector slopes;
      for (std::size_t r = 0; r < ps[i].map.matrix.rows(); ++r) slopes.push_back(abs(ps[i].map.matrix(r, 0)));
      s = PieceSignature{s.volume, s.vertex_count, {}, slopes, {}};
    }
    buckets[s].push_back(i);
  }

  UnionFind uf(ps.size());
  UnionFind loose(ps.size());  // also merges inconclusive pairs
  for (const auto& [sig, members] : buckets) {
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        const std::size_t i = members[x], j = members[y];
        if (uf.find(i) == uf.find(j)) continue;
        auto res = path == EquivalencePath::one_dim ? pieces_equivalent_1d(ps[i], ps[j]) : pieces_equivalent(ps[i], ps[j], opts.vertex_cap);
        if (res.verdict == Verdict::equivalent) {
          auto check = verify_witness(ps[i], ps[j], *res.phi);
          if (!check.ok()) throw Error("c_tilde: produced witness failed re-verification");
          rep.witnesses.push_back({i, j, *res.phi, check.region_mapped, check.function_composed});
          uf.unite(i, j);
          loose.unite(i, j);
        } else if (res.verdict == Verdict::inconclusive) {
          ++rep.inconclusive_pairs;
          loose.unite(i, j);
        }
      }
  }
  // Non-convex pieces can only be matched with pieces of equal volume; those
  // pairs stay open.
  for (auto i : nonconvex)
    for (std::size_t j = 0; j < ps.size(); ++j)
      if (j != i && ps[j].volume == ps[i].volume && loose.find(i) != loose.find(j)) {
        ++rep.inconclusive_pairs;
        loose.unite(i, j);
      }

  rep.classes = uf.classes();
  rep.c_tilde_upper = rep.classes.size();
  rep.c_tilde_lower = loose.components();
  if (rep.exact()) rep.method = path == EquivalencePath::one_dim ? Method::one_dim_exact : Method::isometry_search_exact;
  else rep.method = Method::signature_bounded;
  if (rep.inconclusive_pairs > 0)
    rep.notes.push_back(std::to_string(rep.inconclusive_pairs) + " piece pairs were inconclusive (vertex cap or non-convex pieces)");
  return rep;
}

std::vector<std::vector<std::size_t>> piece_orbits(const PieceSet& set, const std::vector<Permutation>& group) {
  UnionFind uf(set.pieces.size());
  for (std::size_t i = 0; i < set.pieces.size(); ++i) {
    const QVector& w = set.pieces[i].cells.front().witness;
    for (const auto& sigma : group) {
      const QVector x = sigma.act(w);
      std::size_t hit = set.pieces.size();
      for (std::size_t j = 0; j < set.pieces.size() && hit == set.pieces.size(); ++j)
        for (const auto& c : set.pieces[j].cells)
          if (c.region.interior_contains(x)) {
            hit = j;
            break;
          }
      if (hit == set.pieces.size()) throw Error("piece_orbits: permuted witness lies in no piece interior");
      uf.unite(i, hit);
    }
  }
  return uf.classes();
}

ComplexityReport c_tilde_invariant_shallow(const ReluNetwork& net, const ClipBox& box, const ComplexityOptions& opts,
                                           OrbitRoute* route) {
  if (net.family() != Family::inv_shallow) throw Error("c_tilde_invariant_shallow: network family is not inv_shallow");
  if (!box.permutation_stable()) throw Error("c_tilde_invariant_shallow: box is not permutation-stable");
  const std::size_t n = net.input_dim();
  const auto group = n <= 6 ? PermutationAction::symmetric_group(n) : PermutationAction::generated_by_adjacent(n);

  OrbitRoute local;
  OrbitRoute& r = route ? *route : local;
  const Arrangement b = net.first_layer_arrangement();
  const auto chambers = enumerate_chambers_ambient(b);
  r.chambers = chambers.size();
  r.orbits_direct = chamber_orbits(b, chambers, group).size();
  r.kamiya = orbit_count_kamiya(b, n);
  if (Integer(r.orbits_direct) != r.kamiya.orbits)
    throw Error("orbit counts disagree: direct " + std::to_string(r.orbits_direct) + " vs Kamiya " + r.kamiya.orbits.str());

  ComplexityReport rep;
  rep.method = Method::orbit_kamiya;
  rep.notes.push_back("direct agrees");
  rep.notes.push_back("orbit count equals c~ when chambers in different orbits have different volumes");

  if (projected_piece_bound(net) > Integer(opts.piece_cap)) {
    rep.c_sharp = r.chambers;
    rep.c_tilde_upper = r.orbits_direct;
    rep.c_tilde_lower = 1;
    rep.notes.push_back("piece enumeration skipped by the cap; lower bound is trivial");
    return rep;
  }

  EnumerationOptions eo;
  eo.cap = opts.piece_cap;
  PieceSet set = enumerate_pieces(net, box, eo);
  rep.c_sharp = set.pieces.size();
  auto orbits = piece_orbits(set, group.elements);
  r.piece_orbits = orbits.size();
  if (set.pieces.size() != r.chambers || r.piece_orbits != r.orbits_direct)
    rep.notes.push_back("pieces in the box differ from the ambient chambers (" + std::to_string(set.pieces.size()) + " pieces, " +
                        std::to_string(r.piece_orbits) + " piece orbits)");

  std::set<Rational> volumes;
  for (const auto& o : orbits) volumes.insert(set.pieces[o.front()].volume);
  r.orbit_volumes_distinct = volumes.size() == orbits.size();

  r.general = c_tilde(set, opts);
  const auto& g = *r.general;
  rep.c_tilde_upper = r.piece_orbits;
  if (r.orbit_volumes_distinct) {
    rep.c_tilde_lower = r.piece_orbits;
    if (!g.exact() || g.c_tilde_upper != r.piece_orbits)
      throw Error("c_tilde_invariant_shallow: general pipeline gives " + g.c_tilde_text() + " but orbits have distinct volumes");
    rep.notes.push_back("orbit volumes distinct; general pipeline agrees");
  } else if (g.exact()) {
    rep.c_tilde_lower = rep.c_tilde_upper = g.c_tilde_upper;
    rep.notes.push_back("orbit volumes collide; value taken from the general pipeline");
    if (g.c_tilde_upper < r.piece_orbits) rep.notes.push_back("accidental equivalences across orbits");
  } else {
    rep.c_tilde_lower = std::max(volumes.size(), g.c_tilde_lower);
    rep.c_tilde_upper = std::min(rep.c_tilde_upper, g.c_tilde_upper);
    rep.method = Method::signature_bounded;
  }
  rep.classes = g.classes;
  rep.witnesses = g.witnesses;
  return rep;
}

}  // namespace pwl
