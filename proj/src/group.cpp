#include "pwl/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace pwl {

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
  std::vector<bool> hit(image_.size());
  for (auto v : image_) {
    if (v >= image_.size() || hit[v]) throw Error("permutation: not a bijection of {1..n}");
    hit[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> im(n);
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::transposition(std::size_t n, std::size_t i, std::size_t j) {
  auto p = identity(n);
  std::swap(p.image_[i], p.image_[j]);
  return p;
}

Permutation Permutation::operator*(const Permutation& other) const {
  if (other.degree() != degree()) throw DimensionError("permutation product: degree mismatch");
  std::vector<std::size_t> im(degree());
  for (std::size_t i = 0; i < degree(); ++i) im[i] = image_[other.image_[i]];
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> im(degree());
  for (std::size_t i = 0; i < degree(); ++i) im[image_[i]] = i;
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < degree(); ++i)
    if (image_[i] != i) return false;
  return true;
}

QVector Permutation::act(const QVector& x) const {
  if (x.size() != degree()) throw DimensionError("permutation action: vector length differs from degree");
  QVector y(x.size());
  for (std::size_t i = 0; i < degree(); ++i) y[image_[i]] = x[i];
  return y;
}

QMatrix Permutation::matrix() const {
  QMatrix p(degree(), degree());
  for (std::size_t i = 0; i < degree(); ++i) p(image_[i], i) = 1;
  return p;
}

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<std::size_t> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

std::vector<Permutation> adjacent_transpositions(std::size_t n) {
  std::vector<Permutation> out;
  for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(Permutation::transposition(n, i, i + 1));
  return out;
}

PermutationAction PermutationAction::symmetric_group(std::size_t n) { return {n, all_permutations(n)}; }
PermutationAction PermutationAction::generated_by_adjacent(std::size_t n) { return {n, adjacent_transpositions(n)}; }
PermutationAction PermutationAction::trivial(std::size_t n) { return {n, {Permutation::identity(n)}}; }

UnionFind::UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

void UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (b < a) std::swap(a, b);
  parent_[b] = a;
}

std::size_t UnionFind::components() {
  std::size_t c = 0;
  for (std::size_t i = 0; i < parent_.size(); ++i)
    if (find(i) == i) ++c;
  return c;
}

std::vector<std::vector<std::size_t>> UnionFind::classes() {
  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t i = 0; i < parent_.size(); ++i) by_root[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  return out;
}

std::vector<std::size_t> act_on_hyperplanes(const Arrangement& arr, const Permutation& sigma) {
  if (sigma.degree() != arr.dim()) throw DimensionError("act_on_hyperplanes: permutation degree differs from dimension");
  std::vector<std::size_t> out;
  for (const auto& h : arr.hyperplanes()) {
    Hyperplane image{sigma.act(h.normal), h.offset, ""};
    std::size_t found = arr.size();
    for (std::size_t k = 0; k < arr.size(); ++k)
      if (arr.hyperplanes()[k].same_locus(image)) {
        found = k;
        break;
      }
    if (found == arr.size()) throw Error("arrangement is not stable under the action: image of " + h.label + " is not a member");
    out.push_back(found);
  }
  return out;
}

std::vector<std::vector<std::size_t>> act_on_chambers(const Arrangement& arr, const std::vector<Chamber>& chambers,
                                                      const PermutationAction& action) {
  if (action.degree != arr.dim()) throw DimensionError("act_on_chambers: action degree differs from dimension");
  if (arr.clip_box() && !arr.clip_box()->permutation_stable())
    throw Error("act_on_chambers: clip box is not permutation-stable");
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t c = 0; c < chambers.size(); ++c) index.emplace(chambers[c].signs, c);
  std::vector<std::vector<std::size_t>> images;
  for (const auto& sigma : action.elements) {
    act_on_hyperplanes(arr, sigma);
    std::vector<std::size_t> img(chambers.size());
    for (std::size_t c = 0; c < chambers.size(); ++c) {
      auto it = index.find(arr.sign_vector(sigma.act(chambers[c].witness)));
      if (it == index.end()) throw Error("act_on_chambers: transformed witness lies in no chamber");
      img[c] = it->second;
    }
    images.push_back(std::move(img));
  }
  return images;
}

std::vector<std::vector<std::size_t>> chamber_orbits(const Arrangement& arr, const std::vector<Chamber>& chambers,
                                                     const PermutationAction& action) {
  UnionFind uf(chambers.size());
  for (const auto& img : act_on_chambers(arr, chambers, action))
    for (std::size_t c = 0; c < img.size(); ++c) uf.unite(c, img[c]);
  return uf.classes();
}

std::size_t orbit_count_direct(const Arrangement& arr, const PermutationAction& action) {
  return chamber_orbits(arr, enumerate_chambers(arr), action).size();
}

KamiyaCount orbit_count_kamiya(const Arrangement& b, std::size_t n) {
  if (b.dim() != n) throw DimensionError("orbit_count_kamiya: arrangement dimension differs from n");
  Integer nf = factorial(static_cast<unsigned>(n));
  if (n < 2) {
    Integer c(enumerate_chambers_ambient(b.with_clip_box(std::nullopt)).size());
    return {c, c};
  }
  auto cox = coxeter_arrangement(n);
  for (const auto& w : cox.hyperplanes())
    for (const auto& h : b.hyperplanes())
      if (h.same_locus(w))
        throw Error("orbit_count_kamiya: " + h.label + " coincides with Coxeter plane " + w.label + "; perturb the arrangement");
  auto c = cox.plus(b.with_clip_box(std::nullopt));
  Integer total(enumerate_chambers_ambient(c).size());
  if (total % nf != 0) throw Error("arrangement not in generic position w.r.t. Coxeter planes");
  return {total, total / nf};
}

}  // namespace pwl
