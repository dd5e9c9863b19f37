#pragma once

#include <vector>

#include "pwl/arrangement.hpp"
#include "pwl/linalg.hpp"

namespace pwl {

/// Permutation of {0..n-1}; image[i] = sigma(i).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> image);
  static Permutation identity(std::size_t n);
  /// Swaps i and j (0-based).
  static Permutation transposition(std::size_t n, std::size_t i, std::size_t j);

  std::size_t degree() const { return image_.size(); }
  std::size_t operator()(std::size_t i) const { return image_[i]; }
  const std::vector<std::size_t>& image() const { return image_; }

  /// (this * other)(i) = this(other(i)).
  Permutation operator*(const Permutation& other) const;
  Permutation inverse() const;
  bool is_identity() const;
  bool operator==(const Permutation&) const = default;
  bool operator<(const Permutation& o) const { return image_ < o.image_; }

  /// (sigma . x)_{sigma(i)} = x_i, i.e. (sigma . x)_i = x_{sigma^{-1}(i)}.
  QVector act(const QVector& x) const;
  /// Matrix P with P x = sigma . x.
  QMatrix matrix() const;

 private:
  std::vector<std::size_t> image_;
};

/// All n! permutations in lexicographic order of images.
std::vector<Permutation> all_permutations(std::size_t n);

/// Adjacent transpositions (i i+1).
std::vector<Permutation> adjacent_transpositions(std::size_t n);

struct PermutationAction {
  std::size_t degree = 0;
  /// Generators or the full element list; orbit counting only needs
  /// generators, group-axiom checks want the full list.
  std::vector<Permutation> elements;

  static PermutationAction symmetric_group(std::size_t n);
  static PermutationAction generated_by_adjacent(std::size_t n);
  static PermutationAction trivial(std::size_t n);
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  /// Keeps the smaller index as representative.
  void unite(std::size_t a, std::size_t b);
  std::size_t components();
  /// Classes in order of smallest member, members ascending.
  std::vector<std::vector<std::size_t>> classes();

 private:
  std::vector<std::size_t> parent_;
};

/// Index of sigma(H) in the arrangement, up to scaling (sigma maps the
/// locus a.x + c = 0 to (P a).y + c = 0). Throws when some image is not a
/// member, naming the unmapped hyperplane.
std::vector<std::size_t> act_on_hyperplanes(const Arrangement& arr, const Permutation& sigma);

/// images[g][c] = index of sigma_g(chamber c) within `chambers`, found
/// from the sign vector of the transformed witness.
std::vector<std::vector<std::size_t>> act_on_chambers(const Arrangement& arr, const std::vector<Chamber>& chambers,
                                                      const PermutationAction& action);

/// Orbits of the chambers (ambient, or in the clip box when set) by
/// union-find over the images.
std::vector<std::vector<std::size_t>> chamber_orbits(const Arrangement& arr, const std::vector<Chamber>& chambers,
                                                     const PermutationAction& action);

std::size_t orbit_count_direct(const Arrangement& arr, const PermutationAction& action);

struct KamiyaCount {
  Integer union_chambers;  // |Ch(A_n u B)|
  Integer orbits;          // divided by n!
};

/// Counts chambers of the Coxeter arrangement joined with `b` and divides by
/// n!. Throws when b shares a hyperplane with A_n or the count is not
/// divisible.
KamiyaCount orbit_count_kamiya(const Arrangement& b, std::size_t n);

}  // namespace pwl
