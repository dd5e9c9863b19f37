#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pwl/group.hpp"
#include "pwl/regions.hpp"

namespace pwl {

/// x -> A x + b with A orthogonal.
struct EuclideanTransform {
  QMatrix a;
  QVector b;

  static EuclideanTransform identity(std::size_t n);
  QVector apply(const QVector& x) const { return a * x + b; }
  EuclideanTransform inverse() const;
  /// (this after first)(x) = this(first(x)).
  EuclideanTransform after(const EuclideanTransform& first) const;
  bool orthogonal() const { return is_orthogonal(a); }
};

/// phi(D_i) = D_j and f_i = f_j o phi.
struct EquivalenceWitness {
  std::size_t piece_i = 0;
  std::size_t piece_j = 0;
  EuclideanTransform phi;
  bool region_mapped = false;
  bool function_composed = false;
};

enum class Verdict { equivalent, inequivalent, inconclusive };

struct EquivalenceResult {
  Verdict verdict = Verdict::inconclusive;
  std::optional<EuclideanTransform> phi;
  std::string reason;
};

/// Necessary invariants of a convex piece: volume, vertex count, sorted
/// squared vertex distances, characteristic polynomial of M^T M and the
/// sorted multiset of function values at the vertices.
struct PieceSignature {
  Rational volume;
  std::size_t vertex_count = 0;
  std::vector<Rational> distances;
  QVector gram_charpoly;
  std::vector<QVector> values;

  bool operator<(const PieceSignature& o) const {
    return std::tie(volume, vertex_count, distances, gram_charpoly, values) <
           std::tie(o.volume, o.vertex_count, o.distances, o.gram_charpoly, o.values);
  }
  bool operator==(const PieceSignature& o) const = default;
};

PieceSignature signature(const LinearPiece& p);

struct WitnessCheck {
  bool region_mapped = false;
  bool function_composed = false;
  bool ok() const { return region_mapped && function_composed; }
};

/// Re-verifies phi(D_p) = D_q (vertex sets) and M_q A = M_p, M_q b + c_q = c_p.
WitnessCheck verify_witness(const LinearPiece& p, const LinearPiece& q, const EuclideanTransform& phi);

/// Exhaustive vertex-bijection search without the signature screen.
EquivalenceResult search_witness(const LinearPiece& p, const LinearPiece& q, std::size_t vertex_cap = 64);

/// Screen, then search. Over the vertex cap the answer is inconclusive
/// unless the screen already rejects.
EquivalenceResult pieces_equivalent(const LinearPiece& p, const LinearPiece& q, std::size_t vertex_cap = 64);

/// 1-D closed form: phi(x) = +-x + b with b forced by the endpoints.
EquivalenceResult pieces_equivalent_1d(const LinearPiece& p, const LinearPiece& q);

enum class Method { one_dim_exact, isometry_search_exact, orbit_kamiya, signature_bounded };
std::string to_string(Method m);

enum class EquivalencePath { automatic, one_dim, isometry_search };

struct ComplexityOptions {
  std::size_t vertex_cap = 64;
  EquivalencePath path = EquivalencePath::automatic;
  std::size_t piece_cap = 1000000;
};

struct ComplexityReport {
  std::size_t c_sharp = 0;
  std::size_t c_tilde_lower = 0;
  std::size_t c_tilde_upper = 0;
  /// Classes of piece ids, each ascending, ordered by smallest member.
  std::vector<std::vector<std::size_t>> classes;
  std::vector<EquivalenceWitness> witnesses;
  Method method = Method::isometry_search_exact;
  std::size_t inconclusive_pairs = 0;
  std::vector<std::string> notes;

  bool exact() const { return c_tilde_lower == c_tilde_upper; }
  /// "7" or "[5, 7]".
  std::string c_tilde_text() const;
};

std::size_t c_sharp(const PieceSet& set);

ComplexityReport c_tilde(const PieceSet& set, const ComplexityOptions& opts = {});

/// Extra data of the orbit route.
struct OrbitRoute {
  std::size_t orbits_direct = 0;
  KamiyaCount kamiya;
  std::size_t chambers = 0;
  std::size_t piece_orbits = 0;
  bool orbit_volumes_distinct = false;
  std::optional<ComplexityReport> general;
};

/// c~ of an inv_shallow network via chamber orbits of its first-layer
/// arrangement, counted directly and by Kamiya's formula (they must agree),
/// cross-checked with the general pipeline when the piece count allows.
ComplexityReport c_tilde_invariant_shallow(const ReluNetwork& net, const ClipBox& box, const ComplexityOptions& opts = {},
                                           OrbitRoute* route = nullptr);

/// Orbits of pieces of an S_n-invariant piece set under the action, found by
/// the piece containing each transformed witness.
std::vector<std::vector<std::size_t>> piece_orbits(const PieceSet& set, const std::vector<Permutation>& group);

}  // namespace pwl
