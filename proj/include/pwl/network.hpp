#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "pwl/arrangement.hpp"
#include "pwl/group.hpp"
#include "pwl/linalg.hpp"

namespace pwl {

enum class LayerTag { generic, equivariant, invariant, folding };
enum class Family { fc_shallow, fc_deep, inv_shallow, deep_set, montufar_variant };

std::string to_string(LayerTag t);
std::string to_string(Family f);
LayerTag parse_layer_tag(const std::string& s);
Family parse_family(const std::string& s);

struct AffineLayer {
  QMatrix weight;  // out x in
  QVector bias;
  LayerTag tag = LayerTag::generic;
  /// Block structure for equivariant / invariant layers: the input is m_in
  /// blocks of n and the output m_out blocks of n (invariant: m_out scalars).
  std::size_t n = 0;
  std::size_t m_in = 0;
  std::size_t m_out = 0;
  /// Folding level (1-based) for folding layers.
  std::size_t level = 0;

  std::size_t in_dim() const { return weight.cols(); }
  std::size_t out_dim() const { return weight.rows(); }
  QVector apply(const QVector& x) const;
};

/// One folding level: parts[j] is the partition of [0,1] along axis j.
struct FoldLevel {
  std::size_t width = 0;
  std::vector<QVector> parts;
};

struct FoldSpec {
  std::size_t n = 0;
  std::vector<FoldLevel> levels;

  /// Every axis partition is positive and sums to 1 with p_l = floor(n_l/n)
  /// parts. Throws otherwise.
  void validate() const;
  bool axis_shared() const;
  std::size_t pieces_per_axis(std::size_t level) const { return levels[level].parts[0].size(); }
};

/// Shallow head on the folded cube: hidden units relu(W y + c) plus
/// pass-through units relu(y_j) (exact on [0,1]^n), output
/// unit_weights . h + passthrough . y + output_bias.
struct FoldHead {
  QMatrix weight;
  QVector bias;
  QVector unit_weights;
  QVector passthrough;
  Rational output_bias;

  Arrangement arrangement() const;
};

/// Permutation-invariant shallow head: equivariant hidden layer from the
/// (a, b, c) blocks, block sums weighted by block_weights, plus the
/// pass-through block weighted by passthrough.
struct DeepSetHead {
  std::vector<InvariantParams> params;
  QVector block_weights;
  Rational passthrough;
  Rational output_bias;
};

class ReluNetwork {
 public:
  ReluNetwork() = default;
  /// Checks that adjacent layers chain and that tags are consistent.
  ReluNetwork(Family family, std::vector<AffineLayer> layers);

  Family family() const { return family_; }
  const std::vector<AffineLayer>& layers() const { return layers_; }
  std::vector<std::size_t> widths() const;
  std::size_t input_dim() const { return layers_.front().in_dim(); }
  std::size_t output_dim() const { return layers_.back().out_dim(); }

  /// ReLU after every layer but the last.
  QVector forward(const QVector& x) const;

  /// Hyperplanes of the first layer's units ("h_1".."h_k").
  Arrangement first_layer_arrangement() const;

  const std::optional<FoldSpec>& fold_spec() const { return fold_spec_; }
  const std::variant<std::monostate, FoldHead, DeepSetHead>& head() const { return head_; }
  void set_fold_data(FoldSpec spec, std::variant<std::monostate, FoldHead, DeepSetHead> head);

  /// (a_i, b_i, c_i) read back from the first layer of an inv_shallow
  /// network.
  std::vector<InvariantParams> invariant_params() const;

 private:
  Family family_ = Family::fc_shallow;
  std::vector<AffineLayer> layers_;
  std::optional<FoldSpec> fold_spec_;
  std::variant<std::monostate, FoldHead, DeepSetHead> head_;
};

/// Seeded source of small random rationals (portable across platforms).
class RationalRng {
 public:
  explicit RationalRng(std::uint64_t seed);
  std::uint64_t below(std::uint64_t bound);
  /// p/q with |p| <= numer_range, 1 <= q <= denom_range.
  Rational next(std::int64_t numer_range = 12, std::int64_t denom_range = 6);
  Rational nonzero(std::int64_t numer_range = 12, std::int64_t denom_range = 6);
  /// Uniform-ish rational in [lo, hi] on a grid of the given resolution.
  Rational in_range(const Rational& lo, const Rational& hi, std::uint64_t resolution = 1000);

 private:
  std::mt19937_64 engine_;
};

struct FcWeights {
  QMatrix w1;
  QVector c1;
  QMatrix w2;
  QVector c2;
};

ReluNetwork build_fc_shallow(std::size_t n0, std::size_t n1, std::size_t n2, const std::optional<FcWeights>& weights,
                             std::uint64_t seed = 0);

/// Deep fully connected network with seeded random weights.
ReluNetwork build_fc_deep(const std::vector<std::size_t>& widths, std::uint64_t seed = 0);

struct InvariantWeights {
  std::vector<InvariantParams> first;  // m blocks
  QMatrix head;                        // m' x m, weight of each block sum
  QVector head_bias;                   // m'
};

/// f_1 with blocks W_i = (a_i - b_i) I + b_i 1 1^T and bias c_i 1, f_2
/// summing each block. Output verified invariant on sampled points.
ReluNetwork build_invariant_shallow(std::size_t n, std::size_t m, std::size_t m_out,
                                    const std::optional<InvariantWeights>& weights, std::uint64_t seed = 0);

/// Folding levels followed by the head. Head hyperplanes must meet (0,1)^n
/// and all their vertices must lie strictly inside it.
ReluNetwork build_montufar_variant(const FoldSpec& spec, const FoldHead& head);

/// Shared-part folding levels followed by an invariant head.
ReluNetwork build_deep_set_variant(const FoldSpec& spec, const DeepSetHead& head);

/// The folding map of one level along one axis, evaluated directly from the
/// piecewise definition (used as an oracle).
Rational fold_value(const QVector& parts, const Rational& x);

/// Adds seeded offsets of size <= magnitude within each family's parameter
/// space.
ReluNetwork perturb(const ReluNetwork& net, const Rational& magnitude, std::uint64_t seed);

/// Exact checks used by builders and tests.
bool layer_is_equivariant(const AffineLayer& layer, const Permutation& sigma);
bool network_is_invariant_at(const ReluNetwork& net, const QVector& x, const std::vector<Permutation>& group);

/// Throws when a head vertex is not strictly inside (0,1)^n.
void check_head_inside_unit_cube(const Arrangement& head);

}  // namespace pwl
