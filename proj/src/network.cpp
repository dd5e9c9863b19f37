#include "pwl/network.hpp"

#include <algorithm>

#include "combinatorics.hpp"
#include "pwl/lp.hpp"

namespace pwl {

std::string to_string(LayerTag t) {
  switch (t) {
    case LayerTag::generic: return "generic";
    case LayerTag::equivariant: return "equivariant";
    case LayerTag::invariant: return "invariant";
    case LayerTag::folding: return "folding";
  }
  return "generic";
}

std::string to_string(Family f) {
  switch (f) {
    case Family::fc_shallow: return "fc_shallow";
    case Family::fc_deep: return "fc_deep";
    case Family::inv_shallow: return "inv_shallow";
    case Family::deep_set: return "deep_set";
    case Family::montufar_variant: return "montufar_variant";
  }
  return "fc_shallow";
}

LayerTag parse_layer_tag(const std::string& s) {
  for (auto t : {LayerTag::generic, LayerTag::equivariant, LayerTag::invariant, LayerTag::folding})
    if (to_string(t) == s) return t;
  throw ParseError("unknown layer tag '" + s + "'");
}

Family parse_family(const std::string& s) {
  for (auto f : {Family::fc_shallow, Family::fc_deep, Family::inv_shallow, Family::deep_set, Family::montufar_variant})
    if (to_string(f) == s) return f;
  throw ParseError("unknown network family '" + s + "'");
}

QVector AffineLayer::apply(const QVector& x) const {
  if (x.size() != in_dim()) throw DimensionError("layer input has wrong dimension");
  return weight * x + bias;
}

namespace {

QVector relu(QVector v) {
  for (auto& x : v)
    if (x < 0) x = 0;
  return v;
}

// sigma applied to each of the first m blocks of n entries; the tail is
// left alone (zero padding units).
QVector act_blocks(const QVector& v, std::size_t n, std::size_t m, const Permutation& sigma) {
  QVector out = v;
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t j = 0; j < n; ++j) out[b * n + sigma(j)] = v[b * n + j];
  return out;
}

// Every n x n block is alpha I + beta 1 1^T.
bool has_eq5_blocks(const AffineLayer& l) {
  const std::size_t n = l.n;
  for (std::size_t bo = 0; bo < l.m_out; ++bo)
    for (std::size_t bi = 0; bi < l.m_in; ++bi) {
      const Rational& diag = l.weight(bo * n, bi * n);
      const Rational off = n > 1 ? l.weight(bo * n, bi * n + 1) : Rational(0);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (l.weight(bo * n + r, bi * n + c) != (r == c ? diag : off)) return false;
    }
  for (std::size_t bo = 0; bo < l.m_out; ++bo)
    for (std::size_t r = 0; r < n; ++r)
      if (l.bias[bo * n + r] != l.bias[bo * n]) return false;
  return true;
}

}  // namespace

ReluNetwork::ReluNetwork(Family family, std::vector<AffineLayer> layers) : family_(family), layers_(std::move(layers)) {
  if (layers_.empty()) throw Error("network: needs at least one layer");
  if (layers_.size() < 2) throw Error("network: needs at least one hidden layer");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& l = layers_[i];
    if (l.weight.rows() == 0 || l.weight.cols() == 0) throw DimensionError("network: layer " + std::to_string(i + 1) + " has a zero dimension");
    if (l.bias.size() != l.weight.rows()) throw DimensionError("network: bias length differs from layer " + std::to_string(i + 1) + " width");
    if (i > 0 && l.in_dim() != layers_[i - 1].out_dim())
      throw DimensionError("network: layer " + std::to_string(i + 1) + " input does not match previous width");
    if (l.tag == LayerTag::equivariant) {
      if (l.n == 0 || l.m_in * l.n > l.in_dim() || l.m_out * l.n > l.out_dim() || !has_eq5_blocks(l))
        throw Error("network: layer " + std::to_string(i + 1) + " is tagged equivariant but lacks the block structure");
    }
  }
  const bool inv_family = family_ == Family::inv_shallow || family_ == Family::deep_set;
  if (inv_family && layers_.back().tag != LayerTag::invariant) throw Error("network: invariant family needs an invariant final layer");
  if (family_ == Family::inv_shallow && (layers_.size() != 2 || layers_.front().tag != LayerTag::equivariant))
    throw Error("network: inv_shallow needs an equivariant first layer and one hidden layer");
  if (family_ == Family::fc_shallow && layers_.size() != 2) throw Error("network: fc_shallow has exactly one hidden layer");
}

std::vector<std::size_t> ReluNetwork::widths() const {
  std::vector<std::size_t> w{input_dim()};
  for (const auto& l : layers_) w.push_back(l.out_dim());
  return w;
}

QVector ReluNetwork::forward(const QVector& x) const {
  QVector v = x;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    v = layers_[i].apply(v);
    if (i + 1 < layers_.size()) v = relu(std::move(v));
  }
  return v;
}

Arrangement ReluNetwork::first_layer_arrangement() const {
  const auto& l = layers_.front();
  std::vector<Hyperplane> hs;
  for (std::size_t u = 0; u < l.out_dim(); ++u) {
    QVector row = l.weight.row(u);
    if (is_zero(row)) continue;
    std::string label;
    if (l.tag == LayerTag::equivariant && u < l.m_out * l.n)
      label = "H_{" + std::to_string(u / l.n + 1) + "," + std::to_string(u % l.n + 1) + "}";
    else
      label = "h_" + std::to_string(u + 1);
    hs.push_back({std::move(row), l.bias[u], label});
  }
  return Arrangement(input_dim(), std::move(hs));
}

void ReluNetwork::set_fold_data(FoldSpec spec, std::variant<std::monostate, FoldHead, DeepSetHead> head) {
  fold_spec_ = std::move(spec);
  head_ = std::move(head);
}

std::vector<InvariantParams> ReluNetwork::invariant_params() const {
  if (family_ != Family::inv_shallow) throw Error("invariant_params: not an inv_shallow network");
  const auto& l = layers_.front();
  std::vector<InvariantParams> out;
  for (std::size_t i = 0; i < l.m_out; ++i)
    out.push_back({l.weight(i * l.n, 0), l.n > 1 ? l.weight(i * l.n, 1) : Rational(0), l.bias[i * l.n]});
  return out;
}

RationalRng::RationalRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t RationalRng::below(std::uint64_t bound) {
  if (bound == 0) throw Error("RationalRng::below: empty range");
  // Rejection sampling keeps results identical on every platform.
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
  for (;;) {
    std::uint64_t v = engine_();
    if (v < limit) return v % bound;
  }
}

Rational RationalRng::next(std::int64_t numer_range, std::int64_t denom_range) {
  auto p = static_cast<std::int64_t>(below(static_cast<std::uint64_t>(2 * numer_range + 1))) - numer_range;
  auto q = static_cast<std::int64_t>(below(static_cast<std::uint64_t>(denom_range))) + 1;
  return Rational(p, q);
}

Rational RationalRng::nonzero(std::int64_t numer_range, std::int64_t denom_range) {
  for (;;) {
    Rational r = next(numer_range, denom_range);
    if (r != 0) return r;
  }
}

Rational RationalRng::in_range(const Rational& lo, const Rational& hi, std::uint64_t resolution) {
  Rational t(static_cast<long long>(below(resolution + 1)), static_cast<long long>(resolution));
  return lo + t * (hi - lo);
}

namespace {

// Numerator range for first-layer draws; wide so that accidental
// coincidences between hyperplanes are rare.
constexpr std::int64_t kWide = 1000;

QMatrix random_matrix(RationalRng& rng, std::size_t rows, std::size_t cols, bool nonzero_rows, std::int64_t range = 12) {
  QMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    do {
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.next(range, range == 12 ? 6 : 997);
    } while (nonzero_rows && is_zero(m.row(r)));
  }
  return m;
}

QVector random_vector(RationalRng& rng, std::size_t n, std::int64_t range = 12) {
  QVector v(n);
  for (auto& x : v) x = rng.next(range, range == 12 ? 6 : 997);
  return v;
}

}  // namespace

ReluNetwork build_fc_shallow(std::size_t n0, std::size_t n1, std::size_t n2, const std::optional<FcWeights>& weights,
                             std::uint64_t seed) {
  if (n0 == 0 || n1 == 0 || n2 == 0) throw DimensionError("build_fc_shallow: widths must be at least 1");
  FcWeights w;
  if (weights) {
    w = *weights;
    if (w.w1.rows() != n1 || w.w1.cols() != n0 || w.c1.size() != n1 || w.w2.rows() != n2 || w.w2.cols() != n1 || w.c2.size() != n2)
      throw DimensionError("build_fc_shallow: explicit weights do not match the widths");
  } else {
    RationalRng rng(seed);
    // redraw until the first layer is in general position
    for (;;) {
      w.w1 = random_matrix(rng, n1, n0, true, kWide);
      w.c1 = random_vector(rng, n1, kWide);
      std::vector<Hyperplane> hs;
      for (std::size_t r = 0; r < n1; ++r) hs.push_back({w.w1.row(r), w.c1[r], ""});
      if (is_general_position(Arrangement(n0, hs)).general) break;
    }
    w.w2 = QMatrix(n2, n1);
    for (std::size_t r = 0; r < n2; ++r)
      for (std::size_t c = 0; c < n1; ++c) w.w2(r, c) = rng.nonzero();
    w.c2 = random_vector(rng, n2);
  }
  return ReluNetwork(Family::fc_shallow, {AffineLayer{w.w1, w.c1}, AffineLayer{w.w2, w.c2}});
}

ReluNetwork build_fc_deep(const std::vector<std::size_t>& widths, std::uint64_t seed) {
  if (widths.size() < 3) throw DimensionError("build_fc_deep: need input, at least one hidden width and output");
  for (auto w : widths)
    if (w == 0) throw DimensionError("build_fc_deep: widths must be at least 1");
  RationalRng rng(seed);
  std::vector<AffineLayer> layers;
  for (std::size_t i = 1; i < widths.size(); ++i)
    layers.push_back({random_matrix(rng, widths[i], widths[i - 1], true), random_vector(rng, widths[i])});
  return ReluNetwork(widths.size() == 3 ? Family::fc_shallow : Family::fc_deep, std::move(layers));
}

namespace {

AffineLayer equivariant_layer(const std::vector<InvariantParams>& params, std::size_t n) {
  const std::size_t m = params.size();
  AffineLayer l{QMatrix(m * n, n), QVector(m * n), LayerTag::equivariant, n, 1, m, 0};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) l.weight(i * n + j, k) = j == k ? params[i].a : params[i].b;
      l.bias[i * n + j] = params[i].c;
    }
  return l;
}

void verify_invariance(const ReluNetwork& net, std::size_t n, std::uint64_t seed) {
  auto group = n <= 6 ? all_permutations(n) : adjacent_transpositions(n);
  RationalRng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int s = 0; s < 8; ++s) {
    QVector x(net.input_dim());
    for (auto& v : x) v = rng.next(20, 7);
    if (!network_is_invariant_at(net, x, group)) throw Error("network output is not permutation-invariant at " + to_string(x));
  }
}

}  // namespace

ReluNetwork build_invariant_shallow(std::size_t n, std::size_t m, std::size_t m_out,
                                    const std::optional<InvariantWeights>& weights, std::uint64_t seed) {
  if (n < 2) throw DimensionError("build_invariant_shallow: n must be at least 2");
  if (m == 0 || m_out == 0) throw DimensionError("build_invariant_shallow: m and m' must be at least 1");
  InvariantWeights w;
  if (weights) {
    w = *weights;
    if (w.first.size() != m || w.head.rows() != m_out || w.head.cols() != m || w.head_bias.size() != m_out)
      throw DimensionError("build_invariant_shallow: explicit weights do not match (m, m')");
  } else {
    RationalRng rng(seed);
    do {
      w.first.clear();
      for (std::size_t i = 0; i < m; ++i) w.first.push_back({rng.nonzero(kWide, 997), rng.nonzero(kWide, 997), rng.next(kWide, 997)});
    } while (build_invariant_arrangement(w.first, n).report.degenerate());
    w.head = QMatrix(m_out, m);
    for (std::size_t r = 0; r < m_out; ++r)
      for (std::size_t c = 0; c < m; ++c) w.head(r, c) = rng.nonzero();
    w.head_bias = random_vector(rng, m_out);
  }
  AffineLayer f1 = equivariant_layer(w.first, n);
  AffineLayer f2{QMatrix(m_out, m * n), w.head_bias, LayerTag::invariant, n, m, m_out, 0};
  for (std::size_t o = 0; o < m_out; ++o)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) f2.weight(o, i * n + j) = w.head(o, i);
  ReluNetwork net(Family::inv_shallow, {std::move(f1), std::move(f2)});
  verify_invariance(net, n, seed);
  return net;
}

void FoldSpec::validate() const {
  if (n == 0) throw DimensionError("fold spec: n must be at least 1");
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const auto& lev = levels[l];
    const std::string where = "fold spec level " + std::to_string(l + 1);
    if (lev.width < n) throw DimensionError(where + ": width must be at least n");
    if (lev.parts.size() != n) throw DimensionError(where + ": needs one partition per axis");
    const std::size_t p = lev.width / n;
    for (std::size_t j = 0; j < n; ++j) {
      if (lev.parts[j].size() != p)
        throw DimensionError(where + ": axis " + std::to_string(j + 1) + " needs floor(width/n) = " + std::to_string(p) + " parts");
      Rational sum = 0;
      for (const auto& a : lev.parts[j]) {
        if (a <= 0) throw Error(where + ": parts must be positive");
        sum += a;
      }
      if (sum != 1) throw Error(where + ": axis " + std::to_string(j + 1) + " parts sum to " + to_pq(sum) + ", not 1");
    }
  }
}

bool FoldSpec::axis_shared() const {
  for (const auto& lev : levels)
    for (const auto& p : lev.parts)
      if (p != lev.parts.front()) return false;
  return true;
}

Arrangement FoldHead::arrangement() const {
  std::vector<Hyperplane> hs;
  for (std::size_t u = 0; u < weight.rows(); ++u) hs.push_back({weight.row(u), bias[u], "g_" + std::to_string(u + 1)});
  return Arrangement(weight.cols(), std::move(hs));
}

Rational fold_value(const QVector& parts, const Rational& x) {
  if (x < 0) return 0;
  Rational start = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Rational end = start + parts[i];
    if (x < end || i + 1 == parts.size()) {
      // piece i (0-based) rises on even i, falls on odd i
      return i % 2 == 0 ? (x - start) / parts[i] : (end - x) / parts[i];
    }
    start = end;
  }
  return 0;
}

void check_head_inside_unit_cube(const Arrangement& head) {
  const std::size_t n = head.dim();
  QVector zero(n), one(n, Rational(1));
  HPolytope open_cube = HPolytope::box(zero, one);
  for (const auto& h : head.hyperplanes()) {
    auto p = open_cube.with({h.normal, -h.offset}).with({Rational(-1) * h.normal, h.offset});
    std::vector<bool> mask(p.size(), false);
    for (std::size_t i = 0; i < 2 * n; ++i) mask[i] = true;
    if (!lp_feasible(p, mask).feasible) throw Error("head hyperplane " + h.label + " misses the open unit cube");
  }
  for_each_subset(head.size(), n, [&](const std::vector<std::size_t>& idx) {
    QMatrix a(n, n);
    QVector b(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) a(r, c) = head.hyperplanes()[idx[r]].normal[c];
      b[r] = -head.hyperplanes()[idx[r]].offset;
    }
    auto x = solve_square(a, b);
    if (!x) return;
    if (open_cube.interior_contains(*x)) return;
    if (open_cube.contains(*x)) throw Error("head intersections on the fold grid boundary at " + to_string(*x));
    throw Error("head intersection " + to_string(*x) + " lies outside (0,1)^n");
  });
}

namespace {

// Units of one folding level in k-major order: unit k*n + j is
// relu(s_k x_j + t_k) with s_1 = b_1, t_1 = 0 and, for k >= 2,
// s_k = b_{k-1} + b_k, t_k = -s_k (a_1 + ... + a_{k-1}).
AffineLayer fold_units(const FoldLevel& lev, std::size_t n, std::size_t level) {
  const std::size_t p = lev.parts.front().size();
  AffineLayer l{QMatrix(lev.width, n), QVector(lev.width), LayerTag::folding, n, 1, p, level};
  for (std::size_t j = 0; j < n; ++j) {
    const auto& a = lev.parts[j];
    Rational cum = 0;
    for (std::size_t k = 0; k < p; ++k) {
      const Rational slope = k == 0 ? Rational(1 / a[0]) : Rational(1 / a[k - 1] + 1 / a[k]);
      l.weight(k * n + j, j) = slope;
      l.bias[k * n + j] = -slope * cum;
      cum += a[k];
    }
  }
  return l;
}

// n x width matrix summing units with alternating signs per axis.
QMatrix fold_combine(const FoldLevel& lev, std::size_t n) {
  const std::size_t p = lev.parts.front().size();
  QMatrix c(n, lev.width);
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t j = 0; j < n; ++j) c(j, k * n + j) = k % 2 == 0 ? 1 : -1;
  return c;
}

// Fold layers followed by `head_hidden` (acting on folded coordinates) and
// the output layer.
std::vector<AffineLayer> stack_folds(const FoldSpec& spec, AffineLayer head_hidden, AffineLayer output) {
  std::vector<AffineLayer> layers;
  std::optional<QMatrix> combine;
  for (std::size_t l = 0; l < spec.levels.size(); ++l) {
    AffineLayer units = fold_units(spec.levels[l], spec.n, l + 1);
    if (combine) {
      units.weight = units.weight * *combine;
      units.m_in = spec.pieces_per_axis(l - 1);
    }
    layers.push_back(std::move(units));
    combine = fold_combine(spec.levels[l], spec.n);
  }
  if (combine) {
    head_hidden.weight = head_hidden.weight * *combine;
    head_hidden.m_in = spec.pieces_per_axis(spec.levels.size() - 1);
  }
  layers.push_back(std::move(head_hidden));
  layers.push_back(std::move(output));
  return layers;
}

}  // namespace

ReluNetwork build_montufar_variant(const FoldSpec& spec, const FoldHead& head) {
  spec.validate();
  const std::size_t n = spec.n;
  const std::size_t k = head.weight.rows();
  if (head.weight.cols() != n || head.bias.size() != k || head.unit_weights.size() != k || head.passthrough.size() != n)
    throw DimensionError("build_montufar_variant: head dimensions do not match n");
  check_head_inside_unit_cube(head.arrangement());

  AffineLayer hidden{QMatrix(k + n, n), QVector(k + n)};
  for (std::size_t u = 0; u < k; ++u) {
    hidden.weight.set_row(u, head.weight.row(u));
    hidden.bias[u] = head.bias[u];
  }
  for (std::size_t j = 0; j < n; ++j) hidden.weight(k + j, j) = 1;
  AffineLayer output{QMatrix(1, k + n), QVector{head.output_bias}};
  for (std::size_t u = 0; u < k; ++u) output.weight(0, u) = head.unit_weights[u];
  for (std::size_t j = 0; j < n; ++j) output.weight(0, k + j) = head.passthrough[j];

  auto layers = stack_folds(spec, std::move(hidden), std::move(output));
  for (auto& l : layers)
    if (l.tag != LayerTag::folding) l.n = l.m_in = l.m_out = 0;
  ReluNetwork net(Family::montufar_variant, std::move(layers));
  net.set_fold_data(spec, head);
  return net;
}

ReluNetwork build_deep_set_variant(const FoldSpec& spec, const DeepSetHead& head) {
  spec.validate();
  if (!spec.axis_shared()) throw Error("build_deep_set_variant: axis partitions differ");
  const std::size_t n = spec.n;
  const std::size_t m = head.params.size();
  if (m == 0 || head.block_weights.size() != m) throw DimensionError("build_deep_set_variant: head needs one weight per block");
  auto head_arr = build_invariant_arrangement(head.params, n);
  check_head_inside_unit_cube(deduplicated(head_arr.arrangement));

  auto params = head.params;
  params.push_back({1, 0, 0});  // pass-through block
  AffineLayer hidden = equivariant_layer(params, n);
  AffineLayer output{QMatrix(1, (m + 1) * n), QVector{head.output_bias}, LayerTag::invariant, n, m + 1, 1, 0};
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = 0; j < n; ++j) output.weight(0, i * n + j) = i < m ? head.block_weights[i] : head.passthrough;

  ReluNetwork net(Family::deep_set, stack_folds(spec, std::move(hidden), std::move(output)));
  net.set_fold_data(spec, head);
  if (n <= 6) {
    RationalRng rng(17);
    auto group = all_permutations(n);
    for (int s = 0; s < 8; ++s) {
      QVector x(n);
      for (auto& v : x) v = rng.in_range(0, 1);
      if (!network_is_invariant_at(net, x, group)) throw Error("build_deep_set_variant: output is not invariant");
    }
  }
  return net;
}

bool layer_is_equivariant(const AffineLayer& layer, const Permutation& sigma) {
  if (layer.n == 0 || sigma.degree() != layer.n) return false;
  if (layer.m_in * layer.n > layer.in_dim() || layer.m_out * layer.n > layer.out_dim()) return false;
  // W P_in = P_out W and P_out c = c, compared column by column.
  for (std::size_t c = 0; c < layer.in_dim(); ++c) {
    QVector e(layer.in_dim());
    e[c] = 1;
    QVector lhs = layer.weight * act_blocks(e, layer.n, layer.m_in, sigma);
    QVector rhs = act_blocks(layer.weight * e, layer.n, layer.m_out, sigma);
    if (lhs != rhs) return false;
  }
  return act_blocks(layer.bias, layer.n, layer.m_out, sigma) == layer.bias;
}

bool network_is_invariant_at(const ReluNetwork& net, const QVector& x, const std::vector<Permutation>& group) {
  const QVector y = net.forward(x);
  for (const auto& sigma : group)
    if (net.forward(sigma.act(x)) != y) return false;
  return true;
}

namespace {

Rational offset(RationalRng& rng, const Rational& magnitude) { return rng.in_range(-magnitude, magnitude); }

QVector perturb_parts(RationalRng& rng, const QVector& parts, const Rational& magnitude) {
  Rational smallest = *std::min_element(parts.begin(), parts.end());
  Rational mag = std::min(magnitude, Rational(smallest / 2));
  QVector out = parts;
  Rational sum = 0;
  for (auto& a : out) {
    a += offset(rng, mag);
    sum += a;
  }
  for (auto& a : out) a /= sum;
  return out;
}

}  // namespace

ReluNetwork perturb(const ReluNetwork& net, const Rational& magnitude, std::uint64_t seed) {
  if (magnitude <= 0) throw Error("perturb: magnitude must be positive");
  RationalRng rng(seed);
  switch (net.family()) {
    case Family::inv_shallow: {
      const auto& f1 = net.layers()[0];
      const auto& f2 = net.layers()[1];
      const std::size_t n = f1.n, m = f1.m_out, m_out = f2.out_dim();
      InvariantWeights w{net.invariant_params(), QMatrix(m_out, m), f2.bias};
      for (auto& p : w.first) {
        p.a += offset(rng, magnitude);
        p.b += offset(rng, magnitude);
        p.c += offset(rng, magnitude);
      }
      for (std::size_t o = 0; o < m_out; ++o) {
        for (std::size_t i = 0; i < m; ++i) w.head(o, i) = f2.weight(o, i * n) + offset(rng, magnitude);
        w.head_bias[o] += offset(rng, magnitude);
      }
      return build_invariant_shallow(n, m, m_out, w, seed);
    }
    case Family::montufar_variant: {
      FoldSpec spec = *net.fold_spec();
      for (auto& lev : spec.levels)
        for (auto& p : lev.parts) p = perturb_parts(rng, p, magnitude);
      FoldHead head = std::get<FoldHead>(net.head());
      for (std::size_t r = 0; r < head.weight.rows(); ++r) {
        for (std::size_t c = 0; c < head.weight.cols(); ++c) head.weight(r, c) += offset(rng, magnitude);
        head.bias[r] += offset(rng, magnitude);
        head.unit_weights[r] += offset(rng, magnitude);
      }
      for (auto& v : head.passthrough) v += offset(rng, magnitude);
      head.output_bias += offset(rng, magnitude);
      return build_montufar_variant(spec, head);
    }
    case Family::deep_set: {
      FoldSpec spec = *net.fold_spec();
      for (auto& lev : spec.levels) {
        QVector shared = perturb_parts(rng, lev.parts.front(), magnitude);
        for (auto& p : lev.parts) p = shared;
      }
      DeepSetHead head = std::get<DeepSetHead>(net.head());
      for (auto& p : head.params) {
        p.a += offset(rng, magnitude);
        p.b += offset(rng, magnitude);
        p.c += offset(rng, magnitude);
      }
      for (auto& v : head.block_weights) v += offset(rng, magnitude);
      head.passthrough += offset(rng, magnitude);
      head.output_bias += offset(rng, magnitude);
      return build_deep_set_variant(spec, head);
    }
    case Family::fc_shallow:
    case Family::fc_deep: {
      auto layers = net.layers();
      for (auto& l : layers) {
        for (std::size_t r = 0; r < l.weight.rows(); ++r)
          for (std::size_t c = 0; c < l.weight.cols(); ++c) l.weight(r, c) += offset(rng, magnitude);
        for (auto& b : l.bias) b += offset(rng, magnitude);
      }
      return ReluNetwork(net.family(), std::move(layers));
    }
  }
  return net;
}

}  // namespace pwl
