#include "pwl/presets.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pwl {

namespace {

Hyperplane line(Rational a, Rational b, Rational c, std::string label) { return {{std::move(a), std::move(b)}, std::move(c), std::move(label)}; }

// Shallow fc net realizing an arrangement in its first layer. Output weights
// are nonzero so no two neighbouring chambers share an affine map.
ReluNetwork shallow_over(const Arrangement& arr) {
  FcWeights w;
  std::vector<QVector> rows;
  for (const auto& h : arr.hyperplanes()) {
    rows.push_back(h.normal);
    w.c1.push_back(h.offset);
  }
  w.w1 = QMatrix::from_rows(rows);
  QVector out;
  const Rational weights[] = {1, 2, 3, 5, 7, 11, 13, 17};
  for (std::size_t i = 0; i < rows.size(); ++i) out.push_back(weights[i % 8] + Rational(i / 8));
  w.w2 = QMatrix::from_rows({out});
  w.c2 = {0};
  return build_fc_shallow(arr.dim(), rows.size(), 1, w);
}

Preset arrangement_preset(std::string name, std::string description, Arrangement arr) {
  Preset p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.box = auto_clip_box(arr);
  p.network = shallow_over(arr);
  p.arrangement = std::move(arr);
  return p;
}

Preset one_dim(std::string name, std::string description, PieceSet set) {
  Preset p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.box = set.box;
  p.pieces = std::move(set);
  return p;
}

// "name(a, b, c)" -> name and integer arguments.
std::pair<std::string, std::vector<std::size_t>> split_call(const std::string& spec) {
  const auto open = spec.find('(');
  if (open == std::string::npos) return {spec, {}};
  if (spec.back() != ')') throw Error("preset '" + spec + "': missing ')'");
  std::vector<std::size_t> args;
  std::stringstream ss(spec.substr(open + 1, spec.size() - open - 2));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::string t;
    for (char c : tok)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw Error("preset '" + spec + "': arguments must be nonnegative integers");
    args.push_back(std::stoul(t));
  }
  return {spec.substr(0, open), args};
}

FoldSpec fold_spec(std::size_t n, const std::vector<std::size_t>& ps, bool shared) {
  FoldSpec s;
  s.n = n;
  for (std::size_t l = 0; l < ps.size(); ++l) {
    if (ps[l] < 1) throw Error("preset: every fold level needs at least one part");
    FoldLevel level;
    level.width = n * ps[l];
    for (std::size_t a = 0; a < n; ++a) level.parts.push_back(default_parts(ps[l], shared ? 0 : a, l));
    s.levels.push_back(std::move(level));
  }
  return s;
}

}  // namespace

QVector default_parts(std::size_t p, std::size_t axis, std::size_t level) {
  // weights p, p-1, ..., 1 on even axes and p+1, ..., 2p on odd ones;
  // reversed on odd levels
  QVector w(p);
  Rational total = 0;
  for (std::size_t k = 0; k < p; ++k) {
    w[k] = axis % 2 == 0 ? Rational(p - k) : Rational(p + 1 + k);
    total += w[k];
  }
  if (level % 2 == 1) std::reverse(w.begin(), w.end());
  for (auto& x : w) x /= total;
  return w;
}

FoldHead default_fold_head_2d() {
  // x - y + 1, y - 1, x + y - 2, x - 1/3 under x = 2u - 1/2, y = 2v
  FoldHead h;
  h.weight = QMatrix::from_rows({{2, -2}, {0, 2}, {2, 2}, {2, 0}});
  h.bias = {Rational(1, 2), -1, Rational(-5, 2), Rational(-5, 6)};
  h.unit_weights = {1, 2, 3, 5};
  h.passthrough = {Rational(1, 7), Rational(1, 11)};
  h.output_bias = 0;
  return h;
}

FoldHead default_fold_head_1d() {
  FoldHead h;
  h.weight = QMatrix::from_rows({{1}});
  h.bias = {Rational(-1, 2)};
  h.unit_weights = {1};
  h.passthrough = {Rational(1, 3)};
  h.output_bias = 0;
  return h;
}

DeepSetHead default_deep_set_head() {
  // (a, b, c) -> (5a, 5b, c - a - b) under x = 5u - 1
  DeepSetHead h;
  h.params = {{10, Rational(5, 2), Rational(-11, 2)}, {-5, 30, -5}};
  h.block_weights = {1, 2};
  h.passthrough = Rational(1, 3);
  h.output_bias = 0;
  return h;
}

std::vector<std::string> preset_names() {
  return {"appendixA1a", "appendixA1b", "appendixA1b_gp", "appendixA2", "example1", "example2", "example3",
          "example4",    "example5",    "montufar(n,p,...)", "deepset(n,p,...)", "fc(n0,n1)", "inv(m,n)"};
}

Preset load_preset(const std::string& spec, std::uint64_t seed) {
  using R = Rational;
  if (spec == "appendixA1a")
    return arrangement_preset(spec, "four lines with H1 || H2 and three lines through (1/2, 3/2); 9 chambers",
                              Arrangement(2, {line(1, -1, 1, "H1"), line(1, -1, -1, "H2"), line(1, 1, -2, "H3"),
                                              line(1, 0, R(-1, 2), "H4")}));
  if (spec == "appendixA1b")
    return arrangement_preset(spec, "the modified four lines as printed; H1, H3, H4 still meet at (1/2, 3/2)",
                              Arrangement(2, {line(1, -1, 1, "H1"), line(0, 1, -1, "H2"), line(1, 1, -2, "H3"),
                                              line(1, 0, R(-1, 2), "H4")}));
  if (spec == "appendixA1b_gp")
    return arrangement_preset(spec, "modified four lines with H4 moved to x = 1/3; general position, 11 chambers",
                              Arrangement(2, {line(1, -1, 1, "H1"), line(0, 1, -1, "H2"), line(1, 1, -2, "H3"),
                                              line(1, 0, R(-1, 3), "H4")}));
  if (spec == "appendixA2") {
    Preset p;
    p.name = spec;
    p.description = "invariant shallow net on R^2 with blocks (2, 1/2, -3) and (-1, 6, 0)";
    InvariantWeights w{{{2, R(1, 2), -3}, {-1, 6, 0}}, QMatrix::from_rows({{1, 2}}), {0}};
    p.network = build_invariant_shallow(2, 2, 1, w);
    p.arrangement = p.network->first_layer_arrangement();
    p.box = auto_clip_box(*p.arrangement);
    return p;
  }
  if (spec == "example1")
    return one_dim(spec, "four translated copies of x on quarters of [0,1]",
                   piecewise_linear_1d({0, R(1, 4), R(1, 2), R(3, 4), 1}, {1, 1, 1, 1}, {0, R(-1, 4), R(-1, 2), R(-3, 4)}, spec));
  if (spec == "example2")
    return one_dim(spec, "tent wave with slopes +1, -1 on quarters of [0,1]",
                   piecewise_linear_1d({0, R(1, 4), R(1, 2), R(3, 4), 1}, {1, -1, 1, -1}, {0, R(1, 2), R(-1, 2), 1}, spec));
  if (spec == "example3")
    return one_dim(spec, "breakpoints 1/7, 2/5, 2/3; four pieces of different lengths",
                   piecewise_linear_1d({0, R(1, 7), R(2, 5), R(2, 3), 1}, {2, -1, 3, R(1, 2)},
                                       {0, R(3, 7), R(-41, 35), R(52, 105)}, spec));
  if (spec == "example4")
    return one_dim(spec, "two halves with slopes 1 and -3", piecewise_linear_1d({0, R(1, 2), 1}, {1, -3}, {0, 2}, spec));
  if (spec == "example5")
    return one_dim(spec, "step function 0 then 1", piecewise_linear_1d({0, R(1, 2), 1}, {0, 0}, {0, 1}, spec));

  const auto [name, args] = split_call(spec);
  if (name == "montufar") {
    if (args.size() < 1) throw Error("preset montufar(n, p_1, ...): missing n");
    const std::size_t n = args[0];
    if (n != 1 && n != 2) throw Error("preset montufar: default heads exist for n = 1 and n = 2 only; use --input for others");
    std::vector<std::size_t> ps(args.begin() + 1, args.end());
    Preset p;
    p.name = spec;
    p.description = "folding levels with unequal parts followed by a general-position head";
    p.network = build_montufar_variant(fold_spec(n, ps, false), n == 1 ? default_fold_head_1d() : default_fold_head_2d());
    p.box = ClipBox{QVector(n, 0), QVector(n, 1)};
    return p;
  }
  if (name == "deepset") {
    if (args.size() < 1 || args[0] != 2) throw Error("preset deepset(n, p_1, ...): the default head needs n = 2");
    std::vector<std::size_t> ps(args.begin() + 1, args.end());
    Preset p;
    p.name = spec;
    p.description = "shared-part folding levels followed by an invariant head";
    p.network = build_deep_set_variant(fold_spec(2, ps, true), default_deep_set_head());
    p.box = ClipBox{QVector(2, 0), QVector(2, 1)};
    return p;
  }
  if (name == "fc") {
    if (args.size() != 2) throw Error("preset fc(n0, n1): expected two arguments");
    Preset p;
    p.name = spec;
    p.description = "seeded fully connected shallow net";
    p.network = build_fc_shallow(args[0], args[1], 1, std::nullopt, seed);
    p.arrangement = p.network->first_layer_arrangement();
    p.box = auto_clip_box(*p.arrangement);
    return p;
  }
  if (name == "inv") {
    if (args.size() != 2) throw Error("preset inv(m, n): expected two arguments");
    Preset p;
    p.name = spec;
    p.description = "seeded invariant shallow net";
    p.network = build_invariant_shallow(args[1], args[0], 1, std::nullopt, seed);
    p.arrangement = p.network->first_layer_arrangement();
    p.box = auto_clip_box(*p.arrangement);
    return p;
  }
  std::string known;
  for (const auto& s : preset_names()) known += (known.empty() ? "" : ", ") + s;
  throw Error("unknown preset '" + spec + "' (known: " + known + ")");
}

}  // namespace pwl
