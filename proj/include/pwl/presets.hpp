#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pwl/arrangement.hpp"
#include "pwl/network.hpp"
#include "pwl/regions.hpp"

namespace pwl {

/// A named, fully exact instance. Arrangement presets also carry the
/// shallow network whose first layer realizes them; 1-D examples are given
/// directly as piece sets.
struct Preset {
  std::string name;
  std::string description;
  std::optional<Arrangement> arrangement;
  std::optional<ReluNetwork> network;
  std::optional<PieceSet> pieces;
  std::optional<ClipBox> box;
};

/// Accepted names:
///   appendixA1a, appendixA1b, appendixA1b_gp, appendixA2,
///   example1 .. example5,
///   montufar(n, p_1, ..., p_k)   n in {1, 2}, one fold level per p
///   deepset(n, p_1, ..., p_k)    n = 2, shared parts
///   fc(n0, n1)                   seeded fully connected shallow net
///   inv(m, n)                    seeded invariant shallow net
/// The seed only affects fc and inv.
Preset load_preset(const std::string& spec, std::uint64_t seed = 0);

std::vector<std::string> preset_names();

/// Default partition of [0,1] into p parts for a given axis and level,
/// with unequal parts.
QVector default_parts(std::size_t p, std::size_t axis, std::size_t level);

/// Four lines in general position (11 chambers) scaled into (0,1)^2.
FoldHead default_fold_head_2d();
/// One point of (0,1) (2 pieces).
FoldHead default_fold_head_1d();
/// The two-block invariant arrangement moved into (0,1)^2.
DeepSetHead default_deep_set_head();

}  // namespace pwl
