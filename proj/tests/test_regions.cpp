#include <catch_amalgamated.hpp>

#include "pwl/bounds.hpp"
#include "pwl/network.hpp"
#include "pwl/presets.hpp"
#include "pwl/regions.hpp"

using namespace pwl;

namespace {
Rational q(const char* s) { return parse_rational(s); }

ClipBox square(const char* lo, const char* hi, std::size_t n = 2) {
  return {QVector(n, q(lo)), QVector(n, q(hi))};
}

// Every sample lands in a piece whose map agrees with the network.
void check_pieces_reproduce(const ReluNetwork& net, const PieceSet& set, std::uint64_t seed) {
  RationalRng rng(seed);
  for (int i = 0; i < 100; ++i) {
    QVector x(set.box.lo.size());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = rng.in_range(set.box.lo[j], set.box.hi[j], 1009);
    const auto& p = piece_at(set, x);
    CHECK(p.contains(x));
    CHECK(p.evaluate(x) == net.forward(x));
  }
}
}  // namespace

TEST_CASE("single ReLU in 1-D has two pieces") {
  FcWeights w{QMatrix::from_rows({{q("1")}}), {q("0")}, QMatrix::from_rows({{q("1")}}), {q("0")}};
  auto net = build_fc_shallow(1, 1, 1, w);
  auto set = enumerate_pieces(net, square("-1", "1", 1));
  REQUIRE(set.pieces.size() == 2);
  CHECK(volume_conserved(set));
  CHECK(set.pieces[0].volume == 1);
}

TEST_CASE("cancelling units merge into one piece") {
  // relu(x) - relu(-x) = x is linear everywhere
  FcWeights w{QMatrix::from_rows({{q("1")}, {q("-1")}}), {q("0"), q("0")}, QMatrix::from_rows({{q("1"), q("-1")}}),
              {q("0")}};
  auto net = build_fc_shallow(1, 2, 1, w);
  auto box = square("-1", "1", 1);
  CHECK(enumerate_cells(net, box).size() == 2);
  auto set = enumerate_pieces(net, box);
  CHECK(set.pieces.size() == 1);
  CHECK(set.pieces[0].volume == 2);
}

TEST_CASE("generic shallow networks: pieces equal chambers in the box") {
  for (std::size_t n1 = 1; n1 <= 5; ++n1) {
    auto net = build_fc_shallow(2, n1, 1, std::nullopt, n1);
    auto arr = net.first_layer_arrangement();
    auto box = auto_clip_box(arr);
    auto set = enumerate_pieces(net, box);
    CHECK(set.pieces.size() == schlafli(2, n1));
    CHECK(volume_conserved(set));
    check_pieces_reproduce(net, set, n1);
  }
}

TEST_CASE("deep networks: pieces reproduce the function") {
  auto net = build_fc_deep({2, 3, 3, 1}, 4);
  auto set = enumerate_pieces(net, square("-2", "2"));
  CHECK(volume_conserved(set));
  CHECK(set.pieces.size() <= projected_piece_bound(net));
  check_pieces_reproduce(net, set, 9);
}

TEST_CASE("merging is idempotent") {
  auto net = build_fc_deep({2, 3, 2, 1}, 6);
  auto set = enumerate_pieces(net, square("-1", "1"));
  auto again = remerge(set);
  CHECK(again.pieces.size() == set.pieces.size());
  for (std::size_t i = 0; i < set.pieces.size(); ++i) {
    CHECK(again.pieces[i].map == set.pieces[i].map);
    CHECK(again.pieces[i].volume == set.pieces[i].volume);
  }
}

TEST_CASE("distinct pieces have distinct maps or are disconnected") {
  auto net = build_fc_shallow(2, 4, 1, std::nullopt, 3);
  auto set = enumerate_pieces(net, auto_clip_box(net.first_layer_arrangement()));
  for (const auto& p : set.pieces) CHECK(p.convex);
  for (std::size_t i = 0; i < set.pieces.size(); ++i)
    for (std::size_t j = i + 1; j < set.pieces.size(); ++j) CHECK_FALSE(set.pieces[i].map == set.pieces[j].map);
}

TEST_CASE("cap guardrail refuses large enumerations") {
  auto p = load_preset("montufar(2,3,3)");
  EnumerationOptions opts;
  opts.cap = 10;
  CHECK_THROWS_AS(enumerate_pieces(*p.network, *p.box, opts), CapExceeded);
  opts.override_cap = true;
  CHECK_NOTHROW(enumerate_pieces(*p.network, *p.box, opts));
}

TEST_CASE("folding networks hit the closed-form count") {
  auto p = load_preset("montufar(2,3)");
  auto set = enumerate_pieces(*p.network, *p.box);
  CHECK(set.pieces.size() == montufar_count({6}, 2, 4));
  CHECK(volume_conserved(set));
  check_pieces_reproduce(*p.network, set, 1);
  auto p1 = load_preset("montufar(1,3)");
  CHECK(enumerate_pieces(*p1.network, *p1.box).pieces.size() == 6);
}

TEST_CASE("one-dimensional piece sets") {
  auto set = piecewise_linear_1d({q("0"), q("1/2"), q("1")}, {q("1"), q("1")}, {q("0"), q("0")}, "t");
  CHECK(set.pieces.size() == 1);
  auto kept = piecewise_linear_1d({q("0"), q("1/2"), q("1")}, {q("1"), q("1")}, {q("0"), q("0")}, "t", false);
  CHECK(kept.pieces.size() == 2);
  auto ex3 = *load_preset("example3").pieces;
  REQUIRE(ex3.pieces.size() == 4);
  CHECK(volume_conserved(ex3));
  // continuity at the breaks
  for (std::size_t i = 0; i + 1 < ex3.pieces.size(); ++i) {
    auto hi = ex3.pieces[i].vertices.back();
    CHECK(ex3.pieces[i].evaluate(hi) == ex3.pieces[i + 1].evaluate(hi));
  }
  CHECK_THROWS(piecewise_linear_1d({q("0"), q("1")}, {q("1"), q("2")}, {q("0")}, "bad"));
}

TEST_CASE("piece lookup breaks ties deterministically") {
  auto set = piecewise_linear_1d({q("0"), q("1/2"), q("1")}, {q("1"), q("-1")}, {q("0"), q("1")}, "tent");
  const auto& a = piece_at(set, {q("1/2")});
  const auto& b = piece_at(set, {q("1/2")});
  CHECK(&a == &b);
  CHECK_THROWS(piece_at(set, {q("2")}));
}
