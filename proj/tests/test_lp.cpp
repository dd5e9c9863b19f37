#include <catch_amalgamated.hpp>

#include "pwl/lp.hpp"
#include "pwl/network.hpp"

using namespace pwl;

namespace {
Rational q(const char* s) { return parse_rational(s); }
}

TEST_CASE("maximize on a triangle") {
  // x >= 0, y >= 0, x + 2y <= 4, 3x + y <= 6
  HPolytope p(2, {{{q("-1"), q("0")}, q("0")},
                  {{q("0"), q("-1")}, q("0")},
                  {{q("1"), q("2")}, q("4")},
                  {{q("3"), q("1")}, q("6")}});
  auto s = maximize(p, {q("1"), q("1")});
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.value == Rational(14, 5));
  CHECK(s.point == QVector{q("8/5"), q("6/5")});
  CHECK(p.contains(s.point));
}

TEST_CASE("unbounded and infeasible programs") {
  HPolytope half(2, {{{q("1"), q("0")}, q("1")}});
  CHECK(maximize(half, {q("0"), q("1")}).status == LpStatus::unbounded);
  HPolytope empty(1, {{{q("1")}, q("0")}, {{q("-1")}, q("-1")}});
  CHECK(maximize(empty, {q("1")}).status == LpStatus::infeasible);
}

TEST_CASE("strict feasibility distinguishes open and closed systems") {
  // x <= 0 and -x <= 0: the point 0 is feasible closed but not open
  HPolytope p(1, {{{q("1")}, q("0")}, {{q("-1")}, q("0")}});
  CHECK(lp_feasible(p, {false, false}).feasible);
  auto open = interior_feasible(p, true);
  CHECK_FALSE(open.feasible);
  REQUIRE(open.certificate);
  CHECK(verify_infeasibility_certificate(p, {true, true}, *open.certificate));
}

TEST_CASE("witnesses satisfy strict rows on random systems") {
  RationalRng rng(3);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    HPolytope p(2);
    for (int i = 0; i < 4; ++i) p.add({{rng.next(), rng.next()}, rng.next()});
    auto f = interior_feasible(p, true);
    if (f.feasible) {
      ++feasible;
      for (const auto& h : p.constraints())
        if (!is_zero(h.normal)) CHECK(h.strictly_contains(f.witness));
    } else {
      ++infeasible;
      REQUIRE(f.certificate);
      std::vector<bool> mask(p.size(), true);
      CHECK(verify_infeasibility_certificate(p, mask, *f.certificate));
    }
  }
  CHECK(feasible > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("LP optimum dominates sampled feasible points") {
  RationalRng rng(21);
  auto box = HPolytope::box({q("-1"), q("-1"), q("-1")}, {q("1"), q("1"), q("1")});
  for (int trial = 0; trial < 20; ++trial) {
    auto p = box.with({{rng.next(), rng.next(), rng.next()}, rng.next()});
    QVector obj{rng.next(), rng.next(), rng.next()};
    auto s = maximize(p, obj);
    if (s.status != LpStatus::optimal) continue;
    for (const auto& v : enumerate_vertices(p)) CHECK(dot(obj, v) <= s.value);
  }
}
