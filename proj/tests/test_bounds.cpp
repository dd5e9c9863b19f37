#include <catch_amalgamated.hpp>

#include "pwl/arrangement.hpp"
#include "pwl/bounds.hpp"
#include "pwl/group.hpp"
#include "pwl/network.hpp"
#include "pwl/presets.hpp"

using namespace pwl;

namespace {
Rational q(const char* s) { return parse_rational(s); }

Arrangement generic_invariant(std::size_t m, std::size_t n, std::uint64_t seed) {
  RationalRng rng(seed);
  for (;;) {
    std::vector<InvariantParams> ps;
    for (std::size_t i = 0; i < m; ++i) ps.push_back({rng.nonzero(1000, 997), rng.nonzero(1000, 997), rng.next(1000, 997)});
    auto inv = build_invariant_arrangement(ps, n);
    if (!inv.report.degenerate()) return inv.arrangement;
  }
}
}  // namespace

TEST_CASE("schlafli numbers") {
  CHECK(schlafli(2, 4) == 11);
  CHECK(schlafli(1, 5) == 6);
  CHECK(schlafli(3, 3) == 8);
  CHECK(schlafli(5, 3) == 8);
  CHECK(schlafli(0, 7) == 1);
}

TEST_CASE("entropy power closed form") {
  // 2^{4 H(1/2)} = 16
  CHECK(entropy_power(2, 4) == 16);
  // 3^3 / (1 * 2^2)
  CHECK(entropy_power(1, 3) == q("27/4"));
  CHECK(entropy_power(0, 5) == 1);
}

TEST_CASE("entropy sandwich holds and is directed") {
  for (std::size_t n1 = 1; n1 <= 24; ++n1)
    for (std::size_t n0 = 0; 2 * n0 <= n1; ++n0) {
      auto e = entropy_bounds_fc(n0, n1, 30);
      CHECK(e.schlafli == schlafli(n0, n1));
      CHECK(e.lower.value <= Rational(e.schlafli));
      CHECK(Rational(e.schlafli) <= e.upper.value);
      CHECK(e.lower.direction == Direction::lower);
      CHECK(e.upper.direction == Direction::upper);
      // a more precise evaluation stays on the same side
      auto f = entropy_bounds_fc(n0, n1, 60);
      CHECK(e.lower.value <= f.lower.value + q("1/1000000000000000000000000"));
      CHECK(f.upper.value <= e.upper.value + q("1/1000000000000000000000000"));
    }
  CHECK_THROWS(entropy_bounds_fc(3, 4));
}

TEST_CASE("b recurrence matches enumeration") {
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 1; n <= 3; ++n) {
      if (m * n > 6) continue;
      auto a = generic_invariant(m, n, 10 * m + n);
      CHECK(b_recurrence(m, n, n) == count_chambers_deletion_restriction(a));
    }
  CHECK(b_recurrence(2, 2, 2) == 11);
}

TEST_CASE("c^k_n recurrence conventions") {
  auto a = *load_preset("appendixA2").arrangement;
  auto base = ckn_bases(a);
  REQUIRE(base.size() == 3);
  CHECK(base[0] == 1);
  CHECK(base[2] == 11);
  CHECK(ckn_recurrence(2, base) == 14);
  CHECK(ckn_recurrence(2, base) == orbit_count_kamiya(a, 2).union_chambers);
  CHECK(ckn_recurrence(2, base, CknConvention::stated) == 22);
  // empty B: the Coxeter arrangement alone has n! chambers
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<Integer> ones(n + 1, Integer(1));
    CHECK(ckn_recurrence(n, ones) == factorial(n));
  }
  CHECK_THROWS(ckn_recurrence(3, {Integer(1), Integer(2)}));
}

TEST_CASE("c^k_n exact convention counts Kamiya chambers") {
  for (std::size_t m = 1; m <= 2; ++m)
    for (std::size_t n = 2; n <= 3; ++n) {
      auto a = generic_invariant(m, n, 7 * m + n);
      CHECK(ckn_recurrence(n, ckn_bases(a)) == orbit_count_kamiya(a, n).union_chambers);
    }
}

TEST_CASE("invariant upper bound") {
  CHECK(invariant_alpha(2) == 4);
  CHECK(invariant_alpha(3) == q("27/4"));
  CHECK(generalized_factorial(q("7/2")) == q("7/2") * q("5/2") * q("3/2") * q("1/2"));
  CHECK(generalized_factorial(0) == 1);
  // m = 2, n = 2: (6)!/(4! 2!) = 15
  auto b = invariant_upper_bound(2, 2);
  CHECK(b.value == 15);
  CHECK(b.direction == Direction::upper);
  CHECK(b.digits == 0);
  CHECK(b.text() == "15");
  CHECK(invariant_upper_bound(3, 1).text() == "31/4");
  // the bound dominates the orbit counts
  for (std::size_t n = 2; n <= 3; ++n) {
    auto a = generic_invariant(2, n, 6 + n);
    CHECK(Rational(orbit_count_kamiya(a, n).orbits) <= invariant_upper_bound(2, n).value);
  }
}

TEST_CASE("leading term") {
  std::vector<Rational> sums{q("1"), q("2"), q("4"), q("17/2")};
  for (std::size_t n = 1; n <= 4; ++n) {
    auto lt = leading_term_lower(n, n);
    CHECK(lt.leading_sum == sums[n - 1]);
    CHECK(observed_leading_coefficient(n) == sums[n - 1]);
    CHECK(lt.bound.direction == Direction::lower);
    CHECK(lt.multinomial_at_quarter <= lt.leading_sum);
  }
  CHECK_THROWS(leading_term_lower(1, 2));
}

TEST_CASE("montufar count") {
  CHECK(montufar_count({}, 2, 4) == 11);
  CHECK(montufar_count({6}, 2, 4) == 99);
  CHECK(montufar_count({4}, 2, 4) == 44);
  CHECK(montufar_count({3}, 1, 1) == 6);
}

TEST_CASE("guides are labeled as guides") {
  auto g = fc_shallow_guide(2, 2);
  CHECK(g.direction == Direction::guide);
  CHECK(to_string(Direction::guide) == "asymptotic guide, not exact count");
  CHECK(deep_invariant_guide({2, 2}, 2).direction == Direction::guide);
  CHECK(shallow_invariant_guide({2}, 2).direction == Direction::guide);
  auto lo = fc_entropy_lower(2, 2);
  CHECK(lo.direction == Direction::lower);
  CHECK(lo.value <= Rational(schlafli(2, 4)));
}
