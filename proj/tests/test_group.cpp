#include <catch_amalgamated.hpp>

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

TEST_CASE("permutation algebra satisfies the group axioms") {
  auto all = all_permutations(4);
  CHECK(all.size() == 24);
  CHECK(std::is_sorted(all.begin(), all.end()));
  auto e = Permutation::identity(4);
  for (const auto& a : all) {
    CHECK((a * e) == a);
    CHECK((a * a.inverse()).is_identity());
    for (const auto& b : all) {
      auto ab = a * b;
      CHECK(std::find(all.begin(), all.end(), ab) != all.end());
      for (std::size_t i = 0; i < 4; ++i) CHECK(ab(i) == a(b(i)));
    }
  }
}

TEST_CASE("action on vectors is a left action and matches the matrix") {
  QVector x{q("1"), q("2"), q("3")};
  auto all = all_permutations(3);
  for (const auto& a : all) {
    CHECK(a.matrix() * x == a.act(x));
    CHECK(is_orthogonal(a.matrix()));
    for (const auto& b : all) CHECK((a * b).act(x) == a.act(b.act(x)));
  }
  auto t = Permutation::transposition(3, 0, 2);
  CHECK(t.act(x) == QVector{q("3"), q("2"), q("1")});
  CHECK_THROWS(Permutation({0, 0, 1}));
}

TEST_CASE("union-find keeps the smaller representative") {
  UnionFind uf(6);
  uf.unite(4, 2);
  uf.unite(5, 4);
  uf.unite(1, 3);
  CHECK(uf.find(5) == 2);
  CHECK(uf.components() == 3);
  auto cls = uf.classes();
  REQUIRE(cls.size() == 3);
  CHECK(cls[0] == std::vector<std::size_t>{0});
  CHECK(cls[1] == std::vector<std::size_t>{1, 3});
  CHECK(cls[2] == std::vector<std::size_t>{2, 4, 5});
}

TEST_CASE("S_n permutes the hyperplanes of an invariant arrangement") {
  auto a = generic_invariant(2, 3, 1);
  for (const auto& s : all_permutations(3)) {
    auto img = act_on_hyperplanes(a, s);
    auto sorted = img;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
  }
  Arrangement not_stable(2, {{{q("1"), q("0")}, q("-1"), "a"}});
  CHECK_THROWS(act_on_hyperplanes(not_stable, Permutation::transposition(2, 0, 1)));
}

TEST_CASE("chamber images form a group action") {
  auto a = *load_preset("appendixA2").arrangement;
  auto ch = enumerate_chambers(a);
  auto action = PermutationAction::symmetric_group(2);
  auto images = act_on_chambers(a, ch, action);
  for (const auto& img : images) {
    auto sorted = img;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
  }
  CHECK(chamber_orbits(a, ch, action).size() == 7);
}

TEST_CASE("orbit counts: direct equals Kamiya") {
  auto a2 = *load_preset("appendixA2").arrangement;
  auto k = orbit_count_kamiya(a2, 2);
  CHECK(k.union_chambers == 14);
  CHECK(k.orbits == 7);
  CHECK(orbit_count_direct(a2, PermutationAction::generated_by_adjacent(2)) == 7);

  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 2; n <= 3; ++n) {
      if (m == 3 && n == 3) continue;
      auto a = generic_invariant(m, n, 100 * m + n);
      auto kam = orbit_count_kamiya(a, n);
      CHECK(kam.orbits == orbit_count_direct(a, PermutationAction::generated_by_adjacent(n)));
      CHECK(kam.union_chambers == kam.orbits * factorial(n));
    }
}

TEST_CASE("trivial action has one orbit per chamber") {
  auto a = *load_preset("appendixA1b_gp").arrangement;
  CHECK(orbit_count_direct(a, PermutationAction::trivial(2)) == 11);
}
