#include <catch_amalgamated.hpp>

#include "pwl/linalg.hpp"
#include "pwl/network.hpp"
#include "pwl/rational.hpp"

using namespace pwl;

namespace {
Rational q(const char* s) { return parse_rational(s); }

QMatrix random_matrix(RationalRng& rng, std::size_t r, std::size_t c) {
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.next();
  return m;
}
}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(to_pq(Rational(-2, 4)) == "-1/2");
  CHECK(to_pq(Rational(3)) == "3/1");
  CHECK(parse_rational(to_pq(Rational(22, 7))) == Rational(22, 7));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK(to_decimal(Rational(1, 3), 5) == "0.33333");
}

TEST_CASE("binomials and factorials") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(4, 7) == 0);
  CHECK(factorial(0) == 1);
  CHECK(factorial(6) == 720);
}

TEST_CASE("determinant and rank of known matrices") {
  auto m = QMatrix::from_rows({{q("2"), q("1")}, {q("1"), q("3")}});
  CHECK(determinant(m) == 5);
  CHECK(rank(m) == 2);
  auto s = QMatrix::from_rows({{q("1"), q("2"), q("3")}, {q("2"), q("4"), q("6")}, {q("0"), q("1"), q("1")}});
  CHECK(determinant(s) == 0);
  CHECK(rank(s) == 2);
  auto ns = null_space(s);
  REQUIRE(ns.size() == 1);
  CHECK(is_zero(s * ns[0]));
}

TEST_CASE("characteristic polynomial of a triangular matrix") {
  auto m = QMatrix::from_rows({{q("1"), q("5")}, {q("0"), q("3")}});
  // (t-1)(t-3) = t^2 - 4t + 3
  auto c = characteristic_polynomial(m);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 3);
  CHECK(c[1] == -4);
  CHECK(c[2] == 1);
}

TEST_CASE("solvers agree with the system on random inputs") {
  RationalRng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_matrix(rng, 3, 3);
    QVector rhs{rng.next(), rng.next(), rng.next()};
    auto x = solve_square(m, rhs);
    if (determinant(m) != 0) {
      REQUIRE(x);
      CHECK(m * *x == rhs);
    } else {
      CHECK_FALSE(x);
    }
    auto wide = random_matrix(rng, 2, 4);
    QVector r2{rng.next(), rng.next()};
    auto any = solve_any(wide, r2);
    auto ln = solve_least_norm(wide, r2);
    if (rank(wide) == 2) {
      REQUIRE(any);
      REQUIRE(ln);
      CHECK(wide * *any == r2);
      CHECK(wide * *ln == r2);
      CHECK(squared_norm(*ln) <= squared_norm(*any));
      // least-norm solution is orthogonal to the null space
      for (const auto& v : null_space(wide)) CHECK(dot(*ln, v) == 0);
    }
  }
}

TEST_CASE("rank-nullity on random matrices") {
  RationalRng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_matrix(rng, 2 + trial % 3, 4);
    CHECK(rank(m) + null_space(m).size() == m.cols());
    CHECK(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE("determinant is multiplicative") {
  RationalRng rng(9);
  for (int trial = 0; trial < 15; ++trial) {
    auto a = random_matrix(rng, 3, 3);
    auto b = random_matrix(rng, 3, 3);
    CHECK(determinant(a * b) == determinant(a) * determinant(b));
  }
}

TEST_CASE("orthogonality and affine solving") {
  auto rot = QMatrix::from_rows({{q("3/5"), q("-4/5")}, {q("4/5"), q("3/5")}});
  CHECK(is_orthogonal(rot));
  CHECK_FALSE(is_orthogonal(QMatrix::from_rows({{q("1"), q("1")}, {q("0"), q("1")}})));

  AffineMap phi{rot, {q("1/2"), q("-2")}};
  std::vector<QVector> src{{q("0"), q("0")}, {q("1"), q("0")}, {q("0"), q("1")}, {q("1"), q("1")}};
  std::vector<QVector> dst;
  for (const auto& s : src) dst.push_back(phi.apply(s));
  auto got = solve_affine_from_point_pairs(src, dst);
  REQUIRE(std::holds_alternative<AffineMap>(got));
  CHECK(std::get<AffineMap>(got) == phi);

  std::vector<QVector> collinear{{q("0"), q("0")}, {q("1"), q("1")}};
  auto under = solve_affine_from_point_pairs(collinear, collinear);
  REQUIRE(std::holds_alternative<AffineSolveFailure>(under));
  CHECK(std::get<AffineSolveFailure>(under) == AffineSolveFailure::underdetermined);

  auto bad = dst;
  bad[3][0] += 1;
  auto inc = solve_affine_from_point_pairs(src, bad);
  REQUIRE(std::holds_alternative<AffineSolveFailure>(inc));
  CHECK(std::get<AffineSolveFailure>(inc) == AffineSolveFailure::inconsistent);
}

TEST_CASE("affine dimension") {
  CHECK(affine_dimension({}) == -1);
  CHECK(affine_dimension({{q("1"), q("2")}}) == 0);
  CHECK(affine_dimension({{q("0"), q("0")}, {q("1"), q("1")}, {q("2"), q("2")}}) == 1);
  CHECK(affine_dimension({{q("0"), q("0")}, {q("1"), q("0")}, {q("0"), q("1")}}) == 2);
}
