#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pwl/arrangement.hpp"
#include "pwl/rational.hpp"

namespace pwl {

enum class Direction { exact, lower, upper, guide };
std::string to_string(Direction d);

/// A rational value together with what it promises. Lower bounds are
/// rounded down and upper bounds up; `digits` is the working precision of
/// any transcendental step (0 when none was needed).
struct BoundValue {
  std::string formula_id;
  std::string inputs;
  Rational value;
  Direction direction = Direction::exact;
  int digits = 0;
  std::string formula;

  /// Exact "p/q" when no rounding was involved, else a directed decimal.
  std::string text(int significant = 20) const;
};

constexpr int kDefaultDigits = 50;

/// sum_{i <= n0} C(n1, i): maximal chamber count of n1 hyperplanes in R^n0.
Integer schlafli(std::size_t n0, std::size_t n1);

/// 2^{n1 H(n0/n1)} written without logarithms.
Rational entropy_power(std::size_t n0, std::size_t n1);

struct EntropyBounds {
  BoundValue lower;
  BoundValue upper;
  Integer schlafli;
};

/// Entropy sandwich around schlafli(n0, n1), valid for 0 <= n0 <= n1/2.
/// Throws if the sandwich fails to hold (it is also checked exactly).
EntropyBounds entropy_bounds_fc(std::size_t n0, std::size_t n1, int digits = kDefaultDigits);

/// Chamber count recurrence for generic invariant arrangements B_{m,n}
/// restricted to dimension l; b_recurrence(m, n, n) = |Ch(B_{m,n})|.
Integer b_recurrence(std::size_t m, std::size_t n, std::size_t l);

enum class CknConvention {
  /// c^k_n = c^{k-1}_n + k c^{k-1}_{n-1} as printed.
  stated,
  /// c^k_n = c^{k-1}_n + (k-1) c^{k-1}_{n-1}, the multiplier that counts
  /// chambers when Coxeter planes are added one at a time.
  exact
};

/// c^n_n from base[j] = c^0_j, j = 0..n.
Integer ckn_recurrence(std::size_t n, const std::vector<Integer>& base, CknConvention convention = CknConvention::exact);

/// base[j] = chambers of b restricted to the flat x_1 = ... = x_{n-j+1}
/// (a j-dimensional subspace), base[0] = 1.
std::vector<Integer> ckn_bases(const Arrangement& b);

/// 2^{m H(1/m)} = m^m / (m-1)^{m-1}, exactly.
Rational invariant_alpha(std::size_t m);

/// prod_{0 <= k < g} (g - k) for g >= 0.
Rational generalized_factorial(const Rational& g);

/// (n+alpha)! / (alpha! n!) with alpha = invariant_alpha(m); m >= 2.
BoundValue invariant_upper_bound(std::size_t m, std::size_t n);

struct LeadingTerm {
  /// (2^{5/4})^n / (n sqrt 2), rounded down.
  BoundValue bound;
  /// C(n; k, k, n-2k) / 2^k at k = floor(n/4).
  Rational multinomial_at_quarter;
  /// sum_k C(n; k, k, n-2k) / 2^k: the leading coefficient of b^n_{m,n} in m.
  Rational leading_sum;
};

/// Requires m > n/2 and n >= 1.
LeadingTerm leading_term_lower(std::size_t m, std::size_t n, int digits = kDefaultDigits);

/// Leading coefficient of m -> b^n_{m,n} from n-th finite differences over
/// m = n/2 + 1, ..., n/2 + n + 1.
Rational observed_leading_coefficient(std::size_t n);

/// prod_i floor(n_i / n)^n * sum_{k <= n} C(n_L, k). `fold_widths` are the
/// hidden folding widths n_1..n_{L-1}.
Integer montufar_count(const std::vector<std::size_t>& fold_widths, std::size_t n, std::size_t n_last);

/// alpha^n / sqrt(8 n (1 - 1/m)): entropy lower bound for a fully connected
/// shallow net with n inputs and mn hidden units (m >= 2), rounded down.
BoundValue fc_entropy_lower(std::size_t m, std::size_t n, int digits = kDefaultDigits);

// Asymptotic guides, not exact counts.
BoundValue fc_shallow_guide(std::size_t m, std::size_t n, int digits = kDefaultDigits);
BoundValue deep_invariant_guide(const std::vector<std::size_t>& ms, std::size_t n, int digits = kDefaultDigits);
BoundValue shallow_invariant_guide(const std::vector<std::size_t>& ms, std::size_t n, int digits = kDefaultDigits);

}  // namespace pwl
