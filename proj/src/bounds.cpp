#include "pwl/bounds.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "bigfloat.hpp"

namespace pwl {

std::string to_string(Direction d) {
  switch (d) {
    case Direction::exact: return "exact";
    case Direction::lower: return "lower";
    case Direction::upper: return "upper";
    case Direction::guide: return "asymptotic guide, not exact count";
  }
  return "?";
}

std::string BoundValue::text(int significant) const {
  if (digits == 0) return denominator(value) == 1 ? numerator(value).str() : to_pq(value);
  const auto r = direction == Direction::lower ? mp::Round::down
                 : direction == Direction::upper ? mp::Round::up
                                                 : mp::Round::nearest;
  return mp::decimal(value, r, significant);
}

namespace {

Rational power(const Rational& base, std::size_t e) {
  Rational out = 1;
  for (std::size_t i = 0; i < e; ++i) out *= base;
  return out;
}

std::string args(std::initializer_list<std::pair<const char*, std::size_t>> kv) {
  std::string s;
  for (const auto& [k, v] : kv) {
    if (!s.empty()) s += ", ";
    s += std::string(k) + "=" + std::to_string(v);
  }
  return s;
}

std::string list(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace

Integer schlafli(std::size_t n0, std::size_t n1) {
  Integer s = 0;
  for (std::size_t i = 0; i <= std::min(n0, n1); ++i) s += binomial(static_cast<unsigned>(n1), static_cast<unsigned>(i));
  return s;
}

Rational entropy_power(std::size_t n0, std::size_t n1) {
  if (n0 > n1) throw Error("entropy_power: n0 exceeds n1");
  return power(Rational(n1), n1) / (power(Rational(n0), n0) * power(Rational(n1 - n0), n1 - n0));
}

EntropyBounds entropy_bounds_fc(std::size_t n0, std::size_t n1, int digits) {
  if (2 * n0 > n1)
    throw Error("entropy_bounds_fc: the estimate holds only for 0 <= n0 <= n1/2 (got n0=" + std::to_string(n0) +
                ", n1=" + std::to_string(n1) + ")");
  EntropyBounds out;
  out.schlafli = schlafli(n0, n1);
  const std::string in = args({{"n0", n0}, {"n1", n1}});
  const Rational e = entropy_power(n0, n1);
  out.upper = {"entropy_upper", in, e, Direction::upper, 0, "2^(n1 H(n0/n1))"};
  if (n0 == 0) {
    // H(0) = 0 and the square-root factor vanishes; the only chamber is R^n0.
    out.lower = {"entropy_lower", in, 1, Direction::lower, 0, "1 (n0 = 0)"};
  } else {
    const Rational y = Rational(8 * n0) * (1 - Rational(n0, n1));
    out.lower = {"entropy_lower", in, e / mp::sqrt_of(y, mp::Round::up, digits), Direction::lower, digits,
                 "2^(n1 H(n0/n1)) / sqrt(8 n0 (1 - n0/n1))"};
    // exact form of lower <= schlafli: e^2 <= s^2 y
    const Rational s(out.schlafli);
    if (e * e > s * s * y) throw Error("entropy_bounds_fc: lower estimate exceeds the chamber count");
  }
  if (Rational(out.schlafli) > e) throw Error("entropy_bounds_fc: chamber count exceeds the upper estimate");
  return out;
}

Integer b_recurrence(std::size_t m, std::size_t n, std::size_t l) {
  static std::mutex mu;
  static std::map<std::tuple<long, long, long>, Integer> memo;
  struct Eval {
    Integer operator()(long m, long n, long l) const {
      if (l < 0) return 0;
      if (l == 0 || m == 0 || n == 0) return 1;
      const auto key = std::make_tuple(m, n, l);
      if (auto it = memo.find(key); it != memo.end()) return it->second;
      Integer v = (*this)(m, n - 1, l) + Integer(m) * (*this)(m, n - 1, l - 1) +
                  Integer(m * (m - 1) / 2) * (*this)(m - 1, n - 1, l - 2);
      memo.emplace(key, v);
      return v;
    }
  };
  std::lock_guard lock(mu);
  return Eval{}(static_cast<long>(m), static_cast<long>(n), static_cast<long>(l));
}

Integer ckn_recurrence(std::size_t n, const std::vector<Integer>& base, CknConvention convention) {
  if (base.size() < n + 1)
    throw Error("ckn_recurrence: missing base value c^0_" + std::to_string(base.size()) + " (need j = 0.." +
                std::to_string(n) + ")");
  std::vector<Integer> row(base.begin(), base.begin() + static_cast<long>(n) + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    const Integer mult = convention == CknConvention::stated ? Integer(k) : Integer(k - 1);
    // descending j so row[j-1] is still the previous level
    for (std::size_t j = n; j >= k; --j) row[j] += mult * row[j - 1];
  }
  return row[n];
}

std::vector<Integer> ckn_bases(const Arrangement& b) {
  const std::size_t n = b.dim();
  std::vector<Integer> base(n + 1);
  base[0] = 1;
  for (std::size_t j = 1; j <= n; ++j) {
    AffineChart chart{QMatrix(n, j), QVector(n)};
    const std::size_t tied = n - j + 1;
    for (std::size_t r = 0; r < tied; ++r) chart.basis(r, 0) = 1;
    for (std::size_t c = 1; c < j; ++c) chart.basis(tied + c - 1, c) = 1;
    base[j] = count_chambers_deletion_restriction(restrict_to(b, chart));
  }
  return base;
}

Rational invariant_alpha(std::size_t m) {
  if (m < 1) throw Error("invariant_alpha: m must be positive");
  return power(Rational(m), m) / power(Rational(m - 1), m - 1);
}

Rational generalized_factorial(const Rational& g) {
  if (g < 0) throw Error("generalized_factorial: negative argument");
  Rational out = 1;
  for (Rational k = 0; k < g; k += 1) out *= g - k;
  return out;
}

BoundValue invariant_upper_bound(std::size_t m, std::size_t n) {
  if (m < 2) throw Error("invariant_upper_bound: requires m >= 2");
  const Rational a = invariant_alpha(m);
  const Rational v = generalized_factorial(Rational(n) + a) / (generalized_factorial(a) * Rational(factorial(n)));
  return {"invariant_upper", args({{"m", m}, {"n", n}}), v, Direction::upper, 0,
          "(n+alpha)!/(alpha! n!), alpha = m^m/(m-1)^(m-1)"};
}

LeadingTerm leading_term_lower(std::size_t m, std::size_t n, int digits) {
  if (n == 0) throw Error("leading_term_lower: requires n >= 1");
  if (2 * m <= n) throw Error("leading_term_lower: requires m > n/2 (got m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
  LeadingTerm out;
  const Rational e = Rational(5 * static_cast<long>(n), 4) - Rational(1, 2);
  out.bound = {"leading_lower", args({{"m", m}, {"n", n}}), mp::exp2_of(e, mp::Round::down, digits) / Rational(n),
               Direction::lower, digits, "(2^(5/4))^n / (n sqrt 2)"};
  auto term = [n](std::size_t k) {
    return Rational(factorial(n)) /
           (Rational(factorial(k)) * Rational(factorial(k)) * Rational(factorial(n - 2 * k)) * power(Rational(2), k));
  };
  out.multinomial_at_quarter = term(n / 4);
  for (std::size_t k = 0; 2 * k <= n; ++k) out.leading_sum += term(k);
  return out;
}

Rational observed_leading_coefficient(std::size_t n) {
  const std::size_t m0 = n / 2 + 1;
  Integer diff = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    const Integer c = binomial(static_cast<unsigned>(n), static_cast<unsigned>(i));
    diff += ((n - i) % 2 ? -c : c) * b_recurrence(m0 + i, n, n);
  }
  return Rational(diff) / Rational(factorial(n));
}

Integer montufar_count(const std::vector<std::size_t>& fold_widths, std::size_t n, std::size_t n_last) {
  if (n == 0) throw Error("montufar_count: n must be positive");
  Integer total = schlafli(n, n_last);
  for (auto w : fold_widths) {
    if (w < n) throw Error("montufar_count: every folding width must be at least n");
    Integer p = w / n, f = 1;
    for (std::size_t i = 0; i < n; ++i) f *= p;
    total *= f;
  }
  return total;
}

BoundValue fc_entropy_lower(std::size_t m, std::size_t n, int digits) {
  if (m < 2 || n < 1) throw Error("fc_entropy_lower: requires m >= 2 and n >= 1");
  const Rational y = Rational(8 * n) * (1 - Rational(1, m));
  return {"fc_entropy_lower", args({{"m", m}, {"n", n}}),
          power(invariant_alpha(m), n) / mp::sqrt_of(y, mp::Round::up, digits), Direction::lower, digits,
          "alpha^n / sqrt(8 n (1 - 1/m))"};
}

BoundValue fc_shallow_guide(std::size_t m, std::size_t n, int digits) {
  if (n < 1) throw Error("fc_shallow_guide: requires n >= 1");
  const auto r = mp::Round::nearest;
  const Rational v = mp::exp_of(Rational(n), r, digits) * power(Rational(m), n) /
                     (2 * mp::sqrt_of(Rational(2 * n), r, digits));
  return {"fc_shallow_guide", args({{"m", m}, {"n", n}}), v, Direction::guide, digits, "e^n m^n / (2 sqrt(2n))"};
}

BoundValue deep_invariant_guide(const std::vector<std::size_t>& ms, std::size_t n, int digits) {
  if (n < 1) throw Error("deep_invariant_guide: requires n >= 1");
  Rational prod = 1;
  for (auto m : ms) prod *= m;
  const auto r = mp::Round::nearest;
  const Rational v = power(prod, n) * mp::exp_of(Rational(n), r, digits) / mp::sqrt_of(Rational(n), r, digits);
  return {"deep_invariant_guide", "m=" + list(ms) + ", n=" + std::to_string(n), v, Direction::guide, digits,
          "(m_1...m_L e)^n / sqrt(n)"};
}

BoundValue shallow_invariant_guide(const std::vector<std::size_t>& ms, std::size_t n, int digits) {
  if (n < 1) throw Error("shallow_invariant_guide: requires n >= 1");
  Rational sum = 0;
  for (auto m : ms) sum += m;
  const auto r = mp::Round::nearest;
  const Rational v = power(sum, n) * mp::exp_of(Rational(n), r, digits) / mp::sqrt_of(Rational(n), r, digits);
  return {"shallow_invariant_guide", "m=" + list(ms) + ", n=" + std::to_string(n), v, Direction::guide, digits,
          "(m_1+...+m_L)^n e^n / sqrt(n)"};
}

}  // namespace pwl
