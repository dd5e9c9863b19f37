#include "pwl/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pwl {

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string strip_plus(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return std::string(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    Integer d(strip_plus(den));
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(Integer(strip_plus(num)), d);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    std::string digits = std::string(whole.empty() || whole == "-" || whole == "+" ? "0" : strip_plus(whole));
    if (!valid_integer(digits) || (!frac.empty() && !valid_integer(frac)) || (!frac.empty() && (frac[0] == '-' || frac[0] == '+')))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac));
    Integer w(digits);
    if (neg && w == 0) f = -f;
    else if (w < 0) f = -f;
    return Rational(w) + Rational(f, scale);
  }
  if (!valid_integer(s)) throw ParseError("malformed rational '" + std::string(text) + "'");
  return Rational(Integer(strip_plus(s)));
}

std::string to_pq(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

std::string to_decimal(const Rational& q, int significant) {
  if (q == 0) return "0";
  Rational mag = abs(q);
  auto pow10 = [](int k) {
    Integer p = 1;
    for (int i = 0; i < k; ++i) p *= 10;
    return p;
  };
  // 10^e <= mag < 10^(e+1)
  int e = static_cast<int>(boost::multiprecision::numerator(mag).str().size()) -
          static_cast<int>(boost::multiprecision::denominator(mag).str().size());
  auto scaled = [&](int ex) { return ex >= 0 ? Rational(pow10(ex)) : Rational(1, pow10(-ex)); };
  while (mag < scaled(e)) --e;
  while (mag >= scaled(e + 1)) ++e;

  int k = significant - 1 - e;
  Rational s = mag * scaled(k);
  Integer n = boost::multiprecision::numerator(s) / boost::multiprecision::denominator(s);
  if (s - Rational(n) >= Rational(1, 2)) n += 1;  // half-up
  if (n == pow10(significant)) {
    n /= 10;
    ++e;
  }
  std::string digits = n.str();
  std::string out;
  if (e >= significant - 1) {
    out = digits + std::string(e - (significant - 1), '0');
  } else if (e >= 0) {
    out = digits.substr(0, e + 1) + "." + digits.substr(e + 1);
  } else {
    out = "0." + std::string(-e - 1, '0') + digits;
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return q < 0 ? "-" + out : out;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

int sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Integer r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

QVector operator+(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector add: size mismatch");
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVector operator-(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector sub: size mismatch");
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVector operator*(const Rational& s, const QVector& v) {
  QVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

Rational squared_norm(const QVector& v) { return dot(v, v); }

bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

bool lex_less(const QVector& a, const QVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string to_string(const QVector& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].str();
  os << ")";
  return os.str();
}

}  // namespace pwl
