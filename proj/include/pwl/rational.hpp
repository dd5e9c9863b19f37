#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace pwl {

/// Exact rational scalar. GMP keeps it in lowest terms with a positive
/// denominator after every operation.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using QVector = std::vector<Rational>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parses "p/q", "p" or a finite decimal such as "-0.25".
Rational parse_rational(std::string_view text);

/// Always "p/q" (q >= 1), the interchange form used in JSON.
std::string to_pq(const Rational& q);

/// Decimal rendering with the given number of significant digits.
std::string to_decimal(const Rational& q, int significant = 12);

Rational abs(const Rational& q);
int sign(const Rational& q);

Integer binomial(unsigned n, unsigned k);
Integer factorial(unsigned n);

Rational dot(const QVector& a, const QVector& b);
QVector operator+(const QVector& a, const QVector& b);
QVector operator-(const QVector& a, const QVector& b);
QVector operator*(const Rational& s, const QVector& v);
Rational squared_norm(const QVector& v);
bool is_zero(const QVector& v);

/// Lexicographic comparison; used for every deterministic ordering.
bool lex_less(const QVector& a, const QVector& b);

std::string to_string(const QVector& v);

}  // namespace pwl
