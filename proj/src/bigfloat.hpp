#pragma once

#include <string>

#include "pwl/rational.hpp"

// Directed-rounding evaluation on top of MPFR. Every result comes back as an
// exact dyadic rational so that later comparisons stay exact.
namespace pwl::mp {

enum class Round { down, up, nearest };

long bits_for_digits(int digits);

Rational sqrt_of(const Rational& q, Round r, int digits);
Rational exp2_of(const Rational& e, Round r, int digits);
Rational exp_of(const Rational& e, Round r, int digits);

/// Decimal rendering with `digits` significant digits, rounded in direction r.
std::string decimal(const Rational& q, Round r, int digits);

}  // namespace pwl::mp
