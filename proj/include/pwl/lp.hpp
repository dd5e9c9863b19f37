#pragma once

#include <optional>
#include <vector>

#include "pwl/linalg.hpp"
#include "pwl/polytope.hpp"

namespace pwl {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  QVector point;
  Rational value;
};

/// maximize objective . x subject to rows . x <= rhs with x free.
/// Two-phase dense tableau simplex with Bland's rule, exact throughout.
LpSolution maximize(const QMatrix& rows, const QVector& rhs, const QVector& objective);

LpSolution maximize(const HPolytope& p, const QVector& objective);

struct Feasibility {
  bool feasible = false;
  /// Satisfies every constraint, strictly where masked.
  QVector witness;
  /// Multipliers y >= 0 with sum y_i normal_i = 0, y . offset <= 0 and
  /// sum_{strict} y_i - y . offset = 1 (a Motzkin transposition
  /// certificate). Only filled when requested.
  std::optional<QVector> certificate;
};

/// Decides whether {normal_i . x <= offset_i} with the masked rows strict is
/// nonempty. Strict rows get a shared slack t that is maximized (capped at 1);
/// the open system is feasible iff the optimum is positive.
Feasibility lp_feasible(const HPolytope& p, const std::vector<bool>& strict_mask, bool want_certificate = false);

/// All rows strict.
Feasibility interior_feasible(const HPolytope& p, bool want_certificate = false);

/// Checks a certificate produced by lp_feasible against the system.
bool verify_infeasibility_certificate(const HPolytope& p, const std::vector<bool>& strict_mask, const QVector& y);

}  // namespace pwl
