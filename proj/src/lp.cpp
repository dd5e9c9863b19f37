#include "pwl/lp.hpp"

#include <limits>

namespace pwl {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dense tableau over nonnegative variables. Row i reads
//   sum_j t(i, j) z_j = rhs_i  with basis_[i] basic.
// cost_[j] holds the reduced cost of column j; cost_rhs_ is minus the
// current objective value.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), t_(rows * (cols + 1)), basis_(rows, kNone), cost_(cols + 1) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return t_[r * (cols_ + 1) + c]; }
  Rational& rhs(std::size_t r) { return at(r, cols_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void set_objective(const QVector& c) {
    for (std::size_t j = 0; j <= cols_; ++j) cost_[j] = j < cols_ ? c[j] : Rational(0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& cb = c[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (at(i, j) != 0) cost_[j] -= cb * at(i, j);
    }
  }

  Rational value() const { return -cost_[cols_]; }

  void pivot(std::size_t r, std::size_t e) {
    Rational inv = 1 / at(r, e);
    for (std::size_t j = 0; j <= cols_; ++j)
      if (at(r, j) != 0) at(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || at(i, e) == 0) continue;
      Rational f = at(i, e);
      for (std::size_t j = 0; j <= cols_; ++j)
        if (at(r, j) != 0) at(i, j) -= f * at(r, j);
    }
    if (cost_[e] != 0) {
      Rational f = cost_[e];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (at(r, j) != 0) cost_[j] -= f * at(r, j);
    }
    basis_[r] = e;
  }

  // Runs primal simplex with Bland's rule over columns < allowed_cols.
  // Returns false when unbounded.
  bool optimize(std::size_t allowed_cols) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < allowed_cols; ++j)
        if (cost_[j] > 0) {
          enter = j;
          break;
        }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (at(i, enter) <= 0) continue;
        Rational ratio = rhs(i) / at(i, enter);
        if (leave == kNone || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    for (std::size_t i = r + 1; i < rows_; ++i)
      for (std::size_t j = 0; j <= cols_; ++j) at(i - 1, j) = at(i, j);
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
    t_.resize(rows_ * (cols_ + 1));
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> t_;
  std::vector<std::size_t> basis_;
  QVector cost_;
};

}  // namespace

LpSolution maximize(const QMatrix& rows, const QVector& rhs, const QVector& objective) {
  const std::size_t m = rows.rows();
  const std::size_t n = rows.cols();
  if (rhs.size() != m || objective.size() != n) throw DimensionError("maximize: dimension mismatch");

  std::size_t artificial = 0;
  for (const auto& b : rhs)
    if (b < 0) ++artificial;

  // Columns: x+ (n), x- (n), slack (m), artificial.
  const std::size_t slack0 = 2 * n;
  const std::size_t art0 = slack0 + m;
  const std::size_t cols = art0 + artificial;
  Tableau tab(m, cols);
  std::size_t next_art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = rhs[i] < 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& a = rows(i, j);
      if (a == 0) continue;
      tab.at(i, j) = flip ? Rational(-a) : a;
      tab.at(i, n + j) = flip ? a : Rational(-a);
    }
    tab.at(i, slack0 + i) = flip ? -1 : 1;
    tab.rhs(i) = flip ? Rational(-rhs[i]) : rhs[i];
    if (flip) {
      tab.at(i, next_art) = 1;
      tab.basis()[i] = next_art++;
    } else {
      tab.basis()[i] = slack0 + i;
    }
  }

  if (artificial > 0) {
    QVector phase1(cols);
    for (std::size_t j = art0; j < cols; ++j) phase1[j] = -1;
    tab.set_objective(phase1);
    tab.optimize(cols);
    if (tab.value() < 0) return {LpStatus::infeasible, {}, {}};
    // Drive zero-level artificials out of the basis.
    for (std::size_t i = 0; i < tab.rows();) {
      if (tab.basis()[i] < art0) {
        ++i;
        continue;
      }
      std::size_t e = kNone;
      for (std::size_t j = 0; j < art0; ++j)
        if (tab.at(i, j) != 0) {
          e = j;
          break;
        }
      if (e == kNone) {
        tab.drop_row(i);
      } else {
        tab.pivot(i, e);
        ++i;
      }
    }
  }

  QVector phase2(cols);
  for (std::size_t j = 0; j < n; ++j) {
    phase2[j] = objective[j];
    phase2[n + j] = -objective[j];
  }
  tab.set_objective(phase2);
  if (!tab.optimize(art0)) return {LpStatus::unbounded, {}, {}};

  QVector z(cols);
  for (std::size_t i = 0; i < tab.rows(); ++i) z[tab.basis()[i]] = tab.rhs(i);
  QVector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = z[j] - z[n + j];
  return {LpStatus::optimal, x, tab.value()};
}

LpSolution maximize(const HPolytope& p, const QVector& objective) {
  std::vector<QVector> rows;
  QVector rhs;
  for (const auto& h : p.constraints()) {
    rows.push_back(h.normal);
    rhs.push_back(h.offset);
  }
  return maximize(QMatrix::from_rows(rows, p.dim()), rhs, objective);
}

namespace {

QVector farkas_certificate(const HPolytope& p, const std::vector<bool>& strict_mask) {
  // Variables y (one per constraint). Rows encode y >= 0, sum y_i a_i = 0,
  // y . b <= 0 and sum_strict y_i - y . b = 1.
  const std::size_t m = p.size();
  const std::size_t n = p.dim();
  std::vector<QVector> rows;
  QVector rhs;
  for (std::size_t i = 0; i < m; ++i) {
    QVector r(m);
    r[i] = -1;
    rows.push_back(std::move(r));
    rhs.push_back(0);
  }
  for (std::size_t c = 0; c < n; ++c) {
    QVector r(m);
    for (std::size_t i = 0; i < m; ++i) r[i] = p.constraints()[i].normal[c];
    rows.push_back(r);
    rhs.push_back(0);
    for (auto& v : r) v = -v;
    rows.push_back(std::move(r));
    rhs.push_back(0);
  }
  QVector yb(m), norm(m);
  for (std::size_t i = 0; i < m; ++i) {
    yb[i] = p.constraints()[i].offset;
    norm[i] = (strict_mask[i] ? Rational(1) : Rational(0)) - p.constraints()[i].offset;
  }
  rows.push_back(yb);
  rhs.push_back(0);
  rows.push_back(norm);
  rhs.push_back(1);
  for (auto& v : norm) v = -v;
  rows.push_back(norm);
  rhs.push_back(-1);
  auto sol = maximize(QMatrix::from_rows(rows, m), rhs, QVector(m));
  if (sol.status != LpStatus::optimal) throw Error("lp_feasible: no transposition certificate for an infeasible system");
  return sol.point;
}

}  // namespace

Feasibility lp_feasible(const HPolytope& p, const std::vector<bool>& strict_mask, bool want_certificate) {
  const std::size_t n = p.dim();
  if (strict_mask.size() != p.size()) throw DimensionError("lp_feasible: mask length differs from constraint count");
  for (const auto& h : p.constraints())
    if (h.normal.size() != n) throw DimensionError("lp_feasible: constraint normal has wrong dimension");

  bool any_strict = false;
  for (bool s : strict_mask) any_strict = any_strict || s;

  Feasibility out;
  if (!any_strict) {
    auto sol = maximize(p, QVector(n));
    out.feasible = sol.status == LpStatus::optimal;
    if (out.feasible) out.witness = sol.point;
  } else {
    QMatrix rows(p.size() + 1, n + 1);
    QVector rhs(p.size() + 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t c = 0; c < n; ++c) rows(i, c) = p.constraints()[i].normal[c];
      rows(i, n) = strict_mask[i] ? 1 : 0;
      rhs[i] = p.constraints()[i].offset;
    }
    rows(p.size(), n) = 1;
    rhs[p.size()] = 1;
    QVector objective(n + 1);
    objective[n] = 1;
    auto sol = maximize(rows, rhs, objective);
    out.feasible = sol.status == LpStatus::optimal && sol.value > 0;
    if (out.feasible) out.witness.assign(sol.point.begin(), sol.point.begin() + static_cast<std::ptrdiff_t>(n));
  }
  if (!out.feasible && want_certificate) out.certificate = farkas_certificate(p, strict_mask);
  return out;
}

Feasibility interior_feasible(const HPolytope& p, bool want_certificate) {
  return lp_feasible(p, std::vector<bool>(p.size(), true), want_certificate);
}

bool verify_infeasibility_certificate(const HPolytope& p, const std::vector<bool>& strict_mask, const QVector& y) {
  if (y.size() != p.size()) return false;
  QVector combo(p.dim());
  Rational yb = 0, strict_weight = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (y[i] < 0) return false;
    combo = combo + y[i] * p.constraints()[i].normal;
    yb += y[i] * p.constraints()[i].offset;
    if (strict_mask[i]) strict_weight += y[i];
  }
  if (!is_zero(combo) || yb > 0) return false;
  return yb < 0 || strict_weight > 0;
}

}  // namespace pwl
