#include "pwl/linalg.hpp"

#include <sstream>
#include <utility>

namespace pwl {

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols_if_empty) {
  std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("QMatrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QVector QMatrix::row(std::size_t r) const {
  return QVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

QVector QMatrix::col(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void QMatrix::set_row(std::size_t r, const QVector& v) {
  if (v.size() != cols_) throw DimensionError("QMatrix::set_row: size mismatch");
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = v[c];
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QMatrix QMatrix::operator*(const QMatrix& other) const {
  if (cols_ != other.rows_) throw DimensionError("matrix product: inner dimensions differ");
  QMatrix p(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c)
        if (other(k, c) != 0) p(r, c) += a * other(k, c);
    }
  return p;
}

QVector QMatrix::operator*(const QVector& v) const {
  if (cols_ != v.size()) throw DimensionError("matrix-vector product: dimension mismatch");
  QVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != 0 && v[c] != 0) out[r] += (*this)(r, c) * v[c];
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix sum: shape mismatch");
  QMatrix s(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] + other.data_[i];
  return s;
}

QMatrix QMatrix::operator-(const QMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix difference: shape mismatch");
  QMatrix s(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] - other.data_[i];
  return s;
}

bool QMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t p = lead_row;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead_row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead_row, k));
    Rational inv = 1 / m(lead_row, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (m(lead_row, k) != 0) m(r, k) -= f * m(lead_row, k);
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return pivots;
}

std::size_t rank(const QMatrix& m) {
  QMatrix copy = m;
  return rref(copy).size();
}

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant: matrix not square");
  QMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(p, k), a(c, k));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Rational f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

namespace {

QMatrix augment(const QMatrix& m, const QVector& rhs) {
  if (rhs.size() != m.rows()) throw DimensionError("linear solve: rhs size mismatch");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = rhs[r];
  }
  return aug;
}

}  // namespace

std::optional<QVector> solve_any(const QMatrix& m, const QVector& rhs) {
  QMatrix aug = augment(m, rhs);
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  QVector x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
  return x;
}

std::optional<QVector> solve_square(const QMatrix& m, const QVector& rhs) {
  if (m.rows() != m.cols()) throw DimensionError("solve_square: matrix not square");
  QMatrix aug = augment(m, rhs);
  auto pivots = rref(aug);
  if (pivots.size() != m.cols() || pivots.back() == m.cols()) return std::nullopt;
  QVector x(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i) x[i] = aug(i, m.cols());
  return x;
}

std::optional<QVector> solve_least_norm(const QMatrix& m, const QVector& rhs) {
  QMatrix aug = augment(m, rhs);
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  // The nonzero rows of the rref span the row space and encode the same system.
  std::vector<QVector> rows;
  QVector b;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    QVector r(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) r[c] = aug(i, c);
    rows.push_back(std::move(r));
    b.push_back(aug(i, m.cols()));
  }
  if (rows.empty()) return QVector(m.cols());
  QMatrix basis = QMatrix::from_rows(rows);
  QMatrix gram = basis * basis.transpose();
  auto y = solve_square(gram, b);
  if (!y) return std::nullopt;
  return basis.transpose() * *y;
}

std::vector<QVector> null_space(const QMatrix& m) {
  QMatrix a = m;
  auto pivots = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

int affine_dimension(const std::vector<QVector>& points) {
  if (points.empty()) return -1;
  std::vector<QVector> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  if (diffs.empty()) return 0;
  return static_cast<int>(rank(QMatrix::from_rows(diffs)));
}

QVector characteristic_polynomial(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("characteristic_polynomial: matrix not square");
  const std::size_t n = m.rows();
  QVector coeff(n + 1);
  coeff[n] = 1;
  QMatrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
    QMatrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += coeff[n - k + 1];
    QMatrix am = m * next;
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    coeff[n - k] = -trace / static_cast<int>(k);
    mk = std::move(next);
  }
  return coeff;
}

bool is_orthogonal(const QMatrix& a) {
  if (a.rows() != a.cols()) return false;
  return a.transpose() * a == QMatrix::identity(a.rows());
}

QVector AffineMap::apply(const QVector& x) const { return matrix * x + offset; }

std::variant<AffineMap, AffineSolveFailure> solve_affine_from_point_pairs(const std::vector<QVector>& sources,
                                                                          const std::vector<QVector>& targets) {
  if (sources.size() != targets.size()) throw DimensionError("solve_affine_from_point_pairs: list lengths differ");
  if (sources.empty()) return AffineSolveFailure::underdetermined;
  const std::size_t n = sources.front().size();
  const std::size_t out = targets.front().size();
  for (const auto& s : sources)
    if (s.size() != n) throw DimensionError("solve_affine_from_point_pairs: ragged sources");
  for (const auto& t : targets)
    if (t.size() != out) throw DimensionError("solve_affine_from_point_pairs: ragged targets");

  // Rows [x_i, 1]; pick an independent subset of n+1 rows.
  QMatrix lifted(sources.size(), n + 1);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (std::size_t c = 0; c < n; ++c) lifted(i, c) = sources[i][c];
    lifted(i, n) = 1;
  }
  QMatrix t = lifted.transpose();
  auto pivots = rref(t);  // pivot columns of the transpose = independent source rows
  if (pivots.size() < n + 1) return AffineSolveFailure::underdetermined;

  QMatrix square(n + 1, n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t c = 0; c <= n; ++c) square(i, c) = lifted(pivots[i], c);

  AffineMap map{QMatrix(out, n), QVector(out)};
  for (std::size_t o = 0; o < out; ++o) {
    QVector rhs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) rhs[i] = targets[pivots[i]][o];
    auto coeffs = solve_square(square, rhs);
    if (!coeffs) return AffineSolveFailure::underdetermined;
    for (std::size_t c = 0; c < n; ++c) map.matrix(o, c) = (*coeffs)[c];
    map.offset[o] = (*coeffs)[n];
  }
  for (std::size_t i = 0; i < sources.size(); ++i)
    if (map.apply(sources[i]) != targets[i]) return AffineSolveFailure::inconsistent;
  return map;
}

std::string to_string(const QMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) os << (r ? "; " : "") << to_string(m.row(r));
  os << "]";
  return os.str();
}

}  // namespace pwl
