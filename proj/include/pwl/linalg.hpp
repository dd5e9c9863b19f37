#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pwl/rational.hpp"

namespace pwl {

/// Dense row-major rational matrix.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Builds from nested rows; every row must have the same length.
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols_if_empty = 0);
  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QVector row(std::size_t r) const;
  QVector col(std::size_t c) const;
  void set_row(std::size_t r, const QVector& v);

  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& other) const;
  QVector operator*(const QVector& v) const;
  QMatrix operator+(const QMatrix& other) const;
  QMatrix operator-(const QMatrix& other) const;
  bool operator==(const QMatrix& other) const = default;

  bool is_zero() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);

std::size_t rank(const QMatrix& m);
Rational determinant(const QMatrix& m);

/// Unique solution of the square system m x = rhs, or nullopt when singular.
std::optional<QVector> solve_square(const QMatrix& m, const QVector& rhs);

/// Some solution of m x = rhs (free variables set to zero), or nullopt when
/// inconsistent.
std::optional<QVector> solve_any(const QMatrix& m, const QVector& rhs);

/// The minimum-norm solution of m x = rhs; rational because it equals
/// m^T (m m^T)^{-1} rhs on a row basis.
std::optional<QVector> solve_least_norm(const QMatrix& m, const QVector& rhs);

/// Basis of the right null space.
std::vector<QVector> null_space(const QMatrix& m);

/// Affine dimension of a point set (-1 for the empty set).
int affine_dimension(const std::vector<QVector>& points);

/// Coefficients c_0..c_n of det(t I - m) = sum c_k t^k (Faddeev-LeVerrier).
QVector characteristic_polynomial(const QMatrix& m);

/// Exact test A^T A = I.
bool is_orthogonal(const QMatrix& a);

struct AffineMap {
  QMatrix matrix;
  QVector offset;
  QVector apply(const QVector& x) const;
  bool operator==(const AffineMap&) const = default;
};

enum class AffineSolveFailure { underdetermined, inconsistent };

/// The unique affine map sending each source point to its target. Sources
/// must contain an affinely independent subset of size dim+1.
std::variant<AffineMap, AffineSolveFailure> solve_affine_from_point_pairs(const std::vector<QVector>& sources,
                                                                          const std::vector<QVector>& targets);

std::string to_string(const QMatrix& m);

}  // namespace pwl
