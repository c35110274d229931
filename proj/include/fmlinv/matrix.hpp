#pragma once

#include "fmlinv/scalar.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fmlinv {

// Dense exact matrix. Linear maps use the column-action convention: the
// map sends basis vector j to the combination stored in column j, so the
// image of a coordinate vector x is M * x.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& entries);
  /// Rows must all have length `cols`.
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  /// Columns must all have length `rows`.
  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  std::vector<Vector> row_list() const;
  std::vector<Vector> column_list() const;

  Matrix transpose() const;
  Vector apply(const Vector& x) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, const Matrix& m);
  Matrix operator-() const;
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form with unit pivots, zero rows dropped.
/// `pivots` (optional) receives the pivot column of each kept row.
Matrix rref(Matrix m, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const Matrix& m);
Scalar determinant(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
Matrix kronecker(const Matrix& a, const Matrix& b);
Matrix matrix_power(const Matrix& m, unsigned exponent);
Scalar trace(const Matrix& m);

/// Basis of {x : m x = 0}, one vector per free column.
std::vector<Vector> kernel_basis(const Matrix& m);

/// Some solution x of a x = b, or nullopt when inconsistent.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

std::string to_string(const Matrix& m);

}  // namespace fmlinv
