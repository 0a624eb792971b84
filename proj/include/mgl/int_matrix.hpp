#pragma once

#include "mgl/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace mgl {

/// Dense row-major matrix over an exact ring (Integer or Rational).
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> column(std::size_t c) const;
  std::vector<T> row(std::size_t r) const;
  Matrix transpose() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const T& factor);
  void add_col_multiple(std::size_t target, std::size_t source, const T& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  bool is_zero() const;
  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
std::vector<Integer> operator*(const IntMatrix& a, const std::vector<Integer>& x);

/// [a | b] and [a ; b].
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix submatrix(const IntMatrix& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols);

RatMatrix to_rational(const IntMatrix& a);

Integer determinant(const IntMatrix& a);    // Bareiss, fraction free
Rational determinant(const RatMatrix& a);   // Gaussian elimination over Q
bool is_unimodular(const IntMatrix& a);

/// Exact inverse over Q; throws InvalidArgument when singular.
RatMatrix inverse(const RatMatrix& a);

std::string to_string(const IntMatrix& a);

/// Result of U * A * V = D with U, V unimodular and D = diag(d_1, d_2, ...)
/// where d_1 | d_2 | ... and d_i >= 0. The inverses are carried along so that
/// callers can change coordinates in both directions without re-solving.
struct SmithForm {
  IntMatrix U, D, V;
  IntMatrix U_inv, V_inv;
  std::size_t rank = 0;
  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Column-style Hermite normal form: H = A * W, W unimodular, H lower
/// triangular with positive diagonal and 0 <= H(r, c) < H(r, r) for c < r.
/// Requires a square nonsingular A.
struct HermiteForm {
  IntMatrix H, W;
};
HermiteForm hermite_normal_form(const IntMatrix& a);

/// Integer basis (as columns) of {x in Z^cols : A x = 0}. The basis is
/// saturated: it spans the whole integer kernel, not a finite-index sublattice.
IntMatrix kernel_basis(const IntMatrix& a);

}  // namespace mgl
