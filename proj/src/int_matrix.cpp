#include "mgl/int_matrix.hpp"

#include "mgl/error.hpp"

#include <algorithm>
#include <sstream>

namespace mgl {

template <typename T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> init) {
  rows_ = init.size();
  cols_ = rows_ == 0 ? 0 : init.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : init) {
    if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (long v : row) data_.emplace_back(v);
  }
}

template <typename T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <typename T>
std::vector<T> Matrix<T>::column(std::size_t c) const {
  std::vector<T> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

template <typename T>
std::vector<T> Matrix<T>::row(std::size_t r) const {
  return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

template <typename T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

template <typename T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

template <typename T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

template <typename T>
void Matrix<T>::add_row_multiple(std::size_t target, std::size_t source, const T& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) {
    if ((*this)(source, c) != 0) (*this)(target, c) += factor * (*this)(source, c);
  }
}

template <typename T>
void Matrix<T>::add_col_multiple(std::size_t target, std::size_t source, const T& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) {
    if ((*this)(r, source) != 0) (*this)(r, target) += factor * (*this)(r, source);
  }
}

template <typename T>
void Matrix<T>::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

template <typename T>
void Matrix<T>::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

template <typename T>
bool Matrix<T>::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == 0; });
}

template class Matrix<Integer>;
template class Matrix<Rational>;

namespace {

template <typename T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) out(i, j) += a(i, k) * b(k, j);
      }
    }
  return out;
}

}  // namespace

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return multiply(a, b); }
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) { return multiply(a, b); }

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix difference");
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
  return out;
}

std::vector<Integer> operator*(const IntMatrix& a, const std::vector<Integer>& x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  std::vector<Integer> out(a.rows(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (a(r, c) != 0 && x[c] != 0) out[r] += a(r, c) * x[c];
    }
  return out;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "hstack");
  IntMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "vstack");
  IntMatrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) out(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r) out(a.rows() + r, c) = b(r, c);
  }
  return out;
}

IntMatrix submatrix(const IntMatrix& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  IntMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(rows[i], cols[j]);
  return out;
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = Rational(a(r, c));
  return out;
}

Integer determinant(const IntMatrix& input) {
  if (!input.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix a = input;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational determinant(const RatMatrix& input) {
  if (!input.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  RatMatrix a = input;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a(pivot, k) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      a.swap_rows(k, pivot);
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / a(k, k);
      a.add_row_multiple(i, k, Rational(-f));
    }
  }
  return det;
}

bool is_unimodular(const IntMatrix& a) {
  if (!a.is_square()) return false;
  return abs(determinant(a)) == 1;
}

RatMatrix inverse(const RatMatrix& input) {
  if (!input.is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = input.rows();
  RatMatrix a = input;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a(pivot, k) == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::InvalidArgument, "singular matrix has no inverse");
    a.swap_rows(k, pivot);
    inv.swap_rows(k, pivot);
    const Rational scale = 1 / a(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      a(k, c) *= scale;
      inv(k, c) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rational f = -a(i, k);
      a.add_row_multiple(i, k, f);
      inv.add_row_multiple(i, k, f);
    }
  }
  return inv;
}

std::string to_string(const IntMatrix& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < a.rows(); ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < a.cols(); ++c) os << (c ? ", " : "") << a(r, c).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d(std::min(D.rows(), D.cols()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = D(i, i);
  return d;
}

namespace {

// Keeps U*A*V = D and the two inverses in sync while A is reduced in place.
class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& a)
      : a_(a),
        u_(IntMatrix::identity(a.rows())),
        u_inv_(IntMatrix::identity(a.rows())),
        v_(IntMatrix::identity(a.cols())),
        v_inv_(IntMatrix::identity(a.cols())) {}

  void row_add(std::size_t target, std::size_t source, const Integer& f) {
    if (f == 0) return;
    a_.add_row_multiple(target, source, f);
    u_.add_row_multiple(target, source, f);
    u_inv_.add_col_multiple(source, target, Integer(-f));
  }
  void col_add(std::size_t target, std::size_t source, const Integer& f) {
    if (f == 0) return;
    a_.add_col_multiple(target, source, f);
    v_.add_col_multiple(target, source, f);
    v_inv_.add_row_multiple(source, target, Integer(-f));
  }
  void row_swap(std::size_t x, std::size_t y) {
    a_.swap_rows(x, y);
    u_.swap_rows(x, y);
    u_inv_.swap_cols(x, y);
  }
  void col_swap(std::size_t x, std::size_t y) {
    a_.swap_cols(x, y);
    v_.swap_cols(x, y);
    v_inv_.swap_rows(x, y);
  }
  void row_negate(std::size_t r) {
    a_.negate_row(r);
    u_.negate_row(r);
    u_inv_.negate_col(r);
  }

  SmithForm run() {
    const std::size_t m = a_.rows(), n = a_.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      if (!move_smallest_to_pivot(t)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a_(i, t) == 0) continue;
          row_add(i, t, Integer(-(a_(i, t) / a_(t, t))));
          if (a_(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a_(t, j) == 0) continue;
          col_add(j, t, Integer(-(a_(t, j) / a_(t, t))));
          if (a_(t, j) != 0) clean = false;
        }
        if (!clean) {
          move_smallest_in_cross(t);
          continue;
        }
        // Divisibility: pull an offending row into the pivot row and redo.
        bool divisible = true;
        for (std::size_t i = t + 1; i < m && divisible; ++i)
          for (std::size_t j = t + 1; j < n; ++j) {
            if (a_(i, j) % a_(t, t) != 0) {
              row_add(t, i, Integer(1));
              divisible = false;
              break;
            }
          }
        if (divisible) break;
      }
      if (a_(t, t) < 0) row_negate(t);
    }
    SmithForm out;
    out.rank = t;
    out.D = std::move(a_);
    out.U = std::move(u_);
    out.U_inv = std::move(u_inv_);
    out.V = std::move(v_);
    out.V_inv = std::move(v_inv_);
    return out;
  }

 private:
  bool move_smallest_to_pivot(std::size_t t) {
    std::size_t best_r = 0, best_c = 0;
    bool found = false;
    for (std::size_t r = t; r < a_.rows(); ++r)
      for (std::size_t c = t; c < a_.cols(); ++c) {
        if (a_(r, c) == 0) continue;
        if (!found || abs(a_(r, c)) < abs(a_(best_r, best_c))) {
          best_r = r;
          best_c = c;
          found = true;
        }
      }
    if (!found) return false;
    row_swap(t, best_r);
    col_swap(t, best_c);
    return true;
  }

  void move_smallest_in_cross(std::size_t t) {
    std::size_t best_r = t, best_c = t;
    Integer best = abs(a_(t, t));
    for (std::size_t r = t + 1; r < a_.rows(); ++r) {
      if (a_(r, t) != 0 && abs(a_(r, t)) < best) {
        best = abs(a_(r, t));
        best_r = r;
        best_c = t;
      }
    }
    for (std::size_t c = t + 1; c < a_.cols(); ++c) {
      if (a_(t, c) != 0 && abs(a_(t, c)) < best) {
        best = abs(a_(t, c));
        best_r = t;
        best_c = c;
      }
    }
    row_swap(t, best_r);
    col_swap(t, best_c);
  }

  IntMatrix a_, u_, u_inv_, v_, v_inv_;
};

// Unimodular 2x2 column combination placing gcd(a(r,p), a(r,c)) in column p
// and zero in column c.
void combine_columns(IntMatrix& a, IntMatrix& w, std::size_t r, std::size_t p, std::size_t c) {
  const Integer x = a(r, p), y = a(r, c);
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  const Integer xg = x / g, yg = y / g;
  auto apply = [&](IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const Integer cp = m(i, p), cc = m(i, c);
      if (cp == 0 && cc == 0) continue;
      m(i, p) = s * cp + t * cc;
      m(i, c) = xg * cc - yg * cp;
    }
  };
  apply(a);
  apply(w);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) { return SmithReducer(a).run(); }

HermiteForm hermite_normal_form(const IntMatrix& input) {
  if (!input.is_square()) throw Error(ErrorCode::DimensionMismatch, "hermite_normal_form needs a square matrix");
  const std::size_t n = input.rows();
  IntMatrix h = input;
  IntMatrix w = IntMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) {
      if (h(r, c) != 0) combine_columns(h, w, r, r, c);
    }
    if (h(r, r) == 0) throw Error(ErrorCode::InvalidArgument, "hermite_normal_form needs a nonsingular matrix");
    if (h(r, r) < 0) {
      h.negate_col(r);
      w.negate_col(r);
    }
    for (std::size_t c = 0; c < r; ++c) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(r, c).get_mpz_t(), h(r, r).get_mpz_t());
      if (q == 0) continue;
      h.add_col_multiple(c, r, Integer(-q));
      w.add_col_multiple(c, r, Integer(-q));
    }
  }
  return {std::move(h), std::move(w)};
}

IntMatrix kernel_basis(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t n = a.cols();
  IntMatrix w = IntMatrix::identity(n);
  std::size_t pivot = 0;
  for (std::size_t r = 0; r < a.rows() && pivot < n; ++r) {
    std::size_t first = pivot;
    while (first < n && a(r, first) == 0) ++first;
    if (first == n) continue;
    if (first != pivot) {
      a.swap_cols(pivot, first);
      w.swap_cols(pivot, first);
    }
    for (std::size_t c = pivot + 1; c < n; ++c) {
      if (a(r, c) != 0) combine_columns(a, w, r, pivot, c);
    }
    ++pivot;
  }
  IntMatrix basis(n, n - pivot);
  for (std::size_t k = pivot; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) basis(i, k - pivot) = w(i, k);
  return basis;
}

}  // namespace mgl
