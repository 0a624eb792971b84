#include "mgl/pfaffian.hpp"

#include "mgl/error.hpp"

#include <cstdint>
#include <unordered_map>

namespace mgl {

namespace {

constexpr std::size_t kExpansionLimit = 8;

void check_pfaffian_input(const RatMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::NotSkew, "matrix is not square");
  if (a.rows() % 2 != 0) throw Error(ErrorCode::OddDimension, "dimension " + std::to_string(a.rows()));
  if (!is_skew_symmetric(a)) throw Error(ErrorCode::NotSkew, "A^T != -A");
}

class ExpansionMemo {
 public:
  explicit ExpansionMemo(const RatMatrix& a) : a_(a) {}

  // Pfaffian of the principal submatrix on the index set `mask`.
  Rational operator()(std::uint32_t mask) {
    if (mask == 0) return 1;
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    const int first = __builtin_ctz(mask);
    const std::uint32_t rest = mask & ~(1u << first);
    Rational total = 0;
    int position = 0;
    for (std::uint32_t bits = rest; bits; bits &= bits - 1) {
      const int j = __builtin_ctz(bits);
      const Rational& entry = a_(first, j);
      if (entry != 0) {
        const Rational minor = (*this)(rest & ~(1u << j));
        if (position % 2 == 0) total += entry * minor;
        else total -= entry * minor;
      }
      ++position;
    }
    memo_.emplace(mask, total);
    return total;
  }

 private:
  const RatMatrix& a_;
  std::unordered_map<std::uint32_t, Rational> memo_;
};

}  // namespace

bool is_skew_symmetric(const RatMatrix& a) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) {
      if (a(i, j) != -a(j, i)) return false;
    }
  return true;
}

RatMatrix principal_submatrix(const RatMatrix& a, const std::vector<std::size_t>& indices) {
  RatMatrix out(indices.size(), indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) out(i, j) = a(indices[i], indices[j]);
  return out;
}

Rational pfaffian_by_expansion(const RatMatrix& a) {
  check_pfaffian_input(a);
  if (a.rows() > 31) throw Error(ErrorCode::InvalidArgument, "expansion supports at most 30 rows");
  ExpansionMemo memo(a);
  const std::uint32_t full = a.rows() == 0 ? 0u : static_cast<std::uint32_t>((1ull << a.rows()) - 1);
  return memo(full);
}

Rational pfaffian_by_elimination(const RatMatrix& input) {
  check_pfaffian_input(input);
  RatMatrix m = input;
  const std::size_t n = m.rows();
  Rational pf = 1;
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    std::size_t pivot = k + 1;
    while (pivot < n && m(k, pivot) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k + 1) {
      // Congruence by a transposition flips the sign of the Pfaffian.
      m.swap_rows(k + 1, pivot);
      m.swap_cols(k + 1, pivot);
      pf = -pf;
    }
    pf *= m(k, k + 1);
    for (std::size_t i = k + 2; i < n; ++i) {
      if (m(k, i) != 0) {
        const Rational c = -m(k, i) / m(k, k + 1);
        m.add_row_multiple(i, k + 1, c);
        m.add_col_multiple(i, k + 1, c);
      }
      if (m(k + 1, i) != 0) {
        const Rational d = -m(k + 1, i) / m(k + 1, k);
        m.add_row_multiple(i, k, d);
        m.add_col_multiple(i, k, d);
      }
    }
  }
  return pf;
}

Rational pfaffian(const RatMatrix& a) {
  check_pfaffian_input(a);
  return a.rows() <= kExpansionLimit ? pfaffian_by_expansion(a) : pfaffian_by_elimination(a);
}

}  // namespace mgl
