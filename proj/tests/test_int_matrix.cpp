#include "doctest.h"

#include "mgl/int_matrix.hpp"

#include <functional>
#include <random>

using namespace mgl;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = d(rng);
  return m;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Determinantal divisors: d_1 ... d_k = gcd of all k x k minors.
std::vector<Integer> invariant_factors_by_minors(const IntMatrix& a) {
  const std::size_t n = std::min(a.rows(), a.cols());
  std::vector<Integer> divisors(n + 1, 0);
  divisors[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Integer g = 0;
    for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& rows) {
      for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& cols) {
        g = gcd(g, determinant(submatrix(a, rows, cols)));
      });
    });
    divisors[k] = g;
  }
  std::vector<Integer> factors(n, 0);
  for (std::size_t k = 1; k <= n; ++k) {
    factors[k - 1] = divisors[k - 1] == 0 ? Integer(0) : Integer(divisors[k] / divisors[k - 1]);
  }
  return factors;
}

void check_smith(const IntMatrix& a) {
  const SmithForm s = smith_normal_form(a);
  REQUIRE(s.U * a * s.V == s.D);
  CHECK(is_unimodular(s.U));
  CHECK(is_unimodular(s.V));
  CHECK(s.U * s.U_inv == IntMatrix::identity(a.rows()));
  CHECK(s.V * s.V_inv == IntMatrix::identity(a.cols()));
  for (std::size_t r = 0; r < s.D.rows(); ++r)
    for (std::size_t c = 0; c < s.D.cols(); ++c) {
      if (r != c) CHECK(s.D(r, c) == 0);
    }
  const auto d = s.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i] >= 0);
    CHECK((i < s.rank) == (d[i] != 0));
    if (i + 1 < d.size() && d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
  }
}

}  // namespace

TEST_CASE("smith_normal_form examples") {
  const IntMatrix diag23{{2, 0}, {0, 3}};
  CHECK(invariant_factors_by_minors(diag23) == std::vector<Integer>{1, 6});
  const SmithForm s = smith_normal_form(diag23);
  CHECK(s.D == IntMatrix{{1, 0}, {0, 6}});
  check_smith(diag23);

  const SmithForm z = smith_normal_form(IntMatrix(2, 2));
  CHECK(z.D.is_zero());
  CHECK(z.rank == 0);

  for (std::size_t n : {1u, 3u, 5u}) {
    CHECK(smith_normal_form(IntMatrix::identity(n)).D == IntMatrix::identity(n));
  }

  // Empty column set: cokernel of a map from Z^0.
  const SmithForm e = smith_normal_form(IntMatrix(3, 0));
  CHECK(e.U == IntMatrix::identity(3));
  CHECK(e.rank == 0);
}

TEST_CASE("smith_normal_form agrees with determinantal divisors") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + trial % 4, cols = 1 + (trial / 4) % 4;
    const IntMatrix a = random_matrix(rng, rows, cols, -6, 6);
    CHECK(smith_normal_form(a).diagonal() == invariant_factors_by_minors(a));
  }
}

TEST_CASE("smith_normal_form property on matrices up to 12x12") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> dim(1, 12);
  for (int trial = 0; trial < 80; ++trial) {
    const IntMatrix a = random_matrix(rng, dim(rng), dim(rng), -9, 9);
    check_smith(a);
  }
  // Low-rank inputs exercise the zero tail.
  for (int trial = 0; trial < 20; ++trial) {
    const IntMatrix a = random_matrix(rng, 7, 3, -4, 4) * random_matrix(rng, 3, 9, -4, 4);
    check_smith(a);
    CHECK(smith_normal_form(a).rank <= 3);
  }
}

TEST_CASE("determinant routes agree") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const IntMatrix a = random_matrix(rng, n, n, -9, 9);
    CHECK(Rational(determinant(a)) == determinant(to_rational(a)));
  }
  CHECK(determinant(IntMatrix(0, 0)) == 1);
  CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("hermite_normal_form") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 4;
    IntMatrix a = random_matrix(rng, n, n, -5, 5);
    if (determinant(a) == 0) continue;
    const HermiteForm h = hermite_normal_form(a);
    CHECK(a * h.W == h.H);
    CHECK(is_unimodular(h.W));
    for (std::size_t r = 0; r < n; ++r) {
      CHECK(h.H(r, r) > 0);
      for (std::size_t c = r + 1; c < n; ++c) CHECK(h.H(r, c) == 0);
      for (std::size_t c = 0; c < r; ++c) {
        CHECK(h.H(r, c) >= 0);
        CHECK(h.H(r, c) < h.H(r, r));
      }
    }
    CHECK(abs(determinant(a)) == determinant(h.H));
  }
  CHECK(hermite_normal_form(IntMatrix{{2, 0}, {0, 3}}).H == IntMatrix{{2, 0}, {0, 3}});
}

TEST_CASE("kernel_basis is a saturated kernel") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const IntMatrix a = random_matrix(rng, 4, 3, -3, 3) * random_matrix(rng, 3, 7, -3, 3);
    const IntMatrix k = kernel_basis(a);
    CHECK((a * k).is_zero());
    const SmithForm s = smith_normal_form(a);
    CHECK(k.cols() == a.cols() - s.rank);
    // Saturation: the kernel basis extends to a unimodular matrix iff its
    // own Smith invariants are all one.
    const SmithForm sk = smith_normal_form(k);
    for (std::size_t i = 0; i < sk.rank; ++i) CHECK(sk.D(i, i) == 1);
    CHECK(sk.rank == k.cols());
  }
  CHECK(kernel_basis(IntMatrix{{2, 4}}) == IntMatrix{{-2}, {1}});
}
