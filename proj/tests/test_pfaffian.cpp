#include "doctest.h"

#include "mgl/error.hpp"
#include "mgl/pfaffian.hpp"

#include <algorithm>
#include <random>

using namespace mgl;

namespace {

RatMatrix skew_from_upper(std::size_t n, const std::vector<Rational>& upper) {
  RatMatrix a(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = upper[k++];
      a(j, i) = -a(i, j);
    }
  return a;
}

RatMatrix random_skew(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  std::vector<Rational> upper;
  for (std::size_t k = 0; k < n * (n - 1) / 2; ++k) upper.push_back(make_rational(num(rng), den(rng)));
  return skew_from_upper(n, upper);
}

}  // namespace

TEST_CASE("pfaffian examples") {
  CHECK(pfaffian(skew_from_upper(2, {make_rational(3, 5)})) == make_rational(3, 5));
  const RatMatrix a4 = skew_from_upper(4, {1, 2, 3, 4, 5, 6});
  CHECK(determinant(a4) == 64);
  CHECK(pfaffian(a4) == 8);
  CHECK(pfaffian(RatMatrix(0, 0)) == 1);
}

TEST_CASE("pfaffian errors") {
  CHECK_THROWS_AS(pfaffian(RatMatrix(3, 3)), Error);
  try {
    pfaffian(RatMatrix(3, 3));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OddDimension);
  }
  RatMatrix bad(2, 2);
  bad(0, 1) = 1;
  bad(1, 0) = 1;
  try {
    pfaffian(bad);
    FAIL("expected NotSkew");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSkew);
  }
  RatMatrix diag(2, 2);
  diag(0, 0) = 1;
  CHECK_THROWS_AS(pfaffian(diag), Error);
}

TEST_CASE("pfaffian squared equals determinant") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 * (trial % 5);
    const RatMatrix a = random_skew(rng, n);
    CHECK(pfaffian(a) * pfaffian(a) == determinant(a));
  }
}

TEST_CASE("expansion and elimination agree, including beyond the expansion limit") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 * (1 + trial % 6);
    const RatMatrix a = random_skew(rng, n);
    CHECK(pfaffian_by_expansion(a) == pfaffian_by_elimination(a));
  }
  // A block with a zero leading entry forces a pivot swap.
  RatMatrix a = skew_from_upper(4, {0, 1, 0, 0, 1, 0});
  CHECK(pfaffian_by_elimination(a) == pfaffian_by_expansion(a));
  CHECK(pfaffian(a) == -1);
}

TEST_CASE("pfaffian transforms by det under signed permutations") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 * (1 + trial % 4);
    const RatMatrix a = random_skew(rng, n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    RatMatrix p(n, n);
    std::uniform_int_distribution<int> coin(0, 1);
    for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = coin(rng) ? 1 : -1;
    const RatMatrix b = p * a * p.transpose();
    CHECK(pfaffian(b) == determinant(p) * pfaffian(a));
  }
}

TEST_CASE("principal_submatrix keeps the given order") {
  const RatMatrix a = skew_from_upper(4, {1, 2, 3, 4, 5, 6});
  CHECK(pfaffian(principal_submatrix(a, {0, 2})) == 2);
  CHECK(pfaffian(principal_submatrix(a, {2, 0})) == -2);
}
