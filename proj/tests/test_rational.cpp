#include "doctest.h"

#include "mgl/error.hpp"
#include "mgl/rational.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace mgl;

namespace {

// Smallest positive value of sum m_i * g_i over |m_i| <= bound.
Rational brute_force_generator(const std::vector<Rational>& gens, int bound) {
  Rational best = 0;
  std::vector<int> m(gens.size(), -bound);
  for (;;) {
    Rational v = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) v += m[i] * gens[i];
    if (v > 0 && (best == 0 || v < best)) best = v;
    std::size_t k = 0;
    while (k < m.size() && m[k] == bound) m[k++] = -bound;
    if (k == m.size()) break;
    ++m[k];
  }
  return best;
}

bool brute_force_member(const Rational& x, const std::vector<Rational>& gens, int bound) {
  std::vector<int> m(gens.size(), -bound);
  if (gens.empty()) return x == 0;
  for (;;) {
    Rational v = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) v += m[i] * gens[i];
    if (v == x) return true;
    std::size_t k = 0;
    while (k < m.size() && m[k] == bound) m[k++] = -bound;
    if (k == m.size()) return false;
    ++m[k];
  }
}

// Least q <= q_max with some p satisfying |x - p/q| <= eps, tested exactly.
std::optional<Rational> brute_force_reconstruct(double x, double eps, long q_max) {
  const Rational xr(x), er(eps);
  for (long q = 1; q <= q_max; ++q) {
    const Integer base = floor_of(Rational(xr * q));
    for (Integer p = base - 1; p <= base + 2; ++p) {
      const Rational cand = make_rational(p, Integer(q));
      if (abs(Rational(xr - cand)) <= er) return cand;
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("parse and print rationals") {
  CHECK(parse_rational("3/6") == make_rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(to_string(parse_rational("10/-4")) == "-5/2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
}

TEST_CASE("qsubgroup_canonical") {
  const std::vector<Rational> halves_thirds = {make_rational(1, 2), make_rational(1, 3)};
  CHECK(brute_force_generator(halves_thirds, 6) == make_rational(1, 6));
  CHECK(qsubgroup_canonical(halves_thirds) == make_rational(1, 6));
  CHECK(qsubgroup_canonical({}) == 0);
  const std::vector<Rational> five = {Rational(5)};
  CHECK(qsubgroup_canonical(five) == 5);
  const std::vector<Rational> signs = {make_rational(-4, 3), Rational(0), make_rational(2, 9)};
  CHECK(qsubgroup_canonical(signs) == make_rational(2, 9));
}

TEST_CASE("qsubgroup_contains") {
  const std::vector<Rational> gens = {make_rational(1, 2), make_rational(1, 3)};
  const QSubgroup g(gens);
  CHECK(brute_force_member(make_rational(5, 6), gens, 3));
  CHECK(g.contains(make_rational(5, 6)));
  CHECK_FALSE(g.contains(make_rational(1, 4)));
  CHECK(g.contains(Rational(0)));
  CHECK(QSubgroup().contains(Rational(0)));
  CHECK_FALSE(QSubgroup().contains(Rational(1)));
  CHECK(QSubgroup::integers().is_subgroup_of(g));
  CHECK_FALSE(g.is_subgroup_of(QSubgroup::integers()));
}

TEST_CASE("qsubgroup_contains agrees with bounded search") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> gens;
    const int count = 1 + trial % 2;
    for (int i = 0; i < count; ++i) gens.push_back(make_rational(num(rng), den(rng)));
    const Rational x = make_rational(num(rng), den(rng));
    const QSubgroup g(gens);
    // After scaling by lcm <= 12 every value is at most 36 in size, so a
    // representation with coefficients below 80 exists whenever one exists.
    const bool expected = brute_force_member(x, gens, count == 1 ? 200 : 80);
    CHECK(g.contains(x) == expected);
  }
}

TEST_CASE("bezout_coefficients") {
  const std::vector<Rational> values = {Rational(1), make_rational(1, 3)};
  const auto m = bezout_coefficients(values);
  Rational sum = 0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += Rational(m[i]) * values[i];
  CHECK(sum == make_rational(1, 3));

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 12);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> v;
    for (int i = 0; i < 4; ++i) v.push_back(make_rational(num(rng), den(rng)));
    const auto c = bezout_coefficients(v);
    Rational s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += Rational(c[i]) * v[i];
    CHECK(s == qsubgroup_canonical(v));
  }
}

TEST_CASE("rational_reconstruct examples") {
  CHECK(brute_force_reconstruct(0.3333, 1e-3, 10) == make_rational(1, 3));
  CHECK(rational_reconstruct(0.3333, 1e-3, 10) == make_rational(1, 3));
  CHECK(rational_reconstruct(0.5, 1e-12, 10) == make_rational(1, 2));
  CHECK_FALSE(brute_force_reconstruct(0.70710678, 1e-4, 10).has_value());
  CHECK_FALSE(rational_reconstruct(0.70710678, 1e-4, 10).has_value());
  CHECK(std::abs(0.70710678 - 0.7) == doctest::Approx(7.1e-3).epsilon(0.01));
  CHECK_THROWS_AS(rational_reconstruct(0.5, 0.0, 10), Error);
}

TEST_CASE("rational_reconstruct matches exhaustive scan") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  std::uniform_int_distribution<long> qdist(1, 40);
  for (int trial = 0; trial < 500; ++trial) {
    const double x = unit(rng);
    const double eps = std::pow(10.0, -1.0 - 4.0 * (trial % 7) / 6.0);
    const long q_max = qdist(rng);
    CHECK(rational_reconstruct(x, eps, q_max) == brute_force_reconstruct(x, eps, q_max));
  }
}

TEST_CASE("rational_reconstruct is exact below the uniqueness radius") {
  std::mt19937_64 rng(5);
  for (long q_max : {1L, 5L, 12L, 64L, 1000L}) {
    std::uniform_int_distribution<long> qd(1, q_max), pd(-3 * q_max, 3 * q_max);
    const double eps = 0.49 / (static_cast<double>(q_max) * static_cast<double>(q_max));
    for (int trial = 0; trial < 200; ++trial) {
      const Rational target = make_rational(pd(rng), qd(rng));
      const auto got = rational_reconstruct(target.get_d(), eps, q_max);
      REQUIRE(got.has_value());
      CHECK(*got == target);
    }
  }
}
