#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mgl {

using Integer = mpz_class;
// mpq_class keeps itself canonical (reduced, positive denominator) as long as
// values are built through make_rational / parse_rational or arithmetic.
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

/// Parses "a", "a/b" or "-a/b". Throws mgl::Error(InvalidArgument) on junk
/// or a zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

bool is_integer(const Rational& x);
Integer floor_of(const Rational& x);

Integer lcm_of_denominators(std::span<const Rational> values);

/// Subgroup of Q generated by finitely many rationals. Every such group is
/// cyclic; the canonical generator g >= 0 satisfies <gens> = gZ.
class QSubgroup {
 public:
  QSubgroup() = default;
  explicit QSubgroup(std::span<const Rational> generators);
  static QSubgroup cyclic(const Rational& g);
  static QSubgroup integers() { return cyclic(Rational(1)); }

  const Rational& generator() const { return generator_; }
  bool is_trivial() const { return generator_ == 0; }

  bool contains(const Rational& x) const;
  bool is_subgroup_of(const QSubgroup& other) const;
  QSubgroup join(const QSubgroup& other) const;
  QSubgroup scaled(const Rational& factor) const;

  bool operator==(const QSubgroup& other) const { return generator_ == other.generator_; }

 private:
  Rational generator_{0};
};

/// gcd(a_i L / b_i) / L with L = lcm(b_i); 0 for an empty list.
Rational qsubgroup_canonical(std::span<const Rational> generators);
bool qsubgroup_contains(const Rational& x, const QSubgroup& group);

/// Integer coefficients m_i with sum m_i * values[i] == gcd(values) (the
/// canonical generator). Empty or all-zero input yields all-zero coefficients.
std::vector<Integer> bezout_coefficients(std::span<const Rational> values);

/// Fraction with the least denominator q <= q_max such that |x - p/q| <= eps.
/// Runs the continued-fraction descent on the exact interval [x-eps, x+eps].
std::optional<Rational> rational_reconstruct(double x, double eps, long q_max);

}  // namespace mgl
