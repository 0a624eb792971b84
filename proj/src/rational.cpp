#include "mgl/rational.hpp"

#include "mgl/error.hpp"

#include <cmath>

namespace mgl {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(long num, long den) { return make_rational(Integer(num), Integer(den)); }

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::string s(part);
    if (s.empty()) throw Error(ErrorCode::InvalidArgument, "malformed rational '" + std::string(text) + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw Error(ErrorCode::InvalidArgument, "malformed rational '" + std::string(text) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') {
        throw Error(ErrorCode::InvalidArgument, "malformed rational '" + std::string(text) + "'");
      }
    }
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const Integer& x) { return x.get_str(); }

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Integer floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer lcm_of_denominators(std::span<const Rational> values) {
  Integer l = 1;
  for (const auto& v : values) l = lcm(l, Integer(v.get_den()));
  return l;
}

Rational qsubgroup_canonical(std::span<const Rational> generators) {
  const Integer l = lcm_of_denominators(generators);
  Integer g = 0;
  for (const auto& v : generators) {
    const Integer scaled = v.get_num() * (l / v.get_den());
    g = gcd(g, scaled);
  }
  return make_rational(g, l);
}

bool qsubgroup_contains(const Rational& x, const QSubgroup& group) { return group.contains(x); }

QSubgroup::QSubgroup(std::span<const Rational> generators)
    : generator_(qsubgroup_canonical(generators)) {}

QSubgroup QSubgroup::cyclic(const Rational& g) {
  const Rational gens[] = {g};
  return QSubgroup(gens);
}

bool QSubgroup::contains(const Rational& x) const {
  if (x == 0) return true;
  if (generator_ == 0) return false;
  return is_integer(Rational(x / generator_));
}

bool QSubgroup::is_subgroup_of(const QSubgroup& other) const { return other.contains(generator_); }

QSubgroup QSubgroup::join(const QSubgroup& other) const {
  const Rational gens[] = {generator_, other.generator_};
  return QSubgroup(gens);
}

QSubgroup QSubgroup::scaled(const Rational& factor) const { return cyclic(generator_ * factor); }

std::vector<Integer> bezout_coefficients(std::span<const Rational> values) {
  std::vector<Integer> coeffs(values.size(), 0);
  const Integer l = lcm_of_denominators(values);
  Integer g = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Integer a = values[i].get_num() * (l / values[i].get_den());
    if (a == 0) continue;
    if (g == 0) {
      g = abs(a);
      coeffs[i] = sgn(a);
      continue;
    }
    // g = s*g + t*a; previously accumulated coefficients are rescaled by s.
    Integer next, s, t;
    mpz_gcdext(next.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    for (std::size_t k = 0; k < i; ++k) coeffs[k] *= s;
    coeffs[i] = t;
    g = next;
  }
  return coeffs;
}

namespace {

// Least-denominator rational in the closed interval [lo, hi], lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi) {
  const Integer fl = floor_of(lo);
  if (fl == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  const Rational inner = simplest_between(1 / Rational(hi - fl), 1 / Rational(lo - fl));
  return Rational(fl) + 1 / inner;
}

}  // namespace

std::optional<Rational> rational_reconstruct(double x, double eps, long q_max) {
  if (!(eps > 0) || q_max < 1 || !std::isfinite(x)) {
    throw Error(ErrorCode::InvalidArgument, "rational_reconstruct needs eps > 0, q_max >= 1, finite x");
  }
  // Doubles convert to mpq exactly, so the interval test below is exact.
  const Rational center(x);
  const Rational radius(eps);
  Rational best = simplest_between(center - radius, center + radius);
  best.canonicalize();
  if (best.get_den() > q_max) return std::nullopt;
  return best;
}

}  // namespace mgl
