#include "mgl/chern.hpp"

#include "mgl/error.hpp"

#include <algorithm>
#include <functional>

namespace mgl {

std::uint32_t to_mask(const IndexSet& indices) {
  std::uint32_t mask = 0;
  for (std::size_t i : indices) {
    if (i < 1 || i > 31) throw Error(ErrorCode::InvalidArgument, "multi-index entry out of range");
    const std::uint32_t bit = 1u << (i - 1);
    if (mask & bit) throw Error(ErrorCode::InvalidArgument, "repeated index in " + to_string(indices));
    mask |= bit;
  }
  return mask;
}

IndexSet to_index_set(std::uint32_t mask) {
  IndexSet out;
  for (std::size_t i = 0; mask >> i; ++i)
    if (mask & (1u << i)) out.push_back(i + 1);
  return out;
}

int shuffle_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  int inversions = 0;
  for (std::uint32_t bits = b; bits; bits &= bits - 1) {
    const int j = __builtin_ctz(bits);
    const std::uint32_t above = j >= 31 ? 0u : ~((2u << j) - 1u);
    inversions += __builtin_popcount(a & above);
  }
  return inversions % 2 ? -1 : 1;
}

ExteriorElement::ExteriorElement(std::size_t n) : n_(n) {
  if (n > 31) throw Error(ErrorCode::InvalidArgument, "at most 31 generators");
}

ExteriorElement ExteriorElement::scalar(std::size_t n, const Rational& value) {
  ExteriorElement e(n);
  e.add(0, value);
  return e;
}

ExteriorElement ExteriorElement::monomial(std::size_t n, const IndexSet& indices, const Rational& coefficient) {
  // Reorder to increasing indices, tracking the permutation sign.
  IndexSet sorted = indices;
  int sign = 1;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = 0; j + 1 < sorted.size() - i; ++j) {
      if (sorted[j] > sorted[j + 1]) {
        std::swap(sorted[j], sorted[j + 1]);
        sign = -sign;
      }
    }
  ExteriorElement e(n);
  const std::uint32_t mask = to_mask(sorted);
  if (mask >> n) throw Error(ErrorCode::InvalidArgument, "index exceeds generator count");
  e.add(mask, sign * coefficient);
  return e;
}

ExteriorElement ExteriorElement::two_form(std::size_t n, std::size_t i, std::size_t j) {
  return monomial(n, {i, j}, Rational(1));
}

Rational ExteriorElement::coefficient(std::uint32_t mask) const {
  const auto it = terms_.find(mask);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational ExteriorElement::coefficient(const IndexSet& indices) const { return coefficient(to_mask(indices)); }

void ExteriorElement::add(std::uint32_t mask, const Rational& value) {
  if (value == 0) return;
  if (mask >> n_) throw Error(ErrorCode::InvalidArgument, "term outside the generator range");
  auto [it, inserted] = terms_.try_emplace(mask, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

void ExteriorElement::set(std::uint32_t mask, const Rational& value) {
  if (mask >> n_) throw Error(ErrorCode::InvalidArgument, "term outside the generator range");
  if (value == 0) terms_.erase(mask);
  else terms_[mask] = value;
}

bool ExteriorElement::is_even() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return __builtin_popcount(t.first) % 2 == 0; });
}

ExteriorElement ExteriorElement::operator+(const ExteriorElement& other) const {
  if (n_ != other.n_) throw Error(ErrorCode::DimensionMismatch, "exterior sum");
  ExteriorElement out = *this;
  for (const auto& [mask, v] : other.terms_) out.add(mask, v);
  return out;
}

ExteriorElement ExteriorElement::operator-(const ExteriorElement& other) const { return *this + other * Rational(-1); }

ExteriorElement ExteriorElement::operator*(const Rational& factor) const {
  ExteriorElement out(n_);
  for (const auto& [mask, v] : terms_) out.add(mask, v * factor);
  return out;
}

ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b) {
  if (a.generators() != b.generators()) throw Error(ErrorCode::DimensionMismatch, "wedge of different n");
  ExteriorElement out(a.generators());
  for (const auto& [ma, va] : a.terms())
    for (const auto& [mb, vb] : b.terms()) {
      const int sign = shuffle_sign(ma, mb);
      if (sign != 0) out.add(ma | mb, sign * va * vb);
    }
  return out;
}

ExteriorElement exp_nilpotent(const ExteriorElement& x) {
  if (!x.is_even() || x.coefficient(0u) != 0) {
    throw Error(ErrorCode::InvalidArgument, "exp needs an even element without scalar part");
  }
  ExteriorElement result = ExteriorElement::scalar(x.generators(), Rational(1));
  ExteriorElement power = result;
  for (long k = 1; ; ++k) {
    power = wedge(power, x) * make_rational(1, k);
    if (power.is_zero()) break;
    result = result + power;
  }
  return result;
}

Rational integrate_top(const ExteriorElement& a) {
  const std::size_t n = a.generators();
  const std::uint32_t top = n == 0 ? 0u : static_cast<std::uint32_t>((1ull << n) - 1);
  return a.coefficient(top);
}

Rational subtorus_pairing(const ExteriorElement& a, const IndexSet& subtorus) { return a.coefficient(subtorus); }

ExteriorElement restrict_to_subtorus(const ExteriorElement& a, const IndexSet& subtorus) {
  const std::uint32_t keep = to_mask(subtorus);
  ExteriorElement out(a.generators());
  for (const auto& [mask, v] : a.terms())
    if ((mask & ~keep) == 0) out.add(mask, v);
  return out;
}

namespace {

using Twists = std::vector<std::pair<std::size_t, std::size_t>>;

// All sets of pairwise disjoint pairs inside `indices`, by size then lex.
std::vector<Twists> twist_sets(const IndexSet& indices) {
  std::vector<Twists> out;
  Twists current;
  std::vector<bool> used(indices.size(), false);
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    std::size_t first = start;
    while (first < indices.size() && used[first]) ++first;
    if (first >= indices.size()) {
      out.push_back(current);
      return;
    }
    used[first] = true;
    rec(first + 1);  // leave indices[first] untwisted
    for (std::size_t k = first + 1; k < indices.size(); ++k) {
      if (used[k]) continue;
      used[k] = true;
      current.emplace_back(indices[first], indices[k]);
      rec(first + 1);
      current.pop_back();
      used[k] = false;
    }
    used[first] = false;
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const Twists& a, const Twists& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace

IntegralityReport integrality_check(const ExteriorElement& a) {
  const std::size_t n = a.generators();
  IndexSet full;
  for (std::size_t i = 1; i <= n; ++i) full.push_back(i);
  std::vector<IndexSet> subtori = {full};
  for (std::size_t drop = 1; drop <= n; ++drop) {
    IndexSet face;
    for (std::size_t i = 1; i <= n; ++i)
      if (i != drop) face.push_back(i);
    subtori.push_back(face);
  }

  IntegralityReport report;
  for (const IndexSet& subtorus : subtori) {
    const ExteriorElement restricted = restrict_to_subtorus(a, subtorus);
    const std::uint32_t top = to_mask(subtorus);
    for (const Twists& twists : twist_sets(subtorus)) {
      ExteriorElement twisted = restricted;
      std::uint32_t used = 0;
      for (const auto& [i, j] : twists) {
        twisted = wedge(twisted, ExteriorElement::scalar(n, Rational(1)) + ExteriorElement::two_form(n, i, j));
        used |= (1u << (i - 1)) | (1u << (j - 1));
      }
      ++report.probes;
      const Rational value = twisted.coefficient(top);
      if (!is_integer(value)) {
        report.pass = false;
        report.witness = IntegralityProbe{subtorus, twists, value, to_index_set(top & ~used)};
        return report;
      }
    }
  }
  return report;
}

bool has_integral_coefficients(const ExteriorElement& a) {
  return std::all_of(a.terms().begin(), a.terms().end(), [](const auto& t) { return is_integer(t.second); });
}

namespace {

Integer binomial(std::size_t n, std::size_t k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

Integer SuspensionSplitting::total_spheres() const {
  Integer total = 0;
  for (const auto& [dim, count] : spheres) total += count;
  return total;
}

Integer SuspensionSplitting::even_k_rank() const {
  // Reduced K^0(S^j) has rank one for even j, so the odd spheres of ΣT^n
  // carry reduced K^1(ΣT^n) = reduced K^0(T^n); the unit adds one.
  Integer rank = 1;
  for (const auto& [dim, count] : spheres)
    if (dim % 2 == 1) rank += count;
  return rank;
}

SuspensionSplitting suspension_ranks(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "suspension_ranks needs n >= 1");
  SuspensionSplitting s;
  s.n = n;
  for (std::size_t dim = 2; dim <= n + 1; ++dim) s.spheres.emplace_back(dim, binomial(n, dim - 1));
  return s;
}

Integer exterior_even_dimension(std::size_t n) {
  Integer total = 0;
  for (std::size_t k = 0; k <= n; k += 2) total += binomial(n, k);
  return total;
}

namespace {

Integer degree_product(std::uint32_t mask, const std::vector<long>& degrees) {
  Integer product = 1;
  for (std::size_t i = 0; mask >> i; ++i)
    if (mask & (1u << i)) product *= degrees[i];
  return product;
}

void check_degrees(const ExteriorElement& a, const std::vector<long>& degrees) {
  if (degrees.size() != a.generators()) throw Error(ErrorCode::DimensionMismatch, "one degree per generator");
  for (long d : degrees)
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "covering degrees must be positive");
}

}  // namespace

ExteriorElement solenoid_pullback(const ExteriorElement& a, const std::vector<long>& degrees) {
  check_degrees(a, degrees);
  ExteriorElement out(a.generators());
  for (const auto& [mask, v] : a.terms()) out.add(mask, v * Rational(degree_product(mask, degrees)));
  return out;
}

bool in_pullback_lattice(const ExteriorElement& b, const std::vector<long>& degrees) {
  check_degrees(b, degrees);
  return std::all_of(b.terms().begin(), b.terms().end(), [&](const auto& t) {
    return is_integer(Rational(t.second / Rational(degree_product(t.first, degrees))));
  });
}

}  // namespace mgl
