#pragma once

// Exterior-algebra model of H^*(T^n; Q) with dx_1..dx_n, used to test
// integrality of Chern characters on tori and their solenoid covers.

#include "mgl/odometer.hpp"
#include "mgl/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace mgl {

/// Finitely supported map from increasing multi-indices (bit masks, bit i-1
/// for dx_i) to rationals. Zero coefficients are never stored.
class ExteriorElement {
 public:
  explicit ExteriorElement(std::size_t n);

  static ExteriorElement scalar(std::size_t n, const Rational& value);
  static ExteriorElement monomial(std::size_t n, const IndexSet& indices, const Rational& coefficient);
  /// dx_i ∧ dx_j, the first Chern class of the line bundle L_ij.
  static ExteriorElement two_form(std::size_t n, std::size_t i, std::size_t j);

  std::size_t generators() const { return n_; }
  const std::map<std::uint32_t, Rational>& terms() const { return terms_; }
  Rational coefficient(std::uint32_t mask) const;
  Rational coefficient(const IndexSet& indices) const;
  void add(std::uint32_t mask, const Rational& value);
  void set(std::uint32_t mask, const Rational& value);

  bool is_zero() const { return terms_.empty(); }
  bool is_even() const;

  ExteriorElement operator+(const ExteriorElement& other) const;
  ExteriorElement operator-(const ExteriorElement& other) const;
  ExteriorElement operator*(const Rational& factor) const;
  bool operator==(const ExteriorElement& other) const = default;

 private:
  std::size_t n_;
  std::map<std::uint32_t, Rational> terms_;
};

std::uint32_t to_mask(const IndexSet& indices);
IndexSet to_index_set(std::uint32_t mask);

/// Sign of e_a ∧ e_b against e_{a ∪ b} for disjoint masks; 0 if they overlap.
int shuffle_sign(std::uint32_t a, std::uint32_t b);

/// Graded product. Throws Error(DimensionMismatch) for different n.
ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b);

/// Σ x^k / k! for an even-grade x without scalar part (nilpotent).
ExteriorElement exp_nilpotent(const ExteriorElement& x);

/// Coefficient of dx_1 ∧ ... ∧ dx_n.
Rational integrate_top(const ExteriorElement& a);

/// <a, [T^I]>: the coefficient of dx_I, i.e. ∫ over the subtorus T^I.
Rational subtorus_pairing(const ExteriorElement& a, const IndexSet& subtorus);

/// Pullback along the inclusion T^I -> T^n: keeps terms supported in I.
ExteriorElement restrict_to_subtorus(const ExteriorElement& a, const IndexSet& subtorus);

/// One twisted index probe ∫_{T^J} a · Π_{(i,j) ∈ P} (1 + dx_i dx_j).
struct IntegralityProbe {
  IndexSet subtorus;
  std::vector<std::pair<std::size_t, std::size_t>> twists;
  Rational value;
  /// Multi-index J \ ∪P whose coefficient the probe isolates once all
  /// probes with fewer twists are integral.
  IndexSet isolated;
};

struct IntegralityReport {
  bool pass = true;
  std::optional<IntegralityProbe> witness;  // first non-integral probe
  std::size_t probes = 0;
};

/// Descending twist induction: on T^n and on each codimension-one subtorus,
/// run the probes in order of increasing number of twists and stop at the
/// first non-integral value.
IntegralityReport integrality_check(const ExteriorElement& a);

/// Direct characterization: every coefficient is an integer.
bool has_integral_coefficients(const ExteriorElement& a);

/// Reduced suspension of T^n as a wedge of spheres: S^j appears
/// binom(n, j-1) times for j = 2..n+1.
struct SuspensionSplitting {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, Integer>> spheres;  // (dimension, count)
  Integer total_spheres() const;
  /// rank K^0(T^n) = 1 + number of odd-dimensional spheres in the splitting.
  Integer even_k_rank() const;
};

SuspensionSplitting suspension_ranks(std::size_t n);

/// Dimension of the even-grade part of the exterior algebra on n generators.
Integer exterior_even_dimension(std::size_t n);

/// Pullback along (z_1, ..., z_n) -> (z_1^{d_1}, ..., z_n^{d_n}):
/// dx_i -> d_i dx_i, extended multiplicatively.
ExteriorElement solenoid_pullback(const ExteriorElement& a, const std::vector<long>& degrees);

/// True iff b is the pullback of an element with integer coefficients,
/// i.e. each coefficient of dx_I is an integer multiple of Π_{i∈I} d_i.
bool in_pullback_lattice(const ExteriorElement& b, const std::vector<long>& degrees);

}  // namespace mgl
