#pragma once

// Magnetic frequency group Σ_{|I| even} Pf(Θ_I) Z_I[μ] at a finite level of a
// subgroup chain, and membership of candidate gap labels in it.

#include "mgl/odometer.hpp"
#include "mgl/pfaffian.hpp"

#include <string>
#include <vector>

namespace mgl {

/// Rational skew-symmetric p x p matrix.
class MagneticMatrix {
 public:
  /// Throws Error(NotSkew) unless entries^T == -entries.
  explicit MagneticMatrix(RatMatrix entries);
  /// Strictly upper entries in row-major order: θ_12, θ_13, ..., θ_{p-1,p}.
  static MagneticMatrix from_upper(std::size_t p, const std::vector<Rational>& upper);
  static MagneticMatrix zero(std::size_t p);

  std::size_t dimension() const { return entries_.rows(); }
  /// 1-based access.
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_(i - 1, j - 1); }
  const RatMatrix& entries() const { return entries_; }
  std::vector<Rational> upper() const;

  /// Θ_I with rows and columns in increasing index order.
  RatMatrix restrict_to(const IndexSet& i_set) const;
  Rational pfaffian_of(const IndexSet& i_set) const;

  MagneticMatrix scaled(const Rational& factor) const;
  /// Relabels axis i as axis perm[i] (0-based).
  MagneticMatrix permuted(const std::vector<std::size_t>& perm) const;

 private:
  RatMatrix entries_;
};

/// All increasing multi-indices of even size (∅ included), lexicographic.
std::vector<IndexSet> even_subsets(std::size_t p);

struct FrequencyContribution {
  IndexSet i_set;
  Rational pfaffian;
  QSubgroup z_i_mu;
  Rational term_generator() const { return pfaffian * z_i_mu.generator(); }
};

struct FrequencyGroup {
  std::size_t p = 0;
  std::size_t level = 0;
  std::vector<FrequencyContribution> contributions;
  QSubgroup total;
};

FrequencyGroup frequency_group(const MagneticMatrix& theta, const SubgroupChain& chain, std::size_t level);

enum class MembershipVerdict { Member, NotFoundUpTo };
std::string to_string(MembershipVerdict verdict);

struct DecompositionTerm {
  IndexSet i_set;
  Integer multiplier;  // x = Σ multiplier · Pf(Θ_I) · generator(Z_I[μ])
};

struct MembershipReport {
  Rational label;
  MembershipVerdict verdict = MembershipVerdict::NotFoundUpTo;
  std::size_t level = 0;  // first level containing the label, or j_max
  std::vector<DecompositionTerm> decomposition;
};

/// Scans levels 1..j_max and stops at the first whose frequency group
/// contains x. A miss only means "not found up to j_max".
MembershipReport label_membership(const Rational& x, const MagneticMatrix& theta, const SubgroupChain& chain,
                                  std::size_t j_max);

/// For irrational Θ the Pfaffians are kept as formal symbols: a label is a
/// rational coefficient per even I, assumed Q-independent, and it is a
/// member exactly when each coefficient lies in Z_I[μ].
struct SymbolicFrequencyGroup {
  std::size_t p = 0;
  std::size_t level = 0;
  std::vector<std::pair<IndexSet, QSubgroup>> components;

  bool contains(const std::vector<std::pair<IndexSet, Rational>>& formal_label) const;
};

SymbolicFrequencyGroup symbolic_frequency_group(const SubgroupChain& chain, std::size_t level);

}  // namespace mgl
