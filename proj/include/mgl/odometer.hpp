#pragma once

// Finite-level model of the Cantor odometer Sigma = lim Z^p / Gamma_j with
// its translation action and Haar measure.

#include "mgl/int_matrix.hpp"
#include "mgl/rational.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace mgl {

using LatticePoint = std::vector<std::int64_t>;

/// Increasing list of axis labels drawn from {1, ..., p}.
using IndexSet = std::vector<std::size_t>;

std::string to_string(const IndexSet& index_set);
IndexSet complement(const IndexSet& index_set, std::size_t p);

/// Nested finite-index subgroups Gamma_1 ⊇ Gamma_2 ⊇ ... of Z^p, each given
/// by a nonsingular integer matrix whose columns generate it. Levels are
/// 1-based. The constructor validates nesting and strict index growth and
/// throws Error(InvalidChain) otherwise.
class SubgroupChain {
 public:
  SubgroupChain(std::size_t p, std::vector<IntMatrix> levels);

  /// Gamma_j = diag(d_1^j, ..., d_p^j) Z^p for j = 1..depth.
  static SubgroupChain diagonal(const std::vector<long>& degrees, std::size_t depth);
  /// Single level Gamma_1 = Z^p.
  static SubgroupChain trivial(std::size_t p);

  std::size_t dimension() const { return p_; }
  std::size_t depth() const { return levels_.size(); }
  const IntMatrix& generators(std::size_t level) const;
  const std::vector<IntMatrix>& levels() const { return levels_; }
  Integer index(std::size_t level) const;

  /// Relabels axis i as axis perm[i] (0-based permutation of the axes).
  SubgroupChain permuted(const std::vector<std::size_t>& perm) const;

 private:
  std::size_t p_;
  std::vector<IntMatrix> levels_;
};

/// Random chain with every index at most max_index, used by the property
/// suites. Directions interact through random unimodular mixing.
SubgroupChain random_chain(std::size_t p, std::size_t depth, long max_index, std::mt19937_64& rng);

/// Z^p / Gamma with canonical representatives: the integer box
/// 0 <= x_i < H_ii of the lower-triangular Hermite form H of Gamma's
/// generators, in lexicographic order.
class CosetSpace {
 public:
  explicit CosetSpace(const IntMatrix& generators);

  std::size_t size() const { return size_; }
  std::size_t dimension() const { return box_.size(); }
  const std::vector<std::int64_t>& box() const { return box_; }

  LatticePoint representative(std::size_t index) const;
  LatticePoint reduce(const LatticePoint& x) const;
  std::size_t index_of(const LatticePoint& x) const;

 private:
  std::vector<std::vector<std::int64_t>> hermite_;  // column-major H
  std::vector<std::int64_t> box_;
  std::size_t size_ = 1;
};

std::vector<LatticePoint> coset_enumeration(const SubgroupChain& chain, std::size_t level);

/// Free abelian group Z^rank with p commuting automorphisms.
struct ZpModule {
  std::size_t rank = 0;
  std::vector<IntMatrix> action;  // T_1..T_p

  std::size_t dimension() const { return action.size(); }
  bool is_commuting() const;
  /// Throws Error(NotCommuting) when some T_i T_k != T_k T_i.
  void require_commuting() const;
};

/// Permutation module of Z^p / Gamma_j: T_i maps the indicator of coset c to
/// the indicator of c + e_i.
ZpModule level_module(const SubgroupChain& chain, std::size_t level);
/// Z with trivial action of Z^p.
ZpModule trivial_module(std::size_t p);

/// Haar measure of a module element of a level module: coefficient sum over N_j.
Rational module_measure(const std::vector<Integer>& x, std::size_t rank);

/// Locally constant integer function on Sigma, constant on level-j cylinders.
struct LevelFunction {
  std::size_t level = 1;
  std::vector<Integer> coefficients;  // indexed by coset_enumeration order

  static LevelFunction indicator(const SubgroupChain& chain, std::size_t level, std::size_t coset);
  static LevelFunction constant(const SubgroupChain& chain, std::size_t level, const Integer& value);
};

Rational measure(const LevelFunction& f, const SubgroupChain& chain);
/// Pulls f back along Z^p/Gamma_{j+1} -> Z^p/Gamma_j.
LevelFunction refine(const LevelFunction& f, const SubgroupChain& chain);

/// Z^rank modulo a sublattice, in Smith coordinates: class(x) = U x with
/// coordinate k read modulo factors[k] (0 = free coordinate, 1 = killed).
struct Quotient {
  IntMatrix U;
  std::vector<Integer> factors;
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  std::vector<Integer> project(const std::vector<Integer>& x) const;
  bool is_zero(const std::vector<Integer>& x) const;
};

/// Quotient of Z^rank by the span of the columns of `relations`.
Quotient cokernel(const IntMatrix& relations);

/// Stacked (T_i - 1), i in S, side by side (rank x rank|S|).
IntMatrix augmentation_columns(const ZpModule& m, const IndexSet& s);

Quotient coinvariants(const ZpModule& m, const IndexSet& s);
/// Integer basis (columns) of the elements fixed by every T_i, i in S.
IntMatrix invariants(const ZpModule& m, const IndexSet& s);

/// Generators (columns) of the preimage in Z^rank of the Z^I-invariant part
/// of the Z^{I^c}-coinvariants of m.
IntMatrix invariant_coinvariant_lift(const ZpModule& m, const IndexSet& i_set);

/// Z_I[mu] computed at one level of the chain. Throws Error(OddSubset) for
/// odd |I|.
QSubgroup z_i_mu(const SubgroupChain& chain, const IndexSet& i_set, std::size_t level);

}  // namespace mgl
