#pragma once

// Group cohomology H^*(Z^p, M) through the Koszul complex
//   C^k = M ⊗ Λ^k(Z^p),  d(m ⊗ ω) = Σ_i (T_i - 1)m ⊗ e_i ∧ ω,
// with Λ^k spanned by increasing multi-indices in lexicographic order.

#include "mgl/odometer.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mgl {

/// Increasing multi-indices of {1..p} stored as bit masks (bit i-1 = axis i).
class WedgeBasis {
 public:
  explicit WedgeBasis(std::size_t p);

  std::size_t dimension() const { return p_; }
  const std::vector<std::uint32_t>& degree(std::size_t k) const { return by_degree_.at(k); }
  std::size_t position(std::uint32_t mask) const;

 private:
  std::size_t p_;
  std::vector<std::vector<std::uint32_t>> by_degree_;
  std::vector<std::size_t> position_;  // indexed by mask
};

/// Sign of e_i ∧ e_ω against e_{ω ∪ {i}}; 0 when i ∈ ω. `axis` is 1-based.
int wedge_sign(std::size_t axis, std::uint32_t omega);

struct KoszulComplex {
  ZpModule module;
  WedgeBasis basis;
  std::vector<IntMatrix> differentials;  // d_0 .. d_{p-1}

  std::size_t dimension() const { return module.dimension(); }
  std::size_t cochain_rank(std::size_t k) const { return module.rank * basis.degree(k).size(); }
  /// Coordinate of m ⊗ e_ω inside C^{|ω|}.
  std::size_t coordinate(std::size_t m, std::uint32_t omega) const;
  /// Exact check that every d_{k+1} d_k vanishes.
  bool squares_to_zero() const;
};

/// Throws Error(NotCommuting) when the action matrices do not commute.
KoszulComplex koszul_complex(const ZpModule& module);

/// H^k = ker d_k / im d_{k-1}, with cocycles expressed in Smith coordinates
/// of the kernel so that classes can be compared exactly.
struct CohomologyGroup {
  std::size_t degree = 0;
  IntMatrix cocycle_basis;   // columns span ker d_k
  IntMatrix to_kernel;       // cochain -> kernel coordinates (valid on cocycles)
  Quotient presentation;     // kernel coordinates modulo coboundaries
  IntMatrix differential;    // d_k (0 x n when k = p)

  std::size_t free_rank() const { return presentation.free_rank; }
  const std::vector<Integer>& torsion() const { return presentation.torsion; }

  bool is_cocycle(const std::vector<Integer>& cochain) const;
  /// Class coordinates of a cocycle; equal vectors <=> cohomologous.
  std::vector<Integer> classify(const std::vector<Integer>& cocycle) const;
  bool is_trivial_class(const std::vector<Integer>& cocycle) const;
  /// One cocycle per presentation coordinate that is not killed.
  std::vector<std::vector<Integer>> generators() const;
};

CohomologyGroup cohomology(const KoszulComplex& complex, std::size_t k);

struct CohomologyClass {
  std::size_t degree = 0;
  std::vector<Integer> cocycle;
};

/// The unit 1 ⊗ 1 in H^0 of a module with an invariant vector `m`.
CohomologyClass degree_zero_class(const KoszulComplex& complex, const std::vector<Integer>& invariant);

/// Cup product with ψ_axis, the axis-th generator of H^1(Z^p, Z), realized
/// as m ⊗ ω ↦ m ⊗ e_axis ∧ ω. Throws Error(DegreeOverflow) at degree p.
CohomologyClass cup_psi(const KoszulComplex& complex, const CohomologyClass& c, std::size_t axis);

/// μ-image of ∪ψ_I : H^{p-|I|}(M_j) -> H^p(M_j) ≅ coinvariants(M_j).
QSubgroup psi_image_measure(const SubgroupChain& chain, std::size_t level, const IndexSet& i_set);

struct ContainmentReport {
  std::size_t p = 0;
  std::size_t level = 0;
  IndexSet i_set;
  Rational image_generator;   // μ(range of ∪ψ_I)
  Rational target_generator;  // Z_I[μ]
  bool pass = false;
  // Diagnostic only: whether the range already exhausts Z_I[μ].
  bool image_fills_target = false;
};

ContainmentReport verify_cup_containment(const SubgroupChain& chain, std::size_t level, const IndexSet& i_set);

}  // namespace mgl
