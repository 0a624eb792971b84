#include "mgl/cohomology.hpp"

#include "mgl/error.hpp"

#include <algorithm>

namespace mgl {

WedgeBasis::WedgeBasis(std::size_t p) : p_(p), by_degree_(p + 1), position_(std::size_t{1} << p, 0) {
  if (p > 20) throw Error(ErrorCode::InvalidArgument, "wedge basis limited to 20 generators");
  // Lexicographic order on increasing index sequences within each degree.
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 0; mask < (1u << p); ++mask) masks.push_back(mask);
  auto as_sequence = [](std::uint32_t mask) {
    std::vector<int> seq;
    for (int i = 0; mask >> i; ++i)
      if (mask & (1u << i)) seq.push_back(i);
    return seq;
  };
  std::sort(masks.begin(), masks.end(),
            [&](std::uint32_t a, std::uint32_t b) { return as_sequence(a) < as_sequence(b); });
  for (std::uint32_t mask : masks) {
    auto& bucket = by_degree_[static_cast<std::size_t>(__builtin_popcount(mask))];
    position_[mask] = bucket.size();
    bucket.push_back(mask);
  }
}

std::size_t WedgeBasis::position(std::uint32_t mask) const { return position_.at(mask); }

int wedge_sign(std::size_t axis, std::uint32_t omega) {
  const std::uint32_t bit = 1u << (axis - 1);
  if (omega & bit) return 0;
  return __builtin_popcount(omega & (bit - 1)) % 2 ? -1 : 1;
}

std::size_t KoszulComplex::coordinate(std::size_t m, std::uint32_t omega) const {
  return basis.position(omega) * module.rank + m;
}

bool KoszulComplex::squares_to_zero() const {
  for (std::size_t k = 0; k + 1 < differentials.size(); ++k) {
    if (!(differentials[k + 1] * differentials[k]).is_zero()) return false;
  }
  return true;
}

KoszulComplex koszul_complex(const ZpModule& module) {
  module.require_commuting();
  const std::size_t p = module.dimension();
  const std::size_t n = module.rank;
  KoszulComplex complex{module, WedgeBasis(p), {}};
  for (std::size_t k = 0; k < p; ++k) {
    IntMatrix d(complex.cochain_rank(k + 1), complex.cochain_rank(k));
    for (std::uint32_t omega : complex.basis.degree(k)) {
      for (std::size_t axis = 1; axis <= p; ++axis) {
        const int sign = wedge_sign(axis, omega);
        if (sign == 0) continue;
        const std::uint32_t target = omega | (1u << (axis - 1));
        const IntMatrix& t = module.action[axis - 1];
        for (std::size_t m = 0; m < n; ++m)
          for (std::size_t r = 0; r < n; ++r) {
            const Integer entry = t(r, m) - (r == m ? 1 : 0);
            if (entry != 0) d(complex.coordinate(r, target), complex.coordinate(m, omega)) += sign * entry;
          }
      }
    }
    complex.differentials.push_back(std::move(d));
  }
  return complex;
}

bool CohomologyGroup::is_cocycle(const std::vector<Integer>& cochain) const {
  const auto image = differential * cochain;
  return std::all_of(image.begin(), image.end(), [](const Integer& v) { return v == 0; });
}

std::vector<Integer> CohomologyGroup::classify(const std::vector<Integer>& cocycle) const {
  if (!is_cocycle(cocycle)) throw Error(ErrorCode::InvalidArgument, "representative is not a cocycle");
  return presentation.project(to_kernel * cocycle);
}

bool CohomologyGroup::is_trivial_class(const std::vector<Integer>& cocycle) const {
  const auto c = classify(cocycle);
  return std::all_of(c.begin(), c.end(), [](const Integer& v) { return v == 0; });
}

std::vector<std::vector<Integer>> CohomologyGroup::generators() const {
  // Kernel coordinates y = U^{-1} e_k give cocycles K y.
  const SmithForm inv = smith_normal_form(presentation.U);  // U unimodular, so this inverts it
  const IntMatrix u_inv = inv.V * inv.U;
  std::vector<std::vector<Integer>> out;
  for (std::size_t k = 0; k < presentation.factors.size(); ++k) {
    if (presentation.factors[k] == 1) continue;
    out.push_back(cocycle_basis * u_inv.column(k));
  }
  return out;
}

CohomologyGroup cohomology(const KoszulComplex& complex, std::size_t k) {
  const std::size_t p = complex.dimension();
  if (k > p) throw Error(ErrorCode::InvalidArgument, "degree above p");
  const std::size_t n_k = complex.cochain_rank(k);
  CohomologyGroup group;
  group.degree = k;
  std::size_t rank = 0;
  IntMatrix v, v_inv;
  if (k < p) {
    group.differential = complex.differentials[k];
    const SmithForm s = smith_normal_form(group.differential);
    rank = s.rank;
    v = s.V;
    v_inv = s.V_inv;
  } else {
    group.differential = IntMatrix(0, n_k);
    v = IntMatrix::identity(n_k);
    v_inv = IntMatrix::identity(n_k);
  }
  std::vector<std::size_t> kernel_cols, all_rows, kernel_rows;
  for (std::size_t c = rank; c < n_k; ++c) kernel_cols.push_back(c);
  for (std::size_t r = 0; r < n_k; ++r) all_rows.push_back(r);
  group.cocycle_basis = submatrix(v, all_rows, kernel_cols);
  group.to_kernel = submatrix(v_inv, kernel_cols, all_rows);
  const IntMatrix coboundaries =
      k == 0 ? IntMatrix(kernel_cols.size(), 0) : IntMatrix(group.to_kernel * complex.differentials[k - 1]);
  group.presentation = cokernel(coboundaries);
  return group;
}

CohomologyClass degree_zero_class(const KoszulComplex& complex, const std::vector<Integer>& invariant) {
  if (invariant.size() != complex.module.rank) throw Error(ErrorCode::DimensionMismatch, "module element size");
  return {0, invariant};
}

CohomologyClass cup_psi(const KoszulComplex& complex, const CohomologyClass& c, std::size_t axis) {
  const std::size_t p = complex.dimension();
  if (c.degree >= p) throw Error(ErrorCode::DegreeOverflow, "cup with psi_" + std::to_string(axis) + " from degree p");
  if (axis < 1 || axis > p) throw Error(ErrorCode::InvalidArgument, "axis out of range");
  const std::size_t n = complex.module.rank;
  CohomologyClass out{c.degree + 1, std::vector<Integer>(complex.cochain_rank(c.degree + 1), 0)};
  for (std::uint32_t omega : complex.basis.degree(c.degree)) {
    const int sign = wedge_sign(axis, omega);
    if (sign == 0) continue;
    const std::uint32_t target = omega | (1u << (axis - 1));
    for (std::size_t m = 0; m < n; ++m) {
      const Integer& v = c.cocycle[complex.coordinate(m, omega)];
      if (v != 0) out.cocycle[complex.coordinate(m, target)] += sign * v;
    }
  }
  return out;
}

QSubgroup psi_image_measure(const SubgroupChain& chain, std::size_t level, const IndexSet& i_set) {
  if (i_set.size() % 2 != 0) throw Error(ErrorCode::OddSubset, "|I| = " + std::to_string(i_set.size()));
  const std::size_t p = chain.dimension();
  if (i_set.size() > p) throw Error(ErrorCode::InvalidArgument, "|I| exceeds p");
  const KoszulComplex complex = koszul_complex(level_module(chain, level));
  const std::size_t start = p - i_set.size();
  const IntMatrix cocycles = start < p ? kernel_basis(complex.differentials[start])
                                       : IntMatrix::identity(complex.cochain_rank(p));
  std::vector<Rational> values;
  for (std::size_t c = 0; c < cocycles.cols(); ++c) {
    CohomologyClass cls{start, cocycles.column(c)};
    for (auto it = i_set.rbegin(); it != i_set.rend(); ++it) cls = cup_psi(complex, cls, *it);
    values.push_back(module_measure(cls.cocycle, complex.module.rank));
  }
  return QSubgroup(values);
}

ContainmentReport verify_cup_containment(const SubgroupChain& chain, std::size_t level, const IndexSet& i_set) {
  const QSubgroup image = psi_image_measure(chain, level, i_set);
  const QSubgroup target = z_i_mu(chain, i_set, level);
  ContainmentReport report;
  report.p = chain.dimension();
  report.level = level;
  report.i_set = i_set;
  report.image_generator = image.generator();
  report.target_generator = target.generator();
  report.pass = image.is_subgroup_of(target);
  report.image_fills_target = image == target;
  return report;
}

}  // namespace mgl
