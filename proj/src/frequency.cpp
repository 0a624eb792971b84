#include "mgl/frequency.hpp"

#include "mgl/error.hpp"

#include <algorithm>

namespace mgl {

MagneticMatrix::MagneticMatrix(RatMatrix entries) : entries_(std::move(entries)) {
  if (!is_skew_symmetric(entries_)) throw Error(ErrorCode::NotSkew, "magnetic matrix must be skew-symmetric");
}

MagneticMatrix MagneticMatrix::from_upper(std::size_t p, const std::vector<Rational>& upper) {
  if (upper.size() != p * (p - 1) / 2) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(p * (p - 1) / 2) + " upper entries");
  }
  RatMatrix m(p, p);
  std::size_t k = 0;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) {
      m(i, j) = upper[k++];
      m(j, i) = -m(i, j);
    }
  return MagneticMatrix(std::move(m));
}

MagneticMatrix MagneticMatrix::zero(std::size_t p) { return MagneticMatrix(RatMatrix(p, p)); }

std::vector<Rational> MagneticMatrix::upper() const {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < dimension(); ++i)
    for (std::size_t j = i + 1; j < dimension(); ++j) out.push_back(entries_(i, j));
  return out;
}

RatMatrix MagneticMatrix::restrict_to(const IndexSet& i_set) const {
  std::vector<std::size_t> idx;
  for (std::size_t i : i_set) {
    if (i < 1 || i > dimension()) throw Error(ErrorCode::InvalidArgument, "index set " + to_string(i_set));
    idx.push_back(i - 1);
  }
  if (!std::is_sorted(idx.begin(), idx.end())) throw Error(ErrorCode::InvalidArgument, "index set must increase");
  return principal_submatrix(entries_, idx);
}

Rational MagneticMatrix::pfaffian_of(const IndexSet& i_set) const {
  if (i_set.size() % 2 != 0) throw Error(ErrorCode::OddSubset, "|I| = " + std::to_string(i_set.size()));
  return pfaffian(restrict_to(i_set));
}

MagneticMatrix MagneticMatrix::scaled(const Rational& factor) const {
  RatMatrix m = entries_;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= factor;
  return MagneticMatrix(std::move(m));
}

MagneticMatrix MagneticMatrix::permuted(const std::vector<std::size_t>& perm) const {
  RatMatrix m(dimension(), dimension());
  for (std::size_t i = 0; i < dimension(); ++i)
    for (std::size_t j = 0; j < dimension(); ++j) m(perm[i], perm[j]) = entries_(i, j);
  return MagneticMatrix(std::move(m));
}

std::vector<IndexSet> even_subsets(std::size_t p) {
  if (p < 1 || p > 20) throw Error(ErrorCode::InvalidArgument, "even_subsets needs 1 <= p <= 20");
  std::vector<IndexSet> out;
  for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
    if (__builtin_popcount(mask) % 2) continue;
    IndexSet s;
    for (std::size_t i = 0; i < p; ++i)
      if (mask & (1u << i)) s.push_back(i + 1);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

FrequencyGroup frequency_group(const MagneticMatrix& theta, const SubgroupChain& chain, std::size_t level) {
  if (theta.dimension() != chain.dimension()) throw Error(ErrorCode::DimensionMismatch, "Θ and chain dimensions");
  FrequencyGroup group;
  group.p = chain.dimension();
  group.level = level;
  std::vector<Rational> generators;
  for (const IndexSet& i_set : even_subsets(group.p)) {
    FrequencyContribution c{i_set, theta.pfaffian_of(i_set), z_i_mu(chain, i_set, level)};
    generators.push_back(c.term_generator());
    group.contributions.push_back(std::move(c));
  }
  group.total = QSubgroup(generators);
  return group;
}

std::string to_string(MembershipVerdict verdict) {
  return verdict == MembershipVerdict::Member ? "MEMBER" : "NOT_FOUND_UP_TO";
}

MembershipReport label_membership(const Rational& x, const MagneticMatrix& theta, const SubgroupChain& chain,
                                  std::size_t j_max) {
  if (j_max < 1 || j_max > chain.depth()) {
    throw Error(ErrorCode::InvalidArgument, "j_max must lie in 1.." + std::to_string(chain.depth()));
  }
  MembershipReport report;
  report.label = x;
  report.level = j_max;
  for (std::size_t j = 1; j <= j_max; ++j) {
    const FrequencyGroup group = frequency_group(theta, chain, j);
    if (!group.total.contains(x)) continue;
    report.verdict = MembershipVerdict::Member;
    report.level = j;
    std::vector<Rational> terms;
    for (const auto& c : group.contributions) terms.push_back(c.term_generator());
    const std::vector<Integer> bezout = bezout_coefficients(terms);
    const Integer scale = group.total.is_trivial() ? Integer(0) : Integer(Rational(x / group.total.generator()).get_num());
    for (std::size_t k = 0; k < terms.size(); ++k) {
      report.decomposition.push_back({group.contributions[k].i_set, Integer(scale * bezout[k])});
    }
    return report;
  }
  return report;
}

bool SymbolicFrequencyGroup::contains(const std::vector<std::pair<IndexSet, Rational>>& formal_label) const {
  for (const auto& [i_set, coefficient] : formal_label) {
    const auto it = std::find_if(components.begin(), components.end(),
                                 [&](const auto& component) { return component.first == i_set; });
    if (it == components.end()) {
      if (coefficient != 0) return false;
      continue;
    }
    if (!it->second.contains(coefficient)) return false;
  }
  return true;
}

SymbolicFrequencyGroup symbolic_frequency_group(const SubgroupChain& chain, std::size_t level) {
  SymbolicFrequencyGroup group;
  group.p = chain.dimension();
  group.level = level;
  for (const IndexSet& i_set : even_subsets(group.p)) group.components.emplace_back(i_set, z_i_mu(chain, i_set, level));
  return group;
}

}  // namespace mgl
