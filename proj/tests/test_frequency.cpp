#include "doctest.h"

#include "mgl/error.hpp"
#include "mgl/frequency.hpp"

#include <algorithm>
#include <numeric>

using namespace mgl;

namespace {

Rational decomposition_value(const MembershipReport& r, const FrequencyGroup& g) {
  Rational sum = 0;
  for (std::size_t k = 0; k < r.decomposition.size(); ++k) {
    sum += Rational(r.decomposition[k].multiplier) * g.contributions[k].term_generator();
  }
  return sum;
}

MagneticMatrix random_theta(std::mt19937_64& rng, std::size_t p) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 6);
  std::vector<Rational> upper;
  for (std::size_t k = 0; k < p * (p - 1) / 2; ++k) upper.push_back(make_rational(num(rng), den(rng)));
  return MagneticMatrix::from_upper(p, upper);
}

}  // namespace

TEST_CASE("even_subsets") {
  CHECK(even_subsets(2) == std::vector<IndexSet>{{}, {1, 2}});
  CHECK(even_subsets(3) == std::vector<IndexSet>{{}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(even_subsets(4).size() == 8);
  for (std::size_t p = 1; p <= 8; ++p) CHECK(even_subsets(p).size() == (std::size_t{1} << (p - 1)));
}

TEST_CASE("magnetic matrix validation") {
  RatMatrix bad(2, 2);
  bad(0, 1) = 1;
  CHECK_THROWS_AS(MagneticMatrix{bad}, Error);
  const MagneticMatrix t = MagneticMatrix::from_upper(3, {1, 2, 3});
  CHECK(t(2, 1) == -1);
  CHECK(t.pfaffian_of({}) == 1);
  CHECK(t.pfaffian_of({1, 3}) == 2);
  CHECK_THROWS_AS(t.pfaffian_of({1}), Error);
}

TEST_CASE("frequency_group examples") {
  const MagneticMatrix third = MagneticMatrix::from_upper(2, {make_rational(1, 3)});
  const FrequencyGroup trivial = frequency_group(third, SubgroupChain::trivial(2), 1);
  CHECK(trivial.total.generator() == make_rational(1, 3));
  REQUIRE(trivial.contributions.size() == 2);
  CHECK(trivial.contributions[0].z_i_mu == QSubgroup::integers());
  CHECK(trivial.contributions[1].pfaffian == make_rational(1, 3));

  const SubgroupChain chain23 = SubgroupChain::diagonal({2, 3}, 3);
  for (std::size_t j = 1; j <= 3; ++j) {
    CHECK(frequency_group(MagneticMatrix::zero(2), chain23, j).total == z_i_mu(chain23, {}, j));
  }

  // Dyadic in both directions: index 4 at level 1, 16 at level 2.
  const SubgroupChain dyadic2 = SubgroupChain::diagonal({2, 2}, 2);
  const FrequencyGroup level1 = frequency_group(third, dyadic2, 1);
  CHECK(level1.contributions[0].z_i_mu.generator() == make_rational(1, 4));
  CHECK(level1.contributions[1].z_i_mu == QSubgroup::integers());
  CHECK(level1.total.generator() == make_rational(1, 12));
  CHECK(frequency_group(third, dyadic2, 2).total.generator() == make_rational(1, 48));
}

TEST_CASE("label_membership examples") {
  const MagneticMatrix third = MagneticMatrix::from_upper(2, {make_rational(1, 3)});
  const SubgroupChain trivial = SubgroupChain::trivial(2);
  const FrequencyGroup g = frequency_group(third, trivial, 1);

  const MembershipReport hit = label_membership(make_rational(1, 3), third, trivial, 1);
  CHECK(hit.verdict == MembershipVerdict::Member);
  CHECK(hit.level == 1);
  CHECK(decomposition_value(hit, g) == make_rational(1, 3));
  REQUIRE(hit.decomposition.size() == 2);
  CHECK(hit.decomposition[0].multiplier == 0);
  CHECK(hit.decomposition[1].i_set == IndexSet{1, 2});
  CHECK(hit.decomposition[1].multiplier == 1);

  const MembershipReport miss = label_membership(make_rational(1, 2), third, trivial, 1);
  CHECK(miss.verdict == MembershipVerdict::NotFoundUpTo);
  CHECK(miss.level == 1);
  CHECK(miss.decomposition.empty());

  const MembershipReport zero = label_membership(Rational(0), third, trivial, 1);
  CHECK(zero.verdict == MembershipVerdict::Member);
  for (const auto& t : zero.decomposition) CHECK(t.multiplier == 0);
}

TEST_CASE("label_membership reports the first level") {
  const SubgroupChain dyadic = SubgroupChain::diagonal({2}, 4);
  const MagneticMatrix zero = MagneticMatrix::zero(1);
  const MembershipReport r = label_membership(make_rational(3, 8), zero, dyadic, 4);
  CHECK(r.verdict == MembershipVerdict::Member);
  CHECK(r.level == 3);
  CHECK(decomposition_value(r, frequency_group(zero, dyadic, 3)) == make_rational(3, 8));
  CHECK(label_membership(make_rational(1, 32), zero, dyadic, 4).verdict == MembershipVerdict::NotFoundUpTo);
  CHECK_THROWS_AS(label_membership(Rational(0), zero, dyadic, 5), Error);
}

TEST_CASE("frequency group properties on random inputs") {
  std::mt19937_64 rng(307);
  for (int trial = 0; trial < 16; ++trial) {
    const std::size_t p = 2 + trial % 3;
    const SubgroupChain chain = random_chain(p, 2, p == 4 ? 16 : 36, rng);
    const MagneticMatrix theta = random_theta(rng, p);

    QSubgroup previous;
    for (std::size_t j = 1; j <= chain.depth(); ++j) {
      const FrequencyGroup g = frequency_group(theta, chain, j);
      CHECK(QSubgroup::integers().is_subgroup_of(g.total));
      CHECK(previous.is_subgroup_of(g.total));
      previous = g.total;

      // Integer scaling multiplies each Pfaffian by n^{|I|/2}.
      const long n = 2 + trial % 3;
      const FrequencyGroup s = frequency_group(theta.scaled(Rational(n)), chain, j);
      for (std::size_t k = 0; k < g.contributions.size(); ++k) {
        Rational factor = 1;
        for (std::size_t e = 0; e < g.contributions[k].i_set.size() / 2; ++e) factor *= n;
        CHECK(s.contributions[k].pfaffian == factor * g.contributions[k].pfaffian);
      }

      // Consistent relabelling of axes leaves the total unchanged.
      std::vector<std::size_t> perm(p);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      CHECK(frequency_group(theta.permuted(perm), chain.permuted(perm), j).total == g.total);

      const MembershipReport r = label_membership(g.total.generator(), theta, chain, j);
      CHECK(r.verdict == MembershipVerdict::Member);
      CHECK(r.level <= j);
      CHECK(decomposition_value(r, frequency_group(theta, chain, r.level)) == g.total.generator());
    }
  }
}

TEST_CASE("symbolic frequency group") {
  const SubgroupChain chain = SubgroupChain::diagonal({2, 1}, 2);
  const SymbolicFrequencyGroup g = symbolic_frequency_group(chain, 2);
  REQUIRE(g.components.size() == 2);
  CHECK(g.components[0].second.generator() == make_rational(1, 4));
  CHECK(g.components[1].second == QSubgroup::integers());
  CHECK(g.contains({{{}, make_rational(3, 4)}, {{1, 2}, Rational(2)}}));
  CHECK_FALSE(g.contains({{{}, make_rational(3, 4)}, {{1, 2}, make_rational(1, 2)}}));
  CHECK_FALSE(g.contains({{{1, 3}, Rational(1)}}));
}
