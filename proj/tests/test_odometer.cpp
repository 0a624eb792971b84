#include "doctest.h"

#include "mgl/error.hpp"
#include "mgl/odometer.hpp"

#include <set>

using namespace mgl;

namespace {

// Size of the subgroup of Z^p / Gamma generated by e_l, l in axes, found by
// breadth-first closure over explicit coset representatives.
std::size_t generated_subgroup_size(const CosetSpace& space, const IndexSet& axes) {
  std::set<std::size_t> seen = {0};
  std::vector<std::size_t> frontier = {0};
  while (!frontier.empty()) {
    const std::size_t c = frontier.back();
    frontier.pop_back();
    for (std::size_t l : axes) {
      LatticePoint x = space.representative(c);
      ++x[l - 1];
      const std::size_t next = space.index_of(x);
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  return seen.size();
}

std::vector<IndexSet> all_even_subsets(std::size_t p) {
  std::vector<IndexSet> out;
  for (unsigned mask = 0; mask < (1u << p); ++mask) {
    if (__builtin_popcount(mask) % 2) continue;
    IndexSet s;
    for (std::size_t i = 0; i < p; ++i)
      if (mask & (1u << i)) s.push_back(i + 1);
    out.push_back(s);
  }
  return out;
}

SubgroupChain dyadic(std::size_t depth) { return SubgroupChain::diagonal({2}, depth); }

}  // namespace

TEST_CASE("chain validation") {
  CHECK_NOTHROW(SubgroupChain(2, {IntMatrix::identity(2), IntMatrix{{2, 0}, {0, 1}}}));
  CHECK_THROWS_AS(SubgroupChain(2, {IntMatrix{{1, 0}, {0, 0}}}), Error);
  // Not nested: 3Z is not inside 2Z.
  CHECK_THROWS_AS(SubgroupChain(1, {IntMatrix{{2}}, IntMatrix{{3}}}), Error);
  // Index must grow.
  CHECK_THROWS_AS(SubgroupChain(1, {IntMatrix{{2}}, IntMatrix{{-2}}}), Error);
  CHECK_THROWS_AS(SubgroupChain(1, {}), Error);
  CHECK(SubgroupChain::diagonal({2, 3}, 2).index(2) == 36);
}

TEST_CASE("coset_enumeration examples") {
  const auto reps = coset_enumeration(SubgroupChain(1, {IntMatrix{{2}}}), 1);
  CHECK(reps == std::vector<LatticePoint>{{0}, {1}});

  const auto reps23 = coset_enumeration(SubgroupChain(2, {IntMatrix{{2, 0}, {0, 3}}}), 1);
  std::vector<LatticePoint> expected;
  for (std::int64_t a = 0; a < 2; ++a)
    for (std::int64_t b = 0; b < 3; ++b) expected.push_back({a, b});
  CHECK(reps23 == expected);

  CHECK(coset_enumeration(SubgroupChain::trivial(3), 1) == std::vector<LatticePoint>{{0, 0, 0}});
}

TEST_CASE("coset spaces are complete residue systems") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const SubgroupChain chain = random_chain(2 + trial % 2, 3, 48, rng);
    for (std::size_t j = 1; j <= chain.depth(); ++j) {
      const CosetSpace space(chain.generators(j));
      CHECK(Integer(static_cast<unsigned long>(space.size())) == chain.index(j));
      const auto reps = coset_enumeration(chain, j);
      CHECK(std::is_sorted(reps.begin(), reps.end()));
      for (std::size_t k = 0; k < reps.size(); ++k) {
        CHECK(space.index_of(reps[k]) == k);
        // Translating by any generator of Gamma_j stays in the coset.
        const IntMatrix& a = chain.generators(j);
        for (std::size_t c = 0; c < a.cols(); ++c) {
          LatticePoint x = reps[k];
          for (std::size_t r = 0; r < a.rows(); ++r) x[r] += a(r, c).get_si() * (c + 2);
          CHECK(space.index_of(x) == k);
        }
      }
    }
  }
}

TEST_CASE("level_module examples") {
  const ZpModule m = level_module(dyadic(1), 1);
  CHECK(m.rank == 2);
  CHECK(m.action[0] == IntMatrix{{0, 1}, {1, 0}});

  const ZpModule t = level_module(SubgroupChain::trivial(3), 1);
  CHECK(t.rank == 1);
  for (const auto& a : t.action) CHECK(a == IntMatrix{{1}});

  const ZpModule d = level_module(SubgroupChain(2, {IntMatrix{{2, 0}, {0, 1}}}), 1);
  CHECK(d.rank == 2);
  CHECK(d.action[0] == IntMatrix{{0, 1}, {1, 0}});
  CHECK(d.action[1] == IntMatrix::identity(2));
}

TEST_CASE("level modules commute and are unimodular") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const SubgroupChain chain = random_chain(2 + trial % 2, 2, 24, rng);
    const ZpModule m = level_module(chain, chain.depth());
    CHECK(m.is_commuting());
    for (const auto& t : m.action) CHECK(is_unimodular(t));
  }
  ZpModule bad;
  bad.rank = 2;
  bad.action = {IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{1, 0}, {1, 1}}};
  CHECK_FALSE(bad.is_commuting());
  CHECK_THROWS_AS(bad.require_commuting(), Error);
}

TEST_CASE("measure and refine") {
  const SubgroupChain chain = dyadic(3);
  CHECK(measure(LevelFunction::indicator(chain, 3, 5), chain) == make_rational(1, 8));
  CHECK(measure(LevelFunction::constant(chain, 2, 1), chain) == 1);
  LevelFunction diff = LevelFunction::indicator(chain, 2, 1);
  diff.coefficients[3] = -1;
  CHECK(measure(diff, chain) == 0);

  CHECK(refine(LevelFunction::constant(chain, 1, 1), chain).coefficients == std::vector<Integer>(4, 1));
  const LevelFunction r = refine(LevelFunction::indicator(chain, 1, 0), chain);
  CHECK(r.level == 2);
  CHECK(r.coefficients == std::vector<Integer>{1, 0, 1, 0});
  CHECK_THROWS_AS(refine(LevelFunction::constant(chain, 3, 1), chain), Error);
}

TEST_CASE("measure is preserved by refinement and translation") {
  std::mt19937_64 rng(107);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (int trial = 0; trial < 30; ++trial) {
    const SubgroupChain chain = random_chain(1 + trial % 3, 3, 40, rng);
    if (chain.depth() < 2) continue;
    LevelFunction f = LevelFunction::constant(chain, 1, 0);
    for (auto& v : f.coefficients) v = coeff(rng);
    const LevelFunction once = refine(f, chain);
    CHECK(measure(once, chain) == measure(f, chain));
    if (chain.depth() >= 3) {
      const LevelFunction twice = refine(once, chain);
      CHECK(measure(twice, chain) == measure(f, chain));
    }
    const ZpModule m = level_module(chain, 1);
    for (const auto& t : m.action) {
      CHECK(module_measure(t * f.coefficients, m.rank) == measure(f, chain));
    }
  }
}

TEST_CASE("coinvariants and invariants examples") {
  const ZpModule m = level_module(dyadic(1), 1);
  const Quotient q = coinvariants(m, {1});
  CHECK(q.free_rank == 1);
  CHECK(q.torsion.empty());
  CHECK(q.project({1, 0}) == q.project({0, 1}));
  CHECK_FALSE(q.is_zero({1, 0}));

  const Quotient id = coinvariants(m, {});
  CHECK(id.free_rank == 2);
  CHECK(id.U == IntMatrix::identity(2));

  const Quotient triv = coinvariants(trivial_module(3), {1, 2, 3});
  CHECK(triv.free_rank == 1);

  const IntMatrix inv = invariants(m, {1});
  CHECK(inv.cols() == 1);
  CHECK(abs(inv(0, 0)) == 1);
  CHECK(inv(0, 0) == inv(1, 0));
  CHECK(invariants(m, {}).cols() == 2);
  CHECK(invariants(trivial_module(2), {1, 2}).cols() == 1);
}

TEST_CASE("z_i_mu examples") {
  for (std::size_t j = 1; j <= 3; ++j) {
    CHECK(z_i_mu(dyadic(3), {}, j).generator() == make_rational(1, 1L << j));
    CHECK(z_i_mu(dyadic(3), {}, j).generator() == make_rational(1, 1L << j));
  }
  const SubgroupChain chain23 = SubgroupChain::diagonal({2, 3}, 3);
  for (std::size_t j = 1; j <= 3; ++j) CHECK(z_i_mu(chain23, {1, 2}, j) == QSubgroup::integers());
  CHECK_THROWS_AS(z_i_mu(chain23, {1}, 1), Error);
}

TEST_CASE("z_i_mu matches the orbit-size oracle, sandwich and monotonicity") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t p = trial % 3 == 2 ? 4 : 2 + trial % 2;
    const SubgroupChain chain = random_chain(p, 3, p == 4 ? 24 : 48, rng);
    for (const IndexSet& i_set : all_even_subsets(p)) {
      QSubgroup previous;
      for (std::size_t j = 1; j <= chain.depth(); ++j) {
        const QSubgroup z = z_i_mu(chain, i_set, j);
        const CosetSpace space(chain.generators(j));
        const std::size_t orbit = generated_subgroup_size(space, complement(i_set, p));
        CHECK(z.generator() == make_rational(1, static_cast<long>(orbit)));
        CHECK(QSubgroup::integers().is_subgroup_of(z));
        CHECK(z.is_subgroup_of(z_i_mu(chain, {}, j)));
        CHECK(previous.is_subgroup_of(z));
        previous = z;
      }
    }
    for (std::size_t j = 1; j <= chain.depth(); ++j) {
      IndexSet all;
      for (std::size_t i = 1; i <= p; ++i) all.push_back(i);
      if (p % 2 == 0) CHECK(z_i_mu(chain, all, j) == QSubgroup::integers());
      CHECK(z_i_mu(chain, {}, j).generator() == make_rational(Integer(1), chain.index(j)));
    }
  }
}
