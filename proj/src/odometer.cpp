#include "mgl/odometer.hpp"

#include "mgl/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mgl {

std::string to_string(const IndexSet& index_set) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < index_set.size(); ++k) os << (k ? "," : "") << index_set[k];
  os << '}';
  return os.str();
}

IndexSet complement(const IndexSet& index_set, std::size_t p) {
  IndexSet out;
  for (std::size_t i = 1; i <= p; ++i) {
    if (std::find(index_set.begin(), index_set.end(), i) == index_set.end()) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// SubgroupChain

SubgroupChain::SubgroupChain(std::size_t p, std::vector<IntMatrix> levels) : p_(p), levels_(std::move(levels)) {
  if (p_ == 0) throw Error(ErrorCode::InvalidChain, "dimension must be positive");
  if (levels_.empty()) throw Error(ErrorCode::InvalidChain, "chain needs at least one level");
  Integer previous = 0;
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    const IntMatrix& a = levels_[j];
    if (a.rows() != p_ || a.cols() != p_) {
      throw Error(ErrorCode::InvalidChain, "level " + std::to_string(j + 1) + " is not " + std::to_string(p_) + "x" +
                                               std::to_string(p_));
    }
    const Integer n = abs(determinant(a));
    if (n == 0) throw Error(ErrorCode::InvalidChain, "level " + std::to_string(j + 1) + " is singular");
    if (j > 0) {
      if (n <= previous) {
        throw Error(ErrorCode::InvalidChain, "index must grow strictly from level " + std::to_string(j) + " to " +
                                                 std::to_string(j + 1));
      }
      const RatMatrix step = inverse(to_rational(levels_[j - 1])) * to_rational(a);
      for (std::size_t r = 0; r < p_; ++r)
        for (std::size_t c = 0; c < p_; ++c) {
          if (!is_integer(step(r, c))) {
            throw Error(ErrorCode::InvalidChain, "level " + std::to_string(j + 1) + " is not a subgroup of level " +
                                                     std::to_string(j));
          }
        }
    }
    previous = n;
  }
}

SubgroupChain SubgroupChain::diagonal(const std::vector<long>& degrees, std::size_t depth) {
  std::vector<IntMatrix> levels;
  for (std::size_t j = 1; j <= depth; ++j) {
    IntMatrix a(degrees.size(), degrees.size());
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      Integer d;
      mpz_ui_pow_ui(d.get_mpz_t(), static_cast<unsigned long>(degrees[i]), j);
      a(i, i) = d;
    }
    levels.push_back(std::move(a));
  }
  return SubgroupChain(degrees.size(), std::move(levels));
}

SubgroupChain SubgroupChain::trivial(std::size_t p) { return SubgroupChain(p, {IntMatrix::identity(p)}); }

const IntMatrix& SubgroupChain::generators(std::size_t level) const {
  if (level < 1 || level > levels_.size()) {
    throw Error(ErrorCode::InvalidArgument, "level " + std::to_string(level) + " outside 1.." +
                                                std::to_string(levels_.size()));
  }
  return levels_[level - 1];
}

Integer SubgroupChain::index(std::size_t level) const { return abs(determinant(generators(level))); }

SubgroupChain SubgroupChain::permuted(const std::vector<std::size_t>& perm) const {
  std::vector<IntMatrix> out;
  for (const auto& a : levels_) {
    IntMatrix b(p_, p_);
    for (std::size_t r = 0; r < p_; ++r)
      for (std::size_t c = 0; c < p_; ++c) b(perm[r], c) = a(r, c);
    out.push_back(std::move(b));
  }
  return SubgroupChain(p_, std::move(out));
}

namespace {

IntMatrix random_unimodular(std::size_t p, std::mt19937_64& rng) {
  IntMatrix u = IntMatrix::identity(p);
  if (p < 2) return u;
  std::uniform_int_distribution<std::size_t> axis(0, p - 1);
  std::uniform_int_distribution<int> factor(-1, 1);
  for (int step = 0; step < 3; ++step) {
    const std::size_t a = axis(rng), b = axis(rng);
    if (a != b) u.add_col_multiple(a, b, Integer(factor(rng)));
  }
  return u;
}

// Integer matrix with determinant exactly `det`: random upper triangular
// with a random split of det over the diagonal, mixed by unimodulars.
IntMatrix random_with_determinant(std::size_t p, long det, std::mt19937_64& rng) {
  std::vector<long> diag(p, 1);
  std::uniform_int_distribution<std::size_t> axis(0, p - 1);
  long rest = det;
  for (long f = 2; rest > 1; ++f) {
    while (rest % f == 0) {
      diag[axis(rng)] *= f;
      rest /= f;
    }
  }
  IntMatrix t(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    t(i, i) = diag[i];
    for (std::size_t k = i + 1; k < p; ++k) {
      std::uniform_int_distribution<long> off(0, diag[i] - 1);
      t(i, k) = off(rng);
    }
  }
  return random_unimodular(p, rng) * t * random_unimodular(p, rng);
}

}  // namespace

SubgroupChain random_chain(std::size_t p, std::size_t depth, long max_index, std::mt19937_64& rng) {
  if (max_index < 2) throw Error(ErrorCode::InvalidArgument, "random_chain needs max_index >= 2");
  std::vector<IntMatrix> levels;
  std::bernoulli_distribution start_at_identity(0.3);
  long index = 1;
  IntMatrix current = IntMatrix::identity(p);
  if (start_at_identity(rng) || depth == 1) {
    // Either Gamma_1 = Z^p, or (for a single level) any proper subgroup.
    if (depth == 1) {
      std::uniform_int_distribution<long> det(2, max_index);
      index = det(rng);
      current = random_with_determinant(p, index, rng);
    }
    levels.push_back(current);
  }
  while (levels.size() < depth) {
    const long budget = max_index / index;
    if (budget < 2) break;
    std::uniform_int_distribution<long> det(2, std::min<long>(budget, 8));
    const long step = det(rng);
    current = current * random_with_determinant(p, step, rng);
    index *= step;
    levels.push_back(current);
  }
  return SubgroupChain(p, std::move(levels));
}

// ---------------------------------------------------------------------------
// CosetSpace

CosetSpace::CosetSpace(const IntMatrix& generators) {
  const HermiteForm h = hermite_normal_form(generators);
  const std::size_t p = generators.rows();
  hermite_.assign(p, std::vector<std::int64_t>(p, 0));
  box_.resize(p);
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t r = 0; r < p; ++r) {
      if (!h.H(r, c).fits_slong_p()) throw Error(ErrorCode::InvalidChain, "subgroup index too large");
      hermite_[c][r] = h.H(r, c).get_si();
    }
    box_[c] = hermite_[c][c];
    size_ *= static_cast<std::size_t>(box_[c]);
  }
}

LatticePoint CosetSpace::reduce(const LatticePoint& x) const {
  if (x.size() != box_.size()) throw Error(ErrorCode::DimensionMismatch, "lattice point dimension");
  LatticePoint y = x;
  for (std::size_t k = 0; k < box_.size(); ++k) {
    std::int64_t q = y[k] / box_[k];
    if (y[k] % box_[k] != 0 && y[k] < 0) --q;
    if (q == 0) continue;
    for (std::size_t r = k; r < box_.size(); ++r) y[r] -= q * hermite_[k][r];
  }
  return y;
}

std::size_t CosetSpace::index_of(const LatticePoint& x) const {
  const LatticePoint y = reduce(x);
  std::size_t idx = 0;
  for (std::size_t k = 0; k < box_.size(); ++k) idx = idx * static_cast<std::size_t>(box_[k]) + static_cast<std::size_t>(y[k]);
  return idx;
}

LatticePoint CosetSpace::representative(std::size_t index) const {
  LatticePoint x(box_.size(), 0);
  for (std::size_t k = box_.size(); k-- > 0;) {
    x[k] = static_cast<std::int64_t>(index % static_cast<std::size_t>(box_[k]));
    index /= static_cast<std::size_t>(box_[k]);
  }
  return x;
}

std::vector<LatticePoint> coset_enumeration(const SubgroupChain& chain, std::size_t level) {
  const CosetSpace space(chain.generators(level));
  std::vector<LatticePoint> reps;
  reps.reserve(space.size());
  for (std::size_t k = 0; k < space.size(); ++k) reps.push_back(space.representative(k));
  return reps;
}

// ---------------------------------------------------------------------------
// Modules

bool ZpModule::is_commuting() const {
  for (std::size_t i = 0; i < action.size(); ++i)
    for (std::size_t k = i + 1; k < action.size(); ++k) {
      if (!(action[i] * action[k] == action[k] * action[i])) return false;
    }
  return true;
}

void ZpModule::require_commuting() const {
  for (std::size_t i = 0; i < action.size(); ++i)
    for (std::size_t k = i + 1; k < action.size(); ++k) {
      if (!(action[i] * action[k] == action[k] * action[i])) {
        throw Error(ErrorCode::NotCommuting, "T_" + std::to_string(i + 1) + " and T_" + std::to_string(k + 1));
      }
    }
}

ZpModule level_module(const SubgroupChain& chain, std::size_t level) {
  const CosetSpace space(chain.generators(level));
  const std::size_t p = chain.dimension();
  ZpModule m;
  m.rank = space.size();
  for (std::size_t i = 0; i < p; ++i) {
    IntMatrix t(m.rank, m.rank);
    for (std::size_t c = 0; c < m.rank; ++c) {
      LatticePoint x = space.representative(c);
      ++x[i];
      t(space.index_of(x), c) = 1;
    }
    m.action.push_back(std::move(t));
  }
  m.require_commuting();
  return m;
}

ZpModule trivial_module(std::size_t p) {
  ZpModule m;
  m.rank = 1;
  m.action.assign(p, IntMatrix::identity(1));
  return m;
}

Rational module_measure(const std::vector<Integer>& x, std::size_t rank) {
  Integer total = 0;
  for (const auto& v : x) total += v;
  return make_rational(total, Integer(static_cast<unsigned long>(rank)));
}

LevelFunction LevelFunction::indicator(const SubgroupChain& chain, std::size_t level, std::size_t coset) {
  const CosetSpace space(chain.generators(level));
  if (coset >= space.size()) throw Error(ErrorCode::InvalidArgument, "coset index out of range");
  LevelFunction f{level, std::vector<Integer>(space.size(), 0)};
  f.coefficients[coset] = 1;
  return f;
}

LevelFunction LevelFunction::constant(const SubgroupChain& chain, std::size_t level, const Integer& value) {
  const CosetSpace space(chain.generators(level));
  return LevelFunction{level, std::vector<Integer>(space.size(), value)};
}

Rational measure(const LevelFunction& f, const SubgroupChain& chain) {
  const Integer n = chain.index(f.level);
  if (Integer(static_cast<unsigned long>(f.coefficients.size())) != n) {
    throw Error(ErrorCode::DimensionMismatch, "level function length does not match the level index");
  }
  Integer total = 0;
  for (const auto& v : f.coefficients) total += v;
  return make_rational(total, n);
}

LevelFunction refine(const LevelFunction& f, const SubgroupChain& chain) {
  if (f.level >= chain.depth()) throw Error(ErrorCode::InvalidArgument, "cannot refine past the last level");
  const CosetSpace coarse(chain.generators(f.level));
  const CosetSpace fine(chain.generators(f.level + 1));
  LevelFunction out{f.level + 1, std::vector<Integer>(fine.size(), 0)};
  for (std::size_t k = 0; k < fine.size(); ++k) out.coefficients[k] = f.coefficients[coarse.index_of(fine.representative(k))];
  return out;
}

// ---------------------------------------------------------------------------
// Coinvariants and invariants

std::vector<Integer> Quotient::project(const std::vector<Integer>& x) const {
  std::vector<Integer> y = U * x;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (factors[k] == 0) continue;
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), y[k].get_mpz_t(), factors[k].get_mpz_t());
    y[k] = r;
  }
  return y;
}

bool Quotient::is_zero(const std::vector<Integer>& x) const {
  const auto y = project(x);
  return std::all_of(y.begin(), y.end(), [](const Integer& v) { return v == 0; });
}

Quotient cokernel(const IntMatrix& relations) {
  const SmithForm s = smith_normal_form(relations);
  Quotient q;
  q.U = s.U;
  q.factors.assign(relations.rows(), 0);
  for (std::size_t k = 0; k < s.rank; ++k) {
    q.factors[k] = s.D(k, k);
    if (s.D(k, k) > 1) q.torsion.push_back(s.D(k, k));
  }
  q.free_rank = relations.rows() - s.rank;
  return q;
}

IntMatrix augmentation_columns(const ZpModule& m, const IndexSet& s) {
  IntMatrix out(m.rank, 0);
  const IntMatrix id = IntMatrix::identity(m.rank);
  for (std::size_t i : s) out = hstack(out, m.action.at(i - 1) - id);
  return out;
}

Quotient coinvariants(const ZpModule& m, const IndexSet& s) { return cokernel(augmentation_columns(m, s)); }

IntMatrix invariants(const ZpModule& m, const IndexSet& s) {
  return kernel_basis(augmentation_columns(m, s).transpose());
}

IntMatrix invariant_coinvariant_lift(const ZpModule& m, const IndexSet& i_set) {
  const std::size_t n = m.rank;
  if (i_set.empty()) return IntMatrix::identity(n);
  const Quotient q = coinvariants(m, complement(i_set, m.dimension()));
  // Rows of U (T_k - 1) that carry a congruence, with their moduli.
  const IntMatrix id = IntMatrix::identity(n);
  std::vector<std::vector<Integer>> rows;
  std::vector<Integer> moduli;
  for (std::size_t k : i_set) {
    const IntMatrix image = q.U * (m.action.at(k - 1) - id);
    for (std::size_t r = 0; r < n; ++r) {
      if (q.factors[r] == 1) continue;
      rows.push_back(image.row(r));
      moduli.push_back(q.factors[r]);
    }
  }
  std::size_t slack = 0;
  for (const auto& mod : moduli) slack += mod > 1 ? 1 : 0;
  // Solve C x + M y = 0, read off x.
  IntMatrix system(rows.size(), n + slack);
  std::size_t slack_col = n;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < n; ++c) system(r, c) = rows[r][c];
    if (moduli[r] > 1) system(r, slack_col++) = moduli[r];
  }
  const IntMatrix kernel = kernel_basis(system);
  IntMatrix out(n, kernel.cols());
  for (std::size_t c = 0; c < kernel.cols(); ++c)
    for (std::size_t r = 0; r < n; ++r) out(r, c) = kernel(r, c);
  return out;
}

QSubgroup z_i_mu(const SubgroupChain& chain, const IndexSet& i_set, std::size_t level) {
  if (i_set.size() % 2 != 0) throw Error(ErrorCode::OddSubset, "|I| = " + std::to_string(i_set.size()));
  for (std::size_t i : i_set) {
    if (i < 1 || i > chain.dimension()) throw Error(ErrorCode::InvalidArgument, "index set " + to_string(i_set));
  }
  const ZpModule m = level_module(chain, level);
  const IntMatrix lift = invariant_coinvariant_lift(m, i_set);
  std::vector<Rational> values;
  for (std::size_t c = 0; c < lift.cols(); ++c) values.push_back(module_measure(lift.column(c), m.rank));
  return QSubgroup(values);
}

}  // namespace mgl
