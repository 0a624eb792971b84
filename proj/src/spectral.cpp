#include "mgl/spectral.hpp"

#include "mgl/error.hpp"
#include "mgl/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace mgl {

std::string to_string(Boundary boundary) {
  return boundary == Boundary::Periodic ? "periodic" : "dirichlet";
}

Boundary parse_boundary(const std::string& text) {
  if (text == "periodic") return Boundary::Periodic;
  if (text == "dirichlet") return Boundary::Dirichlet;
  throw Error(ErrorCode::InvalidArgument, "unknown boundary '" + text + "'");
}

std::string to_string(GapVerdict verdict) {
  switch (verdict) {
    case GapVerdict::Member: return "MEMBER";
    case GapVerdict::NotFoundUpTo: return "NOT_FOUND_UP_TO";
    case GapVerdict::Unresolved: return "UNRESOLVED";
    case GapVerdict::Unlabelled: return "UNLABELLED";
  }
  return "?";
}

std::size_t HamiltonianSpec::sites() const {
  std::size_t n = 1;
  for (std::size_t k = 0; k < dimension(); ++k) n *= volume;
  return n;
}

void HamiltonianSpec::validate() const {
  const std::size_t p = dimension();
  if (volume == 0) throw Error(ErrorCode::InvalidArgument, "volume must be positive");
  if (chain.dimension() != p) throw Error(ErrorCode::DimensionMismatch, "chain and theta disagree on p");
  if (potential_level == 0 || potential_level > chain.depth())
    throw Error(ErrorCode::InvalidArgument, "potential level outside the chain");
  if (Integer(static_cast<unsigned long>(potential_values.size())) != chain.index(potential_level))
    throw Error(ErrorCode::DimensionMismatch, "potential needs one value per coset");
  if (!base_point.empty() && base_point.size() != p)
    throw Error(ErrorCode::DimensionMismatch, "base point has the wrong length");
  if (boundary != Boundary::Periodic) return;

  const Integer l(static_cast<unsigned long>(volume));
  for (std::size_t j = 1; j <= p; ++j)
    for (std::size_t k = j + 1; k <= p; ++k)
      if (!is_integer(theta(j, k) * l))
        throw Error(ErrorCode::IncommensurateFlux,
                    "L = " + std::to_string(volume) + " is not a multiple of the period of theta_" +
                        std::to_string(j) + std::to_string(k) + " = " + to_string(theta(j, k)));
  const CosetSpace cosets(chain.generators(potential_level));
  for (std::size_t i = 0; i < p; ++i) {
    LatticePoint shift(p, 0);
    shift[i] = static_cast<std::int64_t>(volume);
    if (cosets.index_of(shift) != 0)
      throw Error(ErrorCode::IncommensuratePotential,
                  "L e_" + std::to_string(i + 1) + " is not in the potential's period lattice");
  }
}

HamiltonianSpec HamiltonianSpec::with_volume(std::size_t l) const {
  HamiltonianSpec copy = *this;
  copy.volume = l;
  return copy;
}

std::size_t site_index(const LatticePoint& x, std::size_t volume) {
  std::size_t index = 0;
  for (auto c : x) index = index * volume + static_cast<std::size_t>(c);
  return index;
}

LatticePoint site_point(std::size_t index, std::size_t p, std::size_t volume) {
  LatticePoint x(p, 0);
  for (std::size_t k = p; k-- > 0;) {
    x[k] = static_cast<std::int64_t>(index % volume);
    index /= volume;
  }
  return x;
}

namespace {

// exp(2πi r), reducing r modulo 1 exactly first.
std::complex<double> unit_phase(const Rational& r) {
  Rational frac = r - Rational(floor_of(r));
  return std::polar(1.0, 2.0 * std::numbers::pi * frac.get_d());
}

}  // namespace

Eigen::MatrixXcd build_hamiltonian(const HamiltonianSpec& spec) {
  spec.validate();
  const std::size_t p = spec.dimension();
  const std::size_t l = spec.volume;
  const std::size_t n = spec.sites();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  const CosetSpace cosets(spec.chain.generators(spec.potential_level));
  const double lambda = spec.coupling.get_d();

  for (std::size_t s = 0; s < n; ++s) {
    const LatticePoint x = site_point(s, p, l);
    for (std::size_t k = 0; k < p; ++k) {
      LatticePoint y = x;
      if (x[k] == 0) {
        if (spec.boundary == Boundary::Dirichlet) continue;
        y[k] = static_cast<std::int64_t>(l) - 1;
      } else {
        y[k] -= 1;
      }
      Rational flux = 0;
      for (std::size_t j = 0; j < k; ++j) flux += spec.theta(j + 1, k + 1) * Rational(x[j]);
      const auto phase = unit_phase(flux);
      const auto t = static_cast<Eigen::Index>(site_index(y, l));
      const auto si = static_cast<Eigen::Index>(s);
      h(si, t) += phase;
      h(t, si) += std::conj(phase);
    }
    if (lambda != 0.0) {
      LatticePoint shifted = x;
      if (!spec.base_point.empty())
        for (std::size_t k = 0; k < p; ++k) shifted[k] += spec.base_point[k];
      const auto v = spec.potential_values[cosets.index_of(shifted)].get_d();
      h(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) += lambda * v;
    }
  }
  return h;
}

std::vector<double> eigenvalues(const Eigen::MatrixXcd& h) {
  const auto n = static_cast<lapack_int>(h.rows());
  if (n == 0) return {};
  Eigen::MatrixXcd a = h;
  std::vector<double> w(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
  if (info != 0) throw Error(ErrorCode::InvalidArgument, "zheevd failed with info " + std::to_string(info));
  return w;
}

std::size_t count_below(const Eigen::MatrixXcd& h, double energy) {
  const auto n = static_cast<lapack_int>(h.rows());
  if (n == 0) return 0;
  Eigen::MatrixXcd a = h;
  a.diagonal().array() -= energy;
  std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_zhetrf(LAPACK_COL_MAJOR, 'L', n, a.data(), n, ipiv.data());
  if (info < 0) throw Error(ErrorCode::InvalidArgument, "zhetrf rejected argument " + std::to_string(-info));
  if (info > 0) throw Error(ErrorCode::ProbeOnSpectrum, "H - E is singular at E = " + std::to_string(energy));

  const double scale = h.cwiseAbs().rowwise().sum().maxCoeff() + std::abs(energy) + 1.0;
  const double floor = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;
  std::size_t negative = 0;
  for (lapack_int k = 0; k < n; ++k) {
    if (ipiv[static_cast<std::size_t>(k)] > 0) {
      const double d = a(k, k).real();
      if (std::abs(d) <= floor)
        throw Error(ErrorCode::ProbeOnSpectrum, "vanishing pivot at E = " + std::to_string(energy));
      if (d < 0) ++negative;
    } else {
      // 2x2 block [[a, conj(b)], [b, c]] occupying rows k, k+1.
      const double x = a(k, k).real();
      const double z = a(k + 1, k + 1).real();
      const double det = x * z - std::norm(a(k + 1, k));
      if (std::abs(det) <= floor * floor)
        throw Error(ErrorCode::ProbeOnSpectrum, "vanishing pivot block at E = " + std::to_string(energy));
      if (det < 0) {
        negative += 1;
      } else if (x + z < 0) {
        negative += 2;
      }
      ++k;
    }
  }
  return negative;
}

Rational ids_at(const HamiltonianSpec& spec, const Eigen::MatrixXcd& h, double energy) {
  return make_rational(static_cast<long>(count_below(h, energy)), static_cast<long>(spec.sites()));
}

double default_tolerance(const HamiltonianSpec& spec, std::size_t volume) {
  if (spec.boundary == Boundary::Periodic || volume == 0) return 1e-3;
  return std::max(1e-3, 2.0 * static_cast<double>(spec.dimension()) / static_cast<double>(volume));
}

namespace {

// Eigenvalue counting function of one finite volume.
class Counter {
 public:
  Counter(const HamiltonianSpec& spec, std::size_t dense_limit) : sites_(spec.sites()) {
    h_ = build_hamiltonian(spec);
    if (sites_ <= dense_limit) {
      eigs_ = eigenvalues(h_);
      h_.resize(0, 0);
    }
  }

  std::size_t sites() const { return sites_; }

  std::size_t operator()(double energy) const {
    if (h_.size() == 0) {
      return static_cast<std::size_t>(std::lower_bound(eigs_.begin(), eigs_.end(), energy) - eigs_.begin());
    }
    double e = energy;
    for (int attempt = 0;; ++attempt) {
      try {
        return count_below(h_, e);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::ProbeOnSpectrum || attempt == 8) throw;
        e += 1e-9 * (1.0 + std::abs(energy)) * (attempt + 1);
      }
    }
  }

 private:
  std::size_t sites_;
  Eigen::MatrixXcd h_;
  std::vector<double> eigs_;
};

struct Interval {
  double lower;
  double upper;
};

double spectral_radius_bound(const HamiltonianSpec& spec) {
  double v = 0;
  for (const auto& value : spec.potential_values) v = std::max(v, std::abs(value.get_d()));
  return 2.0 * static_cast<double>(spec.dimension()) + std::abs(spec.coupling.get_d()) * v;
}

// Plateaus of one volume on the shared grid, with edges pushed out to the
// neighbouring eigenvalues by bisection.
std::vector<Interval> plateaus(const Counter& count, const std::vector<double>& grid, double min_width,
                               double tolerance) {
  const std::size_t n = count.sites();
  const auto slack = static_cast<std::size_t>(std::floor(tolerance * static_cast<double>(n)));
  std::vector<std::size_t> c(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) c[i] = count(grid[i]);
  const double step = grid.size() > 1 ? grid[1] - grid[0] : 0.0;

  std::vector<std::pair<std::size_t, std::size_t>> windows;
  std::size_t b = 0;
  for (std::size_t a = 0; a < grid.size(); ++a) {
    b = std::max(b, a);
    while (b + 1 < grid.size() && c[b + 1] - c[a] <= slack) ++b;
    if (c[a] <= slack || c[b] + slack >= n) continue;
    if (grid[b] - grid[a] < min_width - 2 * step) continue;
    if (!windows.empty() && a <= windows.back().second) {
      windows.back().second = std::max(windows.back().second, b);
    } else {
      windows.emplace_back(a, b);
    }
  }

  auto bisect = [&](double lo, double hi, auto below) {
    for (int it = 0; it < 50; ++it) {
      const double mid = 0.5 * (lo + hi);
      (below(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  std::vector<Interval> out;
  for (auto [a, z] : windows) {
    double lower = grid[a];
    if (a > 0 && c[a - 1] < c[a]) {
      const std::size_t target = c[a];
      lower = bisect(grid[a - 1], grid[a], [&](double e) { return count(e) < target; });
    }
    double upper = grid[z];
    if (z + 1 < grid.size() && c[z + 1] > c[z]) {
      const std::size_t target = c[z];
      upper = bisect(grid[z], grid[z + 1], [&](double e) { return count(e) <= target; });
    }
    out.push_back({lower, upper});
  }
  return out;
}

std::vector<Interval> intersect(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      const double lo = std::max(x.lower, y.lower);
      const double hi = std::min(x.upper, y.upper);
      if (lo < hi) out.push_back({lo, hi});
    }
  std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.lower < y.lower; });
  return out;
}

}  // namespace

std::vector<Gap> detect_gaps(const HamiltonianSpec& spec_template, const GapSearchOptions& options) {
  if (options.volumes.size() < 2) throw Error(ErrorCode::InvalidArgument, "gap detection needs two volumes");
  if (!(options.min_width > 0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  std::vector<std::size_t> volumes = options.volumes;
  std::sort(volumes.begin(), volumes.end());
  auto tolerance = [&](std::size_t v) { return options.tolerance.value_or(default_tolerance(spec_template, volumes[v])); };

  const double bound = spectral_radius_bound(spec_template) + options.min_width;
  const double step = options.min_width / 8.0;
  std::vector<double> grid;
  const auto points = static_cast<std::size_t>(std::ceil(2.0 * bound / step));
  for (std::size_t i = 0; i <= points; ++i) grid.push_back(-bound + step * static_cast<double>(i));

  struct PerVolume {
    std::shared_ptr<Counter> count;
    std::vector<Interval> plateaus;
  };
  auto runs = parallel_map(volumes.size(), options.jobs, [&](std::size_t v) {
    auto count = std::make_shared<Counter>(spec_template.with_volume(volumes[v]), options.dense_limit);
    auto found = plateaus(*count, grid, options.min_width, tolerance(v));
    return PerVolume{count, std::move(found)};
  });

  std::vector<Interval> common = runs.front().plateaus;
  for (std::size_t v = 1; v < runs.size(); ++v) common = intersect(common, runs[v].plateaus);

  std::vector<Gap> gaps;
  for (const auto& iv : common) {
    if (iv.upper - iv.lower < options.min_width) continue;
    Gap gap;
    gap.lower = iv.lower;
    gap.upper = iv.upper;
    const double mid = 0.5 * (iv.lower + iv.upper);
    for (const auto& run : runs)
      gap.ids_by_volume.push_back(static_cast<double>((*run.count)(mid)) / static_cast<double>(run.count->sites()));
    gap.ids = gap.ids_by_volume.back();
    // Finite-size level spacings also look like plateaus; only a gap keeps
    // its IDS as the volume grows.
    const auto [lo, hi] = std::minmax_element(gap.ids_by_volume.begin(), gap.ids_by_volume.end());
    double allowed = 0;
    for (std::size_t v = 0; v < volumes.size(); ++v) allowed = std::max(allowed, tolerance(v));
    if (*hi - *lo > allowed) continue;
    gaps.push_back(std::move(gap));
  }
  return gaps;
}

void label_gaps(std::vector<Gap>& gaps, const MagneticMatrix& theta, const SubgroupChain& chain,
                const LabelOptions& options) {
  for (auto& gap : gaps) {
    gap.label = rational_reconstruct(gap.ids, options.eps, options.q_max);
    gap.membership.reset();
    if (!gap.label) {
      gap.verdict = GapVerdict::Unresolved;
      continue;
    }
    gap.membership = label_membership(*gap.label, theta, chain, options.j_max);
    gap.verdict = gap.membership->verdict == MembershipVerdict::Member ? GapVerdict::Member : GapVerdict::NotFoundUpTo;
  }
}

MglReport mgl_verify(const MglRun& run) {
  MglReport report;
  for (auto l : run.search.volumes)
    report.tolerances.push_back(run.search.tolerance.value_or(default_tolerance(run.spec, l)));
  report.gaps = detect_gaps(run.spec, run.search);
  label_gaps(report.gaps, run.spec.theta, run.spec.chain, run.labels);
  for (const auto& gap : report.gaps) {
    switch (gap.verdict) {
      case GapVerdict::Member: ++report.members; break;
      case GapVerdict::NotFoundUpTo: ++report.not_found; break;
      default: ++report.unresolved; break;
    }
  }
  return report;
}

std::vector<Band> commensurate_bands(const Rational& flux, std::size_t volume_hint) {
  const Rational reduced = flux - Rational(floor_of(flux));
  const long q = reduced.get_den().get_si();
  const long period = std::lcm(2L, q);
  long l = std::max<long>(period, static_cast<long>(volume_hint));
  l = ((l + period - 1) / period) * period;

  HamiltonianSpec spec;
  spec.theta = MagneticMatrix::from_upper(2, {flux});
  spec.chain = SubgroupChain::trivial(2);
  spec.volume = static_cast<std::size_t>(l);
  const auto eigs = eigenvalues(build_hamiltonian(spec));

  const std::size_t per_band = eigs.size() / static_cast<std::size_t>(q);
  std::vector<Band> bands;
  for (std::size_t b = 0; b < static_cast<std::size_t>(q); ++b)
    bands.push_back({eigs[b * per_band], eigs[(b + 1) * per_band - 1]});
  return bands;
}

}  // namespace mgl
