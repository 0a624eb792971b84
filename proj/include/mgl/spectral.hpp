#pragma once

// Finite-volume magnetic Schrödinger operators with odometer potentials,
// integrated density of states, and gap detection/labelling.

#include "mgl/frequency.hpp"
#include "mgl/odometer.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace mgl {

enum class Boundary { Periodic, Dirichlet };
std::string to_string(Boundary boundary);
Boundary parse_boundary(const std::string& text);

/// Landau gauge: (U_k ψ)(x) = exp(2πi Σ_{j<k} Θ_jk x_j) ψ(x - e_k) and
/// H = Σ_k (U_k + U_k^*) + λ V with V(x) = values[coset of x + base_point].
struct HamiltonianSpec {
  MagneticMatrix theta = MagneticMatrix::zero(1);
  SubgroupChain chain = SubgroupChain::trivial(1);
  std::size_t potential_level = 1;
  std::vector<Rational> potential_values = {Rational(0)};
  Rational coupling = 0;
  LatticePoint base_point;  // empty means the origin
  std::size_t volume = 1;   // sites per axis
  Boundary boundary = Boundary::Periodic;

  std::size_t dimension() const { return theta.dimension(); }
  std::size_t sites() const;
  /// Throws IncommensurateFlux / IncommensuratePotential for periodic
  /// boundaries that do not fit the volume, InvalidArgument otherwise.
  void validate() const;
  HamiltonianSpec with_volume(std::size_t volume) const;
};

/// Site index of x in row-major order (x_1 slowest).
std::size_t site_index(const LatticePoint& x, std::size_t volume);
LatticePoint site_point(std::size_t index, std::size_t p, std::size_t volume);

Eigen::MatrixXcd build_hamiltonian(const HamiltonianSpec& spec);

/// Sorted eigenvalues (dense Hermitian solver).
std::vector<double> eigenvalues(const Eigen::MatrixXcd& h);

/// Number of eigenvalues strictly below E from the inertia of a
/// Bunch-Kaufman factorization of H - E. Throws Error(ProbeOnSpectrum) when
/// a pivot vanishes to working precision.
std::size_t count_below(const Eigen::MatrixXcd& h, double energy);

/// (#eigenvalues < E) / L^p via count_below.
Rational ids_at(const HamiltonianSpec& spec, const Eigen::MatrixXcd& h, double energy);

/// Default plateau tolerance at volume L: 1e-3, widened to 2p/L for Dirichlet
/// boundaries so that up to 2p L^{p-1} edge states may sit inside a gap.
double default_tolerance(const HamiltonianSpec& spec, std::size_t volume);

struct GapSearchOptions {
  std::vector<std::size_t> volumes;
  double min_width = 0.05;  // δ
  std::optional<double> tolerance;  // unset: default_tolerance per volume
  std::size_t jobs = 1;
  /// Above this many sites the IDS comes from inertia counts rather than a
  /// full eigenvalue list.
  std::size_t dense_limit = 4096;
};

enum class GapVerdict { Member, NotFoundUpTo, Unresolved, Unlabelled };
std::string to_string(GapVerdict verdict);

struct Gap {
  double lower = 0;
  double upper = 0;
  double ids = 0;                      // at the largest volume
  std::vector<double> ids_by_volume;   // same order as the volumes searched
  std::optional<Rational> label;
  std::optional<MembershipReport> membership;
  GapVerdict verdict = GapVerdict::Unlabelled;
};

/// Energy intervals of width >= δ on which the IDS of every volume varies by
/// at most tol and the volumes agree to within tol. Needs at least two volumes.
std::vector<Gap> detect_gaps(const HamiltonianSpec& spec_template, const GapSearchOptions& options);

struct LabelOptions {
  double eps = 0.5 / 144;  // below the spacing of fractions with q <= 12
  long q_max = 12;
  std::size_t j_max = 1;
};

/// Reconstructs a rational label per gap and checks it against the magnetic
/// frequency group; gaps without a reconstruction are marked Unresolved.
void label_gaps(std::vector<Gap>& gaps, const MagneticMatrix& theta, const SubgroupChain& chain,
                const LabelOptions& options);

struct MglRun {
  HamiltonianSpec spec;  // volume is ignored
  GapSearchOptions search;
  LabelOptions labels;
};

struct MglReport {
  std::vector<Gap> gaps;
  std::size_t members = 0;
  std::size_t not_found = 0;
  std::size_t unresolved = 0;
  std::vector<double> tolerances;  // per volume, in the order given
  bool all_members() const { return not_found == 0 && unresolved == 0; }
};

MglReport mgl_verify(const MglRun& run);

struct Band {
  double lower = 0;
  double upper = 0;
};

/// Bands of the p = 2 magnetic Laplacian at flux a/q from a periodic run on
/// the smallest volume >= volume_hint that is a multiple of lcm(2, q); the
/// q magnetic bands each hold exactly L^2/q states.
std::vector<Band> commensurate_bands(const Rational& flux, std::size_t volume_hint);

}  // namespace mgl
