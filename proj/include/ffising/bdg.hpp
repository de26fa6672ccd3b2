#pragma once

#include <vector>

#include "ffising/model.hpp"

namespace ffising {

// Bogoliubov basis: c = U gamma + V^* gamma^+, i.e. the unitary
// [[U, V^*], [V, U^*]] diagonalizes the Nambu matrix to diag(eps, -eps).
// Any Fock state of the quasiparticles is again stored as a basis (the
// occupied columns are particle-hole swapped), so U, V are complex.
struct BogoliubovBasis {
  CMat U;
  CMat V;
  Vec eps;  // nondecreasing, >= 0 for a diagonalizing basis
  Sector sector = Sector::even;

  int L() const { return static_cast<int>(U.rows()); }
  double vacuum_energy() const { return -eps.sum(); }
  CMat unitary() const;  // full 2L x 2L [[U, V*], [V, U*]]
};

inline constexpr double kZeroModeFactor = 1e-10;

BogoliubovBasis diagonalize(const BdGMatrix& m);

// Rebuilds the columns with eps below the threshold from swap-even/odd
// vectors. `kernel` is the orthonormal basis of the full numerical kernel
// (2m columns) of the Nambu matrix.
BogoliubovBasis canonicalize_zero_modes(const BogoliubovBasis& basis, const Mat& kernel,
                                        double ker_threshold);

// Convenience overload: recomputes the kernel from the basis itself.
BogoliubovBasis canonicalize_zero_modes(const BogoliubovBasis& basis, double ker_threshold);

// Max deviation from the four canonical conditions.
double canonical_defect(const CMat& U, const CMat& V);
double reconstruction_residual(const BdGMatrix& m, const BogoliubovBasis& b);

// Basis of the Fock state prod_{mu in occ} gamma+_mu |vacuum>.
BogoliubovBasis excite(const BogoliubovBasis& b, const std::vector<int>& occ);
BogoliubovBasis bare_vacuum(int L);

std::vector<double> ipr(const BogoliubovBasis& b);
int localization_center(const BogoliubovBasis& b, int mu);
// OLS slope of log(|U|^2+|V|^2)^{1/2} against |j - l_mu|, sites with weight
// above `floor` only.
double envelope_slope(const BogoliubovBasis& b, int mu, double floor = 1e-300);

double obc_majorana_gap(const ChainSpec& spec);

// Uniform ring (kappa = 1) with h_l = h - h_imp on one site; h_imp may be
// negative. Energies are
// excitation energies 2 eps, compared against the continuum [2|J-h|, 2|J+h|].
struct ImpurityBoundStates {
  double lower = 0.0;
  double upper = 0.0;
  double lower_shift = 0.0;  // measured, relative to the band edge
  double upper_shift = 0.0;
  double lower_formula = 0.0;  // -(hJ/|J-h|)(h_imp/J)^2 and +(hJ/|J+h|)(h_imp/J)^2
  double upper_formula = 0.0;
  double lower_dev = 0.0;  // |measured - formula| / |formula|
  double upper_dev = 0.0;
  // delta-potential binding in the effective-mass approximation at each edge:
  // (|J-+h|/(hJ)) h_imp^2
  double lower_mass_formula = 0.0;
  double upper_mass_formula = 0.0;
};

ImpurityBoundStates impurity_bound_states(int L, double J, double h, double h_imp);

}  // namespace ffising
