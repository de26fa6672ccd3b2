#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "ffising/model.hpp"

namespace ffising {

// Closed-form analytics of the translation-invariant chain. Public entry
// points take J > 0 and h >= 0; the other signs map onto these by the
// particle-hole and sublattice rotations and are not handled here.

struct KGrid {
  Sector sector = Sector::even;
  std::vector<double> ks;  // sorted, in (-pi, pi]
};

KGrid k_grid(int L, Sector sector);

double epsilon_k(double k, double J, double h, double kappa);

// Positive-energy eigenvector (u_k, v_k) of the 2x2 problem in the basis
// {c+_k c+_{-k}|0>, |0>}.
std::pair<std::complex<double>, std::complex<double>> amplitudes(double k, double J, double h,
                                                                 double kappa);

double sector_ground_energy(int L, double J, double h, double kappa, Sector sector);

// E0(PBC fermions, odd sector) - E0(ABC fermions, even sector).
double sector_gap(int L, double J, double h, double kappa);

inline constexpr int kWindingSamples = 4096;

// Revolutions of (y_k, z_k) around the origin. Positive for kappa > 0.
int winding_index(double J, double h, double kappa);

}  // namespace ffising
