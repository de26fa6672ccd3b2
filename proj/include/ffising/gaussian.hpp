#pragma once

#include <complex>
#include <vector>

#include "ffising/bdg.hpp"

namespace ffising {

// Pairing matrix of a vacuum relative to a reference vacuum:
// |vac> = N exp(1/2 sum Z_ij d+_i d+_j) |ref>.
struct PairingMatrix {
  CMat Z;
};

struct OccupationPattern {
  std::vector<int> occupied;
};

inline constexpr double kMaxThoulessCondition = 1e12;

// Relative to the bare fermion vacuum |0>.
PairingMatrix thouless(const BogoliubovBasis& basis);

// gamma_1 = U^+ gamma_0 + V^+ gamma_0^+ with U = U0^+U1 + V0^+V1,
// V = V0^T U1 + U0^T V1.
void relative_transform(const BogoliubovBasis& b0, const BogoliubovBasis& b1, CMat& U, CMat& V);

// Z of |vac_1> expanded on the quasiparticles of b0.
PairingMatrix relative_thouless(const BogoliubovBasis& b0, const BogoliubovBasis& b1);

double onishi_overlap_sq(const BogoliubovBasis& b0, const BogoliubovBasis& b1);
double excited_overlap_sq(const BogoliubovBasis& b0, const BogoliubovBasis& b1,
                          const OccupationPattern& occ);

std::complex<double> pfaffian(const CMat& m);
double pfaffian(const Mat& m);

// <vac_0| gamma_{mu_2n} ... gamma_{mu_1} |vac_1> for b0's quasiparticles,
// modes listed as (mu_1, ..., mu_2n). The vacuum overlap amplitude is taken
// real and nonnegative, so only the relative phase between different mode
// sets is meaningful.
std::complex<double> vacuum_matrix_elements(const BogoliubovBasis& b0, const BogoliubovBasis& b1,
                                            const std::vector<int>& modes);

}  // namespace ffising
