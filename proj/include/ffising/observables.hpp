#pragma once

#include <vector>

#include "ffising/dynamics.hpp"

namespace ffising {

// <sz_j> = 2 Re G_jj - 1 (site index 0-based).
double transverse_magnetization(const NambuGreen& g, int j);

// M_{ij} = <B_i A_j>, which is delta - 2(G + F) in equilibrium.
// Rejects G, F with imaginary parts above 1e-10.
Mat contraction_matrix(const NambuGreen& g);

// <sx_{j1} sx_{j2}> for j1 < j2 through the string determinant.
double xx_correlator(const NambuGreen& g, int j1, int j2);
double xx_correlator(const Mat& contraction, int j1, int j2);

double zz_correlator(const NambuGreen& g, int j1, int j2);

// (-1)^L det M, rounded to +-1.
int vacuum_parity(const BogoliubovBasis& basis);
double parity_expectation(const NambuGreen& g);

struct Block {
  int start = 0;  // first site, 0-based; sites wrap modulo L
  int length = 0;
};

struct EntropyResult {
  Block block;
  std::vector<double> lambdas;  // clipped to [0, 1], one per 2x2 Schur block
  double max_lambda_raw = 0.0;
  double entropy = 0.0;  // nats
};

EntropyResult entanglement_entropy(const MajoranaCorrelation& m, Block block);

// Lowest physical spin eigenstate as a Gaussian state: the vacuum of the
// sector whose parity matches, or its lowest single excitation otherwise.
struct GroundState {
  BogoliubovBasis basis;
  double energy = 0.0;
  Sector sector = Sector::even;
  bool excited = false;
};

GroundState sector_ground_state(const ChainSpec& spec, Sector sector);
GroundState physical_ground_state(const ChainSpec& spec);

}  // namespace ffising
