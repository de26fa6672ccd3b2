#pragma once

#include <array>
#include <utility>

#include "ffising/dynamics.hpp"

namespace ffising {

// Parity-projected Gibbs state of a spin chain. For periodic spins each
// sector keeps only the Fock states of matching parity; eta_p records
// whether the sector's vacuum is itself physical (+1) or not (-1).
struct ThermalContext {
  double beta = 0.0;
  ChainSpec spec;
  std::array<BogoliubovBasis, 2> bases;
  std::array<int, 2> eta{1, 1};
};

ThermalContext make_thermal_context(const ChainSpec& spec, double beta);

double log_partition_function(const ThermalContext& ctx);

// Trace-weighted projected occupations (<gamma+ gamma P_p>, <gamma gamma+ P_p>),
// normalized by Z.
std::pair<double, double> gamma_occupation(const ThermalContext& ctx, Sector sector, int mu);

// <P_p>, the Gibbs weight of one sector.
double sector_weight(const ThermalContext& ctx, Sector sector);

// Sum over sectors of U_p <Phi Phi+ P_p> U_p+; `sector_green` keeps one term.
NambuGreen thermal_green(const ThermalContext& ctx);
NambuGreen sector_green(const ThermalContext& ctx, Sector sector);

double energy_density(const ThermalContext& ctx);

}  // namespace ffising
