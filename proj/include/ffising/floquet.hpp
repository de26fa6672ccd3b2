#pragma once

#include <vector>

#include "ffising/dynamics.hpp"

namespace ffising {

struct FloquetOptions {
  Sector sector = Sector::even;
  StepPolicy policy{Stepper::rk4, 0.02};
  int samples = 256;  // mode samples per period
  double t0 = 0.0;    // start of the period window
  double cluster_tol = 1e-7;
};

// One-period propagator of i d/dt X = 2 H(t) X, X(t0) = 1.
CMat monodromy(const ChainSpec& spec, const Schedule& schedule, double tau,
               const FloquetOptions& opt = {});

struct FloquetSpectrum {
  double tau = 0.0;
  double t0 = 0.0;
  Vec quasi;  // L nonnegative representatives of (-pi/tau, pi/tau], ascending
  CMat U;     // Floquet modes at t0, paired columns as in a Bogoliubov basis
  CMat V;
  double pairing_defect = 0.0;
  double unitarity_defect = 0.0;
  // periodic parts U_P(t) = U_F(t) e^{i q t}, on samples + 1 points over [t0, t0 + tau]
  std::vector<double> t;
  std::vector<CMat> UP;
  std::vector<CMat> VP;
};

// Eigen-decomposition of a monodromy. Degenerate eigenphases are resolved
// with the particle-hole conjugation so that the (u, v) / (v*, u*) pairing
// holds exactly.
FloquetSpectrum quasi_energies(const CMat& M, double tau, double cluster_tol = 1e-7);

// Fills t, UP, VP by forward propagation along the same step grid as the
// monodromy.
void sample_modes(FloquetSpectrum& fs, const ChainSpec& spec, const Schedule& schedule,
                  const FloquetOptions& opt = {});

FloquetSpectrum floquet_analysis(const ChainSpec& spec, const Schedule& schedule, double tau,
                                 const FloquetOptions& opt = {});

enum class PhaseStrip { consistent, u_only };

// ||Z_F(t0 + tau) - Z_F(t0)|| / max(1, ||Z_F(t0)||) with Z_F = -(U_P+)^-1 V_P+.
// `u_only` strips the quasi-energy phase from U but not from V, which breaks
// periodicity on purpose.
double vacuum_periodicity_residual(const FloquetSpectrum& fs,
                                   PhaseStrip strip = PhaseStrip::consistent);

// Many-body quasi-energy sum_mu n_mu q_mu of an occupation pattern.
double many_body_quasi_energy(const FloquetSpectrum& fs, const std::vector<int>& occupied);

}  // namespace ffising
