#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "ffising/bdg.hpp"

namespace ffising {

// Time dependence of the fields (and optionally the bonds) on top of a base
// spec. Times are in units of hbar/J.
struct Schedule {
  enum class Shape { constant, linear, cosine, cosine_ramp, custom };

  Shape shape = Shape::constant;
  double tau = 0.0;  // duration, or period for `cosine`
  double a = 0.0;
  double b = 0.0;
  std::function<std::vector<double>(double)> custom_h;
  std::function<std::vector<double>(double)> custom_J;

  static Schedule constant(double tau);
  // uniform h(t) = a + (b - a) t / tau
  static Schedule linear(double h_from, double h_to, double tau);
  // uniform h(t) = a + b cos(2 pi t / tau)
  static Schedule cosine(double h_mean, double amplitude, double period);
  // uniform h(t) = b + (a - b)(1 + cos(pi t / tau)) / 2
  static Schedule cosine_ramp(double h_from, double h_to, double tau);

  ChainSpec at(const ChainSpec& base, double t) const;
  bool varies_bonds() const { return static_cast<bool>(custom_J); }
};

enum class Stepper { rk4, exp_midpoint };

struct StepPolicy {
  Stepper stepper = Stepper::rk4;
  double courant = 0.05;  // rk4: dt * max ||2H||_2 <= courant
  double dt_max = std::numeric_limits<double>::infinity();
  double drift_limit = 1e-6;
};

// Integrates i d/dt X = 2 H(t) X for a 2L x m block X.
class BdGPropagator {
 public:
  BdGPropagator(const ChainSpec& base, const Schedule& schedule, Sector sector,
                const StepPolicy& policy);

  void advance(CMat& X, double t0, double t1) const;
  double step_for(double t0, double t1) const;
  Eigen::SparseMatrix<double> hamiltonian(double t) const;
  int steps_taken() const { return steps_; }

 private:
  void apply(const CMat& X, CMat& Y, double t) const;  // Y = H(t) X
  double bound(double t) const;
  void rk4_step(CMat& X, double t, double dt) const;
  void exp_step(CMat& X, double t, double dt) const;

  ChainSpec base_;
  Schedule schedule_;
  Sector sector_;
  StepPolicy policy_;
  Eigen::SparseMatrix<double> bonds_;  // cached when bonds are static
  double hmax_ = 0.0;
  mutable int steps_ = 0;
  mutable CMat k1_, k2_, k3_, k4_, tmp_;
};

struct Snapshot {
  double t = 0.0;
  CMat U;
  CMat V;
  double drift = 0.0;  // max |U+U + V+V - 1|
};

std::vector<Snapshot> propagate(const BogoliubovBasis& b0, const ChainSpec& spec,
                                const Schedule& schedule, const std::vector<double>& t_grid,
                                const StepPolicy& policy = {});

// G = <c c+> = U U+, F = <c c> = U V+.
struct NambuGreen {
  CMat G;
  CMat F;
  double t = 0.0;

  int L() const { return static_cast<int>(G.rows()); }
};

NambuGreen green_functions(const CMat& U, const CMat& V, double t = 0.0);
inline NambuGreen green_functions(const BogoliubovBasis& b) { return green_functions(b.U, b.V); }

// Full <Psi Psi+> with Psi = (c, c+).
CMat nambu_matrix(const NambuGreen& g);

// M = W G W+ = 1 + i A for the Majoranas (a_{1,1}..a_{L,1}, a_{1,2}..a_{L,2}),
// a_{j,1} = c+ + c, a_{j,2} = i (c+ - c).
struct MajoranaCorrelation {
  Mat A;
  double t = 0.0;

  int L() const { return static_cast<int>(A.rows() / 2); }
};

MajoranaCorrelation majorana_correlation(const NambuGreen& g);

// Two-operator contractions with A_j = c+_j + c_j and B_j = c+_j - c_j.
std::complex<double> contract_AA(const NambuGreen& g, int i, int j);
std::complex<double> contract_BB(const NambuGreen& g, int i, int j);
std::complex<double> contract_AB(const NambuGreen& g, int i, int j);
std::complex<double> contract_BA(const NambuGreen& g, int i, int j);

// <sx_j sx_{j+1}>; the wrap bond of a periodic chain carries the sector sign.
double bond_xx(const NambuGreen& g, const ChainSpec& spec, Sector sector, int j);

double defect_density(const NambuGreen& g, const ChainSpec& spec, Sector sector);

// <H> for the state with columns X = [U; V] under the given Nambu matrix.
double quadratic_energy(const Eigen::SparseMatrix<double>& H, const CMat& U, const CMat& V);

struct AnnealOptions {
  Sector sector = Sector::even;
  StepPolicy policy{};
  int samples = 2;                     // evenly spaced records over [0, tau]
  std::vector<double> snapshot_times;  // Green snapshots kept at these times
};

struct Trajectory {
  std::vector<double> t;
  std::vector<double> rho;
  std::vector<double> energy;
  std::vector<NambuGreen> snapshots;
  double max_drift = 0.0;
  int steps = 0;
};

Trajectory anneal(const ChainSpec& spec, const Schedule& schedule, const AnnealOptions& opt = {});

}  // namespace ffising
