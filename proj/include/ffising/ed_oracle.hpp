#pragma once

#include <cstdint>
#include <vector>

#include "ffising/bdg.hpp"
#include "ffising/observables.hpp"

namespace ffising::ed {

inline constexpr int kMaxSites = 12;

// Spin Hamiltonian on sigma^z product states; bit j set <=> spin j down
// <=> n_j = 1.
struct DenseSpinSystem {
  ChainSpec spec;
  Mat H;
  int L() const { return spec.L; }
  Eigen::Index dim() const { return H.rows(); }
};

DenseSpinSystem build(const ChainSpec& spec);

inline int state_parity(std::uint64_t s) { return (__builtin_popcountll(s) & 1) ? -1 : 1; }

struct Eigenpair {
  double energy = 0.0;
  Vec state;
};

// parity 0 means unrestricted, otherwise +1/-1 for e^{i pi N}.
Eigenpair ground(const DenseSpinSystem& sys, int parity = 0);
Vec spectrum(const DenseSpinSystem& sys);

enum class Observable { energy, sz, xx, zz };

struct ObservableTag {
  Observable kind = Observable::energy;
  int j1 = 0;
  int j2 = 0;
};

double expectation(const Vec& state, int L, const ObservableTag& op);
double expectation(const DenseSpinSystem& sys, const Vec& state, const ObservableTag& op);

double log_partition_function(const DenseSpinSystem& sys, double beta);
double thermal_average(const DenseSpinSystem& sys, double beta, const ObservableTag& op);

// Von Neumann entropy (nats) of a contiguous block, wrapping around the ring.
double reduced_entropy(const Vec& state, int L, Block block);
double reduced_entropy(const CVec& state, int L, Block block);

// Fermion operators with the Jordan-Wigner string over sites below j.
CVec apply_c(const CVec& psi, int j);
CVec apply_cdag(const CVec& psi, int j);

// Normalized Fock state prod_{mu in occ} gamma+_mu |vac> of a basis, with an
// arbitrary global phase.
CVec gaussian_state(const BogoliubovBasis& b, const std::vector<int>& occ = {});

std::complex<double> state_overlap(const CVec& a, const CVec& b);

// Physical many-body energies of the free-fermion solution: in each sector,
// Fock states whose parity matches the sector, E0_p + 2 sum n_mu eps_mu.
std::vector<double> free_fermion_spectrum(const ChainSpec& spec);

}  // namespace ffising::ed
