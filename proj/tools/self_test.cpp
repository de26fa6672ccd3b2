// Small-size invariant suites behind --self-test.
#include <cmath>
#include <numbers>
#include <random>

#include <ffising/bdg.hpp>
#include <ffising/dynamics.hpp>
#include <ffising/ed_oracle.hpp>
#include <ffising/error.hpp>
#include <ffising/floquet.hpp>
#include <ffising/gaussian.hpp>
#include <ffising/observables.hpp>
#include <ffising/thermal.hpp>
#include <ffising/uniform.hpp>

#include "cli.hpp"

namespace ffising::cli {

namespace {

bool raises(Errc code, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

ChainSpec sample_chain(int L, Boundary bc, std::uint64_t seed) {
  return make_disordered(L, {0.5, 1.0}, {0.0, 1.5}, 0.8, seed, bc);
}

}  // namespace

std::vector<SelfCheck> self_test_uniform() {
  std::vector<SelfCheck> out;
  out.push_back(below("eps_pi at h=0.5", std::abs(epsilon_k(std::numbers::pi, 1, 0.5, 1) - 3), 1e-12));
  const ChainSpec s = make_uniform(8, 1.0, 0.7, 0.6, Boundary::periodic);
  for (Sector p : {Sector::even, Sector::odd}) {
    const double e = diagonalize(assemble_bdg(s, p)).vacuum_energy();
    out.push_back(below(p == Sector::even ? "even sector sum vs BdG" : "odd sector sum vs BdG",
                        std::abs(sector_ground_energy(8, 1.0, 0.6, 0.7, p) - e), 1e-10));
  }
  out.push_back(below("gapped gap 2(h-J)", std::abs(sector_gap(64, 1.0, 1.5, 1.0) - 1.0), 1e-8));
  out.push_back(holds("winding 1 in the ordered phase", winding_index(1.0, 0.5, 1.0) == 1));
  out.push_back(holds("winding 0 in the paramagnet", winding_index(1.0, 2.0, 1.0) == 0));
  out.push_back(holds("h=J raises undefined-index", raises(Errc::undefined_index, [] { winding_index(1.0, 1.0, 1.0); })));
  return out;
}

std::vector<SelfCheck> self_test_bdg() {
  std::vector<SelfCheck> out;
  double canon = 0, recon = 0;
  bool ipr_ok = true;
  for (Boundary bc : {Boundary::periodic, Boundary::open})
    for (std::uint64_t seed : {1u, 2u}) {
      const BdGMatrix m = assemble_bdg(sample_chain(10, bc, seed), Sector::even);
      const BogoliubovBasis b = diagonalize(m);
      canon = std::max(canon, canonical_defect(b.U, b.V));
      recon = std::max(recon, reconstruction_residual(m, b));
      for (double x : ipr(b)) ipr_ok = ipr_ok && x > 0 && x <= 1 + 1e-12;
    }
  out.push_back(below("canonical defect", canon, 1e-10));
  out.push_back(below("reconstruction residual", recon, 1e-10));
  out.push_back(holds("IPR in (0, 1]", ipr_ok));
  const BogoliubovBasis z = diagonalize(assemble_bdg(make_uniform(8, 1.0, 1.0, 0.0, Boundary::open), Sector::even));
  out.push_back(below("OBC h=0 zero mode", z.eps(0), 1e-12));
  out.push_back(holds("h_imp = 0 raises no-bound-state",
                      raises(Errc::no_bound_state, [] { impurity_bound_states(64, 1.0, 0.5, 0.0); })));
  return out;
}

std::vector<SelfCheck> self_test_gaussian() {
  std::vector<SelfCheck> out;
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  double pf = 0;
  for (int n = 2; n <= 8; n += 2) {
    CMat a = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        a(i, j) = cplx(nd(rng), nd(rng));
        a(j, i) = -a(i, j);
      }
    const cplx p = pfaffian(a), d = a.determinant();
    pf = std::max(pf, std::abs(p * p - d) / std::abs(d));
  }
  out.push_back(below("Pf^2 = det", pf, 1e-10));
  const BogoliubovBasis b0 = diagonalize(assemble_bdg(sample_chain(6, Boundary::periodic, 3), Sector::even));
  const BogoliubovBasis b1 = diagonalize(assemble_bdg(sample_chain(6, Boundary::periodic, 4), Sector::even));
  const CVec p0 = ed::gaussian_state(b0);
  out.push_back(below("Onishi vs state vectors",
                      std::abs(onishi_overlap_sq(b0, b1) - std::norm(ed::state_overlap(p0, ed::gaussian_state(b1)))), 1e-10));
  out.push_back(below("excited pattern vs state vectors",
                      std::abs(excited_overlap_sq(b0, b1, {{1, 4}}) -
                               std::norm(ed::state_overlap(p0, ed::gaussian_state(b1, {1, 4})))), 1e-10));
  double sum = 0;
  for (unsigned mask = 0; mask < 64; ++mask) {
    OccupationPattern occ;
    for (int mu = 0; mu < 6; ++mu)
      if (mask >> mu & 1u) occ.occupied.push_back(mu);
    sum += excited_overlap_sq(b0, b1, occ);
  }
  out.push_back(below("Fock completeness", std::abs(sum - 1), 1e-8));
  return out;
}

std::vector<SelfCheck> self_test_dynamics() {
  std::vector<SelfCheck> out;
  const ChainSpec s = sample_chain(8, Boundary::periodic, 5);
  const BogoliubovBasis b = diagonalize(assemble_bdg(s, Sector::even));
  StepPolicy pol;
  pol.stepper = Stepper::exp_midpoint;
  double phase = 0, drift = 0;
  for (const Snapshot& sn : propagate(b, s, Schedule::constant(20.0), {0.0, 10.0, 20.0}, pol)) {
    const CVec ph = (cplx(0, -2) * b.eps.cast<cplx>() * sn.t).array().exp().matrix();
    phase = std::max(phase, (sn.U - b.U * ph.asDiagonal()).cwiseAbs().maxCoeff());
    drift = std::max(drift, sn.drift);
  }
  out.push_back(below("constant-H phases", phase, 1e-10));
  out.push_back(below("unitarity drift", drift, 1e-8));
  AnnealOptions opt;
  opt.policy.stepper = Stepper::exp_midpoint;
  const Trajectory slow = anneal(make_uniform(16, 1.0, 1.0, 3.0, Boundary::periodic), Schedule::linear(3.0, 2.0, 20.0), opt);
  out.push_back(below("adiabatic ramp in the paramagnet",
                      std::abs(slow.energy.back() - sector_ground_energy(16, 1.0, 2.0, 1.0, Sector::even)), 1e-3));
  return out;
}

std::vector<SelfCheck> self_test_floquet() {
  std::vector<SelfCheck> out;
  const ChainSpec s = sample_chain(6, Boundary::periodic, 6);
  const BogoliubovBasis b = diagonalize(assemble_bdg(s, Sector::even));
  FloquetOptions o;
  o.policy.stepper = Stepper::exp_midpoint;
  const double tau = 0.5;
  const FloquetSpectrum fs = quasi_energies(monodromy(s, Schedule::constant(tau), tau, o), tau);
  double q = 0;
  for (int mu = 0; mu < 6; ++mu) q = std::max(q, std::abs(fs.quasi(mu) - 2 * b.eps(mu)));
  out.push_back(below("constant-H quasi-energies", q, 1e-9));
  out.push_back(below("pairing defect", fs.pairing_defect, 1e-10));
  const ChainSpec u = make_uniform(6, 1.0, 1.0, 0.5, Boundary::periodic);
  const FloquetSpectrum d = floquet_analysis(u, Schedule::cosine(0.5, 0.4, 1.3), 1.3, o);
  out.push_back(below("cosine-drive vacuum residual", vacuum_periodicity_residual(d), 1e-8));
  return out;
}

std::vector<SelfCheck> self_test_thermal() {
  std::vector<SelfCheck> out;
  for (Boundary bc : {Boundary::periodic, Boundary::open}) {
    const ChainSpec s = sample_chain(6, bc, 7);
    const ed::DenseSpinSystem sys = ed::build(s);
    double d = 0;
    for (double beta : {0.2, 1.0, 5.0}) {
      const ThermalContext ctx = make_thermal_context(s, beta);
      d = std::max(d, std::abs(energy_density(ctx) - ed::thermal_average(sys, beta, {ed::Observable::energy}) / 6));
      d = std::max(d, std::abs(log_partition_function(ctx) - ed::log_partition_function(sys, beta)));
    }
    out.push_back(below(std::string(boundary_name(bc)) + " thermal vs ED", d, 1e-8));
  }
  out.push_back(holds("negative beta rejected", raises(Errc::invalid_input, [] {
                        make_thermal_context(make_uniform(4, 1.0, 1.0, 0.5, Boundary::periodic), -1.0);
                      })));
  return out;
}

std::vector<SelfCheck> self_test_observables() {
  std::vector<SelfCheck> out;
  const MajoranaCorrelation prod = majorana_correlation(
      green_functions(sector_ground_state(make_uniform(8, 1.0, 1.0, 1e9, Boundary::periodic), Sector::even).basis));
  out.push_back(below("product-state entropy", entanglement_entropy(prod, {0, 4}).entropy, 1e-10));
  const MajoranaCorrelation cat = majorana_correlation(
      green_functions(sector_ground_state(make_uniform(8, 1.0, 1.0, 0.0, Boundary::periodic), Sector::even).basis));
  out.push_back(below("cat-state entropy ln 2", std::abs(entanglement_entropy(cat, {0, 4}).entropy - std::log(2.0)), 1e-8));
  for (SelfCheck& c : ed_deltas(sample_chain(6, Boundary::open, 8), 1e-8))
    if (c.name.find("sigma") != std::string::npos || c.name.find("C_") != std::string::npos ||
        c.name.find("entropy") != std::string::npos)
      out.push_back(std::move(c));
  return out;
}

std::vector<SelfCheck> self_test_ed_oracle() {
  std::vector<SelfCheck> out;
  for (Boundary bc : {Boundary::periodic, Boundary::open})
    for (SelfCheck& c : ed_deltas(sample_chain(6, bc, 9), 1e-8)) out.push_back(std::move(c));
  out.push_back(holds("L > 12 raises size-limit",
                      raises(Errc::size_limit, [] { ed::build(make_uniform(13, 1.0, 1.0, 0.5, Boundary::periodic)); })));
  return out;
}

}  // namespace ffising::cli
