#include <doctest.h>

#include <cmath>

#include <ffising/dynamics.hpp>
#include <ffising/error.hpp>
#include <ffising/observables.hpp>
#include <ffising/uniform.hpp>

#include "oracles.hpp"

using namespace ffising;

namespace {

std::vector<double> grid(double t1, int n) {
  std::vector<double> t;
  for (int i = 0; i <= n; ++i) t.push_back(t1 * i / n);
  return t;
}

double hermiticity_defect(const NambuGreen& g) {
  return std::max((g.G - g.G.adjoint()).cwiseAbs().maxCoeff(), (g.F + g.F.transpose()).cwiseAbs().maxCoeff());
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("schedules") {
  const ChainSpec base = make_uniform(4, 1.0, 1.0, 0.3, Boundary::periodic);
  CHECK(Schedule::constant(5).at(base, 2.0).h == base.h);
  const Schedule lin = Schedule::linear(2.0, 0.0, 10.0);
  CHECK(lin.at(base, 0.0).h[0] == 2.0);
  CHECK(lin.at(base, 2.5).h[2] == doctest::Approx(1.5));
  CHECK(lin.at(base, 10.0).h[3] == doctest::Approx(0.0));
  const Schedule cs = Schedule::cosine(1.0, 0.25, 4.0);
  CHECK(cs.at(base, 0.0).h[0] == doctest::Approx(1.25));
  CHECK(cs.at(base, 2.0).h[0] == doctest::Approx(0.75));
  const Schedule ramp = Schedule::cosine_ramp(2.0, 0.5, 3.0);
  CHECK(ramp.at(base, 0.0).h[1] == doctest::Approx(2.0));
  CHECK(ramp.at(base, 3.0).h[1] == doctest::Approx(0.5));
}

TEST_CASE("constant Hamiltonian gives pure phases") {
  const ChainSpec s = make_disordered(12, {0.5, 1.0}, {0.0, 1.0}, 0.8, 3);
  const BogoliubovBasis b = diagonalize(assemble_bdg(s, Sector::even));
  for (Stepper st : {Stepper::exp_midpoint, Stepper::rk4}) {
    StepPolicy pol;
    pol.stepper = st;
    const double T = st == Stepper::rk4 ? 10.0 : 100.0;
    const auto snaps = propagate(b, s, Schedule::constant(T), grid(T, 5), pol);
    const double tol = st == Stepper::rk4 ? 1e-6 : 1e-10;
    for (const Snapshot& sn : snaps) {
      const CVec ph = (cplx(0, -2) * b.eps.cast<cplx>() * sn.t).array().exp().matrix();
      CHECK((sn.U - b.U * ph.asDiagonal()).cwiseAbs().maxCoeff() < tol);
      CHECK((sn.V - b.V * ph.asDiagonal()).cwiseAbs().maxCoeff() < tol);
      // rk4 drift grows linearly; the bound is per unit time
      CHECK(sn.drift < 1e-8 * (st == Stepper::rk4 ? std::max(1.0, sn.t) : 1.0));
    }
  }
}

TEST_CASE("zero Hamiltonian leaves the basis alone") {
  const ChainSpec s = make_uniform(6, 0.0, 1.0, 0.0, Boundary::periodic);
  const BogoliubovBasis b = bare_vacuum(6);
  const auto snaps = propagate(b, s, Schedule::constant(3.0), grid(3.0, 3));
  for (const Snapshot& sn : snaps) {
    CHECK((sn.U - b.U).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(sn.V.cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("initial basis must diagonalize H(0)") {
  const ChainSpec s = make_uniform(6, 1.0, 1.0, 0.5, Boundary::periodic);
  CHECK_THROWS_AS(propagate(bare_vacuum(6), s, Schedule::constant(1.0), grid(1.0, 1)), Error);
}

TEST_CASE("drift above the limit is a step-size error") {
  const ChainSpec s = make_uniform(8, 1.0, 1.0, 0.5, Boundary::periodic);
  const BogoliubovBasis b = diagonalize(assemble_bdg(s, Sector::even));
  StepPolicy pol;
  pol.courant = 2.5;
  pol.drift_limit = 1e-6;
  try {
    propagate(b, s, Schedule::constant(50.0), grid(50.0, 2), pol);
    FAIL("expected step-size");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::step_size);
  }
}

TEST_CASE("energy is conserved under a constant Hamiltonian") {
  const ChainSpec s = make_disordered(10, {0.5, 1.0}, {0.0, 1.5}, 1.0, 12);
  const BogoliubovBasis gs = diagonalize(assemble_bdg(s, Sector::even));
  // start from an excited pattern mixed by a different Hamiltonian
  const ChainSpec pre = make_uniform(10, 1.0, 1.0, 3.0, Boundary::periodic);
  const BogoliubovBasis b0 = diagonalize(assemble_bdg(pre, Sector::even));
  const auto H = assemble_sparse(s, Sector::even);
  const double e_gs = quadratic_energy(H, gs.U, gs.V);
  CHECK(e_gs == doctest::Approx(gs.vacuum_energy()).epsilon(1e-12));
  StepPolicy pol;
  pol.stepper = Stepper::exp_midpoint;
  // propagate() insists on a diagonalizing basis, so drive with a step schedule
  Schedule quench;
  quench.shape = Schedule::Shape::custom;
  quench.tau = 100.0;
  quench.custom_h = [&](double) { return s.h; };
  quench.custom_J = [&](double) { return s.J; };
  const BdGPropagator prop(pre, quench, Sector::even, pol);
  CMat X(20, 10);
  X << b0.U, b0.V;
  const double e0 = quadratic_energy(H, b0.U, b0.V);
  for (int k = 0; k < 10; ++k) {
    prop.advance(X, 10.0 * k, 10.0 * (k + 1));
    CHECK(std::abs(quadratic_energy(H, X.topRows(10), X.bottomRows(10)) - e0) < 1e-9);
    const NambuGreen g = green_functions(X.topRows(10), X.bottomRows(10));
    CHECK(hermiticity_defect(g) < 1e-9);
  }
}

TEST_CASE("full matrix agrees with the per-momentum evolution") {
  const int L = 16;
  const double J = 1.0, kappa = 0.8;
  const Schedule sched = Schedule::linear(1.6, 0.2, 6.0);
  const ChainSpec s = make_uniform(L, J, kappa, 1.6, Boundary::periodic);
  const BogoliubovBasis b0 = diagonalize(assemble_bdg(s, Sector::even));
  StepPolicy pol;
  pol.courant = 0.01;
  const std::vector<double> ts{0.0, 2.0, 6.0};
  const auto snaps = propagate(b0, s, sched, ts, pol);

  const std::vector<double> ks = k_grid(L, Sector::even).ks;
  std::vector<oracle::ModeState> modes;
  for (double k : ks) {
    const auto [u, v] = amplitudes(k, J, 1.6, kappa);
    modes.push_back({-std::conj(v), std::conj(u)});
  }
  auto h_of_t = [&](double t) { return sched.at(s, t).h[0]; };
  double t = 0.0;
  for (const Snapshot& sn : snaps) {
    for (std::size_t q = 0; q < ks.size(); ++q)
      modes[q] = oracle::evolve_mode(modes[q], ks[q], J, kappa, h_of_t, t, sn.t, 20000);
    t = sn.t;
    CMat G, F;
    oracle::green_from_modes(ks, modes, G, F);
    const NambuGreen g = green_functions(sn.U, sn.V);
    CHECK((g.G - G).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((g.F - F).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(sn.drift < 1e-8);
  }
}

TEST_CASE("Green functions and Majorana matrix") {
  const NambuGreen vac = green_functions(bare_vacuum(4));
  CHECK(vac.G.isIdentity(0));
  CHECK(vac.F.isZero(0));
  const MajoranaCorrelation m = majorana_correlation(vac);
  CHECK(m.A.topRightCorner(4, 4).isIdentity(1e-15));
  CHECK((m.A.bottomLeftCorner(4, 4) + Mat::Identity(4, 4)).isZero(1e-15));
  const BogoliubovBasis full = excite(bare_vacuum(4), {0, 1, 2, 3});
  CHECK(green_functions(full).G.isZero(0));

  const NambuGreen u = green_functions(diagonalize(assemble_bdg(make_uniform(10, 1.0, 1.0, 0.5, Boundary::periodic), Sector::even)));
  for (int j = 1; j < 10; ++j) CHECK(std::abs(u.G(j, j) - u.G(0, 0)) < 1e-12);

  // a time-evolved, genuinely complex state
  const ChainSpec s = make_disordered(8, {0.5, 1.0}, {0.0, 2.0}, 1.0, 1);
  const BogoliubovBasis b = diagonalize(assemble_bdg(make_uniform(8, 1.0, 1.0, 2.0, Boundary::periodic), Sector::even));
  Schedule q;
  q.shape = Schedule::Shape::custom;
  q.tau = 3.0;
  q.custom_h = [&](double) { return s.h; };
  CMat X(16, 8);
  X << b.U, b.V;
  BdGPropagator(make_uniform(8, 1.0, 1.0, 2.0, Boundary::periodic), q, Sector::even, {Stepper::exp_midpoint}).advance(X, 0, 3);
  const NambuGreen g = green_functions(X.topRows(8), X.bottomRows(8));
  CHECK(g.G.imag().cwiseAbs().maxCoeff() > 1e-3);
  const MajoranaCorrelation mc = majorana_correlation(g);
  CHECK((mc.A + mc.A.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  const Eigen::ComplexEigenSolver<CMat> es(cplx(0, 1) * mc.A.cast<cplx>());
  for (int i = 0; i < 16; ++i) CHECK(std::abs(es.eigenvalues()(i).real()) <= 1 + 1e-8);
  // consistent pure state: iA has eigenvalues +-1
  for (int i = 0; i < 16; ++i) CHECK(std::abs(std::abs(es.eigenvalues()(i).real()) - 1) < 1e-8);

  NambuGreen bad = g;
  bad.G(0, 1) += cplx(0, 0.1);
  CHECK_THROWS_AS(majorana_correlation(bad), Error);
}

TEST_CASE("defect density limits") {
  const ChainSpec s0 = make_uniform(12, 1.0, 1.0, 0.0, Boundary::periodic);
  const NambuGreen g0 = green_functions(sector_ground_state(s0, Sector::even).basis);
  CHECK(std::abs(defect_density(g0, s0, Sector::even)) < 1e-12);
  const ChainSpec so = make_uniform(12, 1.0, 1.0, 0.0, Boundary::open);
  CHECK(std::abs(defect_density(green_functions(physical_ground_state(so).basis), so, Sector::even)) < 1e-12);
  const NambuGreen z = green_functions(bare_vacuum(12));
  CHECK(defect_density(z, s0, Sector::even) == doctest::Approx(0.5));
  for (int j = 0; j < 12; ++j) CHECK(bond_xx(g0, s0, Sector::even, j) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("anneal") {
  const ChainSpec s = make_uniform(32, 1.0, 1.0, 1e4, Boundary::periodic);
  // sudden limit
  AnnealOptions opt;
  opt.policy.stepper = Stepper::exp_midpoint;
  const Trajectory sudden = anneal(s, Schedule::linear(1e4, 0.0, 1e-12), opt);
  CHECK(sudden.rho.back() == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(sudden.energy.front() == doctest::Approx(diagonalize(assemble_bdg(s, Sector::even)).vacuum_energy()).epsilon(1e-10));

  const ChainSpec s2 = make_uniform(64, 1.0, 1.0, 2.0, Boundary::periodic);
  opt.samples = 5;
  opt.snapshot_times = {4.0};
  opt.policy.dt_max = 0.1;
  const Trajectory slow = anneal(s2, Schedule::linear(2.0, 0.0, 32.0), opt);
  const Trajectory fast = anneal(s2, Schedule::linear(2.0, 0.0, 4.0), opt);
  CHECK(slow.rho.back() < fast.rho.back());
  CHECK(slow.t.size() == 6);  // five samples plus the snapshot time
  CHECK(slow.snapshots.size() == 1);
  CHECK(slow.max_drift < 1e-8);
  CHECK(std::abs(slow.energy.front() - sector_ground_energy(64, 1.0, 2.0, 1.0, Sector::even)) < 1e-10);
}

}
