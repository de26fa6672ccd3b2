// validate: every library path against the dense oracle
#include <cmath>

#include <ffising/ed_oracle.hpp>
#include <ffising/error.hpp>
#include <ffising/gaussian.hpp>
#include <ffising/observables.hpp>
#include <ffising/thermal.hpp>

#include "cli.hpp"

namespace ffising::cli {

std::vector<SelfCheck> ed_deltas(const ChainSpec& s, double threshold) {
  const int L = s.L;
  const ed::DenseSpinSystem sys = ed::build(s);
  std::vector<SelfCheck> out;
  const std::string tag = std::string(boundary_name(s.bc)) + " ";

  const GroundState gs = physical_ground_state(s);
  const NambuGreen g = green_functions(gs.basis);
  const int parity = parity_expectation(g) > 0 ? 1 : -1;
  const ed::Eigenpair ref = ed::ground(sys, parity);
  out.push_back(below(tag + "ground energy", std::abs(gs.energy - ed::ground(sys).energy), threshold));

  double sz = 0, xx = 0, zz = 0;
  for (int j = 0; j < L; ++j) {
    sz = std::max(sz, std::abs(transverse_magnetization(g, j) - ed::expectation(ref.state, L, {ed::Observable::sz, j, 0})));
    if (j == 0) continue;
    xx = std::max(xx, std::abs(xx_correlator(g, 0, j) - ed::expectation(ref.state, L, {ed::Observable::xx, 0, j})));
    zz = std::max(zz, std::abs(zz_correlator(g, 0, j) - ed::expectation(ref.state, L, {ed::Observable::zz, 0, j})));
  }
  out.push_back(below(tag + "sigma_z", sz, threshold));
  out.push_back(below(tag + "C_xx(1,j)", xx, threshold));
  out.push_back(below(tag + "C_zz(1,j)", zz, threshold));

  const MajoranaCorrelation m = majorana_correlation(g);
  double ent = 0;
  for (int l = 1; l < L; ++l)
    ent = std::max(ent, std::abs(entanglement_entropy(m, {0, l}).entropy - ed::reduced_entropy(ref.state, L, {0, l})));
  out.push_back(below(tag + "block entropy", ent, threshold));

  double th = 0;
  for (double beta : {0.2, 1.0, 5.0}) {
    const ThermalContext ctx = make_thermal_context(s, beta);
    th = std::max(th, std::abs(energy_density(ctx) - ed::thermal_average(sys, beta, {ed::Observable::energy}) / L));
    th = std::max(th, std::abs(log_partition_function(ctx) - ed::log_partition_function(sys, beta)));
  }
  out.push_back(below(tag + "thermal energy and log Z", th, threshold));

  const Vec E = ed::spectrum(sys);
  const std::vector<double> F = ed::free_fermion_spectrum(s);
  double sp = 0;
  for (Eigen::Index n = 0; n < E.size(); ++n) sp = std::max(sp, std::abs(E(n) - F[n]));
  out.push_back(below(tag + "full spectrum", sp, threshold));

  // overlap of the even-sector vacuum with a field-shifted one
  ChainSpec s1 = s;
  for (double& h : s1.h) h += 0.3;
  const BogoliubovBasis b0 = diagonalize(assemble_bdg(s, Sector::even));
  const BogoliubovBasis b1 = diagonalize(assemble_bdg(s1, Sector::even));
  const double ov = std::norm(ed::state_overlap(ed::gaussian_state(b0), ed::gaussian_state(b1)));
  out.push_back(below(tag + "Onishi overlap", std::abs(onishi_overlap_sq(b0, b1) - ov), threshold));
  return out;
}

namespace {

struct ValidateArgs {
  int L = 8;
  std::string bc = "both";
  std::vector<double> J_range{0.5, 1.0};
  std::vector<double> h_range{0.0, 1.0};
  double kappa = 1.0;
  double threshold = 1e-8;
};

}  // namespace

void register_validate(Registry& r) {
  auto a = std::make_shared<ValidateArgs>();
  Command& c = r.add("validate", "module-vs-ED deltas on a random chain; exit 4 on a breach");
  c.params->add("L", a->L, "chain length, at most 12");
  c.params->add("bc", a->bc, "PBC, OBC or both");
  c.params->add("J_range", a->J_range, "J drawn uniformly from lo,hi");
  c.params->add("h_range", a->h_range, "h drawn uniformly from lo,hi");
  c.params->add("kappa", a->kappa, "anisotropy");
  c.params->add("threshold", a->threshold, "largest accepted delta");
  c.run = [a](const Globals& g) {
    if (a->L < 2 || a->L > ed::kMaxSites) throw Error(Errc::size_limit, "validate needs 2 <= L <= 12");
    if (a->J_range.size() != 2 || a->h_range.size() != 2)
      throw Error(Errc::invalid_range, "ranges need lo,hi");
    std::vector<Boundary> bcs;
    if (a->bc == "both")
      bcs = {Boundary::periodic, Boundary::open};
    else
      bcs = {parse_boundary(a->bc)};
    std::vector<SelfCheck> checks;
    for (Boundary bc : bcs) {
      const ChainSpec s = make_disordered(a->L, {a->J_range[0], a->J_range[1]}, {a->h_range[0], a->h_range[1]},
                                          a->kappa, g.seed, bc);
      for (SelfCheck& x : ed_deltas(s, a->threshold)) checks.push_back(std::move(x));
    }
    return self_test_result(checks);
  };
  c.self_test = self_test_ed_oracle;
}

}  // namespace ffising::cli
