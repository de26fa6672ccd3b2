// anneal, kibble-zurek, floquet, thermal
#include <cmath>
#include <numbers>
#include <optional>

#include <ffising/dynamics.hpp>
#include <ffising/ed_oracle.hpp>
#include <ffising/error.hpp>
#include <ffising/floquet.hpp>
#include <ffising/thermal.hpp>

#include "cli.hpp"

namespace ffising::cli {

namespace {

struct AnnealArgs {
  int L = 128;
  double J = 1.0, kappa = 1.0;
  double hi = 2.0, hf = 0.0, tau = 32.0;
  std::string schedule = "linear";
  std::string stepper = "exp";
  double dt_max = 0.5;
  int samples = 65;
};

struct KZArgs {
  int L = 512;
  double J = 1.0, kappa = 1.0;
  double hi = 2.0, hf = 0.0;
  double tau_min = 8.0, tau_max = 512.0;
  int n_tau = 7;
  double dt_max = 0.5;
};

struct FloquetArgs {
  ChainArgs chain{8, {1.0}, 1.0, {0.5}, "PBC"};
  double amplitude = 0.4, tau = 1.3, t0 = 0.0;
  std::string drive = "cosine";
  int samples = 256;
};

struct ThermalArgs {
  ChainArgs chain{8, {1.0}, 1.0, {0.5}, "PBC"};
  std::string beta_grid = "0.2,1,5";
  bool validate = false;
};

Stepper parse_stepper(const std::string& s) {
  if (s == "rk4") return Stepper::rk4;
  if (s == "exp" || s == "exp-midpoint") return Stepper::exp_midpoint;
  throw Error(Errc::invalid_input, "unknown stepper '" + s + "', use rk4 or exp");
}

Schedule ramp(const std::string& shape, double hi, double hf, double tau) {
  if (shape == "linear") return Schedule::linear(hi, hf, tau);
  if (shape == "cosine") return Schedule::cosine_ramp(hi, hf, tau);
  throw Error(Errc::invalid_input, "unknown schedule '" + shape + "', use linear or cosine");
}

}  // namespace

void register_dynamics(Registry& r) {
  {
    auto a = std::make_shared<AnnealArgs>();
    Command& c = r.add("anneal", "defect density and energy along a field ramp");
    c.params->add("L", a->L, "chain length");
    c.params->add("J", a->J, "coupling");
    c.params->add("kappa", a->kappa, "anisotropy");
    c.params->add("hi", a->hi, "initial field");
    c.params->add("hf", a->hf, "final field");
    c.params->add("tau", a->tau, "ramp duration");
    c.params->add("schedule", a->schedule, "linear or cosine");
    c.params->add("stepper", a->stepper, "rk4 or exp");
    c.params->add("dt_max", a->dt_max, "largest step");
    c.params->add("samples", a->samples, "records over [0, tau]");
    c.run = [a](const Globals&) {
      const ChainSpec s = make_uniform(a->L, a->J, a->kappa, a->hi, Boundary::periodic);
      AnnealOptions opt;
      opt.policy.stepper = parse_stepper(a->stepper);
      opt.policy.dt_max = a->dt_max;
      opt.samples = a->samples;
      const Trajectory tr = anneal(s, ramp(a->schedule, a->hi, a->hf, a->tau), opt);
      Result res;
      res.columns = {"t", "rho", "energy"};
      for (std::size_t i = 0; i < tr.t.size(); ++i) res.rows.push_back(json::array({tr.t[i], tr.rho[i], tr.energy[i]}));
      res.summary = {{"max_drift", tr.max_drift}, {"steps", tr.steps}};
      return res;
    };
    c.self_test = self_test_dynamics;
  }
  {
    auto a = std::make_shared<KZArgs>();
    Command& c = r.add("kibble-zurek", "post-ramp defect density against ramp time");
    c.params->add("L", a->L, "chain length");
    c.params->add("J", a->J, "coupling");
    c.params->add("kappa", a->kappa, "anisotropy");
    c.params->add("hi", a->hi, "initial field");
    c.params->add("hf", a->hf, "final field");
    c.params->add("tau_min", a->tau_min, "shortest ramp");
    c.params->add("tau_max", a->tau_max, "longest ramp");
    c.params->add("n_tau", a->n_tau, "log-spaced ramp times");
    c.params->add("dt_max", a->dt_max, "largest step");
    c.run = [a](const Globals&) {
      const ChainSpec s = make_uniform(a->L, a->J, a->kappa, a->hi, Boundary::periodic);
      AnnealOptions opt;
      opt.policy.stepper = Stepper::exp_midpoint;
      opt.policy.dt_max = a->dt_max;
      opt.samples = 1;
      Result res;
      res.columns = {"tau", "rho_def"};
      std::vector<double> lt, lr;
      double drift = 0;
      for (double tau : log_grid(a->tau_min, a->tau_max, a->n_tau)) {
        const Trajectory tr = anneal(s, Schedule::linear(a->hi, a->hf, tau), opt);
        res.rows.push_back(json::array({tau, tr.rho.back()}));
        lt.push_back(std::log(tau));
        lr.push_back(std::log(tr.rho.back()));
        drift = std::max(drift, tr.max_drift);
      }
      res.summary["fit_window"] = {a->tau_min, a->tau_max};
      if (lt.size() >= 2) {
        const auto [b, c0] = fit_line(lt, lr);
        res.summary["slope"] = b;
        res.summary["intercept"] = c0;
      }
      res.summary["max_drift"] = drift;
      return res;
    };
    c.self_test = self_test_dynamics;
  }
  {
    auto a = std::make_shared<FloquetArgs>();
    Command& c = r.add("floquet", "quasi-energies of a periodically driven chain");
    add_chain(*c.params, a->chain);
    c.params->add("amplitude", a->amplitude, "drive amplitude around h");
    c.params->add("tau", a->tau, "period");
    c.params->add("t0", a->t0, "start of the period window");
    c.params->add("drive", a->drive, "cosine or constant");
    c.params->add("samples", a->samples, "mode samples per period");
    c.run = [a](const Globals& g) {
      ChainSpec s = make_chain(a->chain, g.seed);
      Schedule sched;
      if (a->drive == "cosine") {
        // h_j(t) = h_j + amplitude cos(2 pi t / tau)
        const std::vector<double> h0 = s.h;
        const double amp = a->amplitude, tau = a->tau;
        sched.shape = Schedule::Shape::custom;
        sched.tau = tau;
        sched.custom_h = [h0, amp, tau](double t) {
          std::vector<double> h = h0;
          for (double& x : h) x += amp * std::cos(2 * std::numbers::pi * t / tau);
          return h;
        };
      } else if (a->drive == "constant") {
        sched = Schedule::constant(a->tau);
      } else {
        throw Error(Errc::invalid_input, "unknown drive '" + a->drive + "', use cosine or constant");
      }
      FloquetOptions opt;
      opt.policy.stepper = Stepper::exp_midpoint;
      opt.samples = a->samples;
      opt.t0 = a->t0;
      const FloquetSpectrum fs = floquet_analysis(s, sched, a->tau, opt);
      Result res;
      res.columns = {"mu", "quasi_energy"};
      for (int mu = 0; mu < s.L; ++mu) res.rows.push_back(json::array({mu, fs.quasi(mu)}));
      res.summary = {{"tau", a->tau},
                     {"residual", vacuum_periodicity_residual(fs)},
                     {"unitarity_defect", fs.unitarity_defect},
                     {"pairing_defect", fs.pairing_defect}};
      return res;
    };
    c.self_test = self_test_floquet;
  }
  {
    auto a = std::make_shared<ThermalArgs>();
    Command& c = r.add("thermal", "Gibbs-state energy density and partition function");
    add_chain(*c.params, a->chain);
    c.params->add("beta_grid", a->beta_grid, "inverse temperatures a:step:b or list");
    c.params->flag("validate", a->validate, "add a column of ED deltas (L <= 10)");
    c.run = [a](const Globals& g) {
      const ChainSpec s = make_chain(a->chain, g.seed);
      if (a->validate && s.L > 10) throw Error(Errc::size_limit, "--validate needs L <= 10");
      Result res;
      res.columns = {"beta", "energy_density", "log_Z"};
      if (a->validate) res.columns.push_back("ed_delta");
      std::optional<ed::DenseSpinSystem> sys;
      if (a->validate) sys = ed::build(s);
      double worst = 0;
      for (double beta : parse_grid(a->beta_grid)) {
        const ThermalContext ctx = make_thermal_context(s, beta);
        const double e = energy_density(ctx), lz = log_partition_function(ctx);
        json row = json::array({beta, e, lz});
        if (sys) {
          const double d = std::max(std::abs(e - ed::thermal_average(*sys, beta, {ed::Observable::energy}) / s.L),
                                    std::abs(lz - ed::log_partition_function(*sys, beta)));
          worst = std::max(worst, d);
          row.push_back(d);
        }
        res.rows.push_back(row);
      }
      if (sys) {
        res.summary = {{"max_ed_delta", worst}, {"threshold", 1e-8}};
        if (worst > 1e-8) res.status = 4;
      }
      return res;
    };
    c.self_test = self_test_thermal;
  }
}

}  // namespace ffising::cli
