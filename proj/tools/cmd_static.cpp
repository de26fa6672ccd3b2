// bands, gap-scan, spectrum, winding, localization, impurity
#include <cmath>
#include <numbers>

#include <ffising/bdg.hpp>
#include <ffising/error.hpp>
#include <ffising/uniform.hpp>

#include "cli.hpp"

namespace ffising::cli {

namespace {

struct BandsArgs {
  double J = 1.0, kappa = 1.0, h = 0.5;
  int nk = 101;
};

struct GapScanArgs {
  int L = 256;
  double J = 1.0, kappa = 1.0;
  std::string h = "0:0.02:2";
};

struct SpectrumArgs {
  int L = 32;
  double J = 1.0, kappa = 1.0;
  std::string h = "0:0.05:2";
  std::string bc = "OBC";
};

struct WindingArgs {
  double J = 1.0, kappa = 1.0;
  std::string h = "0,0.5,0.99,1.01,2,10";
};

struct LocalizationArgs {
  std::vector<int> L{128, 256};
  int realizations = 200;
  std::vector<double> J_range{0.5, 1.0};
  std::vector<double> h_range{0.0, 2.0};
  double kappa = 1.0;
  std::string bc = "OBC";
};

struct ImpurityArgs {
  int L = 512;
  double J = 1.0, h = 0.5, h_imp = 0.02;
};

std::pair<double, double> range_of(const std::vector<double>& v, const char* what) {
  if (v.size() != 2 || v[1] < v[0]) throw Error(Errc::invalid_range, std::string(what) + " needs lo,hi");
  return {v[0], v[1]};
}

}  // namespace

void register_static(Registry& r) {
  {
    auto a = std::make_shared<BandsArgs>();
    Command& c = r.add("bands", "dispersion eps_k of the uniform chain");
    c.params->add("J", a->J, "coupling");
    c.params->add("kappa", a->kappa, "anisotropy");
    c.params->add("h", a->h, "transverse field");
    c.params->add("nk", a->nk, "k points in [-pi, pi]");
    c.run = [a](const Globals&) {
      if (a->nk < 2) throw Error(Errc::invalid_size, "nk must be at least 2");
      Result res;
      res.columns = {"k", "eps_plus", "eps_minus"};
      for (int i = 0; i < a->nk; ++i) {
        const double k = -std::numbers::pi + 2 * std::numbers::pi * i / (a->nk - 1);
        const double e = epsilon_k(k, a->J, a->h, a->kappa);
        res.rows.push_back(json::array({k, e, -e}));
      }
      return res;
    };
    c.self_test = self_test_uniform;
  }
  {
    auto a = std::make_shared<GapScanArgs>();
    Command& c = r.add("gap-scan", "ground-state gap between the two fermion sectors");
    c.params->add("L", a->L, "chain length");
    c.params->add("J", a->J, "coupling");
    c.params->add("kappa", a->kappa, "anisotropy");
    c.params->add("h", a->h, "field grid a:step:b or list");
    c.run = [a](const Globals&) {
      Result res;
      res.columns = {"h", "gap", "L"};
      for (double h : parse_grid(a->h))
        res.rows.push_back(json::array({h, sector_gap(a->L, a->J, h, a->kappa), a->L}));
      return res;
    };
    c.self_test = self_test_uniform;
  }
  {
    auto a = std::make_shared<SpectrumArgs>();
    Command& c = r.add("spectrum", "Bogoliubov energies of the uniform chain against h");
    c.params->add("L", a->L, "chain length");
    c.params->add("J", a->J, "coupling");
    c.params->add("kappa", a->kappa, "anisotropy");
    c.params->add("h", a->h, "field grid a:step:b or list");
    c.params->add("bc", a->bc, "boundary condition, PBC or OBC");
    c.run = [a](const Globals&) {
      Result res;
      res.columns = {"h", "mu", "eps_mu"};
      for (double h : parse_grid(a->h)) {
        const ChainSpec s = make_uniform(a->L, a->J, a->kappa, h, parse_boundary(a->bc));
        const BogoliubovBasis b = diagonalize(assemble_bdg(s, Sector::even));
        for (int mu = 0; mu < a->L; ++mu) res.rows.push_back(json::array({h, mu, b.eps(mu)}));
      }
      return res;
    };
    c.self_test = self_test_bdg;
  }
  {
    auto a = std::make_shared<WindingArgs>();
    Command& c = r.add("winding", "winding index of (y_k, z_k) around the origin");
    c.params->add("J", a->J, "coupling");
    c.params->add("kappa", a->kappa, "anisotropy");
    c.params->add("h", a->h, "field grid a:step:b or list");
    c.run = [a](const Globals&) {
      Result res;
      res.columns = {"h", "winding"};
      json undefined = json::array();
      const std::vector<double> grid = parse_grid(a->h);
      // a single point at h = J is an error; in a scan it is marked
      if (grid.size() == 1) winding_index(a->J, grid[0], a->kappa);
      for (double h : grid) {
        try {
          res.rows.push_back(json::array({h, winding_index(a->J, h, a->kappa)}));
        } catch (const Error& e) {
          if (e.code() != Errc::undefined_index) throw;
          res.rows.push_back(json::array({h, "undefined"}));
          undefined.push_back(h);
        }
      }
      if (!undefined.empty()) res.summary["undefined_at"] = undefined;
      return res;
    };
    c.self_test = self_test_uniform;
  }
  {
    auto a = std::make_shared<LocalizationArgs>();
    Command& c = r.add("localization", "IPR statistics of disordered chains");
    c.params->add("L", a->L, "chain lengths");
    c.params->add("realizations", a->realizations, "disorder realizations per length");
    c.params->add("J_range", a->J_range, "J drawn uniformly from lo,hi");
    c.params->add("h_range", a->h_range, "h drawn uniformly from lo,hi");
    c.params->add("kappa", a->kappa, "anisotropy");
    c.params->add("bc", a->bc, "boundary condition, PBC or OBC");
    c.run = [a](const Globals& g) {
      if (a->realizations < 1) throw Error(Errc::invalid_size, "need at least one realization");
      const auto jr = range_of(a->J_range, "J-range");
      const auto hr = range_of(a->h_range, "h-range");
      Result res;
      res.columns = {"L", "mean_ipr", "std_ipr", "n_realizations", "seed"};
      json negative = json::object();
      for (int L : a->L) {
        std::vector<double> means;
        long neg = 0;
        for (int k = 0; k < a->realizations; ++k) {
          const ChainSpec s = make_disordered(L, jr, hr, a->kappa, g.seed + k, parse_boundary(a->bc));
          const BogoliubovBasis b = diagonalize(assemble_bdg(s, Sector::even));
          double m = 0;
          for (double x : ipr(b)) m += x;
          means.push_back(m / L);
          for (int mu = 0; mu < L; ++mu) neg += envelope_slope(b, mu) < 0;
        }
        double mean = 0, var = 0;
        for (double m : means) mean += m;
        mean /= means.size();
        for (double m : means) var += (m - mean) * (m - mean);
        const double sd = means.size() > 1 ? std::sqrt(var / (means.size() - 1)) : 0.0;
        res.rows.push_back(json::array({L, mean, sd, a->realizations, g.seed}));
        negative[std::to_string(L)] = static_cast<double>(neg) / (double(L) * a->realizations);
      }
      res.summary["negative_slope_fraction"] = negative;
      res.summary["std_ipr"] = "spread of per-realization mean IPR";
      return res;
    };
    c.self_test = self_test_bdg;
  }
  {
    auto a = std::make_shared<ImpurityArgs>();
    Command& c = r.add("impurity", "bound states of a ring with h_l = h - h_imp on one site");
    c.params->add("L", a->L, "chain length");
    c.params->add("J", a->J, "coupling");
    c.params->add("h", a->h, "transverse field");
    c.params->add("h_imp", a->h_imp, "impurity strength; negative raises the local field");
    c.run = [a](const Globals&) {
      const ImpurityBoundStates b = impurity_bound_states(a->L, a->J, a->h, a->h_imp);
      Result res;
      res.columns = {"edge", "energy", "shift", "formula_shift", "rel_dev", "effective_mass_shift"};
      res.rows.push_back(json::array({"lower", b.lower, b.lower_shift, b.lower_formula, b.lower_dev,
                                      b.lower_mass_formula}));
      res.rows.push_back(json::array({"upper", b.upper, b.upper_shift, b.upper_formula, b.upper_dev,
                                      b.upper_mass_formula}));
      return res;
    };
    c.self_test = self_test_bdg;
  }
}

}  // namespace ffising::cli
