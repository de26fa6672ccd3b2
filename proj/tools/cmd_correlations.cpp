// correlate, entropy, overlap
#include <cmath>

#include <ffising/error.hpp>
#include <ffising/gaussian.hpp>
#include <ffising/observables.hpp>

#include "cli.hpp"

namespace ffising::cli {

namespace {

struct CorrelateArgs {
  ChainArgs chain{128, {1.0}, 1.0, {0.5}, "PBC"};
  std::string sector = "even";
};

struct EntropyArgs {
  ChainArgs chain{64, {1.0}, 1.0, {1.0}, "PBC"};
  std::string sector = "even";
  std::vector<int> scan;
};

struct OverlapArgs {
  ChainArgs chain{8, {1.0}, 1.0, {0.5}, "PBC"};
  std::string h1 = "0:0.25:2";
  std::vector<int> pattern;
};

BogoliubovBasis ground_basis(const ChainSpec& s, const std::string& sector) {
  if (sector == "even") return sector_ground_state(s, Sector::even).basis;
  if (sector == "odd") return sector_ground_state(s, Sector::odd).basis;
  if (sector == "physical") return physical_ground_state(s).basis;
  throw Error(Errc::invalid_input, "unknown sector '" + sector + "', use even, odd or physical");
}

}  // namespace

void register_correlations(Registry& r) {
  {
    auto a = std::make_shared<CorrelateArgs>();
    Command& c = r.add("correlate", "ground-state C^xx between site 1 and site 1+r");
    add_chain(*c.params, a->chain);
    c.params->add("sector", a->sector, "even, odd or physical");
    c.run = [a](const Globals& g) {
      const ChainSpec s = make_chain(a->chain, g.seed);
      const Mat M = contraction_matrix(green_functions(ground_basis(s, a->sector)));
      Result res;
      res.columns = {"r", "C_xx"};
      for (int d = 1; d < s.L; ++d) res.rows.push_back(json::array({d, xx_correlator(M, 0, d)}));
      return res;
    };
    c.self_test = self_test_observables;
  }
  {
    auto a = std::make_shared<EntropyArgs>();
    Command& c = r.add("entropy", "block entanglement entropy of the ground state");
    add_chain(*c.params, a->chain);
    c.params->add("sector", a->sector, "even, odd or physical");
    c.params->add("scan", a->scan, "lengths for a half-chain scan; fields J, h must be scalar");
    c.run = [a](const Globals& g) {
      Result res;
      if (a->scan.empty()) {
        const ChainSpec s = make_chain(a->chain, g.seed);
        const MajoranaCorrelation m = majorana_correlation(green_functions(ground_basis(s, a->sector)));
        res.columns = {"l", "S_l"};
        for (int l = 1; l < s.L; ++l) res.rows.push_back(json::array({l, entanglement_entropy(m, {0, l}).entropy}));
        return res;
      }
      if (a->chain.J.size() != 1 || a->chain.h.size() != 1)
        throw Error(Errc::invalid_input, "--scan needs scalar J and h");
      res.columns = {"L", "S_half"};
      std::vector<double> x, y;
      for (int L : a->scan) {
        ChainArgs ca = a->chain;
        ca.L = L;
        const ChainSpec s = make_chain(ca, g.seed);
        const MajoranaCorrelation m = majorana_correlation(green_functions(ground_basis(s, a->sector)));
        const double S = entanglement_entropy(m, {0, L / 2}).entropy;
        res.rows.push_back(json::array({L, S}));
        x.push_back(std::log(L));
        y.push_back(S);
      }
      if (x.size() >= 2) {
        const auto [b, c0] = fit_line(x, y);
        res.summary = {{"b", b}, {"intercept", c0}, {"fit", "S_half = b ln L + c"}, {"fit_window", a->scan}};
      }
      return res;
    };
    c.self_test = self_test_observables;
  }
  {
    auto a = std::make_shared<OverlapArgs>();
    Command& c = r.add("overlap", "squared overlap of even-sector ground states at h and h1");
    add_chain(*c.params, a->chain);
    c.params->add("h1", a->h1, "second field, grid a:step:b or list");
    c.params->add("pattern", a->pattern, "occupied modes of the second state");
    c.run = [a](const Globals& g) {
      const ChainSpec s0 = make_chain(a->chain, g.seed);
      const BogoliubovBasis b0 = sector_ground_state(s0, Sector::even).basis;
      Result res;
      res.columns = {"h1", "overlap_sq"};
      for (double h1 : parse_grid(a->h1)) {
        ChainArgs ca = a->chain;
        ca.h = {h1};
        const BogoliubovBasis b1 = sector_ground_state(make_chain(ca, g.seed), Sector::even).basis;
        res.rows.push_back(json::array({h1, excited_overlap_sq(b0, b1, {a->pattern})}));
      }
      return res;
    };
    c.self_test = self_test_gaussian;
  }
}

}  // namespace ffising::cli
