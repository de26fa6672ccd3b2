#include "ffising/thermal.hpp"

#include <cmath>

#include "ffising/error.hpp"
#include "ffising/observables.hpp"

namespace ffising {

namespace {

// log(e^a + s e^b) for b <= a, s = +-1; `d` is b - a, passed separately so
// that it can be accumulated without cancellation.
double log_combine(double a, double d, int s) {
  if (std::isinf(d) && d < 0) return a;
  if (s > 0) return a + std::log1p(std::exp(d));
  return a + std::log(-std::expm1(d));
}

struct Logs {
  double plus = 0.0;   // sum log(1 + x)
  double diff = 0.0;   // sum log((1 - x) / (1 + x)), -inf with a zero mode
  double shift = 0.0;  // beta * sum eps
};

// x_l = exp(-2 beta eps_l), skipping mode `skip`.
Logs sector_logs(const ThermalContext& ctx, int p, int skip = -1) {
  const Vec& eps = ctx.bases[p].eps;
  Logs lg;
  for (int l = 0; l < eps.size(); ++l) {
    lg.shift += ctx.beta * eps(l);
    if (l == skip) continue;
    const double y = 2.0 * ctx.beta * eps(l);
    const double x = std::exp(-y);
    lg.plus += std::log1p(x);
    if (y == 0.0) {
      lg.diff = -INFINITY;
    } else if (std::isfinite(lg.diff)) {
      // log(1 - x) = log(-expm1(-y))
      lg.diff += std::log(-std::expm1(-y)) - std::log1p(x);
    }
  }
  return lg;
}

double log_sector_trace(const ThermalContext& ctx, int p) {
  const Logs lg = sector_logs(ctx, p);
  return lg.shift - std::log(2.0) + log_combine(lg.plus, lg.diff, ctx.eta[p]);
}

double log_sum_exp(double a, double b) {
  const double m = std::max(a, b);
  if (std::isinf(m) && m < 0) return m;
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

ThermalContext make_thermal_context(const ChainSpec& spec, double beta) {
  if (beta < 0) throw Error(Errc::invalid_input, "beta must be nonnegative");
  ThermalContext ctx;
  ctx.beta = beta;
  ctx.spec = spec;
  ctx.bases[0] = diagonalize(assemble_bdg(spec, Sector::even));
  if (spec.bc == Boundary::open) {
    ctx.bases[1] = ctx.bases[0];
    ctx.bases[1].sector = Sector::odd;
  } else {
    ctx.bases[1] = diagonalize(assemble_bdg(spec, Sector::odd));
  }
  for (int p = 0; p < 2; ++p) {
    const int parity = vacuum_parity(ctx.bases[p]);
    ctx.eta[p] = p == 0 ? parity : -parity;
  }
  return ctx;
}

double log_partition_function(const ThermalContext& ctx) {
  return log_sum_exp(log_sector_trace(ctx, 0), log_sector_trace(ctx, 1));
}

double sector_weight(const ThermalContext& ctx, Sector sector) {
  const int p = parity_index(sector);
  return std::exp(log_sector_trace(ctx, p) - log_partition_function(ctx));
}

std::pair<double, double> gamma_occupation(const ThermalContext& ctx, Sector sector, int mu) {
  const int p = parity_index(sector);
  const BogoliubovBasis& b = ctx.bases[p];
  if (mu < 0 || mu >= b.L()) throw Error(Errc::invalid_input, "mode index out of range");
  const double logZ = log_partition_function(ctx);
  const Logs rest = sector_logs(ctx, p, mu);
  const double y = 2.0 * ctx.beta * b.eps(mu);
  // Tr(gamma+ gamma P_p e^{-beta H}) = e^{shift} x_mu [prod(1+x) - eta prod(1-x)] / 2
  const double base = rest.shift - std::log(2.0) - logZ;
  const double occ = std::exp(base - y + log_combine(rest.plus, rest.diff, -ctx.eta[p]));
  const double emp = std::exp(base + log_combine(rest.plus, rest.diff, ctx.eta[p]));
  return {occ, emp};
}

NambuGreen sector_green(const ThermalContext& ctx, Sector sector) {
  const int p = parity_index(sector);
  const BogoliubovBasis& b = ctx.bases[p];
  const int L = b.L();
  Vec emp(L), occ(L);
  for (int mu = 0; mu < L; ++mu) {
    const auto [o, e] = gamma_occupation(ctx, sector, mu);
    occ(mu) = o;
    emp(mu) = e;
  }
  // <Psi Psi+ P> = U_full diag(<gamma gamma+ P>, <gamma+ gamma P>) U_full+
  NambuGreen g;
  g.G = b.U * emp.cast<cplx>().asDiagonal() * b.U.adjoint() +
        b.V.conjugate() * occ.cast<cplx>().asDiagonal() * b.V.transpose();
  g.F = b.U * emp.cast<cplx>().asDiagonal() * b.V.adjoint() +
        b.V.conjugate() * occ.cast<cplx>().asDiagonal() * b.U.transpose();
  return g;
}

NambuGreen thermal_green(const ThermalContext& ctx) {
  NambuGreen g0 = sector_green(ctx, Sector::even);
  const NambuGreen g1 = sector_green(ctx, Sector::odd);
  g0.G += g1.G;
  g0.F += g1.F;
  return g0;
}

double energy_density(const ThermalContext& ctx) {
  // <H P_p> = -Tr(H_p <Psi Psi+ P_p>); the sectors have different H_p
  double e = 0.0;
  for (int p = 0; p < 2; ++p) {
    const Sector s = static_cast<Sector>(p);
    const BdGMatrix m = assemble_bdg(ctx.spec, s);
    const NambuGreen g = sector_green(ctx, s);
    const CMat N = nambu_matrix(g);
    // nambu_matrix adds the identity weight once; rescale it to <P_p>
    const double w = sector_weight(ctx, s);
    CMat Np = N;
    const int L = ctx.spec.L;
    Np.bottomRightCorner(L, L) += (w - 1.0) * CMat::Identity(L, L);
    e -= (m.full().cast<cplx>() * Np).trace().real();
  }
  return e / ctx.spec.L;
}

}  // namespace ffising
