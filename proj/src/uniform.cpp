#include "ffising/uniform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ffising/error.hpp"

namespace ffising {

namespace {

constexpr double pi = std::numbers::pi;

void require_even(int L) {
  if (L < 2 || L % 2 != 0) throw Error(Errc::unsupported_size, "k grids need an even L >= 2");
}

void require_positive_J(double J) {
  if (!(J > 0)) throw Error(Errc::invalid_input, "uniform analytics need J > 0");
}

}  // namespace

KGrid k_grid(int L, Sector sector) {
  require_even(L);
  KGrid g;
  g.sector = sector;
  g.ks.reserve(L);
  if (sector == Sector::odd) {
    for (int n = -L / 2 + 1; n <= L / 2; ++n) g.ks.push_back(2.0 * n * pi / L);
  } else {
    for (int n = 1; n <= L / 2; ++n) {
      g.ks.push_back((2.0 * n - 1) * pi / L);
      g.ks.push_back(-(2.0 * n - 1) * pi / L);
    }
  }
  std::sort(g.ks.begin(), g.ks.end());
  return g;
}

double epsilon_k(double k, double J, double h, double kappa) {
  require_positive_J(J);
  const double z = std::cos(k) - h / J;
  const double y = kappa * std::sin(k);
  return 2.0 * J * std::sqrt(z * z + y * y);
}

std::pair<std::complex<double>, std::complex<double>> amplitudes(double k, double J, double h,
                                                                 double kappa) {
  const double eps = epsilon_k(k, J, h, kappa);
  if (!(eps > 0)) throw Error(Errc::degenerate_point, "eps_k = 0, amplitudes undefined");
  const double z = 2.0 * (h - J * std::cos(k));
  const double y = 2.0 * kappa * J * std::sin(k);
  if (z >= 0) {
    const double norm = std::sqrt(2.0 * eps * (eps + z));
    return {std::complex<double>((eps + z) / norm, 0.0), std::complex<double>(0.0, y / norm)};
  }
  // eps + z cancels when z < 0; use (eps + z)(eps - z) = y^2 instead
  const double w = std::sqrt(eps - z);
  const double s = std::sqrt(2.0 * eps);
  return {std::complex<double>(std::abs(y) / (w * s), 0.0),
          std::complex<double>(0.0, (y >= 0 ? 1.0 : -1.0) * w / s)};
}

double sector_ground_energy(int L, double J, double h, double kappa, Sector sector) {
  require_even(L);
  const KGrid g = k_grid(L, sector);
  double e = 0.0;
  if (sector == Sector::even) {
    for (double k : g.ks)
      if (k > 0) e -= epsilon_k(k, J, h, kappa);
  } else {
    // the unpaired k = 0 and k = pi modes give -2J for odd parity
    e = -2.0 * J;
    for (double k : g.ks)
      if (k > 0 && k < pi - 1e-12) e -= epsilon_k(k, J, h, kappa);
  }
  return e;
}

double sector_gap(int L, double J, double h, double kappa) {
  return sector_ground_energy(L, J, h, kappa, Sector::odd) -
         sector_ground_energy(L, J, h, kappa, Sector::even);
}

int winding_index(double J, double h, double kappa) {
  require_positive_J(J);
  if (kappa == 0.0) throw Error(Errc::degenerate_ellipse, "kappa = 0 collapses the curve");
  const int n = kWindingSamples;
  double total = 0.0;
  double rmin = INFINITY;
  double prev = 0.0;
  for (int s = 0; s <= n; ++s) {
    const double k = 2.0 * pi * s / n;
    const double y = 2.0 * kappa * J * std::sin(k);
    const double z = 2.0 * (h - J * std::cos(k));
    rmin = std::min(rmin, std::hypot(y, z));
    const double a = std::atan2(z, y);
    if (s > 0) {
      double d = a - prev;
      while (d > pi) d -= 2 * pi;
      while (d <= -pi) d += 2 * pi;
      total += d;
    }
    prev = a;
  }
  if (rmin < 1e-8 * 2.0 * J)
    throw Error(Errc::undefined_index, "curve passes through the origin (|h| = J)");
  return static_cast<int>(std::lround(total / (2 * pi)));
}

}  // namespace ffising
