#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <ffising/bdg.hpp>
#include <ffising/model.hpp>

namespace oracle {

using ffising::CMat;
using ffising::cplx;
using ffising::Mat;

// Pfaffian by expansion along the first row. Exponential cost; n <= 12.
template <class M>
typename M::Scalar pfaffian_expand(const M& a) {
  using S = typename M::Scalar;
  const Eigen::Index n = a.rows();
  if (n == 0) return S(1);
  if (n % 2) return S(0);
  S acc(0);
  for (Eigen::Index j = 1; j < n; ++j) {
    if (a(0, j) == S(0)) continue;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 1; k < n; ++k)
      if (k != j) keep.push_back(k);
    M sub(n - 2, n - 2);
    for (Eigen::Index r = 0; r < n - 2; ++r)
      for (Eigen::Index c = 0; c < n - 2; ++c) sub(r, c) = a(keep[r], keep[c]);
    const double sign = (j % 2) ? 1.0 : -1.0;
    acc += sign * a(0, j) * pfaffian_expand(sub);
  }
  return acc;
}

inline CMat random_antisymmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat a = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = cplx(g(rng), g(rng));
      a(j, i) = -a(i, j);
    }
  return a;
}

// Generic real BdG matrix with all-to-all A and B.
inline ffising::BdGMatrix random_bdg(int L, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ffising::BdGMatrix m;
  m.A = Mat::Zero(L, L);
  m.B = Mat::Zero(L, L);
  for (int i = 0; i < L; ++i)
    for (int j = i; j < L; ++j) {
      m.A(i, j) = m.A(j, i) = g(rng);
      if (j > i) {
        m.B(i, j) = g(rng);
        m.B(j, i) = -m.B(i, j);
      }
    }
  return m;
}

// Per-momentum two-level problem of the uniform chain:
// i d/dt (v, u) = [[z, -i y], [i y, -z]] (v, u), z = 2(h - J cos k), y = 2 kappa J sin k.
struct ModeState {
  cplx v;
  cplx u;
};

template <class HofT>
ModeState evolve_mode(ModeState s, double k, double J, double kappa, HofT h_of_t, double t0,
                      double t1, int steps) {
  const double dt = (t1 - t0) / steps;
  const cplx I(0, 1);
  auto rhs = [&](const ModeState& x, double t) {
    const double z = 2.0 * (h_of_t(t) - J * std::cos(k));
    const double y = 2.0 * kappa * J * std::sin(k);
    return ModeState{-I * (z * x.v - I * y * x.u), -I * (I * y * x.v - z * x.u)};
  };
  auto axpy = [](const ModeState& x, double a, const ModeState& d) {
    return ModeState{x.v + a * d.v, x.u + a * d.u};
  };
  double t = t0;
  for (int n = 0; n < steps; ++n) {
    const ModeState k1 = rhs(s, t);
    const ModeState k2 = rhs(axpy(s, dt / 2, k1), t + dt / 2);
    const ModeState k3 = rhs(axpy(s, dt / 2, k2), t + dt / 2);
    const ModeState k4 = rhs(axpy(s, dt, k3), t + dt);
    s.v += dt / 6 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
    s.u += dt / 6 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
    t += dt;
  }
  return s;
}

// Real-space Green functions from the mode amplitudes of an ABC-sector state
// with c_k = L^{-1/2} sum_j e^{-ikj} c_j.
inline void green_from_modes(const std::vector<double>& ks, const std::vector<ModeState>& m,
                             CMat& G, CMat& F) {
  const int L = static_cast<int>(ks.size());
  G = CMat::Zero(L, L);
  F = CMat::Zero(L, L);
  const cplx I(0, 1);
  for (int j = 0; j < L; ++j)
    for (int jp = 0; jp < L; ++jp) {
      const double d = j - jp;
      for (std::size_t q = 0; q < ks.size(); ++q) {
        const double k = ks[q];
        G(j, jp) += std::exp(I * k * d) * std::norm(m[q].u) / double(L);
        if (k > 0) F(j, jp) += -2.0 * I * std::sin(k * d) * std::conj(m[q].u) * m[q].v / double(L);
      }
    }
}

}  // namespace oracle
