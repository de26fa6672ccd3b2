#include "ffising/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ffising/error.hpp"

namespace ffising {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I1(0.0, 1.0);

// Columns [U; V] stacked.
CMat stack(const CMat& U, const CMat& V) {
  CMat X(U.rows() + V.rows(), U.cols());
  X << U, V;
  return X;
}

double unitarity_drift(const CMat& X) {
  const CMat gram = X.adjoint() * X;
  return (gram - CMat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

Schedule Schedule::constant(double tau) {
  Schedule s;
  s.shape = Shape::constant;
  s.tau = tau;
  return s;
}

Schedule Schedule::linear(double h_from, double h_to, double tau) {
  Schedule s;
  s.shape = Shape::linear;
  s.tau = tau;
  s.a = h_from;
  s.b = h_to;
  return s;
}

Schedule Schedule::cosine(double h_mean, double amplitude, double period) {
  Schedule s;
  s.shape = Shape::cosine;
  s.tau = period;
  s.a = h_mean;
  s.b = amplitude;
  return s;
}

Schedule Schedule::cosine_ramp(double h_from, double h_to, double tau) {
  Schedule s;
  s.shape = Shape::cosine_ramp;
  s.tau = tau;
  s.a = h_from;
  s.b = h_to;
  return s;
}

ChainSpec Schedule::at(const ChainSpec& base, double t) const {
  ChainSpec s = base;
  switch (shape) {
    case Shape::constant:
      break;
    case Shape::linear: {
      const double x = tau > 0 ? std::clamp(t / tau, 0.0, 1.0) : 1.0;
      std::fill(s.h.begin(), s.h.end(), a + (b - a) * x);
      break;
    }
    case Shape::cosine:
      std::fill(s.h.begin(), s.h.end(), a + b * std::cos(2 * pi * t / tau));
      break;
    case Shape::cosine_ramp: {
      const double x = tau > 0 ? std::clamp(t / tau, 0.0, 1.0) : 1.0;
      std::fill(s.h.begin(), s.h.end(), b + (a - b) * 0.5 * (1 + std::cos(pi * x)));
      break;
    }
    case Shape::custom:
      if (custom_h) s.h = custom_h(t);
      break;
  }
  if (custom_J) s.J = custom_J(t);
  s.validate();
  return s;
}

BdGPropagator::BdGPropagator(const ChainSpec& base, const Schedule& schedule, Sector sector,
                             const StepPolicy& policy)
    : base_(base), schedule_(schedule), sector_(sector), policy_(policy) {
  base_.validate();
  if (!schedule_.varies_bonds()) bonds_ = assemble_sparse(schedule_.at(base_, 0.0), sector_, false);
  const int n = 64;
  const double span = schedule_.tau > 0 ? schedule_.tau : 1.0;
  for (int i = 0; i <= n; ++i) hmax_ = std::max(hmax_, bound(span * i / n));
}

Eigen::SparseMatrix<double> BdGPropagator::hamiltonian(double t) const {
  return assemble_sparse(schedule_.at(base_, t), sector_, true);
}

double BdGPropagator::bound(double t) const {
  // infinity norm of H(t); bounds the spectral radius
  const ChainSpec s = schedule_.at(base_, t);
  const Eigen::SparseMatrix<double> B =
      schedule_.varies_bonds() ? assemble_sparse(s, sector_, false) : bonds_;
  Vec rows = Vec::Zero(B.rows());
  for (int k = 0; k < B.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(B, k); it; ++it)
      rows(it.row()) += std::abs(it.value());
  const int L = s.L;
  for (int j = 0; j < L; ++j) {
    rows(j) += std::abs(s.h[j]);
    rows(L + j) += std::abs(s.h[j]);
  }
  return rows.maxCoeff();
}

void BdGPropagator::apply(const CMat& X, CMat& Y, double t) const {
  const ChainSpec s = schedule_.at(base_, t);
  const int L = s.L;
  if (schedule_.varies_bonds()) {
    const Eigen::SparseMatrix<double> B = assemble_sparse(s, sector_, false);
    Y.noalias() = B * X;
  } else {
    Y.noalias() = bonds_ * X;
  }
  const Eigen::Map<const Vec> h(s.h.data(), L);
  Y.topRows(L) += h.asDiagonal() * X.topRows(L);
  Y.bottomRows(L) -= h.asDiagonal() * X.bottomRows(L);
}

double BdGPropagator::step_for(double t0, double t1) const {
  double dt = policy_.dt_max;
  if (policy_.stepper == Stepper::rk4) {
    if (hmax_ > 0) dt = std::min(dt, policy_.courant / (2.0 * hmax_));
  } else if (!std::isfinite(dt)) {
    dt = hmax_ > 0 ? 1.0 / hmax_ : (t1 - t0);
  }
  const double span = t1 - t0;
  if (!(span > 0)) return 0.0;
  const double n = std::max(1.0, std::ceil(span / dt - 1e-9));
  return span / n;
}

void BdGPropagator::rk4_step(CMat& X, double t, double dt) const {
  const cplx f = -2.0 * I1;
  apply(X, k1_, t);
  k1_ *= f;
  tmp_ = X + (0.5 * dt) * k1_;
  apply(tmp_, k2_, t + 0.5 * dt);
  k2_ *= f;
  tmp_ = X + (0.5 * dt) * k2_;
  apply(tmp_, k3_, t + 0.5 * dt);
  k3_ *= f;
  tmp_ = X + dt * k3_;
  apply(tmp_, k4_, t + dt);
  k4_ *= f;
  X += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
}

namespace {

using RowSparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Y = s (B + diag(d)) X - Z, optionally acc += c Y; one sweep per column
void cheb_sweep(const RowSparse& B, const Vec& d, const CMat& X, const CMat* Z, CMat& Y,
                double s, CMat* acc, cplx c) {
  const int n = static_cast<int>(B.rows());
  const int* outer = B.outerIndexPtr();
  const int* inner = B.innerIndexPtr();
  const double* val = B.valuePtr();
  Y.resize(X.rows(), X.cols());
  for (Eigen::Index col = 0; col < X.cols(); ++col) {
    const cplx* x = X.col(col).data();
    cplx* y = Y.col(col).data();
    const cplx* z = Z ? Z->col(col).data() : nullptr;
    cplx* a = acc ? acc->col(col).data() : nullptr;
    for (int r = 0; r < n; ++r) {
      cplx sum = d(r) * x[r];
      for (int p = outer[r]; p < outer[r + 1]; ++p) sum += val[p] * x[inner[p]];
      cplx v = s * sum;
      if (z) v -= z[r];
      y[r] = v;
      if (a) a[r] += c * v;
    }
  }
}

}  // namespace

void BdGPropagator::exp_step(CMat& X, double t, double dt) const {
  // exp(-2i H dt) X with H frozen at the midpoint, Chebyshev expansion in
  // H / beta where beta bounds the spectral radius
  const double tm = t + 0.5 * dt;
  const double beta = bound(tm);
  if (beta == 0.0) return;
  const double alpha = 2.0 * dt * beta;
  const double inv = 1.0 / beta;
  const ChainSpec s = schedule_.at(base_, tm);
  const int L = s.L;
  const RowSparse B = schedule_.varies_bonds() ? assemble_sparse(s, sector_, false) : bonds_;
  Vec d(2 * L);
  for (int j = 0; j < L; ++j) {
    d(j) = s.h[j];
    d(L + j) = -s.h[j];
  }
  CMat& T0 = k1_;
  CMat& T1 = k2_;
  CMat& T2 = k3_;
  CMat& acc = k4_;
  T0 = X;
  acc = std::cyl_bessel_j(0.0, alpha) * T0;
  cheb_sweep(B, d, T0, nullptr, T1, inv, &acc, 2.0 * cplx(0, -1) * std::cyl_bessel_j(1.0, alpha));
  cplx phase(0, -1);
  for (int k = 2; k < 100000; ++k) {
    const double jk = std::cyl_bessel_j(static_cast<double>(k), alpha);
    phase *= cplx(0, -1);
    cheb_sweep(B, d, T1, &T0, T2, 2.0 * inv, &acc, (2.0 * jk) * phase);
    std::swap(T0, T1);
    std::swap(T1, T2);
    if (k > alpha && std::abs(jk) < 1e-17) break;
  }
  X = acc;
}

void BdGPropagator::advance(CMat& X, double t0, double t1) const {
  const double dt = step_for(t0, t1);
  if (dt == 0.0) return;
  const int n = static_cast<int>(std::llround((t1 - t0) / dt));
  for (int i = 0; i < n; ++i) {
    const double t = t0 + i * dt;
    if (policy_.stepper == Stepper::rk4)
      rk4_step(X, t, dt);
    else
      exp_step(X, t, dt);
    ++steps_;
  }
}

std::vector<Snapshot> propagate(const BogoliubovBasis& b0, const ChainSpec& spec,
                                const Schedule& schedule, const std::vector<double>& t_grid,
                                const StepPolicy& policy) {
  if (t_grid.empty()) return {};
  if (t_grid.front() != 0.0) throw Error(Errc::invalid_input, "time grid must start at 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw Error(Errc::invalid_input, "time grid must be strictly increasing");
  BdGPropagator prop(spec, schedule, b0.sector, policy);
  CMat X = stack(b0.U, b0.V);
  {
    const Eigen::SparseMatrix<double> H0 = prop.hamiltonian(0.0);
    const CMat R = H0 * X - X * b0.eps.cast<cplx>().asDiagonal();
    double hn = 0.0;
    for (int k = 0; k < H0.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(H0, k); it; ++it)
        hn = std::max(hn, std::abs(it.value()));
    if (R.cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, hn))
      throw Error(Errc::invalid_input, "initial basis does not diagonalize H(0)");
  }
  const int L = b0.L();
  std::vector<Snapshot> out;
  out.reserve(t_grid.size());
  double t = 0.0;
  for (double ti : t_grid) {
    prop.advance(X, t, ti);
    t = ti;
    Snapshot s;
    s.t = ti;
    s.U = X.topRows(L);
    s.V = X.bottomRows(L);
    s.drift = unitarity_drift(X);
    if (s.drift > policy.drift_limit)
      throw Error(Errc::step_size, "unitarity drift " + std::to_string(s.drift) +
                                       " exceeds limit; halve dt");
    out.push_back(std::move(s));
  }
  return out;
}

NambuGreen green_functions(const CMat& U, const CMat& V, double t) {
  NambuGreen g;
  g.G = U * U.adjoint();
  g.F = U * V.adjoint();
  g.t = t;
  return g;
}

CMat nambu_matrix(const NambuGreen& g) {
  const int L = g.L();
  CMat N(2 * L, 2 * L);
  N << g.G, g.F, g.F.adjoint(), CMat::Identity(L, L) - g.G.transpose();
  return N;
}

MajoranaCorrelation majorana_correlation(const NambuGreen& g) {
  const int L = g.L();
  const CMat& G = g.G;
  const CMat& F = g.F;
  const CMat Id = CMat::Identity(L, L);
  const CMat Fd = F.adjoint();
  const CMat Gt = G.transpose();
  CMat M(2 * L, 2 * L);
  M.topLeftCorner(L, L) = G + F + Fd + Id - Gt;
  M.topRightCorner(L, L) = I1 * (G + Fd) - I1 * (F + Id - Gt);
  M.bottomLeftCorner(L, L) = -I1 * G + I1 * Fd - I1 * F + I1 * (Id - Gt);
  M.bottomRightCorner(L, L) = G - Fd - F + Id - Gt;
  const CMat A = -I1 * (M - CMat::Identity(2 * L, 2 * L));
  const double residue = A.imag().cwiseAbs().maxCoeff();
  if (residue > 1e-8)
    throw Error(Errc::inconsistent_green,
                "Majorana matrix has imaginary residue " + std::to_string(residue));
  MajoranaCorrelation mc;
  mc.A = 0.5 * (A.real() - A.real().transpose());
  mc.t = g.t;
  return mc;
}

std::complex<double> contract_AA(const NambuGreen& g, int i, int j) {
  const double d = i == j ? 1.0 : 0.0;
  return std::conj(g.F(j, i)) + d - g.G(j, i) + g.G(i, j) + g.F(i, j);
}

std::complex<double> contract_BB(const NambuGreen& g, int i, int j) {
  const double d = i == j ? 1.0 : 0.0;
  return std::conj(g.F(j, i)) - d + g.G(j, i) - g.G(i, j) + g.F(i, j);
}

std::complex<double> contract_AB(const NambuGreen& g, int i, int j) {
  const double d = i == j ? 1.0 : 0.0;
  return std::conj(g.F(j, i)) - d + g.G(j, i) + g.G(i, j) - g.F(i, j);
}

std::complex<double> contract_BA(const NambuGreen& g, int i, int j) {
  const double d = i == j ? 1.0 : 0.0;
  return std::conj(g.F(j, i)) + d - g.G(j, i) - g.G(i, j) - g.F(i, j);
}

namespace {

// <B_i A_j> straight from the rows of U and V
cplx bond_BA(const CMat& U, const CMat& V, int i, int j) {
  const cplx Gij = U.row(j).dot(U.row(i));  // dot conjugates the first argument
  const cplx Gji = U.row(i).dot(U.row(j));
  const cplx Fij = V.row(j).dot(U.row(i));
  const cplx Fji = V.row(i).dot(U.row(j));
  return std::conj(Fji) + (i == j ? 1.0 : 0.0) - Gji - Gij - Fij;
}

double wrap_sign(Sector sector) { return sector == Sector::even ? -1.0 : 1.0; }

double density_from(const ChainSpec& spec, Sector sector,
                    const std::function<cplx(int, int)>& ba) {
  const int L = spec.L;
  double sum = 0.0;
  for (int j = 0; j + 1 < L; ++j) sum += 1.0 - ba(j, j + 1).real();
  if (spec.bc == Boundary::periodic) {
    sum += 1.0 - wrap_sign(sector) * ba(L - 1, 0).real();
    return sum / (2.0 * L);
  }
  return sum / (2.0 * (L - 1));
}

}  // namespace

double bond_xx(const NambuGreen& g, const ChainSpec& spec, Sector sector, int j) {
  const int L = spec.L;
  if (j < 0 || j >= L) throw Error(Errc::invalid_input, "bond index out of range");
  if (j + 1 < L) return contract_BA(g, j, j + 1).real();
  if (spec.bc == Boundary::open) return 0.0;
  return wrap_sign(sector) * contract_BA(g, L - 1, 0).real();
}

double defect_density(const NambuGreen& g, const ChainSpec& spec, Sector sector) {
  return density_from(spec, sector, [&](int i, int j) { return contract_BA(g, i, j); });
}

double quadratic_energy(const Eigen::SparseMatrix<double>& H, const CMat& U, const CMat& V) {
  const CMat X = stack(U, V);
  const CMat HX = H * X;
  return -(X.adjoint() * HX).trace().real();
}

Trajectory anneal(const ChainSpec& spec, const Schedule& schedule, const AnnealOptions& opt) {
  const ChainSpec s0 = schedule.at(spec, 0.0);
  const BogoliubovBasis b0 = diagonalize(assemble_bdg(s0, opt.sector));
  BdGPropagator prop(spec, schedule, opt.sector, opt.policy);
  const int L = spec.L;

  std::vector<double> times;
  const int n = std::max(1, opt.samples);
  if (n == 1) {
    times.push_back(schedule.tau);
  } else {
    for (int i = 0; i < n; ++i) times.push_back(schedule.tau * i / (n - 1));
  }
  for (double ts : opt.snapshot_times) times.push_back(std::clamp(ts, 0.0, schedule.tau));
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  Trajectory tr;
  CMat X = stack(b0.U, b0.V);
  double t = 0.0;
  for (double ti : times) {
    prop.advance(X, t, ti);
    t = ti;
    const CMat U = X.topRows(L);
    const CMat V = X.bottomRows(L);
    const double drift = unitarity_drift(X);
    tr.max_drift = std::max(tr.max_drift, drift);
    if (drift > opt.policy.drift_limit)
      throw Error(Errc::step_size, "unitarity drift " + std::to_string(drift) +
                                       " exceeds limit; halve dt");
    const ChainSpec st = schedule.at(spec, ti);
    tr.t.push_back(ti);
    tr.rho.push_back(density_from(st, opt.sector, [&](int i, int j) { return bond_BA(U, V, i, j); }));
    tr.energy.push_back(quadratic_energy(assemble_sparse(st, opt.sector), U, V));
    for (double ts : opt.snapshot_times)
      if (std::clamp(ts, 0.0, schedule.tau) == ti) {
        tr.snapshots.push_back(green_functions(U, V, ti));
        break;
      }
  }
  tr.steps = prop.steps_taken();
  return tr;
}

}  // namespace ffising
