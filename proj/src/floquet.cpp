#include "ffising/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ffising/error.hpp"
#include "ffising/gaussian.hpp"

namespace ffising {

namespace {

constexpr double kPi = std::numbers::pi;

// Fold an angle into (-pi, pi].
double fold(double phi) {
  double r = std::remainder(phi, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double circ_dist(double a, double b) { return std::abs(fold(a - b)); }

// Particle-hole conjugate (v*, u*) of a Nambu vector (u, v).
CVec conjugate(const CVec& x) {
  const Eigen::Index L = x.size() / 2;
  CVec y(x.size());
  y.head(L) = x.tail(L).conjugate();
  y.tail(L) = x.head(L).conjugate();
  return y;
}

// Orthonormal basis of the C-real vectors (a, a*) of a conjugation-invariant
// subspace, as complex Nambu vectors.
CMat conjugation_real_basis(const CMat& E) {
  const Eigen::Index L = E.rows() / 2;
  const Eigen::Index d = E.cols();
  Mat R(2 * L, 2 * d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const CVec e = E.col(k);
    const CVec c = conjugate(e);
    const CVec r1 = e + c;
    const CVec r2 = cplx(0, 1) * (e - c);
    R.col(2 * k) << r1.head(L).real(), r1.head(L).imag();
    R.col(2 * k + 1) << r2.head(L).real(), r2.head(L).imag();
  }
  Eigen::JacobiSVD<Mat> svd(R, Eigen::ComputeThinU);
  CMat out(2 * L, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const Vec q = svd.matrixU().col(k);
    CVec a(L);
    for (Eigen::Index j = 0; j < L; ++j) a(j) = cplx(q(j), q(L + j));
    out.col(k) << a, a.conjugate();
    out.col(k).normalize();
  }
  return out;
}

ChainSpec spec_at(const Schedule& s, const ChainSpec& base, double t) { return s.at(base, t); }

}  // namespace

CMat monodromy(const ChainSpec& spec, const Schedule& schedule, double tau,
               const FloquetOptions& opt) {
  if (!(tau > 0)) throw Error(Errc::invalid_input, "period must be positive");
  if (opt.samples < 1) throw Error(Errc::invalid_input, "need at least one sample per period");
  const Eigen::SparseMatrix<double> H0 =
      assemble_sparse(spec_at(schedule, spec, opt.t0), opt.sector);
  const Eigen::SparseMatrix<double> H1 =
      assemble_sparse(spec_at(schedule, spec, opt.t0 + tau), opt.sector);
  const Eigen::SparseMatrix<double> D = H0 - H1;
  double mismatch = 0.0;
  for (int k = 0; k < D.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(D, k); it; ++it)
      mismatch = std::max(mismatch, std::abs(it.value()));
  if (mismatch > 1e-12)
    throw Error(Errc::invalid_schedule, "H(t0) and H(t0 + tau) differ");

  const BdGPropagator prop(spec, schedule, opt.sector, opt.policy);
  const int n2 = 2 * spec.L;
  CMat X = CMat::Identity(n2, n2);
  for (int k = 0; k < opt.samples; ++k)
    prop.advance(X, opt.t0 + tau * k / opt.samples, opt.t0 + tau * (k + 1) / opt.samples);
  return X;
}

FloquetSpectrum quasi_energies(const CMat& M, double tau, double cluster_tol) {
  if (M.rows() != M.cols() || M.rows() % 2 != 0)
    throw Error(Errc::invalid_dimension, "monodromy must be 2L x 2L");
  const Eigen::Index n2 = M.rows();
  const Eigen::Index L = n2 / 2;
  FloquetSpectrum fs;
  fs.tau = tau;
  fs.unitarity_defect = (M.adjoint() * M - CMat::Identity(n2, n2)).cwiseAbs().maxCoeff();

  Eigen::ComplexSchur<CMat> schur(M);
  const CMat& Z = schur.matrixU();
  const CMat& T = schur.matrixT();
  // eigenphases phi = -q tau
  std::vector<double> phi(n2);
  for (Eigen::Index k = 0; k < n2; ++k) phi[k] = std::arg(T(k, k));

  for (Eigen::Index a = 0; a < n2; ++a) {
    double best = INFINITY;
    for (Eigen::Index b = 0; b < n2; ++b) best = std::min(best, circ_dist(phi[a], -phi[b]));
    fs.pairing_defect = std::max(fs.pairing_defect, best);
  }
  if (fs.pairing_defect > 1e-8)
    throw Error(Errc::particle_hole_violation, "eigenphases are not paired");

  // clusters of near-degenerate phases, on the circle
  std::vector<Eigen::Index> order(n2);
  for (Eigen::Index k = 0; k < n2; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return phi[x] < phi[y]; });
  std::vector<std::vector<Eigen::Index>> clusters;
  for (Eigen::Index k = 0; k < n2; ++k) {
    if (k > 0 && circ_dist(phi[order[k]], phi[order[k - 1]]) <= cluster_tol)
      clusters.back().push_back(order[k]);
    else
      clusters.push_back({order[k]});
  }
  if (clusters.size() > 1 &&
      circ_dist(phi[clusters.front().front()], phi[clusters.back().back()]) <= cluster_tol) {
    clusters.front().insert(clusters.front().end(), clusters.back().begin(), clusters.back().end());
    clusters.pop_back();
  }

  std::vector<std::pair<double, CVec>> modes;
  auto column_phase = [&](const CVec& w) { return std::arg(w.dot(M * w)); };
  for (const auto& c : clusters) {
    double mean = 0.0;
    cplx acc = 0.0;
    for (auto k : c) acc += std::polar(1.0, phi[k]);
    mean = std::arg(acc);
    const bool self_conjugate = circ_dist(mean, -mean) <= cluster_tol * 2;
    if (self_conjugate) {
      if (c.size() % 2 != 0)
        throw Error(Errc::particle_hole_violation, "odd self-conjugate eigenphase cluster");
      CMat E(n2, c.size());
      for (std::size_t k = 0; k < c.size(); ++k) E.col(k) = Z.col(c[k]);
      const CMat R = conjugation_real_basis(E);
      for (Eigen::Index k = 0; k + 1 < R.cols(); k += 2) {
        const CVec w = (R.col(k) + cplx(0, 1) * R.col(k + 1)) / std::sqrt(2.0);
        modes.emplace_back(std::abs(column_phase(w)), w);
      }
    } else if (mean < 0) {
      // phi < 0 <=> q > 0
      CMat E(n2, c.size());
      for (std::size_t k = 0; k < c.size(); ++k) E.col(k) = Z.col(c[k]);
      const CMat Q = Eigen::HouseholderQR<CMat>(E).householderQ() * CMat::Identity(n2, c.size());
      for (Eigen::Index k = 0; k < Q.cols(); ++k) modes.emplace_back(-column_phase(Q.col(k)), Q.col(k));
    }
  }
  if (static_cast<Eigen::Index>(modes.size()) != L)
    throw Error(Errc::particle_hole_violation, "eigenphase clusters are not paired");
  std::stable_sort(modes.begin(), modes.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  fs.quasi.resize(L);
  fs.U.resize(L, L);
  fs.V.resize(L, L);
  for (Eigen::Index mu = 0; mu < L; ++mu) {
    fs.quasi(mu) = modes[mu].first / tau;
    fs.U.col(mu) = modes[mu].second.head(L);
    fs.V.col(mu) = modes[mu].second.tail(L);
  }
  return fs;
}

void sample_modes(FloquetSpectrum& fs, const ChainSpec& spec, const Schedule& schedule,
                  const FloquetOptions& opt) {
  const int L = spec.L;
  const BdGPropagator prop(spec, schedule, opt.sector, opt.policy);
  CMat X(2 * L, L);
  X << fs.U, fs.V;
  fs.t.clear();
  fs.UP.clear();
  fs.VP.clear();
  auto record = [&](double t) {
    const CVec ph = (cplx(0, 1) * fs.quasi.cast<cplx>() * (t - fs.t0)).array().exp().matrix();
    fs.t.push_back(t);
    fs.UP.push_back(X.topRows(L) * ph.asDiagonal());
    fs.VP.push_back(X.bottomRows(L) * ph.asDiagonal());
  };
  record(fs.t0);
  for (int k = 0; k < opt.samples; ++k) {
    const double ta = fs.t0 + fs.tau * k / opt.samples;
    const double tb = fs.t0 + fs.tau * (k + 1) / opt.samples;
    prop.advance(X, ta, tb);
    record(tb);
  }
}

FloquetSpectrum floquet_analysis(const ChainSpec& spec, const Schedule& schedule, double tau,
                                 const FloquetOptions& opt) {
  FloquetSpectrum fs = quasi_energies(monodromy(spec, schedule, tau, opt), tau, opt.cluster_tol);
  fs.t0 = opt.t0;
  sample_modes(fs, spec, schedule, opt);
  return fs;
}

double vacuum_periodicity_residual(const FloquetSpectrum& fs, PhaseStrip strip) {
  if (fs.UP.size() < 2) throw Error(Errc::invalid_input, "modes are not sampled");
  auto thouless_of = [](const CMat& U, const CMat& V) {
    Eigen::JacobiSVD<CMat> svd(U);
    const Vec s = svd.singularValues();
    if (s(s.size() - 1) <= 0 || s(0) / s(s.size() - 1) > kMaxThoulessCondition)
      throw Error(Errc::orthogonal_vacuum, "U_P is singular");
    const CMat Ud = U.adjoint();
    return CMat(-Ud.partialPivLu().solve(V.adjoint()));
  };
  const CMat Z0 = thouless_of(fs.UP.front(), fs.VP.front());
  CMat U1 = fs.UP.back();
  CMat V1 = fs.VP.back();
  if (strip == PhaseStrip::u_only) {
    const CVec ph = (cplx(0, -1) * fs.quasi.cast<cplx>() * fs.tau).array().exp().matrix();
    V1 = V1 * ph.asDiagonal();
  }
  const CMat Z1 = thouless_of(U1, V1);
  return (Z1 - Z0).norm() / std::max(1.0, Z0.norm());
}

double many_body_quasi_energy(const FloquetSpectrum& fs, const std::vector<int>& occupied) {
  double e = 0.0;
  for (int mu : occupied) {
    if (mu < 0 || mu >= fs.quasi.size()) throw Error(Errc::invalid_input, "mode index out of range");
    e += fs.quasi(mu);
  }
  return e;
}

}  // namespace ffising
