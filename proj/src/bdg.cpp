#include "ffising/bdg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "ffising/error.hpp"

namespace ffising {

namespace {

void check_structure(const BdGMatrix& m) {
  const double scale = 1.0 + std::max(m.A.cwiseAbs().maxCoeff(), m.B.cwiseAbs().maxCoeff());
  if (m.A.rows() != m.A.cols() || m.B.rows() != m.A.rows() || m.B.cols() != m.A.cols())
    throw Error(Errc::invalid_input, "A and B must be square and of equal size");
  if ((m.A - m.A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error(Errc::invalid_input, "A is not symmetric");
  if ((m.B + m.B.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error(Errc::invalid_input, "B is not antisymmetric");
}

// Columns of X are (u; v). Returns [X, S X].
Mat with_partners(const Mat& X) {
  const Eigen::Index L = X.cols();
  Mat W(2 * L, 2 * L);
  W.leftCols(L) = X;
  W.block(0, L, L, L) = X.bottomRows(L);
  W.block(L, L, L, L) = X.topRows(L);
  return W;
}

// Splits an orthonormal kernel basis into swap-even and swap-odd vectors and
// recombines them into (u; v) columns whose partners (v; u) span the rest.
Mat canonical_kernel_columns(const Mat& K) {
  const Eigen::Index L2 = K.rows();
  const Eigen::Index L = L2 / 2;
  const Eigen::Index z = K.cols();
  if (z % 2 != 0) throw Error(Errc::kernel_parity, "odd-dimensional numerical kernel");
  Mat SK(L2, z);
  SK.topRows(L) = K.bottomRows(L);
  SK.bottomRows(L) = K.topRows(L);
  const Mat restricted = K.transpose() * SK;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (restricted + restricted.transpose()));
  std::vector<Eigen::Index> even, odd;
  for (Eigen::Index i = 0; i < z; ++i) {
    const double s = es.eigenvalues()(i);
    if (std::abs(std::abs(s) - 1.0) > 1e-6)
      throw Error(Errc::kernel_parity, "kernel is not invariant under the swap (threshold too large?)");
    (s > 0 ? even : odd).push_back(i);
  }
  if (even.size() != odd.size())
    throw Error(Errc::kernel_parity, "unequal swap-even and swap-odd kernel dimensions");
  Mat out(L2, z / 2);
  for (std::size_t i = 0; i < even.size(); ++i) {
    const Vec e = K * es.eigenvectors().col(even[i]);
    const Vec o = K * es.eigenvectors().col(odd[i]);
    out.col(i) = (e + o) / std::sqrt(2.0);
  }
  return out;
}

// Symmetric orthonormalization of [X, S X]; it commutes with the column swap
// so the particle-hole structure survives.
void polish(Mat& X) {
  const Mat W = with_partners(X);
  const Mat gram = W.transpose() * W;
  const double dev = (gram - Mat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (dev < 1e-14) return;
  Eigen::SelfAdjointEigenSolver<Mat> es(gram);
  const Mat inv_sqrt = es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                       es.eigenvectors().transpose();
  X = (W * inv_sqrt).leftCols(X.cols());
}

BogoliubovBasis from_real(const Mat& X, const Vec& eps, Sector sector) {
  const Eigen::Index L = X.cols();
  BogoliubovBasis b;
  b.U = X.topRows(L).cast<cplx>();
  b.V = X.bottomRows(L).cast<cplx>();
  b.eps = eps;
  b.sector = sector;
  return b;
}

}  // namespace

CMat BogoliubovBasis::unitary() const {
  const int n = L();
  CMat W(2 * n, 2 * n);
  W << U, V.conjugate(), V, U.conjugate();
  return W;
}

BogoliubovBasis diagonalize(const BdGMatrix& m) {
  check_structure(m);
  const int L = m.L();
  const Mat H = m.full();
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  if (es.info() != Eigen::Success) throw Error(Errc::invalid_input, "eigensolver failed");
  const Vec& lam = es.eigenvalues();
  const double norm = std::max(std::abs(lam(0)), std::abs(lam(2 * L - 1)));
  const double thr = kZeroModeFactor * std::max(1.0, norm);

  std::vector<Eigen::Index> kernel, positive;
  for (Eigen::Index i = 0; i < 2 * L; ++i) {
    if (std::abs(lam(i)) < thr)
      kernel.push_back(i);
    else if (lam(i) > 0)
      positive.push_back(i);
  }
  if (kernel.size() % 2 != 0) throw Error(Errc::kernel_parity, "odd-dimensional numerical kernel");
  if (positive.size() + kernel.size() / 2 != static_cast<std::size_t>(L))
    throw Error(Errc::particle_hole_violation, "spectrum is not +/- paired");

  Mat X(2 * L, L);
  Vec eps(L);
  Eigen::Index col = 0;
  if (!kernel.empty()) {
    Mat K(2 * L, kernel.size());
    for (std::size_t i = 0; i < kernel.size(); ++i) K.col(i) = es.eigenvectors().col(kernel[i]);
    const Mat Z = canonical_kernel_columns(K);
    X.leftCols(Z.cols()) = Z;
    eps.head(Z.cols()).setZero();
    col = Z.cols();
  }
  for (Eigen::Index i : positive) {
    X.col(col) = es.eigenvectors().col(i);
    eps(col) = lam(i);
    ++col;
  }

  // degenerate positive blocks: re-orthonormalize within the block
  for (Eigen::Index a = 0; a < L;) {
    Eigen::Index b = a + 1;
    while (b < L && eps(b) - eps(a) < 1e-10 * std::max(1.0, norm)) ++b;
    if (b - a > 1 && eps(a) > 0) {
      Eigen::HouseholderQR<Mat> qr(X.middleCols(a, b - a));
      X.middleCols(a, b - a) = qr.householderQ() * Mat::Identity(2 * L, b - a);
    }
    a = b;
  }
  polish(X);
  return from_real(X, eps, m.sector);
}

BogoliubovBasis canonicalize_zero_modes(const BogoliubovBasis& basis, const Mat& kernel,
                                        double ker_threshold) {
  const int L = basis.L();
  std::vector<Eigen::Index> nonzero;
  for (Eigen::Index i = 0; i < L; ++i)
    if (basis.eps(i) >= ker_threshold) nonzero.push_back(i);
  if (kernel.cols() == 0) {
    if (nonzero.size() != static_cast<std::size_t>(L))
      throw Error(Errc::kernel_parity, "modes below threshold but empty kernel supplied");
    return basis;
  }
  if (nonzero.size() + kernel.cols() / 2 != static_cast<std::size_t>(L) || kernel.cols() % 2)
    throw Error(Errc::kernel_parity, "kernel dimension does not match the modes below threshold");
  const Mat Z = canonical_kernel_columns(kernel);
  if (basis.U.imag().cwiseAbs().maxCoeff() > 0 || basis.V.imag().cwiseAbs().maxCoeff() > 0)
    throw Error(Errc::invalid_input, "zero-mode canonicalization needs a real basis");
  Mat X(2 * L, L);
  Vec eps(L);
  X.leftCols(Z.cols()) = Z;
  eps.head(Z.cols()).setZero();
  Eigen::Index col = Z.cols();
  for (Eigen::Index i : nonzero) {
    X.col(col).head(L) = basis.U.col(i).real();
    X.col(col).tail(L) = basis.V.col(i).real();
    eps(col) = basis.eps(i);
    ++col;
  }
  polish(X);
  return from_real(X, eps, basis.sector);
}

BogoliubovBasis canonicalize_zero_modes(const BogoliubovBasis& basis, double ker_threshold) {
  const int L = basis.L();
  std::vector<Eigen::Index> zero;
  for (Eigen::Index i = 0; i < L; ++i)
    if (basis.eps(i) < ker_threshold) zero.push_back(i);
  if (zero.empty()) return basis;
  // a genuine kernel pairs eps with -eps, so its modes must be numerically zero
  const double tol = kZeroModeFactor * std::max(1.0, basis.eps.cwiseAbs().maxCoeff());
  for (Eigen::Index i : zero)
    if (std::abs(basis.eps(i)) > tol)
      throw Error(Errc::kernel_parity, "threshold admits a mode with nonzero energy");
  const CMat W = basis.unitary();
  Mat K(2 * L, 2 * zero.size());
  for (std::size_t i = 0; i < zero.size(); ++i) {
    K.col(2 * i) = W.col(zero[i]).real();
    K.col(2 * i + 1) = W.col(L + zero[i]).real();
  }
  // orthonormal basis of the span
  Eigen::HouseholderQR<Mat> qr(K);
  K = qr.householderQ() * Mat::Identity(2 * L, K.cols());
  return canonicalize_zero_modes(basis, K, ker_threshold);
}

double canonical_defect(const CMat& U, const CMat& V) {
  const Eigen::Index L = U.rows();
  const CMat I = CMat::Identity(L, L);
  double d = (U.adjoint() * U + V.adjoint() * V - I).cwiseAbs().maxCoeff();
  d = std::max(d, (V.transpose() * U + U.transpose() * V).cwiseAbs().maxCoeff());
  d = std::max(d, (U * U.adjoint() + V.conjugate() * V.transpose() - I).cwiseAbs().maxCoeff());
  d = std::max(d, (U * V.adjoint() + V.conjugate() * U.transpose()).cwiseAbs().maxCoeff());
  return d;
}

double reconstruction_residual(const BdGMatrix& m, const BogoliubovBasis& b) {
  const int L = m.L();
  const Mat H = m.full();
  const CMat W = b.unitary();
  Vec d(2 * L);
  d << b.eps, -b.eps;
  const CMat R = H.cast<cplx>() - W * d.cast<cplx>().asDiagonal() * W.adjoint();
  return R.norm() / std::max(1.0, H.norm());
}

BogoliubovBasis excite(const BogoliubovBasis& b, const std::vector<int>& occ) {
  BogoliubovBasis out = b;
  for (int mu : occ) {
    if (mu < 0 || mu >= b.L()) throw Error(Errc::invalid_input, "mode index out of range");
    out.U.col(mu) = b.V.col(mu).conjugate();
    out.V.col(mu) = b.U.col(mu).conjugate();
    out.eps(mu) = -b.eps(mu);
  }
  return out;
}

BogoliubovBasis bare_vacuum(int L) {
  BogoliubovBasis b;
  b.U = CMat::Identity(L, L);
  b.V = CMat::Zero(L, L);
  b.eps = Vec::Zero(L);
  return b;
}

std::vector<double> ipr(const BogoliubovBasis& b) {
  std::vector<double> out(b.L());
  for (int mu = 0; mu < b.L(); ++mu) {
    const Vec w = b.U.col(mu).cwiseAbs2() + b.V.col(mu).cwiseAbs2();
    out[mu] = w.squaredNorm();
  }
  return out;
}

int localization_center(const BogoliubovBasis& b, int mu) {
  const Vec w = b.U.col(mu).cwiseAbs2() + b.V.col(mu).cwiseAbs2();
  Eigen::Index j;
  w.maxCoeff(&j);
  return static_cast<int>(j);
}

double envelope_slope(const BogoliubovBasis& b, int mu, double floor) {
  const int L = b.L();
  const int l = localization_center(b, mu);
  const Vec w = b.U.col(mu).cwiseAbs2() + b.V.col(mu).cwiseAbs2();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int j = 0; j < L; ++j) {
    if (!(w(j) > floor)) continue;
    const double x = std::abs(j - l);
    const double y = 0.5 * std::log(w(j));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double den = n * sxx - sx * sx;
  if (n < 2 || den == 0) return 0.0;
  return (n * sxy - sx * sy) / den;
}

double obc_majorana_gap(const ChainSpec& spec) {
  if (spec.bc != Boundary::open) throw Error(Errc::invalid_input, "needs an open chain");
  return diagonalize(assemble_bdg(spec, Sector::even)).eps.minCoeff();
}

ImpurityBoundStates impurity_bound_states(int L, double J, double h, double h_imp) {
  if (!(J > 0) || h == 0.0 || !std::isfinite(h_imp) || std::abs(std::abs(h) - J) < 1e-12 * J)
    throw Error(Errc::invalid_input, "needs J > 0, h != 0, finite h_imp and |h| != J");
  ChainSpec s = make_uniform(L, J, 1.0, h, Boundary::periodic);
  s.h[L / 2] -= h_imp;
  const Eigen::SelfAdjointEigenSolver<Mat> es(assemble_bdg(s, Sector::even).full(),
                                              Eigen::EigenvaluesOnly);
  const Vec e = 2.0 * es.eigenvalues().tail(L);
  const double lo = 2 * std::abs(J - h), hi = 2 * std::abs(J + h);
  const double tol = 1e-12 * (1 + hi);
  ImpurityBoundStates r;
  int below = 0, above = 0;
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    if (e(i) < lo - tol) r.lower = e(i), ++below;
    if (e(i) > hi + tol) r.upper = e(i), ++above;
  }
  if (below != 1 || above != 1)
    throw Error(Errc::no_bound_state, "found " + std::to_string(below) + " states below and " +
                                          std::to_string(above) + " above the continuum");
  const double x = (h_imp / J) * (h_imp / J);
  r.lower_shift = r.lower - lo;
  r.upper_shift = r.upper - hi;
  r.lower_formula = -h * J / std::abs(J - h) * x;
  r.upper_formula = h * J / std::abs(J + h) * x;
  r.lower_dev = std::abs(r.lower_shift - r.lower_formula) / std::abs(r.lower_formula);
  r.upper_dev = std::abs(r.upper_shift - r.upper_formula) / std::abs(r.upper_formula);
  r.lower_mass_formula = -std::abs(J - h) / (h * J) * h_imp * h_imp;
  r.upper_mass_formula = std::abs(J + h) / (h * J) * h_imp * h_imp;
  return r;
}

}  // namespace ffising
