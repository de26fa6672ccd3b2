#include "ffising/gaussian.hpp"

#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "ffising/error.hpp"

namespace ffising {

namespace {

PairingMatrix pairing_from(const CMat& U, const CMat& V) {
  Eigen::JacobiSVD<CMat> svd(U);
  const auto& s = svd.singularValues();
  if (s.size() > 0 && !(s(s.size() - 1) * kMaxThoulessCondition > s(0)))
    throw Error(Errc::orthogonal_vacuum, "U is numerically singular");
  PairingMatrix p;
  p.Z = -U.adjoint().fullPivLu().solve(V.adjoint());
  return p;
}

template <class M>
typename M::Scalar pfaffian_impl(M A) {
  using S = typename M::Scalar;
  const Eigen::Index n = A.rows();
  if (A.cols() != n) throw Error(Errc::invalid_dimension, "Pfaffian needs a square matrix");
  if (n % 2 != 0) throw Error(Errc::invalid_dimension, "Pfaffian needs an even dimension");
  if (n == 0) return S(1);
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A + A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error(Errc::invalid_input, "Pfaffian needs an antisymmetric matrix");
  S pf(1);
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index kp;
    A.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&kp);
    kp += k + 1;
    if (kp != k + 1) {
      A.row(k + 1).swap(A.row(kp));
      A.col(k + 1).swap(A.col(kp));
      pf = -pf;
    }
    if (A(k + 1, k) == S(0)) return S(0);
    pf *= A(k, k + 1);
    if (k + 2 < n) {
      const Eigen::Index r = n - k - 2;
      const auto tau = (A.row(k).tail(r) / A(k, k + 1)).eval();
      const auto col = A.col(k + 1).tail(r).eval();
      A.bottomRightCorner(r, r) += tau.transpose() * col.transpose() - col * tau;
    }
  }
  return pf;
}

}  // namespace

PairingMatrix thouless(const BogoliubovBasis& basis) { return pairing_from(basis.U, basis.V); }

void relative_transform(const BogoliubovBasis& b0, const BogoliubovBasis& b1, CMat& U, CMat& V) {
  if (b0.L() != b1.L()) throw Error(Errc::invalid_input, "bases of different size");
  U = b0.U.adjoint() * b1.U + b0.V.adjoint() * b1.V;
  V = b0.V.transpose() * b1.U + b0.U.transpose() * b1.V;
}

PairingMatrix relative_thouless(const BogoliubovBasis& b0, const BogoliubovBasis& b1) {
  CMat U, V;
  relative_transform(b0, b1, U, V);
  return pairing_from(U, V);
}

double onishi_overlap_sq(const BogoliubovBasis& b0, const BogoliubovBasis& b1) {
  if (b0.L() != b1.L()) throw Error(Errc::invalid_input, "bases of different size");
  const CMat U = b0.U.adjoint() * b1.U + b0.V.adjoint() * b1.V;
  return std::min(1.0, std::abs(U.partialPivLu().determinant()));
}

double excited_overlap_sq(const BogoliubovBasis& b0, const BogoliubovBasis& b1,
                          const OccupationPattern& occ) {
  return onishi_overlap_sq(b0, excite(b1, occ.occupied));
}

std::complex<double> pfaffian(const CMat& m) { return pfaffian_impl(m); }
double pfaffian(const Mat& m) { return pfaffian_impl(m); }

std::complex<double> vacuum_matrix_elements(const BogoliubovBasis& b0, const BogoliubovBasis& b1,
                                            const std::vector<int>& modes) {
  if (modes.size() % 2 != 0) return 0.0;
  const double ov = std::sqrt(onishi_overlap_sq(b0, b1));
  if (modes.empty()) return ov;
  const PairingMatrix p = relative_thouless(b0, b1);
  const Eigen::Index n = static_cast<Eigen::Index>(modes.size());
  CMat sub(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) sub(a, b) = p.Z(modes[a], modes[b]);
  // exact antisymmetry for the Pfaffian routine
  sub = 0.5 * (sub - sub.transpose()).eval();
  return ov * pfaffian(sub);
}

}  // namespace ffising
