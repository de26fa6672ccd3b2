#include "ffising/observables.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "ffising/error.hpp"

namespace ffising {

namespace {

constexpr double kEquilibriumResidue = 1e-10;

void require_equilibrium(const NambuGreen& g) {
  const double r = std::max(g.G.imag().cwiseAbs().maxCoeff(), g.F.imag().cwiseAbs().maxCoeff());
  if (r > kEquilibriumResidue)
    throw Error(Errc::nonequilibrium_unsupported,
                "string correlators need real G and F (imaginary residue " + std::to_string(r) + ")");
}

double xlogx(double p) { return p > 0 ? p * std::log(p) : 0.0; }

}  // namespace

double transverse_magnetization(const NambuGreen& g, int j) { return 2.0 * g.G(j, j).real() - 1.0; }

Mat contraction_matrix(const NambuGreen& g) {
  require_equilibrium(g);
  const Mat G = g.G.real();
  const Mat F = g.F.real();
  const int L = g.L();
  // <B_i A_j> = delta - G_ij - G_ji - F_ij + F_ji
  return Mat::Identity(L, L) - G - G.transpose() - F + F.transpose();
}

double xx_correlator(const Mat& M, int j1, int j2) {
  const int L = static_cast<int>(M.rows());
  if (j1 < 0 || j2 >= L || !(j2 > j1)) throw Error(Errc::invalid_input, "need 0 <= j1 < j2 < L");
  const int n = j2 - j1;
  const Mat W = M.block(j1, j1 + 1, n, n);
  return W.partialPivLu().determinant();
}

double xx_correlator(const NambuGreen& g, int j1, int j2) {
  return xx_correlator(contraction_matrix(g), j1, j2);
}

double zz_correlator(const NambuGreen& g, int j1, int j2) {
  if (j1 == j2) return 1.0;
  const cplx v = contract_AB(g, j1, j1) * contract_AB(g, j2, j2) -
                 contract_AA(g, j1, j2) * contract_BB(g, j1, j2) +
                 contract_AB(g, j1, j2) * contract_BA(g, j1, j2);
  return v.real();
}

double parity_expectation(const NambuGreen& g) {
  const Mat M = contraction_matrix(g);
  const double d = M.partialPivLu().determinant();
  return (g.L() % 2 == 0) ? d : -d;
}

int vacuum_parity(const BogoliubovBasis& basis) {
  const double p = parity_expectation(green_functions(basis));
  if (std::abs(std::abs(p) - 1.0) > 1e-6)
    throw Error(Errc::degenerate_vacuum,
                "parity determinant " + std::to_string(p) + " is not +-1 (unresolved zero modes?)");
  return p > 0 ? 1 : -1;
}

EntropyResult entanglement_entropy(const MajoranaCorrelation& m, Block block) {
  const int L = m.L();
  const int l = block.length;
  if (l <= 0) throw Error(Errc::empty_block, "block has no sites");
  if (l > L) throw Error(Errc::invalid_input, "block longer than the chain");
  std::vector<int> idx;
  idx.reserve(2 * l);
  for (int r = 0; r < l; ++r) idx.push_back(((block.start + r) % L + L) % L);
  for (int r = 0; r < l; ++r) idx.push_back(L + idx[r]);
  Mat sub(2 * l, 2 * l);
  for (int a = 0; a < 2 * l; ++a)
    for (int b = 0; b < 2 * l; ++b) sub(a, b) = m.A(idx[a], idx[b]);

  Eigen::RealSchur<Mat> schur(sub, /*computeU=*/false);
  const Mat& T = schur.matrixT();
  std::vector<double> mags;
  mags.reserve(2 * l);
  for (int i = 0; i < 2 * l;) {
    if (i + 1 < 2 * l && T(i + 1, i) != 0.0) {
      const double lam = std::sqrt(std::abs(T(i, i + 1) * T(i + 1, i)));
      mags.push_back(lam);
      mags.push_back(lam);
      i += 2;
    } else {
      mags.push_back(std::abs(T(i, i)));
      i += 1;
    }
  }
  std::sort(mags.begin(), mags.end());
  EntropyResult res;
  res.block = block;
  for (int q = 0; q < l; ++q) {
    // eigenvalues come in +-i lambda pairs; take one per pair
    const double raw = 0.5 * (mags[2 * q] + mags[2 * q + 1]);
    res.max_lambda_raw = std::max(res.max_lambda_raw, raw);
    const double lam = std::clamp(raw, 0.0, 1.0);
    res.lambdas.push_back(lam);
    const double p = 0.5 * (1.0 + lam);
    res.entropy -= xlogx(p) + xlogx(1.0 - p);
  }
  return res;
}

GroundState sector_ground_state(const ChainSpec& spec, Sector sector) {
  GroundState gs;
  gs.sector = sector;
  gs.basis = diagonalize(assemble_bdg(spec, sector));
  gs.energy = gs.basis.vacuum_energy();
  const int want = sector == Sector::even ? 1 : -1;
  if (vacuum_parity(gs.basis) != want) {
    // modes are sorted, so mode 0 is the cheapest excitation
    gs.energy += 2.0 * gs.basis.eps(0);
    gs.basis = excite(gs.basis, {0});
    gs.excited = true;
  }
  return gs;
}

GroundState physical_ground_state(const ChainSpec& spec) {
  GroundState even = sector_ground_state(spec, Sector::even);
  GroundState odd = sector_ground_state(spec, Sector::odd);
  return odd.energy < even.energy ? odd : even;
}

}  // namespace ffising
