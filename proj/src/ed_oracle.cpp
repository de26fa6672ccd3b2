#include "ffising/ed_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ffising/error.hpp"

namespace ffising::ed {

namespace {

using State = std::uint64_t;

inline int bit(State s, int j) { return static_cast<int>((s >> j) & 1u); }
inline double sz_of(State s, int j) { return bit(s, j) ? -1.0 : 1.0; }

// Jordan-Wigner sign of the sites below j.
inline double string_sign(State s, int j) {
  const State below = s & ((State{1} << j) - 1);
  return (__builtin_popcountll(below) & 1) ? -1.0 : 1.0;
}

void check_size(int L) {
  if (L < 1) throw Error(Errc::invalid_size, "L must be positive");
  if (L > kMaxSites) throw Error(Errc::size_limit, "dense oracle is limited to L <= 12");
}

struct EigenCache {
  Vec E;
  Mat V;
};

EigenCache full_eigen(const DenseSpinSystem& sys) {
  Eigen::SelfAdjointEigenSolver<Mat> es(sys.H);
  return {es.eigenvalues(), es.eigenvectors()};
}

template <class Scalar>
double entropy_of(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& state, int L, Block block) {
  if (block.length <= 0) throw Error(Errc::empty_block, "block length must be positive");
  if (block.length > L) throw Error(Errc::invalid_input, "block longer than the chain");
  std::vector<int> inside(L, 0);
  for (int k = 0; k < block.length; ++k) inside[((block.start + k) % L + L) % L] = 1;
  std::vector<int> a_sites, b_sites;
  for (int j = 0; j < L; ++j) (inside[j] ? a_sites : b_sites).push_back(j);
  const Eigen::Index da = Eigen::Index{1} << a_sites.size();
  const Eigen::Index db = Eigen::Index{1} << b_sites.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> psi(da, db);
  for (State s = 0; s < static_cast<State>(state.size()); ++s) {
    Eigen::Index ia = 0, ib = 0;
    for (std::size_t k = 0; k < a_sites.size(); ++k) ia |= Eigen::Index(bit(s, a_sites[k])) << k;
    for (std::size_t k = 0; k < b_sites.size(); ++k) ib |= Eigen::Index(bit(s, b_sites[k])) << k;
    psi(ia, ib) = state(static_cast<Eigen::Index>(s));
  }
  const Vec sv = Eigen::JacobiSVD<decltype(psi)>(psi).singularValues();
  const double norm = sv.squaredNorm();
  double S = 0.0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    const double p = sv(k) * sv(k) / norm;
    if (p > 0) S -= p * std::log(p);
  }
  return std::max(S, 0.0);
}

}  // namespace

DenseSpinSystem build(const ChainSpec& spec) {
  spec.validate();
  const int L = spec.L;
  check_size(L);
  const State dim = State{1} << L;
  DenseSpinSystem sys;
  sys.spec = spec;
  sys.H = Mat::Zero(dim, dim);
  const int nbonds = L == 1 ? 0 : L;
  for (State s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (int j = 0; j < L; ++j) diag -= spec.h[j] * sz_of(s, j);
    sys.H(s, s) = diag;
    for (int j = 0; j < nbonds; ++j) {
      const double Jb = spec.bond(j);
      if (Jb == 0.0) continue;
      const int k = (j + 1) % L;
      const State t = s ^ (State{1} << j) ^ (State{1} << k);
      // sx sx + sy sy pieces: Jx - Jy on aligned pairs, Jx + Jy on opposite
      const double amp = bit(s, j) == bit(s, k) ? spec.kappa * Jb : Jb;
      sys.H(t, s) -= amp;
    }
  }
  return sys;
}

Eigenpair ground(const DenseSpinSystem& sys, int parity) {
  if (parity == 0) {
    Eigen::SelfAdjointEigenSolver<Mat> es(sys.H);
    return {es.eigenvalues()(0), es.eigenvectors().col(0)};
  }
  std::vector<State> idx;
  for (State s = 0; s < static_cast<State>(sys.dim()); ++s)
    if (state_parity(s) == parity) idx.push_back(s);
  const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
  Mat Hp(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) Hp(a, b) = sys.H(idx[a], idx[b]);
  Eigen::SelfAdjointEigenSolver<Mat> es(Hp);
  Vec psi = Vec::Zero(sys.dim());
  for (Eigen::Index a = 0; a < n; ++a) psi(idx[a]) = es.eigenvectors()(a, 0);
  return {es.eigenvalues()(0), psi};
}

Vec spectrum(const DenseSpinSystem& sys) {
  return Eigen::SelfAdjointEigenSolver<Mat>(sys.H, Eigen::EigenvaluesOnly).eigenvalues();
}

double expectation(const Vec& state, int L, const ObservableTag& op) {
  check_size(L);
  const State dim = State{1} << L;
  if (state.size() != static_cast<Eigen::Index>(dim))
    throw Error(Errc::invalid_dimension, "state dimension does not match L");
  double acc = 0.0;
  switch (op.kind) {
    case Observable::sz:
      for (State s = 0; s < dim; ++s) acc += state(s) * state(s) * sz_of(s, op.j1);
      break;
    case Observable::zz:
      for (State s = 0; s < dim; ++s)
        acc += state(s) * state(s) * sz_of(s, op.j1) * sz_of(s, op.j2);
      break;
    case Observable::xx: {
      const State flip = (State{1} << op.j1) ^ (State{1} << op.j2);
      for (State s = 0; s < dim; ++s) acc += state(s ^ flip) * state(s);
      break;
    }
    case Observable::energy:
      throw Error(Errc::invalid_input, "energy needs the Hamiltonian");
  }
  return acc / state.squaredNorm();
}

double expectation(const DenseSpinSystem& sys, const Vec& state, const ObservableTag& op) {
  if (op.kind == Observable::energy) return state.dot(sys.H * state) / state.squaredNorm();
  return expectation(state, sys.L(), op);
}

double log_partition_function(const DenseSpinSystem& sys, double beta) {
  const Vec E = spectrum(sys);
  const double e0 = E(0);
  double z = 0.0;
  for (Eigen::Index n = 0; n < E.size(); ++n) z += std::exp(-beta * (E(n) - e0));
  return std::log(z) - beta * e0;
}

double thermal_average(const DenseSpinSystem& sys, double beta, const ObservableTag& op) {
  const EigenCache ec = full_eigen(sys);
  const double e0 = ec.E(0);
  double z = 0.0, acc = 0.0;
  for (Eigen::Index n = 0; n < ec.E.size(); ++n) {
    const double w = std::exp(-beta * (ec.E(n) - e0));
    z += w;
    const double o = op.kind == Observable::energy ? ec.E(n)
                                                   : expectation(Vec(ec.V.col(n)), sys.L(), op);
    acc += w * o;
  }
  return acc / z;
}

double reduced_entropy(const Vec& state, int L, Block block) {
  check_size(L);
  return entropy_of(state, L, block);
}

double reduced_entropy(const CVec& state, int L, Block block) {
  check_size(L);
  return entropy_of(state, L, block);
}

CVec apply_c(const CVec& psi, int j) {
  CVec out = CVec::Zero(psi.size());
  for (State s = 0; s < static_cast<State>(psi.size()); ++s)
    if (bit(s, j)) out(s ^ (State{1} << j)) += string_sign(s, j) * psi(s);
  return out;
}

CVec apply_cdag(const CVec& psi, int j) {
  CVec out = CVec::Zero(psi.size());
  for (State s = 0; s < static_cast<State>(psi.size()); ++s)
    if (!bit(s, j)) out(s | (State{1} << j)) += string_sign(s, j) * psi(s);
  return out;
}

CVec gaussian_state(const BogoliubovBasis& b, const std::vector<int>& occ) {
  const int L = b.L();
  check_size(L);
  const Eigen::Index dim = Eigen::Index{1} << L;
  auto gamma = [&](const CVec& psi, int mu) {
    CVec out = CVec::Zero(dim);
    for (int j = 0; j < L; ++j) {
      out += std::conj(b.U(j, mu)) * apply_c(psi, j);
      out += std::conj(b.V(j, mu)) * apply_cdag(psi, j);
    }
    return out;
  };
  auto gamma_dag = [&](const CVec& psi, int mu) {
    CVec out = CVec::Zero(dim);
    for (int j = 0; j < L; ++j) {
      out += b.U(j, mu) * apply_cdag(psi, j);
      out += b.V(j, mu) * apply_c(psi, j);
    }
    return out;
  };
  // Project a fixed pseudo-random vector onto the vacuum; retry on the
  // (measure-zero) event of a vanishing projection.
  std::mt19937_64 rng(0x5eed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    CVec psi(dim);
    for (Eigen::Index s = 0; s < dim; ++s)
      psi(s) = cplx(uniform01(rng()) - 0.5, uniform01(rng()) - 0.5);
    for (int mu = 0; mu < L; ++mu) psi = gamma(psi, mu);
    const double n = psi.norm();
    if (n < 1e-8) continue;
    psi /= n;
    for (int mu : occ) psi = gamma_dag(psi, mu);
    const double m = psi.norm();
    if (m < 1e-12) throw Error(Errc::invalid_input, "repeated mode in occupation pattern");
    return psi / m;
  }
  throw Error(Errc::orthogonal_vacuum, "could not project onto the vacuum");
}

std::complex<double> state_overlap(const CVec& a, const CVec& b) { return a.dot(b); }

std::vector<double> free_fermion_spectrum(const ChainSpec& spec) {
  spec.validate();
  const int L = spec.L;
  if (L > 20) throw Error(Errc::size_limit, "Fock enumeration is limited to L <= 20");
  std::vector<double> out;
  out.reserve(std::size_t{1} << L);
  const int nsec = spec.bc == Boundary::open ? 1 : 2;
  for (int p = 0; p < nsec; ++p) {
    const BogoliubovBasis b = diagonalize(assemble_bdg(spec, static_cast<Sector>(p)));
    const int vp = vacuum_parity(b);
    const int want = p == 0 ? 1 : -1;
    for (State n = 0; n < (State{1} << L); ++n) {
      if (nsec == 2 && vp * state_parity(n) != want) continue;
      double e = b.vacuum_energy();
      for (int mu = 0; mu < L; ++mu)
        if (bit(n, mu)) e += 2.0 * b.eps(mu);
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ffising::ed
