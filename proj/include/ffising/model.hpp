#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace ffising {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using cplx = std::complex<double>;

enum class Boundary { open, periodic };
enum class Sector { even = 0, odd = 1 };

inline int parity_index(Sector s) { return static_cast<int>(s); }

const char* boundary_name(Boundary bc);
Boundary parse_boundary(const std::string& s);

// PRNG used for disorder. The name is stamped into every output so that
// ensembles can be regenerated bit for bit.
inline constexpr const char* kRngName = "mt19937_64/u53-v1";

// Uniform double in [0,1) from the top 53 bits; does not depend on the
// standard library's distribution implementation.
double uniform01(std::uint64_t raw);

// Spin chain H = -sum_j (Jx_j sx_j sx_{j+1} + Jy_j sy_j sy_{j+1}) - sum_j h_j sz_j
// with Jx = J(1+kappa)/2, Jy = J(1-kappa)/2. Sites are 0-based here; bond j
// couples j and j+1, bond L-1 wraps to site 0 for periodic spins.
struct ChainSpec {
  int L = 0;
  std::vector<double> J;
  double kappa = 1.0;
  std::vector<double> h;
  Boundary bc = Boundary::periodic;
  std::optional<std::uint64_t> seed;

  void validate() const;
  // Bond coupling as used in assembly (the wrap bond is 0 for open chains).
  double bond(int j) const { return (bc == Boundary::open && j == L - 1) ? 0.0 : J[j]; }
};

ChainSpec make_uniform(int L, double J, double kappa, double h, Boundary bc);
ChainSpec make_disordered(int L, std::pair<double, double> J_range,
                          std::pair<double, double> h_range, double kappa,
                          std::uint64_t seed, Boundary bc = Boundary::periodic);

std::string to_json(const ChainSpec& spec);
ChainSpec chain_from_json(const std::string& text);

// Nambu one-body matrix H = [[A, B], [-B, -A]] for one fermion-parity sector.
struct BdGMatrix {
  Mat A;
  Mat B;
  Sector sector = Sector::even;

  int L() const { return static_cast<int>(A.rows()); }
  Mat full() const;
  Eigen::SparseMatrix<double> sparse() const;
};

BdGMatrix assemble_bdg(const ChainSpec& spec, Sector sector);

// Same matrix in sparse form, built in O(L). With include_fields = false the
// diagonal h_j entries are left out (used by the time stepper, which adds
// the fields itself).
Eigen::SparseMatrix<double> assemble_sparse(const ChainSpec& spec, Sector sector,
                                            bool include_fields = true);
Mat swap_matrix(int L);

}  // namespace ffising
