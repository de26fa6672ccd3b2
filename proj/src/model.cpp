#include "ffising/model.hpp"

#include <random>

#include <json.hpp>

#include "ffising/error.hpp"

namespace ffising {

const char* boundary_name(Boundary bc) { return bc == Boundary::open ? "OBC" : "PBC"; }

Boundary parse_boundary(const std::string& s) {
  if (s == "OBC" || s == "obc" || s == "open") return Boundary::open;
  if (s == "PBC" || s == "pbc" || s == "PBC-spin" || s == "periodic") return Boundary::periodic;
  throw Error(Errc::invalid_input, "unknown boundary condition '" + s + "'");
}

double uniform01(std::uint64_t raw) { return static_cast<double>(raw >> 11) * 0x1.0p-53; }

void ChainSpec::validate() const {
  if (L < 1) throw Error(Errc::invalid_size, "L must be positive");
  if (static_cast<int>(J.size()) != L || static_cast<int>(h.size()) != L)
    throw Error(Errc::invalid_size, "J and h must have length L");
}

ChainSpec make_uniform(int L, double J, double kappa, double h, Boundary bc) {
  if (L < 2) throw Error(Errc::invalid_size, "uniform chain needs L >= 2");
  ChainSpec s;
  s.L = L;
  s.J.assign(L, J);
  s.h.assign(L, h);
  s.kappa = kappa;
  s.bc = bc;
  return s;
}

ChainSpec make_disordered(int L, std::pair<double, double> J_range,
                          std::pair<double, double> h_range, double kappa,
                          std::uint64_t seed, Boundary bc) {
  if (L < 2) throw Error(Errc::invalid_size, "disordered chain needs L >= 2");
  if (!(J_range.first > 0.0) || J_range.second < J_range.first)
    throw Error(Errc::invalid_range, "need 0 < J_min <= J_max");
  if (h_range.second < h_range.first)
    throw Error(Errc::invalid_range, "need h_min <= h_max");
  std::mt19937_64 rng(seed);
  ChainSpec s;
  s.L = L;
  s.kappa = kappa;
  s.bc = bc;
  s.seed = seed;
  s.J.resize(L);
  s.h.resize(L);
  // all bonds first, then all fields
  for (auto& x : s.J) x = J_range.first + (J_range.second - J_range.first) * uniform01(rng());
  for (auto& x : s.h) x = h_range.first + (h_range.second - h_range.first) * uniform01(rng());
  return s;
}

std::string to_json(const ChainSpec& spec) {
  nlohmann::json j;
  j["L"] = spec.L;
  j["J"] = spec.J;
  j["kappa"] = spec.kappa;
  j["h"] = spec.h;
  j["bc"] = boundary_name(spec.bc);
  if (spec.seed)
    j["seed"] = *spec.seed;
  else
    j["seed"] = nullptr;
  return j.dump();
}

ChainSpec chain_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_input, std::string("chain spec: ") + e.what());
  }
  ChainSpec s;
  try {
    s.L = j.at("L").get<int>();
    s.J = j.at("J").get<std::vector<double>>();
    s.kappa = j.at("kappa").get<double>();
    s.h = j.at("h").get<std::vector<double>>();
    s.bc = parse_boundary(j.at("bc").get<std::string>());
    if (j.contains("seed") && !j["seed"].is_null()) s.seed = j["seed"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_input, std::string("chain spec: ") + e.what());
  }
  s.validate();
  return s;
}

Mat BdGMatrix::full() const {
  const int n = L();
  Mat H(2 * n, 2 * n);
  H << A, B, -B, -A;
  return H;
}

Eigen::SparseMatrix<double> BdGMatrix::sparse() const {
  const int n = L();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(12 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = A(i, j), b = B(i, j);
      if (a != 0.0) {
        t.emplace_back(i, j, a);
        t.emplace_back(n + i, n + j, -a);
      }
      if (b != 0.0) {
        t.emplace_back(i, n + j, b);
        t.emplace_back(n + i, j, -b);
      }
    }
  Eigen::SparseMatrix<double> S(2 * n, 2 * n);
  S.setFromTriplets(t.begin(), t.end());
  return S;
}

BdGMatrix assemble_bdg(const ChainSpec& spec, Sector sector) {
  spec.validate();
  const int L = spec.L;
  BdGMatrix m;
  m.sector = sector;
  m.A = Mat::Zero(L, L);
  m.B = Mat::Zero(L, L);
  for (int j = 0; j < L; ++j) m.A(j, j) = spec.h[j];
  for (int j = 0; j + 1 < L; ++j) {
    const double Jj = spec.J[j];
    m.A(j, j + 1) += -Jj / 2;
    m.A(j + 1, j) += -Jj / 2;
    m.B(j, j + 1) += -spec.kappa * Jj / 2;
    m.B(j + 1, j) += spec.kappa * Jj / 2;
  }
  if (spec.bc == Boundary::periodic && L > 1) {
    // c_{L+1} = (-1)^{p+1} c_1 turns the wrap hopping into (-1)^p J_L/2
    const double sign = sector == Sector::even ? 1.0 : -1.0;
    const double JL = spec.J[L - 1];
    m.A(L - 1, 0) += sign * JL / 2;
    m.A(0, L - 1) += sign * JL / 2;
    m.B(L - 1, 0) += sign * spec.kappa * JL / 2;
    m.B(0, L - 1) -= sign * spec.kappa * JL / 2;
  }
  return m;
}

Eigen::SparseMatrix<double> assemble_sparse(const ChainSpec& spec, Sector sector,
                                            bool include_fields) {
  spec.validate();
  const int L = spec.L;
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(10 * L);
  auto put = [&](int i, int j, double a, double b) {
    t.emplace_back(i, j, a);
    t.emplace_back(L + i, L + j, -a);
    t.emplace_back(i, L + j, b);
    t.emplace_back(L + i, j, -b);
  };
  if (include_fields)
    for (int j = 0; j < L; ++j) {
      t.emplace_back(j, j, spec.h[j]);
      t.emplace_back(L + j, L + j, -spec.h[j]);
    }
  for (int j = 0; j + 1 < L; ++j) {
    const double Jj = spec.J[j];
    put(j, j + 1, -Jj / 2, -spec.kappa * Jj / 2);
    put(j + 1, j, -Jj / 2, spec.kappa * Jj / 2);
  }
  if (spec.bc == Boundary::periodic && L > 1) {
    const double sign = sector == Sector::even ? 1.0 : -1.0;
    const double JL = spec.J[L - 1];
    put(L - 1, 0, sign * JL / 2, sign * spec.kappa * JL / 2);
    put(0, L - 1, sign * JL / 2, -sign * spec.kappa * JL / 2);
  }
  Eigen::SparseMatrix<double> S(2 * L, 2 * L);
  S.setFromTriplets(t.begin(), t.end());
  S.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
  return S;
}

Mat swap_matrix(int L) {
  Mat S = Mat::Zero(2 * L, 2 * L);
  S.topRightCorner(L, L).setIdentity();
  S.bottomLeftCorner(L, L).setIdentity();
  return S;
}

}  // namespace ffising
