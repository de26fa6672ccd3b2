#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <ffising/bdg.hpp>
#include <ffising/error.hpp>
#include <ffising/uniform.hpp>

using namespace ffising;
using std::numbers::pi;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::invalid_input;
}

}  // namespace

TEST_SUITE("uniform") {

TEST_CASE("momentum grids") {
  const KGrid g0 = k_grid(4, Sector::even);
  REQUIRE(g0.ks.size() == 4);
  CHECK(g0.ks[0] == doctest::Approx(-3 * pi / 4));
  CHECK(g0.ks[1] == doctest::Approx(-pi / 4));
  CHECK(g0.ks[2] == doctest::Approx(pi / 4));
  CHECK(g0.ks[3] == doctest::Approx(3 * pi / 4));
  const KGrid g1 = k_grid(4, Sector::odd);
  REQUIRE(g1.ks.size() == 4);
  CHECK(g1.ks[0] == doctest::Approx(-pi / 2));
  CHECK(g1.ks[1] == 0.0);
  CHECK(g1.ks[2] == doctest::Approx(pi / 2));
  CHECK(g1.ks[3] == doctest::Approx(pi));
  const KGrid g6 = k_grid(6, Sector::even);
  REQUIRE(g6.ks.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(g6.ks[i] == doctest::Approx(-g6.ks[5 - i]));
  CHECK(code_of([] { k_grid(5, Sector::even); }) == Errc::unsupported_size);
}

TEST_CASE("dispersion") {
  CHECK(epsilon_k(0.0, 1.0, 1.0, 1.0) == 0.0);
  for (double k : {-2.0, -0.3, 0.0, 1.1, 3.0}) {
    CHECK(epsilon_k(k, 1.0, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(epsilon_k(k, 1.3, 0.4, 0.7) == epsilon_k(-k, 1.3, 0.4, 0.7));
  }
  for (double h : {0.0, 0.5, 2.0})
    CHECK(epsilon_k(pi, 1.2, h, 0.4) == doctest::Approx(2 * (1.2 + h)).epsilon(1e-14));
  CHECK(code_of([] { epsilon_k(0.1, 0.0, 1.0, 1.0); }) == Errc::invalid_input);
}

TEST_CASE("amplitudes") {
  for (double h : {0.0, 0.5, 0.99, 1.5, 20.0})
    for (double k : {0.1, 0.7, 1.6, 2.9}) {
      const auto [u, v] = amplitudes(k, 1.0, h, 0.8);
      CHECK(std::norm(u) + std::norm(v) == doctest::Approx(1.0).epsilon(1e-14));
      const auto [um, vm] = amplitudes(-k, 1.0, h, 0.8);
      CHECK(std::abs(um - u) < 1e-14);
      CHECK(std::abs(vm + v) < 1e-14);
      // eigenvector of [[z, -i y], [i y, -z]] acting on (u, v) with eigenvalue eps
      const double z = 2 * (h - std::cos(k));
      const double y = 2 * 0.8 * std::sin(k);
      const double e = epsilon_k(k, 1.0, h, 0.8);
      const std::complex<double> I(0, 1);
      CHECK(std::abs(z * u - I * y * v - e * u) < 1e-12 * (1 + e));
      CHECK(std::abs(I * y * u - z * v - e * v) < 1e-12 * (1 + e));
    }
  const auto [u, v] = amplitudes(0.4, 1.0, 1e4, 1.0);
  CHECK(std::abs(u) > 1 - 1e-8);
  CHECK(std::abs(v) < 1e-4);
  CHECK(code_of([] { amplitudes(0.0, 1.0, 1.0, 1.0); }) == Errc::degenerate_point);
}

TEST_CASE("sector ground energies") {
  CHECK(sector_ground_energy(2, 1.0, 0.0, 1.0, Sector::even) == doctest::Approx(-2.0));
  for (int L : {2, 4, 10, 64}) {
    CHECK(sector_ground_energy(L, 1.0, 0.0, 1.0, Sector::even) == doctest::Approx(-L).epsilon(1e-13));
    CHECK(sector_ground_energy(L, 1.0, 0.0, 1.0, Sector::odd) == doctest::Approx(-L).epsilon(1e-13));
    CHECK(sector_gap(L, 1.0, 0.0, 1.0) == 0.0);
  }
}

TEST_CASE("ground energy agrees with dense diagonalization") {
  // 2 eps_mu from the Nambu matrix equals eps_k
  const int L = 256;
  const ChainSpec s = make_uniform(L, 1.0, 1.0, 0.5, Boundary::periodic);
  const BogoliubovBasis b = diagonalize(assemble_bdg(s, Sector::even));
  CHECK(std::abs(b.vacuum_energy() - sector_ground_energy(L, 1.0, 0.5, 1.0, Sector::even)) < 1e-10);
}

TEST_CASE("Nambu spectrum matches the k grid") {
  for (double h : {0.3, 0.5, 1.7})
    for (int p = 0; p < 2; ++p) {
      const int L = 8;
      const Sector sec = static_cast<Sector>(p);
      const ChainSpec s = make_uniform(L, 1.0, 0.6, h, Boundary::periodic);
      const BogoliubovBasis b = diagonalize(assemble_bdg(s, sec));
      std::vector<double> a, c;
      for (int mu = 0; mu < L; ++mu) a.push_back(2 * b.eps(mu));
      for (double k : k_grid(L, sec).ks) c.push_back(epsilon_k(k, 1.0, h, 0.6));
      std::sort(a.begin(), a.end());
      std::sort(c.begin(), c.end());
      for (int i = 0; i < L; ++i) CHECK(std::abs(a[i] - c[i]) < 1e-10);
    }
}

TEST_CASE("sector gap limits") {
  CHECK(std::abs(sector_gap(256, 1.0, 1.5, 1.0) - 1.0) < 1e-10);
  const double g = sector_gap(2048, 1.0, 1.0, 1.0) * 2048;
  CHECK(g == doctest::Approx(pi / 2).epsilon(1e-3));
}

TEST_CASE("winding index") {
  CHECK(winding_index(1.0, 0.5, 1.0) == 1);
  CHECK(winding_index(1.0, 2.0, 1.0) == 0);
  CHECK(winding_index(1.0, 0.0, 0.3) == 1);
  CHECK(winding_index(1.0, 0.5, -1.0) == -1);
  CHECK(code_of([] { winding_index(1.0, 1.0, 1.0); }) == Errc::undefined_index);
  CHECK(code_of([] { winding_index(1.0, 0.5, 0.0); }) == Errc::degenerate_ellipse);
}

}
