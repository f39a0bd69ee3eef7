#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "af/errors.hpp"
#include "af/stability.hpp"
#include "fourier.hpp"

using namespace af;

namespace {

std::vector<Complex> sorted(Eigen::VectorXcd v) {
  std::vector<Complex> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

Eigen::VectorXcd poly_roots(const ComplexPoly& f) {
  const int n = f.degree();
  CMatrix comp = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) comp(j, n - 1) = -f[j] / f[n];
  for (int j = 1; j < n; ++j) comp(j, j - 1) = 1.0;
  return Eigen::ComplexEigenSolver<CMatrix>(comp, false).eigenvalues();
}

ComplexPoly from_roots(const std::vector<Complex>& roots, Complex lead) {
  std::vector<Complex> c{lead};
  for (Complex r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (size_t j = 0; j < c.size(); ++j) {
      next[j + 1] += c[j];
      next[j] -= r * c[j];
    }
    c = next;
  }
  return ComplexPoly(c);
}

double spectral_radius(const CMatrix& m) {
  return Eigen::ComplexEigenSolver<CMatrix>(m, false).eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<VariantConfig> symbol_configs() {
  return {VariantConfig::variant_a("FD3"),  VariantConfig::variant_a("FD4b"), VariantConfig::variant_a("FD6b"),
          VariantConfig::variant_a("FD8a"), VariantConfig::variant_c(3),      VariantConfig::variant_c(5),
          VariantConfig::variant_c(7),      VariantConfig::variant_b({}, 3),  VariantConfig::variant_b({-0.415, 0.415}, 4),
          VariantConfig::variant_b({-0.48, -0.41, 0.41, 0.48}, 5)};
}

}  // namespace

TEST_CASE("characteristic polynomials") {
  const ComplexPoly id = char_poly(CMatrix::Identity(2, 2));
  REQUIRE(id.degree() == 2);
  CHECK(std::abs(id[0] - 1.0) < 1e-15);
  CHECK(std::abs(id[1] + 2.0) < 1e-15);
  CHECK(std::abs(id[2] - 1.0) < 1e-15);

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 0.5;
  d(1, 1) = -0.25;
  const ComplexPoly p = char_poly(d);
  CHECK(std::abs(p[0] + 0.125) < 1e-15);
  CHECK(std::abs(p[1] + 0.25) < 1e-15);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    CMatrix m(3, 3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = Complex(g(rng), g(rng));
    const auto roots = sorted(poly_roots(char_poly(m)));
    const auto eig = sorted(Eigen::ComplexEigenSolver<CMatrix>(m, false).eigenvalues());
    for (int k = 0; k < 3; ++k) CHECK(std::abs(roots[k] - eig[k]) < 1e-9);
  }
  CHECK_THROWS_AS(char_poly(CMatrix::Identity(9, 9)), InvalidArgument);
}

TEST_CASE("Schur recursion on small polynomials") {
  CHECK(schur_inside_unit_disc(ComplexPoly({-0.5, 1.0})) == DiscVerdict::Inside);
  CHECK(schur_inside_unit_disc(ComplexPoly({-2.0, 1.0})) == DiscVerdict::BoundaryOrOutside);
  CHECK(von_neumann_stable(ComplexPoly({0.25, -1.0, 1.0})));
  // Self-inversive: f1 vanishes and the derivative branch accepts the root on the circle.
  CHECK(schur_inside_unit_disc(ComplexPoly({-1.0, 1.0})) == DiscVerdict::Inside);
  CHECK(schur_inside_unit_disc(ComplexPoly({1.0, 0.0, -2.5, 1.0})) == DiscVerdict::BoundaryOrOutside);
  CHECK(von_neumann_stable(ComplexPoly({-1.0, 1.0})));
  CHECK_FALSE(von_neumann_stable(ComplexPoly({-1.001, 1.0})));
  CHECK_THROWS_AS(schur_inside_unit_disc(ComplexPoly({0.0, 0.0})), ZeroPolynomial);
}

TEST_CASE("Schur verdicts agree with root moduli") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> radius(0.0, 2.0), angle(0.0, 2 * std::numbers::pi);
  std::uniform_int_distribution<int> degree(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = degree(rng);
    std::vector<Complex> roots;
    while (static_cast<int>(roots.size()) < n) {
      const double r = radius(rng);
      if (std::abs(r - 1.0) < 1e-3) continue;
      roots.push_back(std::polar(r, angle(rng)));
    }
    const bool inside = std::all_of(roots.begin(), roots.end(), [](Complex z) { return std::abs(z) < 1.0; });
    const ComplexPoly f = from_roots(roots, std::polar(0.5 + radius(rng), angle(rng)));
    CHECK((schur_inside_unit_disc(f) == DiscVerdict::Inside) == inside);
  }
}

TEST_CASE("Runge-Kutta stability polynomials") {
  const auto p3 = rk_polynomial(RkScheme::Ssp3);
  CHECK(p3 == std::vector<double>{1.0, 1.0, 0.5, 1.0 / 6.0});
  const auto p5 = rk_polynomial(RkScheme::Rk5);
  double fact = 1.0;
  for (int j = 0; j <= 5; ++j) {
    if (j > 0) fact *= j;
    CHECK(p5[j] == doctest::Approx(1.0 / fact).epsilon(1e-14));
  }
}

TEST_CASE("constant mode has eigenvalue one") {
  for (const VariantConfig& cfg : symbol_configs()) {
    CAPTURE(cfg.describe());
    const double nu = cfg.kind == VariantKind::C ? 0.05 : 0.3;
    const CMatrix m = build_update_matrix({cfg, nu}, 0.0);
    const auto eig = Eigen::ComplexEigenSolver<CMatrix>(m, false).eigenvalues();
    double closest = 1e9;
    for (int k = 0; k < eig.size(); ++k) closest = std::min(closest, std::abs(eig(k) - 1.0));
    CHECK(closest < 1e-12);
    CHECK(von_neumann_stable(char_poly(m)));
  }
}

TEST_CASE("symbols are conjugate symmetric in the wave number") {
  for (const VariantConfig& cfg : symbol_configs()) {
    CAPTURE(cfg.describe());
    for (double nu : {0.1, 0.4, 0.9}) {
      for (double K : {0.3, 1.7, 2.9}) {
        const CMatrix a = build_update_matrix({cfg, nu}, K);
        const CMatrix b = build_update_matrix({cfg, nu}, -K);
        CHECK((a.conjugate() - b).cwiseAbs().maxCoeff() < 1e-13);
        CHECK(von_neumann_stable(char_poly(a)) == von_neumann_stable(char_poly(b)));
      }
    }
  }
}

TEST_CASE("FD3 update against a hand-assembled symbol") {
  for (double nu : {0.2, 0.4, 0.6}) {
    for (double K : {0.0, 0.5, 1.5, 3.0}) {
      const Complex t = std::polar(1.0, K);
      CMatrix L(2, 2);
      L << -(2.0 / t + 4.0), 6.0, -(1.0 - 1.0 / t), 0.0;
      const CMatrix z = nu * L;
      const CMatrix id = CMatrix::Identity(2, 2);
      const CMatrix m = id + z + 0.5 * z * z + z * z * z / 6.0;
      const auto want = sorted(Eigen::ComplexEigenSolver<CMatrix>(m, false).eigenvalues());
      const auto got = sorted(Eigen::ComplexEigenSolver<CMatrix>(build_update_matrix({VariantConfig::variant_a("FD3"), nu}, K), false).eigenvalues());
      for (int k = 0; k < 2; ++k) CHECK(std::abs(want[k] - got[k]) < 1e-10);
    }
  }
}

TEST_CASE("variant B at CFL one is an exact shift") {
  for (double K : {0.0, 0.7, 2.0, std::numbers::pi}) {
    const CMatrix m = build_update_matrix({VariantConfig::variant_b({}, 3), 1.0}, K);
    const CMatrix want = std::polar(1.0, -K) * CMatrix::Identity(2, 2);
    CHECK((m - want).cwiseAbs().maxCoeff() < 1e-13);
  }
  CHECK_THROWS_AS(build_update_matrix({VariantConfig::variant_b({}, 3), 1.5}, 0.1), InvalidArgument);
}

TEST_CASE("scheme runs match the matrix power on Fourier modes") {
  CHECK(testing::fourier_mismatch(VariantConfig::variant_a("FD3"), 0.4, 16, 3, 50) < 1e-8);
  CHECK(testing::fourier_mismatch(VariantConfig::variant_a("FD6b", 2.0), 0.3, 16, 5, 50) < 1e-8);
  CHECK(testing::fourier_mismatch(VariantConfig::variant_c(5), 0.1, 16, 2, 50) < 1e-8);
  CHECK(testing::fourier_mismatch(VariantConfig::variant_b({-0.415, 0.415}, 4), 0.7, 16, 4, 50) < 1e-8);
}

TEST_CASE("stability scans") {
  CHECK(nu_grid(0.01, 0.0025) == std::vector<double>{0.0025, 0.005, 0.0075, 0.01});
  const std::vector<double> nus{0.1, 0.2, 0.3};
  const std::uint8_t row[] = {1, 0, 1};
  CHECK(cfl_max_from_row(nus, row) == 0.1);
  const std::uint8_t none[] = {0, 1, 1};
  CHECK(cfl_max_from_row(nus, none) == 0.0);

  const double fd3 = cfl_max(VariantConfig::variant_a("FD3"));
  CHECK(fd3 == doctest::Approx(0.4075).epsilon(1e-9));
  CHECK(stable({VariantConfig::variant_a("FD3"), 0.4}));
  CHECK_FALSE(stable({VariantConfig::variant_a("FD3"), 0.42}));
  CHECK(max_growth({VariantConfig::variant_a("FD3"), 0.4}) < 1e-9);
  CHECK(max_growth({VariantConfig::variant_a("FD3"), 0.6}) > 1e-3);

  const Family fam = [](double a) { return VariantConfig::variant_a("FD2", a); };
  CHECK_THROWS_AS(scan_region(fam, {}, nus), InvalidArgument);
  const StabilityMap map = scan_region(fam, {1.0, 2.0}, nu_grid(1.0, 0.0025), 257, 2);
  CHECK(map.cfl_max[0] == doctest::Approx(1.0));
  CHECK(map.cfl_max[1] == doctest::Approx(1.0));
}
