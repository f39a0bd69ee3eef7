#include <doctest.h>

#include <cmath>

#include "af/core.hpp"
#include "af/errors.hpp"
#include "af/problems.hpp"
#include "af/schemes.hpp"

using namespace af;

namespace {

InitialDatum datum_of(std::function<double(double)> f) {
  return {"test", [f](double x) { return Vec{f(x)}; }, {}};
}

ExactSampler sampler_of(std::function<double(double)> point, std::function<double(double, double)> avg) {
  return {[point](double x) { return Vec{point(x)}; }, [avg](double a, double b) { return Vec{avg(a, b)}; }};
}

}  // namespace

TEST_CASE("grid geometry and periodic wrap") {
  const Grid g(10, -1.0, 1.0);
  CHECK(g.dx() == doctest::Approx(0.2));
  CHECK(g.iface_x(0) == doctest::Approx(-0.8));
  CHECK(g.center_x(9) == doctest::Approx(0.9));
  CHECK(g.wrap(-1) == 9);
  CHECK(g.wrap(10) == 0);
  CHECK(g.wrap(-21) == 9);
}

TEST_CASE("constant datum initializes every layout exactly") {
  const Grid g(7, 0.0, 1.0);
  const auto one = datum_of([](double) { return 1.0; });
  const State c = init_state(one, g, VariantConfig::variant_c(7).layout(), 1);
  for (int i = 0; i < 7; ++i) {
    CHECK(c.iface(0, i) == doctest::Approx(1.0).epsilon(1e-15));
    for (size_t p = 0; p < c.moments.size(); ++p) {
      const double expect = p % 2 == 0 ? 1.0 : 0.0;
      CHECK(c.moments[p](0, i) == doctest::Approx(expect).epsilon(1e-14).scale(1.0));
    }
  }
  const State b = init_state(one, g, VariantConfig::variant_b({-0.415, 0.415}, 4).layout(), 1);
  REQUIRE(b.interior.size() == 2);
  CHECK(b.interior[1](0, 3) == 1.0);
}

TEST_CASE("narrow Gaussian preset at the center interface") {
  const Problem p = preset("advection-gauss");
  const Grid g(10, p.x_min, p.x_max);
  const State s = init_state(p, g, VariantConfig::variant_a("FD3").layout());
  CHECK(s.iface(0, 4) == doctest::Approx(1.8).epsilon(1e-15));
}

TEST_CASE("moments of a linear datum on the unit cell") {
  const Grid g(1, -0.5, 0.5);
  const State s = init_state(datum_of([](double x) { return x; }), g, VariantConfig::variant_c(5).layout(), 1);
  CHECK(std::abs(s.moments[0](0, 0)) < 1e-15);
  CHECK(s.moments[1](0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(std::abs(s.moments[2](0, 0)) < 1e-15);
}

TEST_CASE("moments of polynomial data match analytic integrals") {
  // q = 1 + 2x + 3x^2 - x^5 on cells of width 0.25.
  auto q = [](double x) { return 1 + 2 * x + 3 * x * x - std::pow(x, 5); };
  const Grid g(4, 0.0, 1.0);
  const State s = init_state(datum_of(q), g, VariantConfig::variant_c(7).layout(), 1);
  for (int i = 0; i < 4; ++i) {
    const double xc = g.center_x(i), dx = g.dx();
    for (int p = 0; p < 5; ++p) {
      // Composite Simpson with many panels as the independent integral.
      const int n = 2000;
      double sum = 0.0;
      for (int k = 0; k <= n; ++k) {
        const double xi = -0.5 + static_cast<double>(k) / n;
        const double w = (k == 0 || k == n) ? 1 : (k % 2 ? 4 : 2);
        sum += w * std::pow(xi, p) * q(xc + dx * xi);
      }
      const double expect = (p + 1) * std::ldexp(1.0, p) * sum / (3.0 * n);
      CHECK(s.moments[p](0, i) == doctest::Approx(expect).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("moment normalization") {
  CHECK(moment_normalization(0, 0.5) == doctest::Approx(2.0));
  CHECK(moment_normalization(1, 1.0) == doctest::Approx(4.0));
  CHECK(moment_normalization(2, 2.0) == doctest::Approx(12.0 / 8.0));
}

TEST_CASE("L1 errors") {
  const Grid g(1, 0.0, 1.0);
  State s(VariantConfig::variant_a("FD3").layout(), 1, 1);
  s.iface(0, 0) = 1.25;
  s.avg()(0, 0) = 1.5;
  const auto one = sampler_of([](double) { return 1.0; }, [](double, double) { return 1.0; });
  const L1Errors e = l1_errors(s, one, g);
  CHECK(e.point == doctest::Approx(0.25));
  CHECK(e.average == doctest::Approx(0.5));

  s.iface(0, 0) = 1.0;
  s.avg()(0, 0) = 1.0;
  const L1Errors zero = l1_errors(s, one, g);
  CHECK(zero.point == 0.0);
  CHECK(zero.average == 0.0);

  // Same pointwise discrepancy on twice the cells: the dx weighting keeps the error.
  const Grid g2(2, 0.0, 1.0);
  State s2(VariantConfig::variant_a("FD3").layout(), 1, 2);
  for (int i = 0; i < 2; ++i) s2.iface(0, i) = 1.25, s2.avg()(0, i) = 1.0;
  CHECK(l1_errors(s2, one, g2).point == doctest::Approx(0.25));
}

TEST_CASE("total conserved") {
  const Grid g10(10, 0.0, 1.0);
  State s(VariantConfig::variant_a("FD3").layout(), 1, 10);
  for (int i = 0; i < 10; ++i) s.avg()(0, i) = 1.0;
  CHECK(total_conserved(s, g10)[0] == doctest::Approx(1.0));

  const Grid g2(2, 0.0, 1.0);
  State t(VariantConfig::variant_a("FD3").layout(), 1, 2);
  t.avg()(0, 0) = 1.0;
  t.avg()(0, 1) = 3.0;
  CHECK(total_conserved(t, g2)[0] == doctest::Approx(2.0));
}

TEST_CASE("invalid interior layouts are rejected") {
  Layout bad{VariantKind::B, {0.2, -0.2}, 1};
  CHECK_THROWS_AS(State(bad, 1, 4), InvalidArgument);
  Layout outside{VariantKind::B, {0.5}, 1};
  CHECK_THROWS_AS(State(outside, 1, 4), InvalidArgument);
}

TEST_CASE("presets follow their formulas") {
  const Problem adv = preset("advection-gauss");
  const Problem bg = preset("burgers-gauss");
  const Problem rp = preset("burgers-riemann");
  const Problem sod = preset("sod");
  for (double x = 0.0; x <= 1.0; x += 0.0371) {
    CHECK(adv.datum.value(x)[0] == doctest::Approx(0.8 + std::exp(-(x - 0.5) * (x - 0.5) / 0.0025)).epsilon(1e-15));
    CHECK(bg.datum.value(x)[0] == doctest::Approx(2.5 * std::exp(-(x - 0.5) * (x - 0.5) / 0.01) - 0.2).epsilon(1e-15));
    const Vec q = sod.datum.value(x);
    const bool inner = x > 1.0 / 3.0 && x < 2.0 / 3.0;
    CHECK(q[0] == (inner ? 1.0 : 0.125));
    CHECK(q[1] == 0.0);
    CHECK(sod.model.pressure(q) == doctest::Approx(inner ? 1.0 : 0.1).epsilon(1e-15));
  }
  CHECK(rp.datum.value(-0.3)[0] == 2.0);
  CHECK(rp.datum.value(0.0)[0] == 2.0);
  CHECK(rp.datum.value(0.4)[0] == -1.0);
  CHECK(rp.x_min == -1.0);
  CHECK(rp.x_max == 1.0);
  CHECK(adv.model.is_linear());
  CHECK(sod.model.gamma() == 1.4);
  CHECK_THROWS_AS(preset("unknown"), InvalidArgument);
}
