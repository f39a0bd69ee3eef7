#include "af/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "af/errors.hpp"

namespace af {

namespace {

double wrap_into(double x, double x_min, double x_max) {
  const double L = x_max - x_min;
  double y = x - L * std::floor((x - x_min) / L);
  if (y >= x_max) y -= L;
  return y;
}

// Antiderivative of exp(-(x - 0.5)^2 / s^2).
double gauss_primitive(double x, double s) {
  return 0.5 * std::sqrt(std::numbers::pi) * s * std::erf((x - 0.5) / s);
}

double scalar_value(const InitialDatum& d, double x_min, double x_max, double x) {
  return d.value(wrap_into(x, x_min, x_max))[0];
}

double scalar_slope(const InitialDatum& d, double x_min, double x_max, double x) {
  const double h = 1e-6;
  return (scalar_value(d, x_min, x_max, x + h) - scalar_value(d, x_min, x_max, x - h)) / (2.0 * h);
}

}  // namespace

InitialDatum gauss_narrow_datum() {
  return {"advection-gauss",
          [](double x) { return Vec{0.8 + std::exp(-(x - 0.5) * (x - 0.5) / (0.05 * 0.05))}; },
          [](double x) { return Vec{0.8 * x + gauss_primitive(x, 0.05)}; }};
}

InitialDatum gauss_transonic_datum() {
  return {"burgers-gauss",
          [](double x) { return Vec{2.5 * std::exp(-(x - 0.5) * (x - 0.5) / (0.1 * 0.1)) - 0.2}; },
          [](double x) { return Vec{2.5 * gauss_primitive(x, 0.1) - 0.2 * x}; }};
}

InitialDatum riemann_step_datum() {
  return {"burgers-riemann", [](double x) { return Vec{x <= 0.0 ? 2.0 : -1.0}; },
          [](double x) { return Vec{x <= 0.0 ? 2.0 * x : -x}; }};
}

InitialDatum sod_datum(const Model& euler) {
  const Vec high = euler.conserved_from_primitive(1.0, 0.0, 1.0);
  const Vec low = euler.conserved_from_primitive(0.125, 0.0, 0.1);
  const double a = 1.0 / 3.0, b = 2.0 / 3.0;
  auto value = [=](double x) { return x > a && x < b ? high : low; };
  auto prim = [=](double x) {
    const double in = std::clamp(x, a, b) - a;
    return low * (x - in) + high * in;
  };
  return {"sod", value, prim};
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"advection-gauss", "burgers-gauss", "burgers-riemann", "sod"};
  return names;
}

Problem preset(const std::string& name) {
  if (name == "advection-gauss") return {Model::advection(1.0), gauss_narrow_datum(), 0.0, 1.0, 0.1};
  if (name == "burgers-gauss") return {Model::burgers(), gauss_transonic_datum(), 0.0, 1.0, 0.1};
  if (name == "burgers-riemann") return {Model::burgers(), riemann_step_datum(), -1.0, 1.0, 0.5};
  if (name == "sod") {
    const Model e = Model::euler(1.4);
    return {e, sod_datum(e), 0.0, 1.0, 0.1};
  }
  throw InvalidArgument("unknown problem: " + name);
}

double periodic_antiderivative(const InitialDatum& d, double x_min, double x_max, double x) {
  const double L = x_max - x_min;
  const double k = std::floor((x - x_min) / L);
  const double F0 = d.antiderivative(x_min)[0];
  const double period = d.antiderivative(x_max)[0] - F0;
  return k * period + d.antiderivative(x - k * L)[0] - F0;
}

ExactSampler advection_exact(const InitialDatum& d, double x_min, double x_max, double c, double t) {
  if (!d.antiderivative) throw InvalidArgument("datum has no antiderivative");
  ExactSampler s;
  s.point = [=](double x) { return d.value(wrap_into(x - c * t, x_min, x_max)); };
  s.average = [=](double a, double b) {
    const double m = periodic_antiderivative(d, x_min, x_max, b - c * t) -
                     periodic_antiderivative(d, x_min, x_max, a - c * t);
    return Vec{m / (b - a)};
  };
  return s;
}

double burgers_foot(const InitialDatum& d, double x_min, double x_max, double x, double t) {
  // g(x0) = x0 + q0(x0) t - x is increasing before the shock; the root lies in
  // [x - t max q0, x - t min q0]. Newton, falling back to bisection.
  double q_lo = std::numeric_limits<double>::infinity(), q_hi = -q_lo;
  for (int k = 0; k <= 512; ++k) {
    const double q = scalar_value(d, x_min, x_max, x_min + (x_max - x_min) * k / 512.0);
    q_lo = std::min(q_lo, q), q_hi = std::max(q_hi, q);
  }
  const double pad = 0.1 * (q_hi - q_lo) + 1e-12;
  double lo = x - t * (q_hi + pad), hi = x - t * (q_lo - pad);
  auto g = [&](double x0) { return x0 + scalar_value(d, x_min, x_max, x0) * t - x; };
  double x0 = x - scalar_value(d, x_min, x_max, x) * t;
  if (!(x0 > lo && x0 < hi)) x0 = 0.5 * (lo + hi);
  for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + std::abs(x0)); ++it) {
    const double gv = g(x0);
    if (gv == 0.0) return x0;
    (gv < 0.0 ? lo : hi) = x0;
    const double dg = 1.0 + scalar_slope(d, x_min, x_max, x0) * t;
    double next = dg > 0.0 ? x0 - gv / dg : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x0) <= 1e-16 * (1.0 + std::abs(x0))) return next;
    x0 = next;
  }
  return x0;
}

ExactSampler burgers_exact(const InitialDatum& d, double x_min, double x_max, double t) {
  if (!d.antiderivative) throw InvalidArgument("datum has no antiderivative");
  ExactSampler s;
  s.point = [=](double x) { return Vec{scalar_value(d, x_min, x_max, burgers_foot(d, x_min, x_max, x, t))}; };
  // Mass between two characteristics is conserved: integral of q dx over
  // [x(a0), x(b0)] equals G(b0) - G(a0) with G = Q0 + t q0^2 / 2.
  s.average = [=](double a, double b) {
    auto G = [&](double x0) {
      const double q = scalar_value(d, x_min, x_max, x0);
      return periodic_antiderivative(d, x_min, x_max, x0) + 0.5 * t * q * q;
    };
    const double a0 = burgers_foot(d, x_min, x_max, a, t);
    const double b0 = burgers_foot(d, x_min, x_max, b, t);
    return Vec{(G(b0) - G(a0)) / (b - a)};
  };
  return s;
}

double burgers_shock_time(const InitialDatum& d, double x_min, double x_max, int samples) {
  double steepest = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double x = x_min + (x_max - x_min) * (k + 0.5) / samples;
    steepest = std::min(steepest, scalar_slope(d, x_min, x_max, x));
  }
  return steepest < 0.0 ? -1.0 / steepest : std::numeric_limits<double>::infinity();
}

ExactSampler exact_for(const Problem& p, double t) {
  if (p.model.is_linear()) return advection_exact(p.datum, p.x_min, p.x_max, p.model.advection_speed(), t);
  if (p.model.is_scalar()) {
    if (p.datum.name == "burgers-riemann") throw InvalidArgument("no smooth reference for discontinuous data");
    if (t >= burgers_shock_time(p.datum, p.x_min, p.x_max)) {
      throw InvalidArgument("Burgers reference requested after shock formation");
    }
    return burgers_exact(p.datum, p.x_min, p.x_max, t);
  }
  throw InvalidArgument("no exact reference for systems");
}

}  // namespace af
