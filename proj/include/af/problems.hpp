#pragma once

#include <string>
#include <vector>

#include "af/core.hpp"
#include "af/models.hpp"

namespace af {

// 0.8 + exp(-(x - 0.5)^2 / 0.05^2) on [0, 1].
InitialDatum gauss_narrow_datum();
// 2.5 exp(-(x - 0.5)^2 / 0.1^2) - 0.2 on [0, 1].
InitialDatum gauss_transonic_datum();
// 2 for x <= 0, -1 for x > 0 on [-1, 1] (periodic: a second jump at x = +-1).
InitialDatum riemann_step_datum();
// (rho, v, p) = (1, 0, 1) inside (1/3, 2/3), (0.125, 0, 0.1) outside.
InitialDatum sod_datum(const Model& euler);

const std::vector<std::string>& preset_names();
// advection-gauss, burgers-gauss, burgers-riemann, sod. Throws InvalidArgument.
Problem preset(const std::string& name);

// Periodic extension of a datum's antiderivative.
double periodic_antiderivative(const InitialDatum& datum, double x_min, double x_max, double x);

ExactSampler advection_exact(const InitialDatum& datum, double x_min, double x_max, double c, double t);

// Solves x = x0 + q0(x0) t; valid before the first shock.
double burgers_foot(const InitialDatum& datum, double x_min, double x_max, double x, double t);
ExactSampler burgers_exact(const InitialDatum& datum, double x_min, double x_max, double t);

// min over samples of -1 / q0'(x) for q0' < 0; +inf when nothing steepens.
double burgers_shock_time(const InitialDatum& datum, double x_min, double x_max, int samples = 20000);

// Exact sampler for a preset at time t, when one is available (advection and
// pre-shock Burgers). Throws InvalidArgument otherwise.
ExactSampler exact_for(const Problem& problem, double t);

}  // namespace af
