#pragma once

// Runs the real scheme on one Fourier mode and compares with the symbol.

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "af/problems.hpp"
#include "af/schemes.hpp"
#include "af/stability.hpp"

namespace af::testing {

// Entry r of the per-cell block Q: interface value, then averages/moments, then interior points.
inline Field& block_field(State& s, int r) {
  if (r == 0) return s.iface;
  if (r - 1 < static_cast<int>(s.moments.size())) return s.moments[r - 1];
  return s.interior[r - 1 - s.moments.size()];
}

// Largest deviation between `steps` scheme steps on the mode j of an
// n-cell grid and the matrix power prediction, relative to the initial
// amplitude. Unit advection speed, dt = nu dx.
inline double fourier_mismatch(const VariantConfig& config, double nu, int n, int j, int steps) {
  const Grid grid(n, 0.0, 1.0);
  const Solver solver(Model::advection(1.0), config, grid);
  const double K = 2.0 * std::numbers::pi * j / n;
  const Complex t = std::polar(1.0, K);
  const int size = symbol_size(config);

  Eigen::VectorXcd q0(size);
  for (int r = 0; r < size; ++r) q0(r) = Complex(1.0 - 0.3 * r, 0.2 + 0.1 * r);

  const CMatrix m = build_update_matrix({config, nu}, K);
  Eigen::VectorXcd q = q0;
  for (int s = 0; s < steps; ++s) q = m * q;

  double worst = 0.0;
  for (int part = 0; part < 2; ++part) {
    State s(config.layout(), 1, n);
    for (int r = 0; r < size; ++r) {
      for (int i = 0; i < n; ++i) {
        const Complex v = q0(r) * std::pow(t, i);
        block_field(s, r)(0, i) = part == 0 ? v.real() : v.imag();
      }
    }
    for (int k = 0; k < steps; ++k) s = solver.step(s, nu * grid.dx());
    for (int r = 0; r < size; ++r) {
      for (int i = 0; i < n; ++i) {
        const Complex v = q(r) * std::pow(t, i);
        const double expect = part == 0 ? v.real() : v.imag();
        worst = std::max(worst, std::abs(block_field(s, r)(0, i) - expect));
      }
    }
  }
  return worst / q0.cwiseAbs().maxCoeff();
}

}  // namespace af::testing
