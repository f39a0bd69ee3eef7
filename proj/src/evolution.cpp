#include "af/evolution.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "af/errors.hpp"

namespace af {

namespace {

constexpr int kRangeSamples = 10;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

QuadratureRule lobatto_rule(int m) {
  switch (m) {
    case 3:
      return {{0.0, 0.5, 1.0}, {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0}};
    case 4: {
      const double s = std::sqrt(5.0);
      return {{0.0, (5.0 - s) / 10.0, (5.0 + s) / 10.0, 1.0}, {1.0 / 12.0, 5.0 / 12.0, 5.0 / 12.0, 1.0 / 12.0}};
    }
    case 5: {
      const double s = std::sqrt(3.0 / 7.0);
      return {{0.0, (1.0 - s) / 2.0, 0.5, (1.0 + s) / 2.0, 1.0},
              {1.0 / 20.0, 49.0 / 180.0, 16.0 / 45.0, 49.0 / 180.0, 1.0 / 20.0}};
    }
    default:
      throw InvalidArgument("Gauss-Lobatto rule supports 3, 4 or 5 nodes");
  }
}

QuadratureRule equidistant_rule(int m) {
  if (m < 2) throw InvalidArgument("equidistant rule needs at least two nodes");
  QuadratureRule rule;
  Eigen::MatrixXd v(m, m);
  Eigen::VectorXd rhs(m);
  for (int k = 0; k < m; ++k) rule.nodes.push_back(static_cast<double>(k) / (m - 1));
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) v(j, k) = std::pow(rule.nodes[k], j);
    rhs(j) = 1.0 / (j + 1);
  }
  const Eigen::VectorXd w = v.fullPivLu().solve(rhs);
  rule.weights.assign(w.data(), w.data() + m);
  return rule;
}

GlobalRecon::GlobalRecon(const Grid& grid, std::vector<ReconChoice> cells) : grid_(grid), cells_(std::move(cells)) {
  if (static_cast<int>(cells_.size()) != grid.cells()) throw InvalidArgument("one reconstruction per cell required");
}

Location GlobalRecon::locate(Location loc, double shift, double upwind_sign) const {
  double xi = loc.xi + shift;
  int i = loc.cell;
  while (xi > 0.5 || (xi == 0.5 && upwind_sign < 0.0)) {
    xi -= 1.0;
    ++i;
  }
  while (xi < -0.5 || (xi == -0.5 && upwind_sign > 0.0)) {
    xi += 1.0;
    --i;
  }
  return {grid_.wrap(i), xi};
}

double GlobalRecon::evaluate(double x) const {
  const double u = (x - grid_.x_min()) / grid_.dx();
  const double i = std::floor(u);
  return evaluate(Location{grid_.wrap(static_cast<int>(i)), u - i - 0.5});
}

GlobalRecon build_recon_b(const State& state, const Grid& grid, bool limiter) {
  const double dx = grid.dx();
  const int k = static_cast<int>(state.xi.size());
  std::vector<double> xs{-0.5 * dx};
  for (double xi : state.xi) xs.push_back(xi * dx);
  xs.push_back(0.5 * dx);

  // Cardinal polynomials: the reconstruction is linear in (point data, average).
  std::vector<LocalPolynomial> basis;
  std::vector<double> unit(xs.size(), 0.0);
  for (size_t j = 0; j <= xs.size(); ++j) {
    std::fill(unit.begin(), unit.end(), 0.0);
    if (j < xs.size()) unit[j] = 1.0;
    basis.push_back(interpolate_points_with_average(xs, unit, j == xs.size() ? 1.0 : 0.0, dx));
  }

  std::vector<ReconChoice> cells(grid.cells());
  std::vector<double> ys(xs.size());
  for (int i = 0; i < grid.cells(); ++i) {
    ys.front() = state.iface(0, grid.wrap(i - 1));
    for (int j = 0; j < k; ++j) ys[j + 1] = state.interior[j](0, i);
    ys.back() = state.iface(0, i);
    const double avg = state.avg()(0, i);

    ReconChoice& rc = cells[i];
    rc.tag = k == 0 ? ReconTag::Parabola : ReconTag::PolyHigh;
    rc.poly.dx = dx;
    rc.poly.coeffs.assign(basis.front().coeffs.size(), 0.0);
    for (size_t j = 0; j <= xs.size(); ++j) {
      const double w = j < xs.size() ? ys[j] : avg;
      for (size_t n = 0; n < rc.poly.coeffs.size(); ++n) rc.poly.coeffs[n] += w * basis[j].coeffs[n];
    }
    if (limiter) {
      const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
      const double mn = std::min(*lo, avg), mx = std::max(*hi, avg);
      if (!within_range_on_samples(rc.poly, mn, mx, kRangeSamples)) {
        rc = limited_parabola_or_power(ys.front(), avg, ys.back(), dx);
        if (!rc.is_power_law() && k > 0) {
          rc.tag = ReconTag::PolyReduced;
          rc.level = k;
        }
      }
    }
  }
  return GlobalRecon(grid, std::move(cells));
}

double advect_trace(const GlobalRecon& recon, Location x, double t, double c) {
  const double dx = recon.grid().dx();
  if (std::abs(c) * t > dx * (1.0 + 1e-12)) throw CflExceeded("characteristic foot leaves the neighbouring cell");
  return recon.evaluate(recon.locate(x, -c * t / dx, c));
}

Foot footpoint_iterate(const GlobalRecon& recon, Location x, double t, const Model& model, double seed_value,
                       int iters) {
  const double dx = recon.grid().dx();
  double speed = model.speed(seed_value);
  Location at = x;
  double value = recon.evaluate(x);
  for (int l = 0; l < iters; ++l) {
    at = recon.locate(x, -speed * t / dx, speed);
    value = recon.evaluate(at);
    speed = model.speed(value);
  }
  return {at, speed, value};
}

double transonic_select_b(const GlobalRecon& recon, Location x, double t, const Model& model, double seed_left,
                          double seed_right, int iters) {
  if (t == 0.0) return recon.evaluate(x);
  const Foot a = footpoint_iterate(recon, x, t, model, seed_left, iters);
  const Foot b = footpoint_iterate(recon, x, t, model, seed_right, iters);
  return std::abs(b.speed) > std::abs(a.speed) ? b.value : a.value;
}

double upwind_ref_state(const Model& model, double q_lm, double q_c, double q_rp) {
  const double sl = model.speed(q_lm), sc = model.speed(q_c), sr = model.speed(q_rp);
  if (sign_of(sl) == sign_of(sc) && sign_of(sc) == sign_of(sr)) return q_c;
  if (q_lm < q_rp) return q_c;
  const double al = std::abs(sl), ac = std::abs(sc), ar = std::abs(sr);
  if (al >= std::max(ac, ar)) return q_lm;
  if (ac >= std::max(al, ar)) return q_c;
  return q_rp;
}

Vec upwind_ref_state(const Model& model, const Vec& q_lm, const Vec& q_c, const Vec& q_rp) {
  if (!model.is_scalar()) return q_c;
  return Vec{upwind_ref_state(model, q_lm[0], q_c[0], q_rp[0])};
}

}  // namespace af
