#pragma once

#include <vector>

#include "af/core.hpp"
#include "af/models.hpp"
#include "af/reconstruction.hpp"

namespace af {

// Time quadrature on [0, 1] including both endpoints.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

QuadratureRule lobatto_rule(int m);      // m in {3, 4, 5}
QuadratureRule equidistant_rule(int m);  // closed Newton-Cotes, m >= 2

// A position expressed as (cell, reference coordinate in [-1/2, 1/2]).
struct Location {
  int cell;
  double xi;
};

// Piecewise reconstruction over the periodic grid, one choice per cell.
class GlobalRecon {
 public:
  GlobalRecon(const Grid& grid, std::vector<ReconChoice> cells);

  const Grid& grid() const { return grid_; }
  const ReconChoice& cell(int i) const { return cells_[grid_.wrap(i)]; }

  // Moves `loc` by `shift` reference units and normalizes into a cell.
  // A location exactly on an interface is attributed to the upwind cell:
  // the left one when upwind_sign > 0, the right one when upwind_sign < 0.
  Location locate(Location loc, double shift, double upwind_sign) const;

  double evaluate(Location loc) const { return cell(loc.cell).at_xi(loc.xi); }
  // Absolute position, periodic.
  double evaluate(double x) const;

 private:
  Grid grid_;
  std::vector<ReconChoice> cells_;
};

// Variant B cell reconstructions from interface, interior and average data
// (component 0). With the limiter on, a polynomial leaving the local data
// range at 10 interior samples is replaced by the parabola/power-law choice.
GlobalRecon build_recon_b(const State& state, const Grid& grid, bool limiter);

// Exact trace for linear advection: the reconstruction at x - c t.
// Throws CflExceeded when |c| t > dx.
double advect_trace(const GlobalRecon& recon, Location x, double t, double c);

struct Foot {
  Location at;
  double speed;
  double value;
};

// x0 <- x - f'(q(x0)) t starting from the speed f'(seed_value).
Foot footpoint_iterate(const GlobalRecon& recon, Location x, double t, const Model& model, double seed_value,
                       int iters);

// Runs the iteration from the two seeds and keeps the foot with the larger
// |speed|; ties go to the left seed.
double transonic_select_b(const GlobalRecon& recon, Location x, double t, const Model& model, double seed_left,
                          double seed_right, int iters);

// Upwind reference state from (q_{i-1/2}, q_{i+1/2}, q_{i+3/2}); scalar case
// table, systems return q_c.
Vec upwind_ref_state(const Model& model, const Vec& q_lm, const Vec& q_c, const Vec& q_rp);
double upwind_ref_state(const Model& model, double q_lm, double q_c, double q_rp);

}  // namespace af
