#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "af/core.hpp"
#include "af/evolution.hpp"
#include "af/models.hpp"
#include "af/quadrature.hpp"
#include "af/reconstruction.hpp"
#include "af/stencils.hpp"

namespace af {

enum class RkScheme { Ssp3, Rk5 };

struct VariantConfig {
  VariantKind kind = VariantKind::A;
  bool limiter = false;
  RkScheme rk = RkScheme::Ssp3;

  // A
  std::string fd_name = "FD3";
  std::optional<double> fd_param;

  // B
  std::vector<double> xi;
  int quad_m = 3;
  bool equidistant_quad = false;
  int iterations = 0;  // 0: scheme order

  // C
  int md_order = 3;
  int interior_nodes = 0;  // 0: enough for quadratic fluxes

  // A: tableau order; B: number of interior points + 3; C: MD order.
  int order() const;
  int moments() const { return kind == VariantKind::C ? md_order - 2 : 1; }
  Layout layout() const;
  std::string describe() const;

  static VariantConfig variant_a(std::string fd, std::optional<double> param = std::nullopt, bool limiter = false);
  static VariantConfig variant_b(std::vector<double> xi, int quad_m, bool limiter = false);
  static VariantConfig variant_c(int md_order, bool limiter = false);
};

double max_speed_over(const State& state, const Model& model);

// dt = cfl dx / max speed; +inf when every speed vanishes.
double compute_dt(const State& state, const Model& model, double cfl, const Grid& grid);

using Rhs = std::function<State(const State&)>;

// SSP-RK3 (Shu-Osher form) or the six-stage fifth-order method.
State rk_step(const Rhs& rhs, const State& state, double dt, RkScheme scheme);

// State arithmetic used by the integrators: out = a x + b y, y += a x.
void state_axpby(State& out, double a, const State& x, double b, const State& y);
void state_axpy(State& y, double a, const State& x);

// Which way the positive-speed (D) or negative-speed (D*) formula points.
enum class Direction { Plus, Minus };

// Values touched by one FD family member around an interface, component c.
struct CascadeWindow {
  const Field* iface;
  const Field* avg;
  int c;
  int anchor;
  double dx;
};

class Solver {
 public:
  Solver(Model model, VariantConfig config, Grid grid);

  const Model& model() const { return model_; }
  const VariantConfig& config() const { return config_; }
  const Grid& grid() const { return grid_; }

  State init(const InitialDatum& datum) const;

  State rhs_a(const State& s) const;
  State rhs_c(const State& s) const;
  State step_b(const State& s, double dt) const;

  // One full time step of the configured variant.
  State step(const State& s, double dt) const;
  double dt_for(const State& s, double cfl) const { return compute_dt(s, model_, cfl, grid_); }

  // Limited derivative at interface `anchor` for one direction.
  double fd_limit_cascade(const CascadeWindow& w, Direction dir) const;

 private:
  void point_update(State& out, const State& s, const Field& d_plus, const Field& d_minus) const;
  // recon, when given, holds the limited reconstruction of cell i, component c
  // at c * cells + i; the nonlinear moment integrals then use it.
  void moment_update(State& out, const State& s, const std::vector<ReconChoice>* recon = nullptr) const;
  ReconChoice limited_moment_recon(const State& s, int c, int i) const;

  Model model_;
  VariantConfig config_;
  Grid grid_;
  std::vector<FdTableau> chain_;       // configured tableau, then lower orders
  std::vector<FdTableau> chain_flip_;
  MdTableau md_;
  MdTableau md_flip_;
  QuadratureRule time_rule_;
  int interior_nodes_ = 6;
  GaussRule flux_rule_;
  // Row q maps (q_l, q^(0..k), q_r) of a cell to its reconstruction at flux_rule_ node q.
  std::vector<std::vector<double>> node_map_;
};

State rhs_variant_a(const State& state, const Model& model, const VariantConfig& config, const Grid& grid);
State rhs_variant_c(const State& state, const Model& model, const VariantConfig& config, const Grid& grid);
State step_variant_b(const State& state, const Model& model, const VariantConfig& config, const Grid& grid,
                     double dt);

struct StepInfo {
  int step;
  double t;
  double dt;
};

using Observer = std::function<void(const State&, const StepInfo&)>;

// Loops compute_dt / step until t_end, clipping the last step. The observer
// sees the initial state (step 0) and every subsequent state.
State advance(const Problem& problem, const VariantConfig& config, const Grid& grid, double cfl,
              const Observer& observer = {});
State advance(const Solver& solver, State state, double t_end, double cfl, const Observer& observer = {});

}  // namespace af
