#include "af/schemes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "af/errors.hpp"
#include "af/kernels.hpp"
#include "af/reconstruction.hpp"

namespace af {

namespace {

constexpr int kMonotoneSamples = 5;
const char* const kCascadeFamily[] = {"FD8a", "FD7", "FD6b", "FD5b", "FD4b", "FD3"};

State zero_like(const State& s) {
  State out = s;
  for (Field* f : out.fields()) std::fill(f->raw().begin(), f->raw().end(), 0.0);
  return out;
}

void check_finite(const State& s) {
  for (const Field* f : s.fields()) {
    for (double v : f->raw()) {
      if (!std::isfinite(v)) throw NonPhysicalState("non-finite value in state");
    }
  }
}

// Differences within tol count as flat, so quadrature round-off on constant
// data does not decide the branch.
bool monotone_sequence(const double* v, int n, double tol) {
  bool up = true, down = true;
  for (int k = 1; k < n; ++k) {
    if (v[k] < v[k - 1] - tol) up = false;
    if (v[k] > v[k - 1] + tol) down = false;
  }
  return up || down;
}

double flush(double x, double tol) { return std::abs(x) <= tol ? 0.0 : x; }

double position(const FdEntry& e) { return e.offset - (e.slot == Slot::Average ? 0.5 : 0.0); }

std::vector<kernels::Term> fd_terms(const FdTableau& t, const Field& iface, const Field& avg, int c) {
  std::vector<kernels::Term> terms;
  for (const auto& e : t.entries()) {
    const Field& f = e.slot == Slot::Point ? iface : avg;
    terms.push_back({f.component(c).data(), e.offset, t.coeff(e)});
  }
  return terms;
}

// Terms of an MD formula; `cell_offset` is 0 for the right-anchored formula
// at interface i (cell i) and 1 for the flipped one (cell i+1).
std::vector<kernels::Term> md_terms(const MdTableau& t, const State& s, int c, int cell_offset) {
  std::vector<kernels::Term> terms;
  terms.push_back({s.iface.component(c).data(), cell_offset - 1, t.left});
  for (size_t p = 0; p < t.moments.size(); ++p) {
    terms.push_back({s.moments[p].component(c).data(), cell_offset, t.moments[p]});
  }
  terms.push_back({s.iface.component(c).data(), cell_offset, t.right});
  return terms;
}

}  // namespace

int VariantConfig::order() const {
  switch (kind) {
    case VariantKind::A: return fd_tableau(fd_name, fd_param).order();
    case VariantKind::B: return static_cast<int>(xi.size()) + 3;
    case VariantKind::C: return md_order;
  }
  return 0;
}

Layout VariantConfig::layout() const {
  switch (kind) {
    case VariantKind::A: return {VariantKind::A, {}, 1};
    case VariantKind::B: return {VariantKind::B, xi, 1};
    case VariantKind::C: return {VariantKind::C, {}, md_order - 2};
  }
  return {};
}

std::string VariantConfig::describe() const {
  // Shortest round-trip form keeps the record stable and exact.
  auto num = [](double v) {
    char buf[32];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
  };
  std::ostringstream os;
  switch (kind) {
    case VariantKind::A:
      os << "variant=A fd=" << fd_name;
      if (auto a = fd_param ? fd_param : fd_default_parameter(fd_name)) os << " param=" << num(*a);
      break;
    case VariantKind::B:
      os << "variant=B xi=";
      for (size_t j = 0; j < xi.size(); ++j) os << (j ? ";" : "") << num(xi[j]);
      os << " quad_m=" << quad_m << (equidistant_quad ? " quad=equidistant" : " quad=lobatto");
      break;
    case VariantKind::C:
      os << "variant=C md=" << md_order << " moments=" << md_order - 2;
      break;
  }
  os << " limiter=" << (limiter ? "on" : "off");
  if (kind != VariantKind::B) os << " rk=" << (rk == RkScheme::Ssp3 ? "rk3" : "rk5");
  return os.str();
}

VariantConfig VariantConfig::variant_a(std::string fd, std::optional<double> param, bool limiter) {
  VariantConfig c;
  c.kind = VariantKind::A;
  c.fd_name = std::move(fd);
  c.fd_param = param;
  c.limiter = limiter;
  return c;
}

VariantConfig VariantConfig::variant_b(std::vector<double> xi, int quad_m, bool limiter) {
  VariantConfig c;
  c.kind = VariantKind::B;
  c.xi = std::move(xi);
  c.quad_m = quad_m;
  c.limiter = limiter;
  return c;
}

VariantConfig VariantConfig::variant_c(int md_order, bool limiter) {
  VariantConfig c;
  c.kind = VariantKind::C;
  c.md_order = md_order;
  c.limiter = limiter;
  return c;
}

double max_speed_over(const State& state, const Model& model) {
  double s = 0.0;
  for (int i = 0; i < state.cells(); ++i) s = std::max(s, model.max_speed(state.iface.at(i)));
  for (const Field& f : state.interior) {
    for (int i = 0; i < state.cells(); ++i) s = std::max(s, model.max_speed(f.at(i)));
  }
  return s;
}

double compute_dt(const State& state, const Model& model, double cfl, const Grid& grid) {
  if (!(cfl > 0.0)) throw InvalidArgument("cfl must be positive");
  const double s = max_speed_over(state, model);
  if (!std::isfinite(s)) throw NonPhysicalState("non-finite characteristic speed");
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  return cfl * grid.dx() / s;
}

void state_axpby(State& out, double a, const State& x, double b, const State& y) {
  const auto& k = kernels::active();
  auto fo = out.fields();
  auto fx = x.fields();
  auto fy = y.fields();
  for (size_t f = 0; f < fo.size(); ++f) {
    k.axpby(fo[f]->raw().data(), a, fx[f]->raw().data(), b, fy[f]->raw().data(), fo[f]->raw().size());
  }
}

void state_axpy(State& y, double a, const State& x) {
  const auto& k = kernels::active();
  auto fy = y.fields();
  auto fx = x.fields();
  for (size_t f = 0; f < fy.size(); ++f) k.axpy(fy[f]->raw().data(), a, fx[f]->raw().data(), fy[f]->raw().size());
}

State rk_step(const Rhs& rhs, const State& u, double dt, RkScheme scheme) {
  if (scheme == RkScheme::Ssp3) {
    State u1 = u;
    state_axpy(u1, dt, rhs(u));
    State u2 = u1;
    state_axpy(u2, dt, rhs(u1));
    state_axpby(u2, 0.75, u, 0.25, u2);
    State u3 = u2;
    state_axpy(u3, dt, rhs(u2));
    state_axpby(u3, 1.0 / 3.0, u, 2.0 / 3.0, u3);
    return u3;
  }
  // Six-stage fifth-order method, nodes 0, 1/4, 1/4, 1/2, 3/4, 1.
  const State k1 = rhs(u);
  State y = u;
  state_axpy(y, dt / 4.0, k1);
  const State k2 = rhs(y);
  y = u;
  state_axpy(y, dt / 8.0, k1);
  state_axpy(y, dt / 8.0, k2);
  const State k3 = rhs(y);
  y = u;
  state_axpy(y, -dt / 2.0, k2);
  state_axpy(y, dt, k3);
  const State k4 = rhs(y);
  y = u;
  state_axpy(y, 3.0 * dt / 16.0, k1);
  state_axpy(y, 9.0 * dt / 16.0, k4);
  const State k5 = rhs(y);
  y = u;
  state_axpy(y, -3.0 * dt / 7.0, k1);
  state_axpy(y, 2.0 * dt / 7.0, k2);
  state_axpy(y, 12.0 * dt / 7.0, k3);
  state_axpy(y, -12.0 * dt / 7.0, k4);
  state_axpy(y, 8.0 * dt / 7.0, k5);
  const State k6 = rhs(y);
  y = u;
  state_axpy(y, 7.0 * dt / 90.0, k1);
  state_axpy(y, 32.0 * dt / 90.0, k3);
  state_axpy(y, 12.0 * dt / 90.0, k4);
  state_axpy(y, 32.0 * dt / 90.0, k5);
  state_axpy(y, 7.0 * dt / 90.0, k6);
  return y;
}

Solver::Solver(Model model, VariantConfig config, Grid grid)
    : model_(std::move(model)), config_(std::move(config)), grid_(grid) {
  switch (config_.kind) {
    case VariantKind::A: {
      const FdTableau top = fd_tableau(config_.fd_name, config_.fd_param);
      chain_.push_back(top);
      for (const char* name : kCascadeFamily) {
        const FdTableau t = fd_tableau(name);
        if (t.order() < top.order()) chain_.push_back(t);
      }
      if (chain_.back().name() != "FD3") chain_.push_back(fd_tableau("FD3"));
      for (const auto& t : chain_) chain_flip_.push_back(t.flip());
      break;
    }
    case VariantKind::B: {
      if (!model_.is_scalar()) throw InvalidArgument("variant B supports scalar conservation laws only");
      time_rule_ = config_.equidistant_quad ? equidistant_rule(config_.quad_m) : lobatto_rule(config_.quad_m);
      State probe(config_.layout(), 1, 1);  // validates the offsets
      break;
    }
    case VariantKind::C: {
      md_ = md_tableau(config_.md_order);
      md_flip_ = md_flip(md_);
      const int k = config_.md_order - 3;
      interior_nodes_ =
          config_.interior_nodes > 0 ? config_.interior_nodes : std::max(6, (3 * k + 5) / 2 + 2);
      flux_rule_ = gauss_legendre(interior_nodes_);
      const int n_data = k + 3;
      node_map_.assign(flux_rule_.nodes.size(), std::vector<double>(n_data));
      std::vector<double> mom(k + 1);
      for (int j = 0; j < n_data; ++j) {
        std::fill(mom.begin(), mom.end(), 0.0);
        if (j > 0 && j < n_data - 1) mom[j - 1] = 1.0;
        const LocalPolynomial basis =
            moment_poly(j == 0 ? 1.0 : 0.0, j == n_data - 1 ? 1.0 : 0.0, mom, grid_.dx());
        for (size_t q = 0; q < flux_rule_.nodes.size(); ++q) node_map_[q][j] = basis.at_xi(flux_rule_.nodes[q]);
      }
      break;
    }
  }
}

State Solver::init(const InitialDatum& datum) const {
  return init_state(datum, grid_, config_.layout(), model_.components());
}

double Solver::fd_limit_cascade(const CascadeWindow& w, Direction dir) const {
  const Field& q = *w.iface;
  const Field& a = *w.avg;
  const int n = q.size();
  auto P = [&](int j) { return q(w.c, ((w.anchor + j) % n + n) % n); };
  auto A = [&](int j) { return a(w.c, ((w.anchor + j) % n + n) % n); };

  const auto& chain = dir == Direction::Plus ? chain_ : chain_flip_;
  const double ref = dir == Direction::Plus ? P(0) - A(0) : A(1) - P(0);

  double window[32];
  for (const FdTableau& t : chain) {
    const double value = fd_apply(t, q, a, w.c, w.anchor, w.dx);
    std::vector<FdEntry> entries = t.entries();
    std::sort(entries.begin(), entries.end(),
              [](const FdEntry& x, const FdEntry& y) { return position(x) < position(y); });
    const int m = static_cast<int>(entries.size());
    double scale = 0.0;
    for (int k = 0; k < m; ++k) {
      window[k] = entries[k].slot == Slot::Point ? P(entries[k].offset) : A(entries[k].offset);
      scale = std::max(scale, std::abs(window[k]));
    }
    const double tol = kLimiterRoundoff * scale;
    if (!monotone_sequence(window, m, tol)) return value;
    const double r0 = flush(ref, tol);
    const double trend = r0 != 0.0 ? r0 : flush(window[m - 1] - window[0], tol);
    if (trend == 0.0 || value * trend >= 0.0) return value;
  }

  // Power-law fallback on the upwind cell. Above the exponent range FD3 is
  // used; below it FD3 has the wrong sign, so the exponent is clamped instead.
  double ql, avg, qr, num, den;
  if (dir == Direction::Plus) {
    ql = P(-1), avg = A(0), qr = P(0);
    num = qr - avg, den = avg - ql;
  } else {
    ql = P(0), avg = A(1), qr = P(1);
    num = avg - ql, den = qr - avg;
  }
  const double tol = kLimiterRoundoff * std::max({std::abs(ql), std::abs(avg), std::abs(qr)});
  num = flush(num, tol), den = flush(den, tol);
  if (den != 0.0) {
    const double r = std::max(num / den, 0.0);
    if (r <= kMaxPowerExponent) return (qr - ql) * std::max(r, kMinPowerExponent) / w.dx;
  }
  return fd_apply(dir == Direction::Plus ? chain_.back() : chain_flip_.back(), q, a, w.c, w.anchor, w.dx);
}

void Solver::point_update(State& out, const State& s, const Field& d_plus, const Field& d_minus) const {
  const int n = s.cells();
  if (model_.is_scalar()) {
    for (int i = 0; i < n; ++i) {
      const double qt = upwind_ref_state(model_, s.iface(0, grid_.wrap(i - 1)), s.iface(0, i),
                                         s.iface(0, grid_.wrap(i + 1)));
      const double lam = model_.speed(qt);
      out.iface(0, i) = -(std::max(lam, 0.0) * d_plus(0, i) + std::min(lam, 0.0) * d_minus(0, i));
    }
    return;
  }
  for (int i = 0; i < n; ++i) {
    const SplitJacobian split = eig_split(model_, s.iface.at(i));
    const Vec dq = split.plus * d_plus.at(i) + split.minus * d_minus.at(i);
    out.iface.set(i, -1.0 * dq);
  }
}

State Solver::rhs_a(const State& s) const {
  const auto& k = kernels::active();
  const int m = s.components(), n = s.cells();
  const double dx = grid_.dx();
  State out = zero_like(s);

  Field flux(m, n);
  for (int i = 0; i < n; ++i) flux.set(i, model_.flux(s.iface.at(i)));
  for (int c = 0; c < m; ++c) k.flux_difference(out.avg().component(c).data(), flux.component(c).data(), n, dx);

  Field d_plus(m, n), d_minus(m, n);
  if (!config_.limiter) {
    for (int c = 0; c < m; ++c) {
      auto tp = fd_terms(chain_.front(), s.iface, s.avg(), c);
      auto tm = fd_terms(chain_flip_.front(), s.iface, s.avg(), c);
      k.stencil_sweep(d_plus.component(c).data(), tp.data(), static_cast<int>(tp.size()), n, dx);
      k.stencil_sweep(d_minus.component(c).data(), tm.data(), static_cast<int>(tm.size()), n, dx);
    }
  } else {
    for (int c = 0; c < m; ++c) {
      for (int i = 0; i < n; ++i) {
        const CascadeWindow w{&s.iface, &s.avg(), c, i, dx};
        d_plus(c, i) = fd_limit_cascade(w, Direction::Plus);
        d_minus(c, i) = fd_limit_cascade(w, Direction::Minus);
      }
    }
  }
  point_update(out, s, d_plus, d_minus);
  return out;
}

void Solver::moment_update(State& out, const State& s, const std::vector<ReconChoice>* recon) const {
  const auto& k = kernels::active();
  const int m = s.components(), n = s.cells();
  const int n_mom = static_cast<int>(s.moments.size());
  const double dx = grid_.dx();

  Field flux(m, n);
  for (int i = 0; i < n; ++i) flux.set(i, model_.flux(s.iface.at(i)));
  for (int c = 0; c < m; ++c) k.flux_difference(out.avg().component(c).data(), flux.component(c).data(), n, dx);
  if (n_mom == 1) return;

  for (int p = 1; p < n_mom; ++p) {
    const double sgn = p % 2 == 0 ? 1.0 : -1.0;
    for (int c = 0; c < m; ++c) {
      for (int i = 0; i < n; ++i) {
        out.moments[p](c, i) = -(p + 1) * (flux(c, i) - sgn * flux(c, grid_.wrap(i - 1))) / dx;
      }
    }
  }

  if (model_.is_linear()) {
    const double cs = model_.advection_speed();
    for (int p = 1; p < n_mom; ++p) {
      for (int i = 0; i < n; ++i) out.moments[p](0, i) += 2.0 * (p + 1) * cs * s.moments[p - 1](0, i) / dx;
    }
    return;
  }

  const GaussRule& gl = flux_rule_;
  const int g = static_cast<int>(gl.nodes.size());
  std::vector<double> kernel(static_cast<size_t>(g) * n_mom);
  for (int p = 1; p < n_mom; ++p) {
    const double scale = p * (p + 1) * std::ldexp(1.0, p) / dx;
    for (int q = 0; q < g; ++q) kernel[q * n_mom + p] = scale * gl.weights[q] * std::pow(gl.nodes[q], p - 1);
  }
  std::vector<double> data(n_mom + 2);
  std::vector<Vec> fq(g, Vec(m));
  for (int i = 0; i < n; ++i) {
    std::vector<Vec> qg(g, Vec(m));
    for (int c = 0; c < m; ++c) {
      if (recon) {
        const ReconChoice& rc = (*recon)[static_cast<size_t>(c) * n + i];
        for (int q = 0; q < g; ++q) qg[q][c] = rc.at_xi(gl.nodes[q]);
        continue;
      }
      data[0] = s.iface(c, grid_.wrap(i - 1));
      for (int p = 0; p < n_mom; ++p) data[p + 1] = s.moments[p](c, i);
      data[n_mom + 1] = s.iface(c, i);
      for (int q = 0; q < g; ++q) {
        double v = 0.0;
        for (int j = 0; j < n_mom + 2; ++j) v += node_map_[q][j] * data[j];
        qg[q][c] = v;
      }
    }
    for (int q = 0; q < g; ++q) fq[q] = model_.flux(qg[q]);
    for (int p = 1; p < n_mom; ++p) {
      for (int c = 0; c < m; ++c) {
        double sum = 0.0;
        for (int q = 0; q < g; ++q) sum += kernel[q * n_mom + p] * fq[q][c];
        out.moments[p](c, i) += sum;
      }
    }
  }
}

ReconChoice Solver::limited_moment_recon(const State& s, int c, int i) const {
  const int n_mom = static_cast<int>(s.moments.size());
  const double dx = grid_.dx();
  const double ql = s.iface(c, grid_.wrap(i - 1)), qr = s.iface(c, i);
  std::vector<double> mom(n_mom);
  for (int p = 0; p < n_mom; ++p) mom[p] = s.moments[p](c, i);
  // Drop the highest moment until the polynomial is monotone at the samples.
  for (int keep = n_mom; keep > 1; --keep) {
    LocalPolynomial poly = moment_poly(ql, qr, std::span<const double>(mom.data(), keep), dx);
    if (monotone_on_samples(poly, kMonotoneSamples)) {
      ReconChoice rc;
      rc.tag = keep == n_mom ? ReconTag::PolyHigh : ReconTag::PolyReduced;
      rc.level = n_mom - keep;
      rc.poly = std::move(poly);
      return rc;
    }
  }
  return limited_parabola_or_power(ql, mom[0], qr, dx);
}

State Solver::rhs_c(const State& s) const {
  const auto& k = kernels::active();
  const int m = s.components(), n = s.cells();
  const double dx = grid_.dx();
  State out = zero_like(s);

  Field d_plus(m, n), d_minus(m, n);
  if (!config_.limiter) {
    moment_update(out, s);
    for (int c = 0; c < m; ++c) {
      auto tp = md_terms(md_, s, c, 0);
      auto tm = md_terms(md_flip_, s, c, 1);
      k.stencil_sweep(d_plus.component(c).data(), tp.data(), static_cast<int>(tp.size()), n, dx);
      k.stencil_sweep(d_minus.component(c).data(), tm.data(), static_cast<int>(tm.size()), n, dx);
    }
  } else {
    std::vector<ReconChoice> recon(static_cast<size_t>(m) * n);
    for (int c = 0; c < m; ++c) {
      for (int i = 0; i < n; ++i) {
        const ReconChoice& rc = recon[static_cast<size_t>(c) * n + i] = limited_moment_recon(s, c, i);
        d_plus(c, i) = rc.slope_xi(0.5) / dx;
        d_minus(c, grid_.wrap(i - 1)) = rc.slope_xi(-0.5) / dx;
      }
    }
    moment_update(out, s, &recon);
  }
  point_update(out, s, d_plus, d_minus);
  return out;
}

State Solver::step_b(const State& s, double dt) const {
  const int n = s.cells();
  const double dx = grid_.dx();
  if (dt * max_speed_over(s, model_) > dx * (1.0 + 1e-12)) throw CflExceeded("variant B needs CFL <= 1");
  const GlobalRecon recon = build_recon_b(s, grid_, config_.limiter);
  const int iters = config_.iterations > 0 ? config_.iterations : config_.order();
  const bool linear = model_.is_linear();
  const double c = model_.advection_speed();

  auto evolve = [&](Location at, double t, double seed_l, double seed_r) {
    if (linear) return advect_trace(recon, at, t, c);
    return transonic_select_b(recon, at, t, model_, seed_l, seed_r, iters);
  };

  State out = s;
  const int m_nodes = time_rule_.size();
  Field g(1, n);
  for (int l = 0; l < m_nodes; ++l) {
    const double t = time_rule_.nodes[l] * dt;
    for (int i = 0; i < n; ++i) {
      const double v = t == 0.0 ? s.iface(0, i)
                                : evolve({i, 0.5}, t, s.iface(0, grid_.wrap(i - 1)), s.iface(0, grid_.wrap(i + 1)));
      g(0, i) += time_rule_.weights[l] * model_.flux(v);
      if (l == m_nodes - 1) out.iface(0, i) = v;
    }
  }
  for (size_t j = 0; j < s.xi.size(); ++j) {
    for (int i = 0; i < n; ++i) {
      out.interior[j](0, i) = evolve({i, s.xi[j]}, dt, s.iface(0, grid_.wrap(i - 1)), s.iface(0, i));
    }
  }
  Field dg(1, n);
  kernels::active().flux_difference(dg.component(0).data(), g.component(0).data(), n, dx);
  kernels::active().axpy(out.avg().component(0).data(), dt, dg.component(0).data(), n);
  return out;
}

State Solver::step(const State& s, double dt) const {
  State next;
  switch (config_.kind) {
    case VariantKind::A:
      next = rk_step([this](const State& x) { return rhs_a(x); }, s, dt, config_.rk);
      break;
    case VariantKind::B:
      next = step_b(s, dt);
      break;
    case VariantKind::C:
      next = rk_step([this](const State& x) { return rhs_c(x); }, s, dt, config_.rk);
      break;
  }
  check_finite(next);
  return next;
}

State rhs_variant_a(const State& state, const Model& model, const VariantConfig& config, const Grid& grid) {
  return Solver(model, config, grid).rhs_a(state);
}

State rhs_variant_c(const State& state, const Model& model, const VariantConfig& config, const Grid& grid) {
  return Solver(model, config, grid).rhs_c(state);
}

State step_variant_b(const State& state, const Model& model, const VariantConfig& config, const Grid& grid,
                     double dt) {
  return Solver(model, config, grid).step_b(state, dt);
}

State advance(const Solver& solver, State state, double t_end, double cfl, const Observer& observer) {
  if (t_end < 0.0) throw InvalidArgument("t_end must be non-negative");
  double t = 0.0;
  int step = 0;
  if (observer) observer(state, {0, 0.0, 0.0});
  while (t < t_end) {
    double dt = solver.dt_for(state, cfl);
    bool last = false;
    if (t + dt >= t_end) {
      dt = t_end - t;
      last = true;
    }
    state = solver.step(state, dt);
    t = last ? t_end : t + dt;
    ++step;
    if (observer) observer(state, {step, t, dt});
  }
  return state;
}

State advance(const Problem& problem, const VariantConfig& config, const Grid& grid, double cfl,
              const Observer& observer) {
  const Solver solver(problem.model, config, grid);
  return advance(solver, solver.init(problem.datum), problem.t_end, cfl, observer);
}

}  // namespace af
