#include "af/core.hpp"

#include <cmath>

#include "af/errors.hpp"
#include "af/quadrature.hpp"

namespace af {

namespace {

constexpr int kInitNodes = 6;

}  // namespace

Grid::Grid(int n_cells, double x_min, double x_max)
    : n_(n_cells), x_min_(x_min), x_max_(x_max), dx_((x_max - x_min) / n_cells) {
  if (n_cells <= 0) throw InvalidArgument("grid needs a positive cell count");
  if (!(x_max > x_min)) throw InvalidArgument("grid needs x_max > x_min");
}

State::State(const Layout& layout, int components, int cells)
    : iface(components, cells), xi(layout.xi) {
  const int n_moments = layout.kind == VariantKind::C ? layout.n_moments : 1;
  if (n_moments < 1) throw InvalidArgument("layout needs at least one moment");
  moments.assign(n_moments, Field(components, cells));
  if (layout.kind == VariantKind::B) {
    for (size_t j = 0; j < layout.xi.size(); ++j) {
      if (!(layout.xi[j] > -0.5 && layout.xi[j] < 0.5)) {
        throw InvalidArgument("interior offsets must lie strictly inside (-1/2, 1/2)");
      }
      if (j > 0 && !(layout.xi[j] > layout.xi[j - 1])) {
        throw InvalidArgument("interior offsets must be strictly increasing");
      }
    }
    interior.assign(layout.xi.size(), Field(components, cells));
  } else {
    xi.clear();
  }
}

std::vector<Field*> State::fields() {
  std::vector<Field*> out{&iface};
  for (auto& f : moments) out.push_back(&f);
  for (auto& f : interior) out.push_back(&f);
  return out;
}

std::vector<const Field*> State::fields() const {
  std::vector<const Field*> out{&iface};
  for (const auto& f : moments) out.push_back(&f);
  for (const auto& f : interior) out.push_back(&f);
  return out;
}

double moment_normalization(int p, double dx) {
  return (p + 1) * std::ldexp(1.0, p) / std::pow(dx, p + 1);
}

State init_state(const InitialDatum& datum, const Grid& grid, const Layout& layout, int components) {
  if (!datum.value) throw InvalidArgument("initial datum has no value function");
  State s(layout, components, grid.cells());
  const double dx = grid.dx();
  const GaussRule gl = gauss_legendre(kInitNodes);

  for (int i = 0; i < grid.cells(); ++i) {
    s.iface.set(i, datum.value(grid.iface_x(i)));
    const double xc = grid.center_x(i);
    for (size_t j = 0; j < s.interior.size(); ++j) {
      s.interior[j].set(i, datum.value(xc + dx * s.xi[j]));
    }
    // Moments in the reference coordinate: q^(p) = (p+1) 2^p * mean(xi^p q).
    std::vector<Vec> acc(s.moments.size(), Vec(components));
    for (size_t g = 0; g < gl.nodes.size(); ++g) {
      const Vec q = datum.value(xc + dx * gl.nodes[g]);
      double w = gl.weights[g];
      for (size_t p = 0; p < s.moments.size(); ++p) {
        acc[p] += w * q;
        w *= gl.nodes[g];
      }
    }
    for (size_t p = 0; p < s.moments.size(); ++p) {
      const double scale = (p + 1) * std::ldexp(1.0, static_cast<int>(p));
      s.moments[p].set(i, scale * acc[p]);
    }
  }
  return s;
}

State init_state(const Problem& problem, const Grid& grid, const Layout& layout) {
  return init_state(problem.datum, grid, layout, problem.model.components());
}

L1Errors l1_errors(const State& state, const ExactSampler& exact, const Grid& grid) {
  L1Errors e;
  const double dx = grid.dx();
  const int m = state.components();
  for (int i = 0; i < grid.cells(); ++i) {
    const Vec qp = exact.point(grid.iface_x(i));
    const double a = grid.x_min() + i * dx;
    const Vec qa = exact.average(a, a + dx);
    for (int c = 0; c < m; ++c) {
      e.point += std::abs(state.iface(c, i) - qp[c]);
      e.average += std::abs(state.avg()(c, i) - qa[c]);
    }
  }
  e.point *= dx;
  e.average *= dx;
  return e;
}

Vec total_conserved(const State& state, const Grid& grid) {
  const int m = state.components();
  Vec total(m);
  for (int c = 0; c < m; ++c) {
    double s = 0.0;
    for (double v : state.avg().component(c)) s += v;
    total[c] = s * grid.dx();
  }
  return total;
}

}  // namespace af
