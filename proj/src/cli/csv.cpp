#include <charconv>
#include <ostream>
#include <sstream>

#include "af/cli.hpp"
#include "af/problems.hpp"

namespace af::cli {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

Problem RunSpec::resolved_problem() const {
  Problem p = preset(problem);
  if (t_end) p.t_end = *t_end;
  return p;
}

double RunSpec::resolved_t_end() const { return t_end ? *t_end : preset(problem).t_end; }

std::string config_record(const RunSpec& spec) {
  std::ostringstream os;
  os << "# config problem=" << spec.problem << ' ' << spec.config.describe() << " cells=" << spec.cells
     << " cfl=" << format_double(spec.cfl) << " t_end=" << format_double(spec.resolved_t_end());
  return os.str();
}

namespace {

void component_columns(std::ostream& os, const std::string& stem, int m) {
  for (int c = 1; c <= m; ++c) os << ',' << stem << '_' << c;
}

}  // namespace

void write_solution_csv(std::ostream& os, const RunSpec& spec, const State& state, const Grid& grid) {
  const int m = state.components();
  os << config_record(spec) << '\n';
  os << "i,x_iface";
  component_columns(os, "q_iface", m);
  os << ",x_center";
  component_columns(os, "q_avg", m);
  for (size_t p = 1; p < state.moments.size(); ++p) component_columns(os, "q_moment_" + std::to_string(p), m);
  for (size_t j = 0; j < state.interior.size(); ++j) component_columns(os, "q_internal_" + std::to_string(j + 1), m);
  os << '\n';

  for (int i = 0; i < grid.cells(); ++i) {
    os << i << ',' << format_double(grid.iface_x(i));
    for (int c = 0; c < m; ++c) os << ',' << format_double(state.iface(c, i));
    os << ',' << format_double(grid.center_x(i));
    for (int c = 0; c < m; ++c) os << ',' << format_double(state.avg()(c, i));
    for (size_t p = 1; p < state.moments.size(); ++p) {
      for (int c = 0; c < m; ++c) os << ',' << format_double(state.moments[p](c, i));
    }
    for (const Field& f : state.interior) {
      for (int c = 0; c < m; ++c) os << ',' << format_double(f(c, i));
    }
    os << '\n';
  }
}

void write_convergence_csv(std::ostream& os, const RunSpec& spec, const std::vector<ConvergenceRow>& rows) {
  os << config_record(spec) << '\n';
  os << "n_cells,dx,err_point,err_avg,eoc_point,eoc_avg\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const ConvergenceRow& r : rows) {
    os << r.cells << ',' << format_double(r.dx) << ',' << format_double(r.err_point) << ','
       << format_double(r.err_avg) << ',' << opt(r.eoc_point) << ',' << opt(r.eoc_avg) << '\n';
  }
}

void write_stability_csv(std::ostream& os, const StabilitySpec& spec, const StabilityMap& map) {
  os << "# config " << spec.base.describe() << " rk=" << (spec.base.rk == RkScheme::Rk5 ? "rk5" : "rk3")
     << " nu_max=" << format_double(spec.nu_max) << " nu_step=" << format_double(spec.nu_step)
     << " k_samples=" << spec.k_samples << '\n';
  os << "param,nu,stable\n";
  for (size_t p = 0; p < map.params.size(); ++p) {
    for (size_t n = 0; n < map.nus.size(); ++n) {
      os << format_double(map.params[p]) << ',' << format_double(map.nus[n]) << ',' << (map.at(p, n) ? 1 : 0)
         << '\n';
    }
  }
  for (size_t p = 0; p < map.params.size(); ++p) {
    os << "#cfl_max," << format_double(map.params[p]) << ',' << format_double(map.cfl_max[p]) << '\n';
  }
}

}  // namespace af::cli
