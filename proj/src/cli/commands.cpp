#include <cmath>

#include "af/cli.hpp"
#include "af/errors.hpp"
#include "af/problems.hpp"

namespace af::cli {

double eoc(double e_coarse, double e_fine) { return std::log2(e_coarse / e_fine); }

std::vector<ConvergenceRow> converge(const RunSpec& spec, const std::vector<int>& grids, unsigned threads) {
  if (grids.size() < 2) throw InvalidArgument("convergence study needs at least two grids");
  for (int n : grids) {
    if (n < 1) throw InvalidArgument("grid sizes must be positive");
  }
  const Problem problem = spec.resolved_problem();
  // Refuses discontinuous data and post-shock Burgers before any work is done.
  const ExactSampler exact = exact_for(problem, problem.t_end);

  std::vector<ConvergenceRow> rows(grids.size());
  parallel_for(
      grids.size(),
      [&](std::size_t g) {
        const Grid grid(grids[g], problem.x_min, problem.x_max);
        const State s = advance(problem, spec.config, grid, spec.cfl);
        const L1Errors e = l1_errors(s, exact, grid);
        rows[g].cells = grids[g];
        rows[g].dx = grid.dx();
        rows[g].err_point = e.point;
        rows[g].err_avg = e.average;
      },
      threads);
  for (size_t g = 1; g < rows.size(); ++g) {
    rows[g].eoc_point = eoc(rows[g - 1].err_point, rows[g].err_point);
    rows[g].eoc_avg = eoc(rows[g - 1].err_avg, rows[g].err_avg);
  }
  return rows;
}

VariantConfig family_member(const VariantConfig& base, double param) {
  VariantConfig c = base;
  switch (base.kind) {
    case VariantKind::A:
      if (fd_default_parameter(base.fd_name)) c.fd_param = param;
      break;
    case VariantKind::B:
      // Symmetric nodes: the parameter replaces the outermost pair.
      if (!c.xi.empty()) {
        c.xi.front() = -std::abs(param);
        c.xi.back() = std::abs(param);
      }
      break;
    case VariantKind::C:
      break;
  }
  return c;
}

StabilityMap scan(const StabilitySpec& spec, unsigned threads) {
  if (spec.params.empty()) throw InvalidArgument("empty parameter range");
  if (!(spec.nu_max > 0.0) || !(spec.nu_step > 0.0)) throw InvalidArgument("nu range must be positive");
  if (spec.k_samples < 2) throw InvalidArgument("need at least two wave numbers");
  const VariantConfig base = spec.base;
  return scan_region([base](double p) { return family_member(base, p); }, spec.params,
                     nu_grid(spec.nu_max, spec.nu_step), spec.k_samples, threads);
}

}  // namespace af::cli
