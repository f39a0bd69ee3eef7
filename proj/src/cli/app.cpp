#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "af/cli.hpp"
#include "af/errors.hpp"
#include "af/problems.hpp"

namespace af::cli {

namespace {

double parse_number(std::string_view tok) {
  while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
  while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw InvalidArgument("not a number: '" + std::string(tok) + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_number(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

// Everything the three subcommands share.
struct Flags {
  std::string problem = "advection-gauss";
  std::string variant = "A";
  std::optional<int> order;
  int cells = 100;
  double cfl = 0.4;
  std::optional<double> t_end;
  std::optional<std::string> fd;
  std::optional<double> param;
  std::optional<std::string> xi;
  std::optional<int> quad_m;
  std::optional<int> moments;
  std::string limiter = "off";
  std::string rk = "rk3";
  std::string out;
  unsigned threads = 0;

  // converge
  std::string grids = "40,80,160,320";
  // stability
  std::optional<std::string> params;
  double nu_max = 1.0;
  double nu_step = 0.0025;
  int k_samples = 257;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--problem", f.problem, "Preset problem")
      ->check(CLI::IsMember(preset_names()))
      ->capture_default_str();
  app->add_option("--variant", f.variant, "Scheme variant")->check(CLI::IsMember({"A", "B", "C"}))->capture_default_str();
  app->add_option("--order", f.order, "Formal order (A: default tableau, B: node set, C: MD order)");
  app->add_option("--fd", f.fd, "Variant A tableau name")->check(CLI::IsMember(fd_tableau_names()));
  app->add_option("--param", f.param, "Free tableau parameter");
  app->add_option("--xi", f.xi, "Variant B interior nodes, comma separated (use --xi=-a,a)");
  app->add_option("--quad-m", f.quad_m, "Variant B time quadrature nodes")->check(CLI::Range(2, 16));
  app->add_option("--moments", f.moments, "Variant C moment count, order - 2")->check(CLI::PositiveNumber);
  app->add_option("--limiter", f.limiter, "on or off")->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  app->add_option("--rk", f.rk, "Time integrator for A and C")
      ->check(CLI::IsMember({"rk3", "rk5"}))
      ->capture_default_str();
  app->add_option("--out", f.out, "Output CSV path (stdout when omitted)");
  app->add_option("--threads", f.threads, "Worker threads, 0 for all cores")->capture_default_str();
}

void add_run_options(CLI::App* app, Flags& f) {
  app->add_option("--cells", f.cells, "Number of cells")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--cfl", f.cfl, "CFL number")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--t-end", f.t_end, "Final time (preset value when omitted)")->check(CLI::NonNegativeNumber);
}

VariantConfig config_from(const Flags& f) {
  const bool limiter = f.limiter == "on";
  VariantConfig c;
  if (f.variant == "A") {
    static const std::map<int, std::string> by_order{{2, "FD2"}, {3, "FD3"}, {4, "FD4b"}, {5, "FD5b"},
                                                     {6, "FD6b"}, {7, "FD7"}, {8, "FD8a"}};
    std::string name = "FD3";
    if (f.fd) {
      name = *f.fd;
    } else if (f.order) {
      const auto it = by_order.find(*f.order);
      if (it == by_order.end()) throw InvalidArgument("variant A supports orders 2 to 8");
      name = it->second;
    }
    if (f.param && !fd_default_parameter(name)) throw InvalidArgument(name + " has no free parameter");
    c = VariantConfig::variant_a(name, f.param, limiter);
    if (f.order && fd_tableau(name, f.param).order() != *f.order) {
      throw InvalidArgument("--order disagrees with --fd " + name);
    }
  } else if (f.variant == "B") {
    std::vector<double> xi;
    int m = 3;
    if (f.xi) {
      xi = parse_list(*f.xi);
      m = static_cast<int>(xi.size()) + 3;
    } else {
      const int order = f.order.value_or(3);
      if (order == 3) {
        m = 3;
      } else if (order == 5) {
        xi = {-0.415, 0.415};
        m = 4;
      } else if (order == 7) {
        xi = {-0.48, -0.41, 0.41, 0.48};
        m = 5;
      } else {
        throw InvalidArgument("variant B without --xi supports orders 3, 5 and 7");
      }
    }
    std::sort(xi.begin(), xi.end());
    if (f.order && static_cast<int>(xi.size()) + 3 != *f.order) {
      throw InvalidArgument("--order disagrees with the number of interior nodes");
    }
    c = VariantConfig::variant_b(xi, f.quad_m.value_or(m), limiter);
  } else {
    const int order = f.order ? *f.order : (f.moments ? *f.moments + 2 : 3);
    if (f.moments && *f.moments != order - 2) throw InvalidArgument("--moments must equal order - 2");
    c = VariantConfig::variant_c(order, limiter);
  }
  if (f.variant != "B") {
    if (f.xi || f.quad_m) throw InvalidArgument("--xi and --quad-m apply to variant B only");
  }
  if (f.variant != "A" && (f.fd || f.param)) throw InvalidArgument("--fd and --param apply to variant A only");
  if (f.variant != "C" && f.moments) throw InvalidArgument("--moments applies to variant C only");
  c.rk = f.rk == "rk5" ? RkScheme::Rk5 : RkScheme::Ssp3;
  return c;
}

RunSpec spec_from(const Flags& f) {
  RunSpec s;
  s.problem = f.problem;
  s.config = config_from(f);
  s.cells = f.cells;
  s.cfl = f.cfl;
  s.t_end = f.t_end;
  s.out = f.out;
  return s;
}

// The whole document is formatted first so a failed run leaves no partial file.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open output file " + path);
  file << text;
  if (!file.flush()) throw Error("cannot write output file " + path);
}

void cmd_run(const Flags& f) {
  const RunSpec spec = spec_from(f);
  const Problem problem = spec.resolved_problem();
  const Grid grid(spec.cells, problem.x_min, problem.x_max);
  const State s = advance(problem, spec.config, grid, spec.cfl);
  std::ostringstream os;
  write_solution_csv(os, spec, s, grid);
  emit(spec.out, os.str());
}

void cmd_converge(const Flags& f) {
  const RunSpec spec = spec_from(f);
  std::vector<int> grids;
  for (double g : parse_list(f.grids)) {
    if (g != std::floor(g) || g < 1 || g > 1e8) throw InvalidArgument("grid sizes must be positive integers");
    grids.push_back(static_cast<int>(g));
  }
  const auto rows = converge(spec, grids, f.threads);
  std::ostringstream os;
  write_convergence_csv(os, spec, rows);
  emit(spec.out, os.str());
}

void cmd_stability(const Flags& f) {
  StabilitySpec spec;
  spec.base = config_from(f);
  if (f.params) {
    spec.params = parse_range(*f.params);
    if (spec.params.empty()) throw InvalidArgument("empty parameter range '" + *f.params + "'");
  } else if (spec.base.kind == VariantKind::A) {
    const auto a = spec.base.fd_param ? spec.base.fd_param : fd_default_parameter(spec.base.fd_name);
    spec.params = {a.value_or(0.0)};
  } else if (spec.base.kind == VariantKind::B && !spec.base.xi.empty()) {
    spec.params = {std::abs(spec.base.xi.back())};
  } else {
    spec.params = {0.0};
  }
  spec.nu_max = f.nu_max;
  spec.nu_step = f.nu_step;
  spec.k_samples = f.k_samples;
  const StabilityMap map = scan(spec, f.threads);
  std::ostringstream os;
  write_stability_csv(os, spec, map);
  emit(f.out, os.str());
}

}  // namespace

std::vector<double> parse_range(const std::string& text) {
  if (text.find(':') == std::string::npos) return parse_list(text);
  std::vector<double> parts;
  std::string_view rest = text;
  while (true) {
    const auto colon = rest.find(':');
    parts.push_back(parse_number(rest.substr(0, colon)));
    if (colon == std::string_view::npos) break;
    rest.remove_prefix(colon + 1);
  }
  if (parts.size() != 3) throw InvalidArgument("range must be lo:hi:step");
  const double lo = parts[0], hi = parts[1], step = parts[2];
  if (!(step > 0.0)) throw InvalidArgument("range step must be positive");
  std::vector<double> out;
  if (hi < lo) return out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (n > 1000000) throw InvalidArgument("range has too many points");
  for (long k = 0; k < n; ++k) out.push_back(lo + static_cast<double>(k) * step);
  return out;
}

int main(int argc, char** argv) {
  CLI::App app{"Active Flux solvers for 1-D hyperbolic conservation laws"};
  app.require_subcommand(1);
  Flags f;

  auto* run = app.add_subcommand("run", "Run one simulation and write the final solution");
  add_common(run, f);
  add_run_options(run, f);

  auto* conv = app.add_subcommand("converge", "Grid convergence study against the exact solution");
  add_common(conv, f);
  add_run_options(conv, f);
  conv->add_option("--grids", f.grids, "Comma separated cell counts")->capture_default_str();

  auto* stab = app.add_subcommand("stability", "Von Neumann stability scan over (parameter, nu)");
  add_common(stab, f);
  stab->add_option("--params", f.params, "Parameter values, lo:hi:step or a,b,c");
  stab->add_option("--nu-max", f.nu_max, "Largest CFL number scanned")->check(CLI::PositiveNumber)->capture_default_str();
  stab->add_option("--nu-step", f.nu_step, "CFL spacing")->check(CLI::PositiveNumber)->capture_default_str();
  stab->add_option("--k-samples", f.k_samples, "Wave numbers in [0, pi]")->check(CLI::Range(2, 1 << 20))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) cmd_run(f);
    if (*conv) cmd_converge(f);
    if (*stab) cmd_stability(f);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NonPhysicalState& e) {
    std::cerr << "non-physical state: " << e.what() << '\n';
    return kNonPhysical;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kOk;
}

}  // namespace af::cli
