#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "af/core.hpp"
#include "af/schemes.hpp"
#include "af/stability.hpp"

namespace af::cli {

enum ExitCode { kOk = 0, kUsage = 2, kSolverFailure = 3, kNonPhysical = 4 };

struct RunSpec {
  std::string problem = "advection-gauss";
  VariantConfig config;
  int cells = 100;
  double cfl = 0.4;
  std::optional<double> t_end;  // preset value when empty
  std::string out;              // stdout when empty

  Problem resolved_problem() const;
  double resolved_t_end() const;
};

// Shortest round-trip decimal, locale independent.
std::string format_double(double v);

// One "# key=value ..." record describing the whole configuration.
std::string config_record(const RunSpec& spec);

void write_solution_csv(std::ostream& os, const RunSpec& spec, const State& state, const Grid& grid);

struct ConvergenceRow {
  int cells = 0;
  double dx = 0.0;
  double err_point = 0.0;
  double err_avg = 0.0;
  std::optional<double> eoc_point;  // empty on the coarsest grid
  std::optional<double> eoc_avg;
};

// log2(coarse / fine).
double eoc(double e_coarse, double e_fine);

// Runs every grid (in parallel) and measures L1 errors against the exact
// solution. Throws InvalidArgument for fewer than two grids, problems without
// an exact reference, and Burgers runs past the shock-time estimate.
std::vector<ConvergenceRow> converge(const RunSpec& spec, const std::vector<int>& grids, unsigned threads = 0);

void write_convergence_csv(std::ostream& os, const RunSpec& spec, const std::vector<ConvergenceRow>& rows);

struct StabilitySpec {
  VariantConfig base;           // family member; the parameter is substituted per row
  std::vector<double> params;   // FD free parameter or symmetric xi; empty for fixed schemes
  double nu_max = 1.0;
  double nu_step = 0.0025;
  int k_samples = 257;
};

// Config for one parameter value of the family (A: tableau parameter, B: xi = +-param).
VariantConfig family_member(const VariantConfig& base, double param);

StabilityMap scan(const StabilitySpec& spec, unsigned threads = 0);

void write_stability_csv(std::ostream& os, const StabilitySpec& spec, const StabilityMap& map);

// "lo:hi:step" (inclusive, tolerant to round-off at hi) or "a,b,c".
std::vector<double> parse_range(const std::string& text);

// Entry point of the command-line tool; returns the process exit code.
int main(int argc, char** argv);

}  // namespace af::cli
