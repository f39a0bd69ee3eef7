#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "af/schemes.hpp"

namespace af {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kTrimTolerance = 1e-14;
inline constexpr double kSchurTolerance = 1e-11;
inline constexpr double kShrinkEpsilon = 1e-7;
inline constexpr int kMaxSymbolSize = 8;

// a_0 + a_1 z + ... + a_n z^n; leading coefficients below 1e-14 (relative to
// the largest) are trimmed on construction.
class ComplexPoly {
 public:
  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<Complex> coeffs);

  int degree() const { return static_cast<int>(a_.size()) - 1; }
  bool is_zero() const { return a_.empty(); }
  const std::vector<Complex>& coeffs() const { return a_; }
  Complex operator[](int j) const { return a_[j]; }
  Complex operator()(Complex z) const;

  ComplexPoly reflected() const;  // f*(z) = sum conj(a_{n-j}) z^j
  ComplexPoly derivative() const;
  ComplexPoly scaled_argument(double s) const;  // f(s z)

 private:
  std::vector<Complex> a_;  // empty for the zero polynomial
};

enum class DiscVerdict { Inside, BoundaryOrOutside };

// Schur recursion. Throws ZeroPolynomial.
DiscVerdict schur_inside_unit_disc(const ComplexPoly& f);

// Closed-disc acceptance: the recursion applied to f(z (1 + shrink)).
bool von_neumann_stable(const ComplexPoly& f, double shrink = kShrinkEpsilon);

// Faddeev-LeVerrier; monic, degree = matrix size. Throws InvalidArgument above size 8.
ComplexPoly char_poly(const CMatrix& m);

// Stability polynomial coefficients of the Runge-Kutta scheme.
std::vector<double> rk_polynomial(RkScheme scheme);

struct SymbolSpec {
  VariantConfig config;
  double nu = 0.5;
};

// Block size per cell: 2 for A, 2 + moments beyond the average for C, 2 + interior points for B.
int symbol_size(const VariantConfig& config);

// Semidiscrete operator for advection with unit speed and dx = 1 at wave
// number K; variants A and C only.
CMatrix semidiscrete_symbol(const VariantConfig& config, double K);

// Full-step update matrix: the RK polynomial of nu L (A, C) or the explicit
// characteristic update (B, 0 < nu <= 1).
CMatrix build_update_matrix(const SymbolSpec& spec, double K);

// K_j = pi j / (k_samples - 1).
std::vector<double> k_samples_grid(int k_samples);

bool stable(const SymbolSpec& spec, int k_samples = 257);

// max over sampled K of the spectral radius minus one (dense eigensolver).
double max_growth(const SymbolSpec& spec, int k_samples = 257);

// step, 2 step, ... up to nu_max inclusive.
std::vector<double> nu_grid(double nu_max, double step = 0.0025);

using Family = std::function<VariantConfig(double param)>;

struct StabilityMap {
  std::vector<double> params;
  std::vector<double> nus;
  std::vector<std::uint8_t> stable;  // params.size() x nus.size(), row-major
  std::vector<double> cfl_max;       // per param

  bool at(std::size_t p, std::size_t n) const { return stable[p * nus.size() + n] != 0; }
};

// Largest sampled nu with every smaller sampled nu stable; 0 when the first fails.
double cfl_max_from_row(const std::vector<double>& nus, const std::uint8_t* row);

// Grid points are evaluated in parallel; output order is deterministic.
StabilityMap scan_region(const Family& family, const std::vector<double>& params, const std::vector<double>& nus,
                         int k_samples = 257, unsigned threads = 0);

double cfl_max(const VariantConfig& config, double nu_max = 1.0, double nu_step = 0.0025, int k_samples = 257);

// Runs fn(i) for i in [0, n) on a small thread pool.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

}  // namespace af
