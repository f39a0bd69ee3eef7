#pragma once

// Periodic array kernels used by the scheme drivers. Each instruction-set
// variant performs the same sequence of IEEE operations per element (no FMA),
// so results are bitwise identical across variants.

#include <cstddef>
#include <string_view>

namespace af::kernels {

struct Term {
  const double* data;
  int offset;
  double coeff;
};

struct Table {
  // out[i] = (sum_t coeff_t * data_t[(i + offset_t) mod n]) / dx
  void (*stencil_sweep)(double* out, const Term* terms, int n_terms, int n, double dx);
  // out[i] = -(f[i] - f[(i - 1) mod n]) / dx
  void (*flux_difference)(double* out, const double* f, int n, double dx);
  // out[i] = a * x[i] + b * y[i]
  void (*axpby)(double* out, double a, const double* x, double b, const double* y, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double* y, double a, const double* x, std::size_t n);
};

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

// Null when the variant was not compiled in or the CPU lacks support.
const Table* table_for(Isa isa);

// Best supported variant; AF_ISA=scalar|avx2|neon overrides at first use.
const Table& active();
Isa active_isa();

// Translation-unit entry points.
const Table& scalar_table();
const Table* avx2_table();
const Table* neon_table();

}  // namespace af::kernels
