#include "af/kernels.hpp"

namespace af::kernels {

namespace {

inline int wrap(int i, int n) {
  const int r = i % n;
  return r < 0 ? r + n : r;
}

void stencil_sweep(double* out, const Term* terms, int n_terms, int n, double dx) {
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int t = 0; t < n_terms; ++t) s += terms[t].coeff * terms[t].data[wrap(i + terms[t].offset, n)];
    out[i] = s / dx;
  }
}

void flux_difference(double* out, const double* f, int n, double dx) {
  out[0] = -(f[0] - f[n - 1]) / dx;
  for (int i = 1; i < n; ++i) out[i] = -(f[i] - f[i - 1]) / dx;
}

void axpby(double* out, double a, const double* x, double b, const double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void axpy(double* y, double a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

const Table kTable{stencil_sweep, flux_difference, axpby, axpy};

}  // namespace

const Table& scalar_table() { return kTable; }

}  // namespace af::kernels
