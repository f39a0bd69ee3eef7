#include "af/kernels.hpp"

#if defined(__ARM_NEON) && defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>

namespace af::kernels {

namespace {

inline int wrap(int i, int n) {
  const int r = i % n;
  return r < 0 ? r + n : r;
}

inline double sweep_one(const Term* terms, int n_terms, int i, int n, double dx) {
  double s = 0.0;
  for (int t = 0; t < n_terms; ++t) s += terms[t].coeff * terms[t].data[wrap(i + terms[t].offset, n)];
  return s / dx;
}

// vmulq/vaddq kept separate (no vfmaq) to match the scalar rounding sequence.
void stencil_sweep(double* out, const Term* terms, int n_terms, int n, double dx) {
  int lo_off = 0, hi_off = 0;
  for (int t = 0; t < n_terms; ++t) {
    lo_off = std::min(lo_off, terms[t].offset);
    hi_off = std::max(hi_off, terms[t].offset);
  }
  const int lo = std::min(n, -lo_off);
  const int hi = std::max(lo, n - hi_off);
  int i = 0;
  for (; i < lo; ++i) out[i] = sweep_one(terms, n_terms, i, n, dx);
  const float64x2_t vdx = vdupq_n_f64(dx);
  for (; i + 2 <= hi; i += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (int t = 0; t < n_terms; ++t) {
      const float64x2_t v = vld1q_f64(terms[t].data + i + terms[t].offset);
      acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(terms[t].coeff), v));
    }
    vst1q_f64(out + i, vdivq_f64(acc, vdx));
  }
  for (; i < n; ++i) out[i] = sweep_one(terms, n_terms, i, n, dx);
}

void flux_difference(double* out, const double* f, int n, double dx) {
  out[0] = -(f[0] - f[n - 1]) / dx;
  const float64x2_t vdx = vdupq_n_f64(dx);
  int i = 1;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(f + i), vld1q_f64(f + i - 1));
    vst1q_f64(out + i, vdivq_f64(vnegq_f64(d), vdx));
  }
  for (; i < n; ++i) out[i] = -(f[i] - f[i - 1]) / dx;
}

void axpby(double* out, double a, const double* x, double b, const double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a), vb = vdupq_n_f64(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t ax = vmulq_f64(va, vld1q_f64(x + i));
    const float64x2_t by = vmulq_f64(vb, vld1q_f64(y + i));
    vst1q_f64(out + i, vaddq_f64(ax, by));
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void axpy(double* y, double a, const double* x, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

const Table kTable{stencil_sweep, flux_difference, axpby, axpy};

}  // namespace

const Table* neon_table() { return &kTable; }

}  // namespace af::kernels

#else

namespace af::kernels {
const Table* neon_table() { return nullptr; }
}  // namespace af::kernels

#endif
