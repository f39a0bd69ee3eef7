#include "af/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

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
  const __m256d vdx = _mm256_set1_pd(dx);
  for (; i + 4 <= hi; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (int t = 0; t < n_terms; ++t) {
      const __m256d c = _mm256_set1_pd(terms[t].coeff);
      const __m256d v = _mm256_loadu_pd(terms[t].data + i + terms[t].offset);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(c, v));
    }
    _mm256_storeu_pd(out + i, _mm256_div_pd(acc, vdx));
  }
  for (; i < n; ++i) out[i] = sweep_one(terms, n_terms, i, n, dx);
}

void flux_difference(double* out, const double* f, int n, double dx) {
  out[0] = -(f[0] - f[n - 1]) / dx;
  const __m256d vdx = _mm256_set1_pd(dx);
  const __m256d sign = _mm256_set1_pd(-0.0);
  int i = 1;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(f + i), _mm256_loadu_pd(f + i - 1));
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_xor_pd(d, sign), vdx));
  }
  for (; i < n; ++i) out[i] = -(f[i] - f[i - 1]) / dx;
}

void axpby(double* out, double a, const double* x, double b, const double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ax = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    const __m256d by = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(ax, by));
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void axpy(double* y, double a, const double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ax = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), ax));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

const Table kTable{stencil_sweep, flux_difference, axpby, axpy};

}  // namespace

const Table* avx2_table() { return &kTable; }

}  // namespace af::kernels

#else

namespace af::kernels {
const Table* avx2_table() { return nullptr; }
}  // namespace af::kernels

#endif
