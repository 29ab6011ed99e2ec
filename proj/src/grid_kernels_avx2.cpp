#include "zdirac/grid_kernels.hpp"

#if defined(ZDIRAC_HAVE_AVX2)

#include <immintrin.h>

namespace zdirac::kernels::avx2 {

namespace {
double horizontal(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v), hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}
}  // namespace

void density(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
             std::span<double> out) {
  const std::size_t n = out.size();
  const double* pa = reinterpret_cast<const double*>(a.data());
  const double* pb = reinterpret_cast<const double*>(b.data());
  std::size_t i = 0;
  // Two complex samples per register: (re0 im0 re1 im1).
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i), vb = _mm256_loadu_pd(pb + 2 * i);
    // mul then add, not fma, so the rounding matches the scalar kernel
    __m256d s = _mm256_add_pd(_mm256_mul_pd(va, va), _mm256_mul_pd(vb, vb));
    // s = (re0 im0 re1 im1) sums; hadd gives (re0+im0, re0+im0', ...)
    __m256d h = _mm256_hadd_pd(s, s);
    __m128d packed = _mm_unpacklo_pd(_mm256_castpd256_pd128(h), _mm256_extractf128_pd(h, 1));
    _mm_storeu_pd(out.data() + i, packed);
  }
  for (; i < n; ++i) {
    const double re = a[i].real() * a[i].real() + b[i].real() * b[i].real();
    const double im = a[i].imag() * a[i].imag() + b[i].imag() * b[i].imag();
    out[i] = re + im;
  }
}

double range_sum(std::span<const double> y) {
  const std::size_t n = y.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(y.data() + i));
  double s = horizontal(acc);
  for (; i < n; ++i) s += y[i];
  return s;
}

double simpson(std::span<const double> y, double h) {
  const std::size_t n = y.size();
  if (n < 3) return 0.0;
  // Interior weights alternate 4, 2 starting at index 1.
  const __m256d w = _mm256_setr_pd(4.0, 2.0, 4.0, 2.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 1;
  for (; i + 4 <= n - 1; i += 4) acc = _mm256_fmadd_pd(w, _mm256_loadu_pd(y.data() + i), acc);
  double s = horizontal(acc);
  for (; i < n - 1; ++i) s += ((i % 2 == 1) ? 4.0 : 2.0) * y[i];
  return h / 3.0 * (y[0] + y[n - 1] + s);
}

}  // namespace zdirac::kernels::avx2

#endif
