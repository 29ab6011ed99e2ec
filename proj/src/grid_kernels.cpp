#include "zdirac/grid_kernels.hpp"

#include <atomic>

namespace zdirac::kernels {

namespace scalar {

void density(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
             std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double re = a[i].real() * a[i].real() + b[i].real() * b[i].real();
    const double im = a[i].imag() * a[i].imag() + b[i].imag() * b[i].imag();
    out[i] = re + im;
  }
}

double simpson(std::span<const double> y, double h) {
  const std::size_t n = y.size();
  if (n < 3) return 0.0;
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i + 1 < n; i += 2) odd += y[i];
  for (std::size_t i = 2; i + 1 < n; i += 2) even += y[i];
  return h / 3.0 * (y[0] + y[n - 1] + 4.0 * odd + 2.0 * even);
}

double range_sum(std::span<const double> y) {
  double s = 0.0;
  for (double v : y) s += v;
  return s;
}

}  // namespace scalar

#if !defined(ZDIRAC_HAVE_AVX2)
namespace avx2 {
void density(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
             std::span<double> out) {
  scalar::density(a, b, out);
}
double simpson(std::span<const double> y, double h) { return scalar::simpson(y, h); }
double range_sum(std::span<const double> y) { return scalar::range_sum(y); }
}  // namespace avx2
#endif

namespace {
// 0 = automatic, 1 = scalar, 2 = avx2
std::atomic<int> forced{0};
}  // namespace

bool avx2_available() {
#if defined(ZDIRAC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() {
  const int f = forced.load(std::memory_order_relaxed);
  if (f == 1) return Isa::Scalar;
  if (f == 2 && avx2_available()) return Isa::Avx2;
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

void force_isa(Isa isa) { forced.store(isa == Isa::Scalar ? 1 : 2, std::memory_order_relaxed); }
void clear_forced_isa() { forced.store(0, std::memory_order_relaxed); }

void density(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
             std::span<double> out) {
  if (active_isa() == Isa::Avx2)
    avx2::density(a, b, out);
  else
    scalar::density(a, b, out);
}

double simpson(std::span<const double> y, double h) {
  return active_isa() == Isa::Avx2 ? avx2::simpson(y, h) : scalar::simpson(y, h);
}

double range_sum(std::span<const double> y) {
  return active_isa() == Isa::Avx2 ? avx2::range_sum(y) : scalar::range_sum(y);
}

}  // namespace zdirac::kernels
