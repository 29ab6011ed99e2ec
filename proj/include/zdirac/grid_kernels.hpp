#pragma once

// Hot loops over sampled grids: spinor density, composite Simpson integral and
// contiguous range sums. Each has a portable scalar kernel and, on x86-64, an
// AVX2 kernel; the active one is picked once from the CPU's feature bits.

#include <complex>
#include <span>

namespace zdirac::kernels {

enum class Isa { Scalar, Avx2 };

// Best instruction set supported here, unless overridden.
Isa active_isa();
bool avx2_available();
// Test hook: force a kernel family. Forcing Avx2 on a machine without it is
// ignored.
void force_isa(Isa isa);
void clear_forced_isa();

// out[i] = |a[i]|^2 + |b[i]|^2, summed as (re_a^2 + re_b^2) + (im_a^2 + im_b^2)
// so that both kernels round identically.
void density(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
             std::span<double> out);
// Composite Simpson on equally spaced samples with spacing h; an even number
// of intervals is required (the caller handles the odd case).
double simpson(std::span<const double> y, double h);
// Plain sum of y.
double range_sum(std::span<const double> y);

namespace scalar {
void density(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
             std::span<double> out);
double simpson(std::span<const double> y, double h);
double range_sum(std::span<const double> y);
}  // namespace scalar

namespace avx2 {
void density(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
             std::span<double> out);
double simpson(std::span<const double> y, double h);
double range_sum(std::span<const double> y);
}  // namespace avx2

}  // namespace zdirac::kernels
