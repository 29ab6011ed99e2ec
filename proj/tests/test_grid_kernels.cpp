#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "zdirac/grid_kernels.hpp"

using namespace zdirac;
using C = std::complex<double>;

namespace {

std::vector<C> random_complex(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d(0.0, 3.0);
  std::vector<C> v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

std::vector<double> random_real(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& y : v) y = std::exp(4 * d(rng)) * d(rng);
  return v;
}

}  // namespace

TEST_CASE("density kernels agree bit for bit") {
  std::mt19937_64 rng(1);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 33u, 1001u}) {
    const auto a = random_complex(rng, n), b = random_complex(rng, n);
    std::vector<double> s(n), v(n);
    kernels::scalar::density(a, b, s);
    kernels::avx2::density(a, b, v);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(s[i] == v[i]);
      CHECK(std::abs(s[i] - (std::norm(a[i]) + std::norm(b[i]))) <= 1e-14 * s[i]);
    }
  }
}

TEST_CASE("Simpson and sum kernels agree to rounding") {
  std::mt19937_64 rng(2);
  for (std::size_t n : {3u, 5u, 9u, 11u, 17u, 101u, 2001u}) {
    const auto y = random_real(rng, n);
    double scale = 0.0;
    for (double v : y) scale += std::abs(v);
    CHECK(std::abs(kernels::scalar::simpson(y, 0.1) - kernels::avx2::simpson(y, 0.1)) <= 1e-14 * scale);
    CHECK(std::abs(kernels::scalar::range_sum(y) - kernels::avx2::range_sum(y)) <= 1e-14 * scale);
  }
  std::vector<double> cubic;
  for (int i = 0; i <= 100; ++i) cubic.push_back(std::pow(i * 0.02, 3));
  CHECK(std::abs(kernels::avx2::simpson(cubic, 0.02) - 4.0) < 1e-13);
}

TEST_CASE("dispatch") {
  kernels::force_isa(kernels::Isa::Scalar);
  CHECK(kernels::active_isa() == kernels::Isa::Scalar);
  kernels::force_isa(kernels::Isa::Avx2);
  CHECK(kernels::active_isa() == (kernels::avx2_available() ? kernels::Isa::Avx2 : kernels::Isa::Scalar));
  kernels::clear_forced_isa();
  CHECK(kernels::active_isa() == (kernels::avx2_available() ? kernels::Isa::Avx2 : kernels::Isa::Scalar));

  std::mt19937_64 rng(3);
  const auto a = random_complex(rng, 257), b = random_complex(rng, 257);
  std::vector<double> s(257), v(257);
  kernels::force_isa(kernels::Isa::Scalar);
  kernels::density(a, b, s);
  const double ss = kernels::simpson(s, 0.5);
  kernels::force_isa(kernels::Isa::Avx2);
  kernels::density(a, b, v);
  const double vs = kernels::simpson(v, 0.5);
  kernels::clear_forced_isa();
  CHECK(s == v);
  CHECK(std::abs(ss - vs) <= 1e-14 * std::abs(ss));
}
