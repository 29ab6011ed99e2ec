#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "zdirac/field.hpp"
#include "zdirac/specfun.hpp"

using namespace zdirac;

namespace {

double rel(Complex a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

// Brute-force Gauss series in long double.
long double long_series(long double a, long double b, long double c, long double z, int terms) {
  long double term = 1, sum = 1;
  for (int k = 0; k < terms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
    sum += term;
  }
  return sum;
}

// Coefficients of P_n from the Rodrigues formula 1/(2^n n!) d^n/dz^n (z^2 - 1)^n.
std::vector<double> rodrigues(int n) {
  std::vector<double> p(2 * static_cast<std::size_t>(n) + 1, 0.0);
  double binom = 1;
  for (int j = 0; j <= n; ++j) {
    // (z^2 - 1)^n = sum_j C(n,j) z^{2j} (-1)^{n-j}
    p[2 * static_cast<std::size_t>(j)] = binom * (((n - j) % 2) ? -1.0 : 1.0);
    binom = binom * (n - j) / (j + 1);
  }
  double scale = 1;
  for (int i = 1; i <= n; ++i) scale *= 2.0 * i;
  for (int d = 0; d < n; ++d) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) p[i] = p[i + 1] * static_cast<double>(i + 1);
    p.back() = 0;
  }
  for (auto& c : p) c /= scale;
  return p;
}

// (-1)^m (1 - z^2)^{m/2} d^m/dz^m P_n(z).
double associated(int n, int m, double z) {
  std::vector<double> p = rodrigues(n);
  for (int d = 0; d < m; ++d)
    for (std::size_t i = 0; i + 1 < p.size(); ++i) p[i] = p[i + 1] * static_cast<double>(i + 1);
  double v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * z + p[i];
  return (m % 2 ? -1.0 : 1.0) * std::pow(1 - z * z, m / 2.0) * v;
}

Complex legendre_value(double nu, double mu, double z, LegendreKind kind = LegendreKind::P) {
  return legendre({nu, mu, kind}, Jet::variable(z, 0))[0];
}

double ode_residual_z(double nu, double mu, LegendreKind kind, double z) {
  Jet w = legendre({nu, mu, kind}, Jet::variable(z, 4));
  const Complex r = (1 - z * z) * w.derivative(2) - 2 * z * w.derivative(1) +
                    (nu * (nu + 1) - mu * mu / (1 - z * z)) * w.derivative(0);
  return std::abs(r) / (std::abs(w.derivative(2)) + std::abs(w.derivative(1)) + std::abs(w.derivative(0)));
}

double ode_residual_x(double nu, double mu, LegendreKind kind, double x) {
  Jet u = legendre_of_tanh({nu, mu, kind}, Jet::variable(x, 4));
  const double s = 1 / std::cosh(x);
  const Complex r = u.derivative(2) - (mu * mu - nu * (nu + 1) * s * s) * u.derivative(0);
  return std::abs(r) / (1 + std::abs(u.derivative(2)) + std::abs(u.derivative(0)));
}

}  // namespace

TEST_CASE("gamma") {
  CHECK(std::abs(gamma_fn(1.0) - 1.0) < 1e-14);
  CHECK(std::abs(gamma_fn(0.5) - std::sqrt(std::numbers::pi)) < 1e-14);
  CHECK(std::abs(gamma_fn(6.0) - 120.0) < 1e-12);
  for (double x : {-3.7, -0.5, 0.1, 2.5, 7.3, 23.9, 49.5}) CHECK(rel(gamma_fn(x), std::tgamma(x)) < 1e-12);
  CHECK(rel(gamma_fn(Complex(4.2, 0)), std::tgamma(4.2)) < 1e-12);
  CHECK(rgamma(Complex(-2.0)) == Complex(0));
  CHECK(std::abs(pochhammer(3.0, 4) - 360.0) < 1e-12);
  try {
    (void)gamma_fn(-2.0);
    FAIL("expected a pole");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleAtNonpositiveInteger);
  }
}

TEST_CASE("hyp2f1 examples") {
  CHECK(hyp2f1(0.3, 1.7, 2.2, 0.0) == Complex(1));
  for (double z : {0.1, 0.6, 0.95}) CHECK(rel(hyp2f1(-1.0, 2.5, 1.5, z), 1 - 2.5 / 1.5 * z) < 1e-14);
  // Terminating series are polynomials and may be evaluated at z = 1.
  CHECK(rel(hyp2f1(-2.0, 1.0, 3.0, 1.0), 1 - 2.0 / 3 + 2.0 * 1 * 1 * 2 / (3 * 4 * 2)) < 1e-14);

  for (double q : {0.3, 2.3, 4.1}) {
    const double a = 0.5 + 4.5 - q, b = 0.5 + 4.5 + q, c = 6.0;
    const long double ref = long_series(a, b, c, 0.3L, 5000);
    CHECK(rel(hyp2f1(a, b, c, 0.3), static_cast<double>(ref)) < 1e-10);
  }
  // The z -> 1 - z branch against the long series where it still converges.
  const long double ref = long_series(0.25, 0.75, 2.5, 0.8L, 20000);
  CHECK(rel(hyp2f1(0.25, 0.75, 2.5, 0.8), static_cast<double>(ref)) < 1e-10);
  // Integer c - a - b: the logarithmic case of the transformation.
  const long double ref_log = long_series(0.5, 1.5, 3.0, 0.7L, 20000);
  CHECK(rel(hyp2f1(0.5, 1.5, 3.0, 0.7), static_cast<double>(ref_log)) < 1e-10);
}

TEST_CASE("hyp2f1 with integer c - a - b") {
  // Parameters of the shifted series used for integer order and non-integer
  // degree; c - a - b is an integer only up to rounding.
  const double nu = 2.772;
  for (int k = 0; k < 4; ++k)
    for (double z : {0.55, 0.7, 0.9}) {
      const double a = -nu + k, b = nu + 1 + k, c = 1.0 + k;
      const long double ref = long_series(a, b, c, z, 400000);
      INFO("k=" << k << " z=" << z);
      CHECK(std::abs(hyp2f1(a, b, c, z) - static_cast<double>(ref)) < 1e-11 * std::max(1.0L, std::abs(ref)));
    }
  // Positive integer c - a - b goes through the Euler transformation.
  const long double ref = long_series(0.3, 0.7, 3.0, 0.8L, 400000);
  CHECK(rel(hyp2f1(0.3, 0.7, 3.0, 0.8), static_cast<double>(ref)) < 1e-11);
}

TEST_CASE("hyp2f1 errors") {
  try {
    (void)hyp2f1(0.5, 0.5, -2.0, 0.2);
    FAIL("expected PoleAtC");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleAtC);
  }
  try {
    (void)hyp2f1(0.5, 0.5, 1.5, 1.0);
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainError);
  }
  // Terminating before the pole is allowed.
  CHECK(std::isfinite(std::abs(hyp2f1(-1.0, 2.0, -3.0, 0.2))));
}

TEST_CASE("hyp2f1 jet derivatives") {
  const Complex a = 1.3, b = -0.4, c = 2.1;
  Jet z = 0.5 * Jet::variable(0.3, 3);  // z(x) = x/2
  Jet f = hyp2f1(a, b, c, z);
  const Complex d1 = a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, 0.15);
  const Complex d2 = a * (a + 1.0) * b * (b + 1.0) / (c * (c + 1.0)) * hyp2f1(a + 2.0, b + 2.0, c + 2.0, 0.15);
  CHECK(std::abs(f.derivative(0) - hyp2f1(a, b, c, 0.15)) < 1e-14);
  CHECK(std::abs(f.derivative(1) - 0.5 * d1) < 1e-13);
  CHECK(std::abs(f.derivative(2) - 0.25 * d2) < 1e-13);
}

TEST_CASE("Legendre closed forms on tanh") {
  Field p55 = Field([](double x, int k) { return legendre_of_tanh({5, 5}, Jet::variable(x, k)); });
  Field p54 = Field([](double x, int k) { return legendre_of_tanh({5, 4}, Jet::variable(x, k)); });
  for (double x = -4; x <= 4 + 1e-12; x += 0.05) {
    const double t = std::tanh(x), s = 1 - t * t;
    CHECK(rel(p55.value(x), -945 * std::pow(s, 2.5)) < 1e-10);
    if (std::abs(x) > 1e-9) CHECK(rel(p54.value(x), 945 * t * s * s) < 1e-10);
  }
  CHECK(std::abs(legendre_value(3, 0, 0.0)) < 1e-15);
}

TEST_CASE("Rodrigues polynomials") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  for (int n = 0; n <= 7; ++n)
    for (int m = 0; m <= n; ++m)
      for (int i = 0; i < 8; ++i) {
        const double z = u(rng);
        const double ref = associated(n, m, z);
        if (std::abs(ref) < 1e-8) continue;
        INFO("n=" << n << " m=" << m << " z=" << z);
        CHECK(rel(legendre_value(n, m, z), ref) < 1e-10);
      }
}

TEST_CASE("contiguous relation in the degree") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  const std::vector<std::pair<double, double>> cases = {{5, 5}, {5, 3}, {6, 2}, {3.772, 1}, {4.5, 0.5}, {5, 0.3}};
  for (auto [nu, mu] : cases)
    for (int i = 0; i < 10; ++i) {
      const double z = u(rng);
      const Complex lhs = (nu - mu + 1) * legendre_value(nu + 1, mu, z);
      const Complex rhs = (2 * nu + 1) * z * legendre_value(nu, mu, z) - (nu + mu) * legendre_value(nu - 1, mu, z);
      INFO("nu=" << nu << " mu=" << mu << " z=" << z);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)}));
    }
}

TEST_CASE("ODE residuals") {
  for (double z : {-0.8, -0.3, 0.1, 0.6, 0.9}) {
    CHECK(ode_residual_z(5, 5.51, LegendreKind::Q, z) < 1e-9);
    CHECK(ode_residual_z(3.772, 1.4, LegendreKind::P, z) < 1e-9);
    CHECK(ode_residual_z(5, 3, LegendreKind::P, z) < 1e-9);
  }
  for (double x = -6; x <= 6; x += 0.5) {
    CHECK(ode_residual_x(5, 5.51, LegendreKind::Q, x) < 1e-9);
    CHECK(ode_residual_x(5, 2, LegendreKind::P, x) < 1e-9);
  }
}

TEST_CASE("domain errors") {
  try {
    (void)legendre({5, 2}, Jet::variable(1.0, 2));
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainError);
  }
  try {
    (void)legendre({5, 2, LegendreKind::Q}, Jet::variable(0.2, 2));
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainError);
  }
}

TEST_CASE("series solution of a linear ODE") {
  // w'' + w = 0 with w(0) = 0, w'(0) = 1 is sin.
  const std::vector<Complex> P{1.0}, Q{0.0}, R{1.0};
  Jet w = solve_linear_ode_series(0.0, 6, P, Q, R, 0.0, 1.0);
  CHECK(std::abs(w[1] - 1.0) < 1e-15);
  CHECK(std::abs(w[3] + 1.0 / 6) < 1e-15);
  CHECK(std::abs(w[5] - 1.0 / 120) < 1e-15);
  CHECK(std::abs(w[2]) < 1e-15);
}
