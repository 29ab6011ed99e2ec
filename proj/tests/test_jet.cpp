#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "zdirac/jet.hpp"

using namespace zdirac;

namespace {

Jet random_jet(std::mt19937_64& rng, double base, int order) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
  for (auto& z : c) z = {u(rng), u(rng)};
  c[0] += 2.0;  // keep away from zero and the cut
  return Jet(base, c);
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Richardson-extrapolated central differences of a real function.
double fd1(const std::function<double(double)>& f, double x) {
  auto d = [&](double h) { return (f(x + h) - f(x - h)) / (2 * h); };
  return (4 * d(5e-4) - d(1e-3)) / 3;
}
double fd2(const std::function<double(double)>& f, double x) {
  auto d = [&](double h) { return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h); };
  return (4 * d(5e-3) - d(1e-2)) / 3;
}

double rel(Complex a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace

TEST_CASE("variable and constant jets") {
  Jet v = Jet::variable(2, 3);
  REQUIRE(v.coeffs().size() == 4);
  CHECK(v[0] == Complex(2));
  CHECK(v[1] == Complex(1));
  CHECK(v[2] == Complex(0));
  CHECK(v[3] == Complex(0));
  CHECK(Jet::variable(0, 5).derivative(1) == Complex(1));
  CHECK(Jet::variable(7, 2).derivative(2) == Complex(0));
  CHECK(Jet::constant(1.0, 3, 4.0).derivative(1) == Complex(0));
  CHECK(v.is_variable());
  CHECK_FALSE(Jet::constant(2, 3, 2.0).is_variable());
}

TEST_CASE("arithmetic examples") {
  Jet sq = Jet::variable(1, 2) * Jet::variable(1, 2);
  CHECK(sq[0] == Complex(1));
  CHECK(sq[1] == Complex(2));
  CHECK(sq[2] == Complex(1));

  Jet inv = Jet::constant(2, 1, 1.0) / Jet::variable(2, 1);
  CHECK(std::abs(inv[0] - 0.5) < 1e-15);
  CHECK(std::abs(inv[1] + 0.25) < 1e-15);
}

TEST_CASE("elementary examples") {
  Jet e = exp(Jet::variable(0, 3));
  CHECK(std::abs(e[0] - 1.0) < 1e-15);
  CHECK(std::abs(e[1] - 1.0) < 1e-15);
  CHECK(std::abs(e[2] - 0.5) < 1e-15);
  CHECK(std::abs(e[3] - 1.0 / 6) < 1e-15);
  CHECK(std::abs(exp(Jet::variable(0, 4)).derivative(3) - 1.0) < 1e-14);

  Jet t = tanh(Jet::variable(0, 2));
  CHECK(std::abs(t[0]) < 1e-15);
  CHECK(std::abs(t[1] - 1.0) < 1e-15);
  CHECK(std::abs(t[2]) < 1e-15);
}

TEST_CASE("finite difference oracle") {
  auto sech_d = [](double x) { return 1 / std::cosh(x); };
  CHECK(rel(sech(Jet::variable(1.3, 2)).derivative(1), fd1(sech_d, 1.3)) < 1e-6);
  auto tanh_d = [](double x) { return std::tanh(x); };
  CHECK(rel(tanh(Jet::variable(0.7, 3)).derivative(2), fd2(tanh_d, 0.7)) < 1e-6);

  struct Case {
    std::function<Jet(const Jet&)> jet;
    std::function<double(double)> ref;
  };
  const std::vector<Case> cases = {
      {[](const Jet& x) { return exp(x); }, [](double x) { return std::exp(x); }},
      {[](const Jet& x) { return log(x + 3.0); }, [](double x) { return std::log(x + 3); }},
      {[](const Jet& x) { return sqrt(x + 3.0); }, [](double x) { return std::sqrt(x + 3); }},
      {[](const Jet& x) { return pow(x + 3.0, Complex(0.7)); }, [](double x) { return std::pow(x + 3, 0.7); }},
      {[](const Jet& x) { return pow(x, 3); }, [](double x) { return x * x * x; }},
      {[](const Jet& x) { return sinh(x); }, [](double x) { return std::sinh(x); }},
      {[](const Jet& x) { return cosh(x); }, [](double x) { return std::cosh(x); }},
      {[](const Jet& x) { return tanh(x); }, [](double x) { return std::tanh(x); }},
      {[](const Jet& x) { return sech(x); }, [](double x) { return 1 / std::cosh(x); }},
  };
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double x = u(rng);
    for (const auto& c : cases) {
      Jet j = c.jet(Jet::variable(x, 3));
      CHECK(rel(j.derivative(1), fd1(c.ref, x)) < 1e-6);
      const double d2 = fd2(c.ref, x);
      if (std::abs(d2) > 1e-3) CHECK(rel(j.derivative(2), d2) < 1e-6);
    }
  }
}

TEST_CASE("linearity and Leibniz") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int K = 6;
    Jet a = random_jet(rng, 0.3, K), b = random_jet(rng, 0.3, K);
    Jet p = a * b;
    for (int k = 0; k <= K; ++k) {
      CHECK((a + b)[k] == a[k] + b[k]);
      Complex sum{};
      for (int j = 0; j <= k; ++j) sum += binom(k, j) * a.derivative(j) * b.derivative(k - j);
      CHECK(std::abs(p.derivative(k) - sum) <= 1e-12 * std::max(1.0, std::abs(sum)));
    }
  }
}

TEST_CASE("exp of log is the identity") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    Jet a = random_jet(rng, -0.4, 8);
    Jet b = exp(log(a));
    for (int k = 0; k <= 8; ++k) CHECK(std::abs(b[k] - a[k]) <= 1e-12 * a.scale());
  }
}

TEST_CASE("division, sqrt and pow agree with their definitions") {
  std::mt19937_64 rng(3);
  Jet a = random_jet(rng, 1.0, 7), b = random_jet(rng, 1.0, 7);
  Jet q = a / b * b;
  Jet r = sqrt(a) * sqrt(a);
  Jet p = pow(a, 3);
  Jet p3 = a * a * a;
  for (int k = 0; k <= 7; ++k) {
    CHECK(std::abs(q[k] - a[k]) < 1e-12 * a.scale());
    CHECK(std::abs(r[k] - a[k]) < 1e-12 * a.scale());
    CHECK(std::abs(p[k] - p3[k]) < 1e-12 * p3.scale());
  }
  CHECK(std::abs((1.0 / b * b)[0] - 1.0) < 1e-14);
}

TEST_CASE("derive, antiderivative and truncate") {
  Jet e = exp(Jet::variable(0.5, 5));
  Jet d = e.derive();
  CHECK(d.order() == 4);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(d[k] - e[k]) < 1e-14);
  Jet back = d.antiderivative(e[0]);
  CHECK(back.order() == 5);
  for (int k = 0; k <= 5; ++k) CHECK(std::abs(back[k] - e[k]) < 1e-14);
  CHECK(e.truncate(2).order() == 2);
  CHECK(std::abs(e.conj()[0] - e[0]) == 0.0);
}

TEST_CASE("errors") {
  Jet z = Jet::variable(0, 2);
  try {
    (void)(Jet::constant(0, 2, 1.0) / z);
    FAIL("expected DivisionNearZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionNearZero);
  }
  try {
    (void)Jet::variable(0, kMaxJetOrder + 1);
    FAIL("expected OrderExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OrderExceeded);
  }
  try {
    (void)(Jet::variable(0, 2) + Jet::variable(1, 2));
    FAIL("expected JetMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::JetMismatch);
  }
  try {
    (void)(Jet::variable(0, 2) + Jet::variable(0, 3));
    FAIL("expected JetMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::JetMismatch);
  }
  try {
    (void)log(Jet::variable(0, 2));
    FAIL("expected BranchCut");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BranchCut);
  }
  CHECK_THROWS_AS((void)Jet::constant(0, 0, 1.0).derive(), Error);
}

TEST_CASE("principal branch on the negative real axis") {
  // A signed-zero imaginary part must not move the value across the cut.
  CHECK(std::abs(sqrt(Jet::constant(0, 0, Complex(-4.0, -0.0)))[0] - Complex(0, 2)) < 1e-15);
  CHECK(std::abs(log(Jet::constant(0, 0, Complex(-1.0, -0.0)))[0] - Complex(0, std::numbers::pi)) < 1e-15);
}

TEST_CASE("composition") {
  // exp composed with x^2 at 0.5.
  Jet inner = Jet::variable(0.5, 4) * Jet::variable(0.5, 4);
  const double v = std::exp(inner[0].real());
  std::vector<Complex> taylor{v, v, v / 2, v / 6, v / 24};
  Jet a = compose(taylor, inner);
  Jet b = exp(inner);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-13 * b.scale());
}

TEST_CASE("JetBuilder") {
  JetBuilder b(1.0, 2);
  b[0] = 3;
  b[2] = 1;
  Jet j = b.build();
  CHECK(j.base() == 1.0);
  CHECK(j.derivative(2) == Complex(2));
}
