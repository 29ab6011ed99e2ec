#include "zdirac/catalog.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/tools/minima.hpp>

namespace zdirac::catalog {

namespace {

Jet x_of(double x, int k) { return Jet::variable(x, k); }

Field sech_field() {
  return Field([](double x, int k) { return sech(x_of(x, k)); }, "sech(x)");
}

Field tanh_field() {
  return Field([](double x, int k) { return tanh(x_of(x, k)); }, "tanh(x)");
}

// 1 / sqrt(1 + e^{2x}) written as e^{-x} / sqrt(1 + e^{-2x}) on the right so
// that nothing overflows.
Jet inv_root(const Jet& X) {
  if (X[0].real() > 0.0) return exp(-X) / sqrt(1.0 + exp(-2.0 * X));
  return 1.0 / sqrt(1.0 + exp(2.0 * X));
}

}  // namespace

ScalarDiracModel set1() {
  return {(0.5 * tanh_field()).labelled("f"), Field::constant(0.0, "m"),
          (std::sqrt(30.0) * sech_field()).labelled("V")};
}

ScalarDiracModel set2(double alpha) {
  ScalarDiracModel s = set1();
  s.m = (alpha * std::sqrt(30.0) * sech_field()).labelled("m");
  return s;
}

ScalarDiracModel set3(double alpha) {
  return {Field::constant(0.0, "f"), Field::constant(0.0, "m"), (alpha * sech_field()).labelled("V")};
}

MatrixDiracModel setm() { return MatrixDiracModel::from_scalar(set1()); }

Field legendre_field(double degree, double order, LegendreKind kind) {
  const LegendreParams p{degree, order, kind};
  return Field([p](double x, int k) { return legendre_of_tanh(p, x_of(x, k)); });
}

Field p5(int k) { return legendre_field(5.0, k).labelled("P5^" + std::to_string(k)); }

Field h03() {
  return Field([](double x, int k) {
    Jet X = x_of(x, k);
    return 0.5 * exp(1.5 * X) * inv_root(X);
  }, "h03");
}

Field h03_next() {
  return Field([](double x, int k) {
    Jet X = x_of(x, k);
    return 0.25 * exp(2.5 * X) * inv_root(X);
  }, "h03_next");
}

Field h03_complex(int sign) {
  const Complex rate{1.5, -static_cast<double>(sign)};
  return Field([rate](double x, int k) {
    Jet X = x_of(x, k);
    return exp(rate * X) * inv_root(X);
  });
}

namespace {

// 1 / (1 + e^{2x}), formed without overflow.
Jet logistic_arg(const Jet& X) {
  if (X[0].real() > 0.0) {
    Jet e = exp(-2.0 * X);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + exp(2.0 * X));
}

}  // namespace

Field psi03(double k, double q) {
  return Field([k, q](double x, int order) {
    Jet X = x_of(x, order);
    Jet F = hyp2f1(0.5 + k - q, 0.5 + k + q, 1.5 + k, logistic_arg(X));
    return exp(-0.5 * X) * pow(sech(X), Complex(k)) * F;
  });
}

Field psi03_product(double k, double q) {
  return Field([k, q](double x, int order) {
    Jet X = x_of(x, order);
    Jet t = tanh(X);
    Jet F = hyp2f1(0.5 + k - q, 0.5 + k + q, 1.5 + k, logistic_arg(X));
    return cosh(X) * pow(1.0 - t, Complex(0.5 + k)) * pow(-1.0 + t, Complex(0.25 - 0.5 * k)) *
           pow(1.0 + t, Complex(0.25 + 0.5 * k)) * F;
  });
}

Complex psi03_phase(double k) { return std::exp(Complex(0.0, std::numbers::pi * (0.25 - 0.5 * k))); }

namespace {

double sse3_objective(const PotentialPair& pair, double k, double q, const std::vector<double>& xs) {
  const Field psi = psi03(k, q);
  double sum = 0.0;
  for (double x : xs) {
    try {
      Jet p = psi(x, 2);
      const Complex v = p[0], d2 = p.derivative(2);
      const Complex pot = k * k + k * pair.X.value(x) + pair.Y.value(x);
      const double r = std::abs(d2 - pot * v) / (1.0 + std::abs(v) + std::abs(d2));
      sum += r * r;
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return sum;
}

}  // namespace

QResolution resolve_q(double alpha, double k, double qmax) {
  const PotentialPair pair = initial_pair(set3(alpha));
  std::vector<double> xs;
  for (int i = 0; i <= 60; ++i) xs.push_back(0.1 * i);
  auto objective = [&](double q) { return sse3_objective(pair, k, q, xs); };

  const double step = 0.05;
  double best_q = 0.0, best = std::numeric_limits<double>::infinity();
  for (double q = 0.0; q <= qmax + 1e-12; q += step) {
    const double v = objective(q);
    if (v < best) {
      best = v;
      best_q = q;
    }
  }
  const double lo = std::max(0.0, best_q - step), hi = best_q + step;
  auto [q, value] = boost::math::tools::brent_find_minima(objective, lo, hi, std::numeric_limits<double>::digits);
  if (value > best) {
    q = best_q;
    value = best;
  }
  // A first 2F1 parameter sitting on a nonpositive integer turns the series
  // into a polynomial; land on it exactly when the optimum is that close.
  const double a = 0.5 + k - q, na = std::round(a);
  if (na <= 0.0 && std::abs(a - na) < 1e-6) {
    const double snapped = 0.5 + k - na;
    return {snapped, objective(snapped), true};
  }
  return {q, value, false};
}

}  // namespace zdirac::catalog
