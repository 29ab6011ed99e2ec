#pragma once

// Truncated complex Taylor series ("jets") at a real base point.
//
// A jet of order K at x0 stores c_0..c_K with f(x0 + t) = sum_k c_k t^k + O(t^{K+1}).
// All arithmetic is exact on the truncated series; elementary functions use the
// usual ODE-derived recurrences. Jets are plain values with fixed inline storage.

#include <array>
#include <complex>
#include <span>

#include "zdirac/error.hpp"

namespace zdirac {

using Complex = std::complex<double>;

inline constexpr int kMaxJetOrder = 24;

class Jet {
 public:
  Jet() = default;
  Jet(double base, int order);  // zero jet
  Jet(double base, std::span<const Complex> coeffs);

  static Jet variable(double x0, int order);
  static Jet constant(double x0, int order, Complex value);

  double base() const noexcept { return base_; }
  int order() const noexcept { return order_; }
  std::span<const Complex> coeffs() const noexcept { return {c_.data(), static_cast<std::size_t>(order_) + 1}; }
  Complex operator[](int k) const noexcept { return c_[static_cast<std::size_t>(k)]; }
  Complex value() const noexcept { return c_[0]; }

  // k! * c_k
  Complex derivative(int k) const;

  // Jet of the derivative; order drops by one.
  Jet derive() const;
  // Jet of the antiderivative with constant term c0; order grows by one.
  Jet antiderivative(Complex c0) const;
  Jet truncate(int order) const;
  Jet conj() const;

  // Largest coefficient modulus; the scale used for near-zero tests.
  double scale() const noexcept;
  bool is_variable() const noexcept;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(Complex s);
  Jet& operator-=(Complex s);
  Jet& operator*=(Complex s);
  Jet& operator/=(Complex s);

 private:
  double base_ = 0.0;
  int order_ = 0;
  std::array<Complex, kMaxJetOrder + 1> c_{};

  friend class JetBuilder;
};

// Mutable scratch for code that fills coefficients one at a time.
class JetBuilder {
 public:
  JetBuilder(double base, int order);
  Complex& operator[](int k) { return jet_.c_[static_cast<std::size_t>(k)]; }
  Complex operator[](int k) const { return jet_.c_[static_cast<std::size_t>(k)]; }
  int order() const { return jet_.order_; }
  Jet build() const { return jet_; }

 private:
  Jet jet_;
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }
inline Jet operator+(Jet a, Complex s) { return a += s; }
inline Jet operator-(Jet a, Complex s) { return a -= s; }
inline Jet operator*(Jet a, Complex s) { return a *= s; }
inline Jet operator/(Jet a, Complex s) { return a /= s; }
inline Jet operator+(Complex s, Jet a) { return a += s; }
inline Jet operator-(Complex s, const Jet& a) { return -a + s; }
inline Jet operator*(Complex s, Jet a) { return a *= s; }
Jet operator/(Complex s, const Jet& a);

// Relative threshold below which a leading coefficient counts as zero.
inline constexpr double kDivisionEps = 1e-12;

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, Complex p);
Jet pow(const Jet& a, int n);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet tanh(const Jet& a);
Jet sech(const Jet& a);

// Taylor composition g(inner) where taylor[k] = g^{(k)}(inner[0]) / k!.
// Uses as many terms as inner.order() requires.
Jet compose(std::span<const Complex> taylor, const Jet& inner);

}  // namespace zdirac
