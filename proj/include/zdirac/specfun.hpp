#pragma once

// Gamma, Gauss hypergeometric 2F1 and Ferrers (on-the-cut) associated
// Legendre functions, in scalar and jet form.

#include <utility>

#include "zdirac/jet.hpp"

namespace zdirac {

// Lanczos (g = 7, 9 terms) with reflection for x < 1/2.
double gamma_fn(double x);
Complex gamma_fn(Complex z);
// 1/Gamma, exactly zero at the poles.
Complex rgamma(Complex z);

// Pochhammer symbol (a)_k.
Complex pochhammer(Complex a, int k);

// 2F1(a, b; c; z) for real z in [0, 1).
Complex hyp2f1(Complex a, Complex b, Complex c, double z);
// Jet of 2F1 composed with z(x); derivatives come from the contiguous
// shift d/dz F(a,b;c) = ab/c F(a+1,b+1;c+1).
Jet hyp2f1(Complex a, Complex b, Complex c, const Jet& z);

enum class LegendreKind { P, Q };

struct LegendreParams {
  double degree = 0.0;  // nu
  double order = 0.0;   // mu
  LegendreKind kind = LegendreKind::P;
};

// Value and d/dz at z0, with the endpoint-sensitive combinations supplied
// separately so callers that know them in closed form avoid cancellation:
// s = 1 - z0^2, r = (1 + z0) / (1 - z0), h = (1 - z0) / 2.
struct LegendrePoint {
  double z;
  double s;
  double r;
  double h;
  static LegendrePoint at(double z0);
  // z0 = tanh(x0), with every combination formed from exponentials of x0.
  static LegendrePoint at_tanh(double x0);
};

std::pair<Complex, Complex> legendre_seed(const LegendreParams& p, const LegendrePoint& at);

// Legendre function composed with an arbitrary argument jet. The first two
// z-coefficients are seeded, the rest follow from the Legendre equation.
Jet legendre(const LegendreParams& p, const Jet& arg);

// Same function evaluated at tanh(x): the seeds are mapped to x and the
// higher coefficients come from u'' = (mu^2 - nu(nu+1) sech^2 x) u, which
// has no singular point on the real line and stays accurate in the tails.
Jet legendre_of_tanh(const LegendreParams& p, const Jet& x);

// Taylor coefficients of a solution of P w'' + Q w' + R w = 0 about t = 0,
// where P, Q, R are given by their own Taylor coefficients.
Jet solve_linear_ode_series(double base, int order, std::span<const Complex> P, std::span<const Complex> Q,
                            std::span<const Complex> R, Complex w0, Complex w1);

}  // namespace zdirac
