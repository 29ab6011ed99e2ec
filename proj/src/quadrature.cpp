#include "zdirac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace zdirac {

namespace {

// Boost's tolerance is relative to the L1 norm, which an integrand made of
// rounding noise can never meet. Integrating g + c with c >= 1 + |g| at the
// ends and middle, then removing c (b - a), turns it into an error bound
// relative to max(1, |g|) per unit length. A plain offset of 1 is not enough:
// g close to -1 would cancel it.
double integrate_real(const std::function<double(double)>& g, double a, double b, double tol) {
  double err = 0.0;
  double l1 = 0.0;
  const double c = 1.0 + 2.0 * std::max({std::abs(g(a)), std::abs(g(0.5 * (a + b))), std::abs(g(b))});
  auto shifted = [&g, c](double t) { return g(t) + c; };
  double v = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(shifted, a, b, 12, tol, &err, &l1);
  v -= c * (b - a);
  if (!std::isfinite(v) || err > std::max(tol * std::max(std::abs(b - a), l1), 1e-300) * 1e3) {
    std::ostringstream os;
    os << "quadrature on [" << a << ", " << b << "] stalled with error estimate " << err;
    throw Error(ErrorKind::QuadratureFailure, os.str());
  }
  return v;
}

}  // namespace

Complex integrate(const std::function<Complex(double)>& f, double a, double b, double tol) {
  if (a == b) return {};
  double re = integrate_real([&](double t) { return f(t).real(); }, a, b, tol);
  double im = integrate_real([&](double t) { return f(t).imag(); }, a, b, tol);
  return {re, im};
}

CumulativeIntegral::CumulativeIntegral(std::function<Complex(double)> f, double anchor, double lo, double hi,
                                       double step)
    : f_(std::move(f)), anchor_(anchor), step_(step) {
  lo = std::min(lo, anchor);
  hi = std::max(hi, anchor);
  // Snap the table so that the anchor is a knot.
  const double below = std::ceil((anchor - lo) / step);
  lo_ = anchor - below * step;
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo_) / step)) + 1;
  const auto ia = static_cast<std::size_t>(below);
  table_.assign(n, Complex{});
  for (std::size_t i = ia + 1; i < n; ++i) {
    double a = lo_ + static_cast<double>(i - 1) * step;
    table_[i] = table_[i - 1] + integrate(f_, a, a + step);
  }
  for (std::size_t i = ia; i-- > 0;) {
    double b = lo_ + static_cast<double>(i + 1) * step;
    table_[i] = table_[i + 1] - integrate(f_, b - step, b);
  }
}

Complex CumulativeIntegral::operator()(double x) const {
  double pos = (x - lo_) / step_;
  auto i = static_cast<std::ptrdiff_t>(std::llround(pos));
  i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(table_.size()) - 1);
  double knot = lo_ + static_cast<double>(i) * step_;
  const Complex base = table_[static_cast<std::size_t>(i)];
  if (x == knot) return base;
  // Inside the table the remainder spans at most half a step, where a fixed
  // 15-point Gauss rule is exact to rounding for the smooth integrands used here.
  if (std::abs(x - knot) <= 0.5 * step_ * (1.0 + 1e-12))
    return base + boost::math::quadrature::gauss<double, 15>::integrate(f_, knot, x);
  return base + integrate(f_, knot, x);
}

}  // namespace zdirac
