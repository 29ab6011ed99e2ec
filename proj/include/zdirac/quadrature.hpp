#pragma once

#include <functional>
#include <vector>

#include "zdirac/jet.hpp"

namespace zdirac {

// Adaptive Gauss-Kronrod on [a, b] for a complex integrand (real and
// imaginary parts integrated separately). QuadratureFailure when the error
// estimate stays above tol.
Complex integrate(const std::function<Complex(double)>& f, double a, double b, double tol = 1e-13);

// Antiderivative anchored at `anchor`, tabulated on knots spanning [lo, hi].
// The table is built once in the constructor and only read afterwards, so
// concurrent lookups are safe. Values outside the table integrate from the
// nearest end knot.
class CumulativeIntegral {
 public:
  CumulativeIntegral(std::function<Complex(double)> f, double anchor, double lo, double hi, double step = 0.25);

  Complex operator()(double x) const;
  double anchor() const noexcept { return anchor_; }

 private:
  std::function<Complex(double)> f_;
  double anchor_;
  double lo_;
  double step_;
  std::vector<Complex> table_;  // integral from anchor to lo_ + i * step_
};

}  // namespace zdirac
