#pragma once

// The concrete models and seed solutions behind the shipped scenarios.

#include "zdirac/dirac_matrix.hpp"
#include "zdirac/schrod.hpp"
#include "zdirac/specfun.hpp"

namespace zdirac::catalog {

// f = tanh/2, V = sqrt(30) sech, m = 0.
ScalarDiracModel set1();
// set1 with mass m = alpha sqrt(30) sech.
ScalarDiracModel set2(double alpha);
// f = 0, V = alpha sech, m = 0 (alpha < 0).
ScalarDiracModel set3(double alpha);
// set1 with V sqrt(30) sech times the identity.
MatrixDiracModel setm();

// Ferrers function of tanh(x).
Field legendre_field(double degree, double order, LegendreKind kind = LegendreKind::P);
// P_5^k(tanh x): bound states of set1 at k_y = k.
Field p5(int k);

// Elementary solutions of the set3 (alpha = -1) reduction.
Field h03();       // exp(3x/2) / (2 sqrt(1 + e^{2x})), lambda = -1
Field h03_next();  // exp(5x/2) / (4 sqrt(1 + e^{2x})), lambda = -2
Field h03_complex(int sign);  // exp((3/2 - sign i) x) / sqrt(1 + e^{2x}), lambda = -1 + sign i

// Solution of the set3 reduction at momentum k:
//   exp(-x/2) sech(x)^k 2F1(1/2 + k - q, 1/2 + k + q; 3/2 + k; 1/(1 + e^{2x})).
Field psi03(double k, double q);
// The same function in the product form
//   cosh (1 - tanh)^{1/2 + k} (-1 + tanh)^{1/4 - k/2} (1 + tanh)^{1/4 + k/2} 2F1(...),
// which differs from psi03 by the constant psi03_phase(k).
Field psi03_product(double k, double q);
Complex psi03_phase(double k);

// q making psi03 solve the set3 reduction at (alpha, k): coarse scan of the
// summed squared residual on [0, 6], Brent refinement, then snapping onto a
// terminating parameter set when within 1e-6.
struct QResolution {
  double q;
  double objective;  // summed squared residual at q
  bool snapped;
};
QResolution resolve_q(double alpha, double k, double qmax = 12.0);

}  // namespace zdirac::catalog
