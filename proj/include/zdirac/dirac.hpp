#pragma once

// Scalar-potential Dirac layer at zero energy: spinors, magnetic field,
// residuals and the transformed model (fhat, mhat, Vhat).

#include <span>

#include "zdirac/darboux.hpp"
#include "zdirac/schrod.hpp"

namespace zdirac {

// Full solution exp(i k_y y) (psi1, psi2).
struct Spinor {
  double k_y = 0.0;
  Field psi1;
  Field psi2;
};

// z-component; the in-plane components vanish.
Field magnetic_field_z(const Field& f);

// psi1 = sqrt(m - V) psi0, psi2 = ([i f - i k_y] psi1 + i psi1') / (V - m).
Spinor spinor_from_scalar(const ScalarDiracModel& model, const Field& psi0, double k_y);

// Both first-order component equations are evaluated along the grid; the
// worst modulus of either left-hand side is divided by the largest sum of
// term moduli seen anywhere on the grid, so the number is scale free.
Residual dirac_residual(const ScalarDiracModel& model, const Spinor& s, std::span<const double> grid);

// Radicands of the square roots below this are an error; between it and zero
// they are treated as rounding noise around a double root and clamped.
inline constexpr double kRadicandClampTol = 1e-10;

// delta * sqrt(radicand) with the clamp rule applied.
Jet signed_root(const Jet& radicand, int delta);

struct TransformedScalarModel {
  ScalarDiracModel model;  // (fhat, mhat, Vhat)
  Field radicand;          // the quantity under the square root of Vhat
};

// Vhat = delta sqrt(mhat^2 + dX'/2 + dX V'/(2(m-V)) - m^2 + V^2 - f dX
//                   + dX^2/4 - dY - dX m'/(2(m-V)))
// fhat = f + (1/2) d/dx log[(m - V) W / ((mhat - Vhat) What)]
TransformedScalarModel assemble_transformed(const ScalarDiracModel& model, const DarbouxTransform& t);

// Same spinor construction applied to psi_n of the transform (built at
// momentum k_y) and the transformed model.
Spinor transformed_spinor(const DarbouxTransform& t, const Field& psi0, const ScalarDiracModel& transformed);

// v_j from a known first component chi_j of the transformed-equation spinor
// at momentum lambda_j: exp[(k_y - lambda_j) x] sqrt(1/(m - V)) chi_j.
Field seed_solution_map(const ScalarDiracModel& model, Complex k_y, const Field& chi, Complex lambda);

}  // namespace zdirac
