#pragma once

// Dirac equation with a general 2x2 matrix potential (V11 V12; V21 V22).

#include <span>

#include "zdirac/darboux.hpp"
#include "zdirac/dirac.hpp"

namespace zdirac {

struct MatrixDiracModel {
  Field f;
  Field m;
  Field V11, V12, V21, V22;

  // V I_2 with vanishing off-diagonal entries.
  static MatrixDiracModel from_scalar(const ScalarDiracModel& s);
};

// Mechanical elimination of psi2 from the component equations with
// psi1 = exp[-(i/2) int (V12 + V21)] sqrt(m - V22) psi0. The reduced equation
// psi0'' + P psi0' - Q(k) psi0 = 0 should read psi0'' - [k^2 + k X + Y] psi0 = 0,
// so Y = Q(0) and X = (Q(1) - Q(-1))/2. `first_order` is P, which must
// vanish for the phase and root above to be the right substitution, and
// `quadratic` is (Q(1) + Q(-1))/2 - Q(0), which must equal 1.
struct Elimination {
  Field X;
  Field Y;
  Field first_order;
  Field quadratic;
};
Elimination eliminate(const MatrixDiracModel& model);

// X0 = -2f + i(V12 - V21) - (m - V22)'/(m - V22); Y0 from the elimination.
PotentialPair matrix_reduction(const MatrixDiracModel& model);

// f that removes X0: -(m - V22)'/(2(m - V22)) + (i/2)(V12 - V21).
Field simplifying_f_matrix(const MatrixDiracModel& model);

// Entries of the transformed model left free by the matching conditions.
struct MatrixFreeEntries {
  Field m_hat;
  Field V12_hat;
  Field V21_hat;
  Field V22_hat;
};

// fhat from the matching of X_n.
Field f_hat_matrix(const MatrixDiracModel& model, const DarbouxTransform& t, const Field& V12h, const Field& V21h,
                   const Field& V22h, const Field& mh);

// S = (m + V11)(m - V22) + dY - X0 dX/2 - dX^2/4 - dX'/2, the product
// (mhat + V11hat)(mhat - V22hat) demanded by the matching of Y_n.
Field matching_product(const MatrixDiracModel& model, const DarbouxTransform& t);

// V11hat solved from the Y_n matching, written out in full.
Field v11_hat_solution(const MatrixDiracModel& model, const DarbouxTransform& t, const Field& V22h, const Field& mh);

// mhat = (V22hat - V11hat)/2 + sigma sqrt((V11hat + V22hat)^2 + 4S)/2.
Field m_hat_solution(const MatrixDiracModel& model, const DarbouxTransform& t, const Field& V11h, const Field& V22h,
                     int sigma = 1);

// V22hat = mhat - S/(mhat + V11hat).
Field v22_hat_solution(const MatrixDiracModel& model, const DarbouxTransform& t, const Field& V11h, const Field& mh);

struct TransformedMatrixModel {
  MatrixDiracModel model;
};

// fhat from f_hat_matrix and V11hat from v11_hat_solution; the free entries
// are taken as given.
TransformedMatrixModel assemble_transformed_matrix(const MatrixDiracModel& model, const DarbouxTransform& t,
                                                   const MatrixFreeEntries& free);

// psi1 = exp[-(i/2) int_anchor^x (V12 + V21)] sqrt(m - V22) psi0,
// psi2 = ([i f - i k_y - V21] psi1 + i psi1') / (V22 - m).
// The phase integral is tabulated over [lo, hi].
Spinor matrix_spinor(const MatrixDiracModel& model, const Field& psi0, double k_y, double anchor = 0.0,
                     double lo = -20.0, double hi = 20.0);

Residual matrix_dirac_residual(const MatrixDiracModel& model, const Spinor& s, std::span<const double> grid);

}  // namespace zdirac
