#pragma once

// Reduction of a scalar Dirac model to psi'' = [eps^2 + eps X + Y] psi.

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "zdirac/field.hpp"

namespace zdirac {

struct ScalarDiracModel {
  Field f;  // oscillator term; the magnetic field is -f'
  Field m;  // position-dependent mass
  Field V;  // scalar potential
};

struct PotentialPair {
  Field X;
  Field Y;
};

// X0 = -2f - (m-V)'/(m-V); Y0 written out term by term from the elimination
// of the lower spinor component.
PotentialPair initial_pair(const ScalarDiracModel& model);

// The f that removes the linear momentum term: f = (V' - m') / (2(m - V)).
Field simplifying_f(const Field& m, const Field& V);

// Worst point of a grid scan. Points where a denominator vanishes are left
// out of the maximum and listed in `excluded`.
struct Residual {
  double max_err = 0.0;
  double location = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> excluded;

  void absorb(double err, double x) {
    if (std::isnan(location) || err > max_err) {
      max_err = err;
      location = x;
    }
  }
};

// max |psi'' - (eps^2 + eps X + Y) psi| / (1 + |psi| + |psi''|)
Residual reduction_residual(const PotentialPair& pair, const Field& psi, Complex eps, std::span<const double> grid);

// True for errors that mark a singular point of a field rather than a bug.
bool is_singular_point(const Error& e);

}  // namespace zdirac
