#pragma once

// n-th order Darboux transformation of psi'' = [eps^2 + eps X + Y] psi.
//
// Auxiliary functions v_j = exp[(eps - lambda_j) x] h_j enter two Wronskians:
// W = Wr(v_0..v_{n-1}) and What = (-2)^n Wr(v_0..v_{n-1}, G) / G with
// G = exp[(1/2) int_anchor^x (X0 + 2 eps)]. Then
//   psi_n = Wr(v_0..v_{n-1}, psi_0) / sqrt(What W)
//   X_n   = X0 + (log What/W)'
// and Y_n follows from the Wronskian ratios What'/What, What''/What, W'/W,
// W''/W so that nothing is squared before it is divided.

#include <memory>
#include <span>
#include <vector>

#include "zdirac/field.hpp"
#include "zdirac/schrod.hpp"

namespace zdirac {

struct TransformPair {
  Complex lambda;
  Field h;
};

struct TransformSpec {
  Complex eps;
  std::vector<TransformPair> pairs;
  int delta = -1;
  Field m_hat;
  double anchor = 0.0;

  int order() const noexcept { return static_cast<int>(pairs.size()); }
  // InvalidSpec unless 1 <= n, delta = +-1 and eps, lambda_0..lambda_{n-1}
  // are pairwise distinct.
  void validate() const;
};

Field build_v(const Field& h, Complex lambda, Complex eps);

// Determinant of the matrix of derivative jets; x must be the coordinate jet.
// The result has order x.order() - (fields.size() - 1).
Jet wronskian(std::span<const Field> fields, const Jet& x);

class DarbouxTransform {
 public:
  // [lo, hi] is the range over which the antiderivative in G is tabulated.
  DarbouxTransform(TransformSpec spec, PotentialPair initial, double lo = -20.0, double hi = 20.0);

  const TransformSpec& spec() const;
  const PotentialPair& initial() const;
  int n() const;

  Jet w(double x, int order) const;
  Jet w_hat(double x, int order) const;
  Jet g(double x, int order) const;

  // psi_n on the principal branch of the square root.
  Field solution(const Field& psi0) const;
  // Signs that keep sqrt(What W) continuous along the grid (principal root
  // times sign). Points where the root cannot be formed get +1.
  std::vector<double> branch_signs(std::span<const double> grid) const;

  Field delta_x() const;
  Field delta_y() const;
  PotentialPair transformed_pair() const;

  // n = 1 closed forms, W = v_0 and What = 2 v_0' - (X0 + 2 eps) v_0, kept as
  // an independent cross-check of the determinant plumbing.
  Jet first_order_w_hat(double x, int order) const;

  struct State;

 private:
  std::shared_ptr<const State> state_;
};

}  // namespace zdirac
