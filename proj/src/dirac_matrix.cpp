#include "zdirac/dirac_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "zdirac/quadrature.hpp"

namespace zdirac {

namespace {
constexpr Complex kI{0.0, 1.0};
}

MatrixDiracModel MatrixDiracModel::from_scalar(const ScalarDiracModel& s) {
  return {s.f, s.m, s.V, Field::constant(0.0, "0"), Field::constant(0.0, "0"), s.V};
}

namespace {

struct Reduced {
  Jet q;      // k^2 + k X + Y at the given k
  Jet first;  // coefficient of psi0'
};

Reduced eliminate_at(const MatrixDiracModel& M, double k, double x, int K) {
  Jet D = M.m(x, K + 2) - M.V22(x, K + 2);
  Jet D1 = D.derive();
  Jet Dk1 = D.truncate(K + 1);
  Jet s12 = M.V12(x, K + 1), s21 = M.V21(x, K + 1);
  // p = phi'/phi for phi = exp[-(i/2) int (V12 + V21)] sqrt(m - V22)
  Jet p = -0.5 * kI * (s12 + s21) + D1 / (2.0 * Dk1);
  Jet f1 = M.f(x, K + 1);
  Jet a = (kI * f1 - kI * k - s21 + kI * p) / (-Dk1);
  Jet b = kI / (-Dk1);
  Jet c = -kI * k + kI * f1.truncate(K) + s12.truncate(K);
  Jet ak = a.truncate(K), bk = b.truncate(K), pk = p.truncate(K);
  Jet mv11 = M.m(x, K) + M.V11(x, K);
  Jet q = -(a.derive() + pk * ak + kI * c * ak + kI * mv11) / bk;
  Jet first = (ak + b.derive() + bk * pk + kI * c * bk) / bk;
  return {q, first};
}

}  // namespace

Elimination eliminate(const MatrixDiracModel& model) {
  auto M = std::make_shared<MatrixDiracModel>(model);
  Field X([M](double x, int k) { return 0.5 * (eliminate_at(*M, 1.0, x, k).q - eliminate_at(*M, -1.0, x, k).q); });
  Field Y([M](double x, int k) { return eliminate_at(*M, 0.0, x, k).q; });
  Field first([M](double x, int k) { return eliminate_at(*M, 0.0, x, k).first; });
  Field quad([M](double x, int k) {
    return 0.5 * (eliminate_at(*M, 1.0, x, k).q + eliminate_at(*M, -1.0, x, k).q) - eliminate_at(*M, 0.0, x, k).q;
  });
  return {X.labelled("X0"), Y.labelled("Y0"), first, quad};
}

PotentialPair matrix_reduction(const MatrixDiracModel& model) {
  const MatrixDiracModel M = model;
  Field X([M](double x, int k) {
    Jet d = M.m(x, k + 1) - M.V22(x, k + 1);
    return -2.0 * M.f(x, k) + kI * (M.V12(x, k) - M.V21(x, k)) - d.derive() / d.truncate(k);
  });
  return {X.labelled("X0"), eliminate(model).Y};
}

Field simplifying_f_matrix(const MatrixDiracModel& model) {
  const MatrixDiracModel M = model;
  return Field([M](double x, int k) {
    Jet d = M.m(x, k + 1) - M.V22(x, k + 1);
    return -d.derive() / (2.0 * d.truncate(k)) + 0.5 * kI * (M.V12(x, k) - M.V21(x, k));
  });
}

Field f_hat_matrix(const MatrixDiracModel& model, const DarbouxTransform& t, const Field& V12h, const Field& V21h,
                   const Field& V22h, const Field& mh) {
  const MatrixDiracModel M = model;
  const Field dX = t.delta_x();
  return Field([M, dX, V12h, V21h, V22h, mh](double x, int k) {
    Jet mm = M.m(x, k + 1), v22 = M.V22(x, k + 1);
    Jet mhat = mh(x, k + 1), v22h = V22h(x, k + 1);
    Jet mk = mm.truncate(k), v22k = v22.truncate(k), mhk = mhat.truncate(k), v22hk = v22h.truncate(k);
    Jet dx = dX(x, k);
    return M.f(x, k) + 0.5 * kI * (V12h(x, k) - V21h(x, k)) - 0.5 * kI * (M.V12(x, k) - M.V21(x, k)) +
           (mm.derive() - v22.derive()) / (2.0 * mk - 2.0 * v22k) +
           ((v22hk - mhk) * dx - mhat.derive() + v22h.derive()) / (2.0 * mhk - 2.0 * v22hk);
  });
}

Field matching_product(const MatrixDiracModel& model, const DarbouxTransform& t) {
  const MatrixDiracModel M = model;
  const Field dX = t.delta_x(), dY = t.delta_y(), X0 = t.initial().X;
  return Field([M, dX, dY, X0](double x, int k) {
    Jet dx = dX(x, k + 1);
    Jet dxk = dx.truncate(k);
    Jet mk = M.m(x, k);
    return (mk + M.V11(x, k)) * (mk - M.V22(x, k)) + dY(x, k) - 0.5 * X0(x, k) * dxk - 0.25 * dxk * dxk -
           0.5 * dx.derive();
  });
}

Field v11_hat_solution(const MatrixDiracModel& model, const DarbouxTransform& t, const Field& V22h, const Field& mh) {
  const MatrixDiracModel M = model;
  const Field dX = t.delta_x(), dY = t.delta_y();
  return Field([M, dX, dY, V22h, mh](double x, int k) {
    Jet mm = M.m(x, k + 1), v22j = M.V22(x, k + 1), dxj = dX(x, k + 1);
    Jet m = mm.truncate(k), V22 = v22j.truncate(k), DX = dxj.truncate(k);
    Jet dm = mm.derive(), dV22 = v22j.derive(), dDX = dxj.derive();
    Jet V11 = M.V11(x, k), V12 = M.V12(x, k), V21 = M.V21(x, k), f = M.f(x, k);
    Jet DY = dY(x, k), Vh22 = V22h(x, k), h = mh(x, k);
    Jet brace = 4.0 * m * m * m + 4.0 * m * m * V11 - 8.0 * m * m * V22 + 4.0 * h * h * V22 + 4.0 * V11 * V22 * V22 -
                4.0 * h * V22 * Vh22 - 4.0 * f * V22 * DX + 2.0 * kI * V12 * V22 * DX - 2.0 * kI * V21 * V22 * DX +
                V22 * DX * DX - 4.0 * V22 * DY + 2.0 * DX * dm - 2.0 * DX * dV22 + 2.0 * V22 * dDX -
                8.0 * m * V11 * V22 + 4.0 * m * V22 * V22 - 4.0 * m * h * h + 4.0 * m * h * Vh22 + 4.0 * m * f * DX -
                2.0 * kI * m * DX * (V12 - V21) - m * DX * DX + 4.0 * m * DY - 2.0 * m * dDX;
    return brace / (4.0 * (m - V22) * (h - Vh22));
  });
}

Field m_hat_solution(const MatrixDiracModel& model, const DarbouxTransform& t, const Field& V11h, const Field& V22h,
                     int sigma) {
  const Field S = matching_product(model, t);
  return Field([S, V11h, V22h, sigma](double x, int k) {
    Jet a = V11h(x, k), b = V22h(x, k);
    Jet root = signed_root((a + b) * (a + b) + 4.0 * S(x, k), sigma);
    return 0.5 * (b - a) + 0.5 * root;
  });
}

Field v22_hat_solution(const MatrixDiracModel& model, const DarbouxTransform& t, const Field& V11h, const Field& mh) {
  const Field S = matching_product(model, t);
  return Field([S, V11h, mh](double x, int k) {
    Jet h = mh(x, k);
    return h - S(x, k) / (h + V11h(x, k));
  });
}

TransformedMatrixModel assemble_transformed_matrix(const MatrixDiracModel& model, const DarbouxTransform& t,
                                                   const MatrixFreeEntries& free) {
  Field fh = f_hat_matrix(model, t, free.V12_hat, free.V21_hat, free.V22_hat, free.m_hat);
  Field v11 = v11_hat_solution(model, t, free.V22_hat, free.m_hat);
  return {{fh.labelled("fhat"), free.m_hat.labelled("mhat"), v11.labelled("V11hat"), free.V12_hat, free.V21_hat,
           free.V22_hat.labelled("V22hat")}};
}

Spinor matrix_spinor(const MatrixDiracModel& model, const Field& psi0, double k_y, double anchor, double lo,
                     double hi) {
  const MatrixDiracModel M = model;
  Field sum = M.V12 + M.V21;
  auto integral =
      std::make_shared<const CumulativeIntegral>([sum](double t) { return sum.value(t); }, anchor, lo, hi);
  Field phase([sum, integral](double x, int k) {
    const Complex c0 = -0.5 * kI * (*integral)(x);
    if (k == 0) return Jet::constant(x, 0, std::exp(c0));
    return exp((-0.5 * kI * sum(x, k - 1)).antiderivative(c0));
  });
  Field psi1([M, phase, psi0](double x, int k) {
    return phase(x, k) * sqrt(M.m(x, k) - M.V22(x, k)) * psi0(x, k);
  });
  Field psi2([M, psi1, k_y](double x, int k) {
    Jet p = psi1(x, k + 1);
    return ((kI * M.f(x, k) - kI * k_y - M.V21(x, k)) * p.truncate(k) + kI * p.derive()) /
           (M.V22(x, k) - M.m(x, k));
  });
  return {k_y, psi1.labelled("psi1"), psi2.labelled("psi2")};
}

Residual matrix_dirac_residual(const MatrixDiracModel& model, const Spinor& s, std::span<const double> grid) {
  Residual r;
  double worst = 0.0, scale = 0.0, where = std::numeric_limits<double>::quiet_NaN();
  const double k = s.k_y;
  for (double x : grid) {
    try {
      Jet p1 = s.psi1(x, 1), p2 = s.psi2(x, 1);
      Complex f = model.f.value(x), m = model.m.value(x);
      Complex v11 = model.V11.value(x), v12 = model.V12.value(x), v21 = model.V21.value(x),
              v22 = model.V22.value(x);
      Complex a = -kI * p2[1], b = (-kI * k + kI * f + v12) * p2[0], c = (m + v11) * p1[0];
      Complex d = -kI * p1[1], e = (kI * k - kI * f + v21) * p1[0], g = (-m + v22) * p2[0];
      double err = std::max(std::abs(a + b + c), std::abs(d + e + g));
      double terms = std::max(std::abs(a) + std::abs(b) + std::abs(c), std::abs(d) + std::abs(e) + std::abs(g));
      scale = std::max(scale, terms);
      if (err > worst || std::isnan(where)) {
        worst = err;
        where = x;
      }
    } catch (const Error& e) {
      if (!is_singular_point(e)) throw e.with_location(x);
      r.excluded.push_back(x);
    }
  }
  r.max_err = scale > 0.0 ? worst / scale : 0.0;
  r.location = where;
  return r;
}

}  // namespace zdirac
