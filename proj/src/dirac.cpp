#include "zdirac/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zdirac {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Field magnetic_field_z(const Field& f) { return (-derivative(f)).labelled("Bz"); }

Spinor spinor_from_scalar(const ScalarDiracModel& model, const Field& psi0, double k_y) {
  const Field f = model.f, m = model.m, V = model.V;
  Field psi1([m, V, psi0](double x, int k) { return sqrt(m(x, k) - V(x, k)) * psi0(x, k); });
  Field psi2([f, m, V, psi1, k_y](double x, int k) {
    Jet p = psi1(x, k + 1);
    Jet pk = p.truncate(k);
    return ((kI * f(x, k) - kI * k_y) * pk + kI * p.derive()) / (V(x, k) - m(x, k));
  });
  return {k_y, psi1.labelled("psi1"), psi2.labelled("psi2")};
}

Residual dirac_residual(const ScalarDiracModel& model, const Spinor& s, std::span<const double> grid) {
  Residual r;
  double worst = 0.0, scale = 0.0, where = std::numeric_limits<double>::quiet_NaN();
  const double k = s.k_y;
  for (double x : grid) {
    try {
      Jet p1 = s.psi1(x, 1), p2 = s.psi2(x, 1);
      Complex f = model.f.value(x), m = model.m.value(x), V = model.V.value(x);
      Complex a = -kI * p2[1], b = (-kI * k + kI * f) * p2[0], c = (m + V) * p1[0];
      Complex d = -kI * p1[1], e = (kI * k - kI * f) * p1[0], g = (V - m) * p2[0];
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

Jet signed_root(const Jet& radicand, int delta) {
  const Complex r0 = radicand[0];
  if (std::abs(r0.imag()) <= kRadicandClampTol) {
    if (r0.real() < -kRadicandClampTol) {
      std::ostringstream os;
      os << "radicand " << r0.real() << " is negative";
      throw Error(ErrorKind::NegativeRadicand, os.str()).with_location(radicand.base());
    }
    if (r0.real() < 0.0) return Jet(radicand.base(), radicand.order());
  }
  try {
    return static_cast<double>(delta) * sqrt(radicand);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BranchCut && std::abs(r0) <= kRadicandClampTol)
      return Jet(radicand.base(), radicand.order());
    throw e.with_location(radicand.base());
  }
}

TransformedScalarModel assemble_transformed(const ScalarDiracModel& model, const DarbouxTransform& t) {
  const Field f = model.f, m = model.m, V = model.V, mh = t.spec().m_hat;
  const Field dX = t.delta_x(), dY = t.delta_y();
  const int delta = t.spec().delta;

  Field radicand([f, m, V, mh, dX, dY](double x, int k) {
    Jet mm = m(x, k + 1), vv = V(x, k + 1), dx = dX(x, k + 1);
    Jet mk = mm.truncate(k), vk = vv.truncate(k), dxk = dx.truncate(k);
    Jet mhk = mh(x, k), fk = f(x, k), dyk = dY(x, k);
    Jet dmv = mk - vk;
    return mhk * mhk + 0.5 * dx.derive() + dxk * vv.derive() / (2.0 * dmv) - mk * mk + vk * vk - fk * dxk +
           0.25 * dxk * dxk - dyk - dxk * mm.derive() / (2.0 * dmv);
  });
  Field vhat([radicand, delta](double x, int k) { return signed_root(radicand(x, k), delta); });
  Field fhat([f, m, V, mh, vhat, dX](double x, int k) {
    Jet d = m(x, k + 1) - V(x, k + 1);
    Jet dh = mh(x, k + 1) - vhat(x, k + 1);
    Jet L = d.derive() / d.truncate(k);
    Jet Lh = dh.derive() / dh.truncate(k);
    return f(x, k) + 0.5 * (L - Lh - dX(x, k));
  });
  return {{fhat.labelled("fhat"), mh.labelled("mhat"), vhat.labelled("Vhat")}, radicand.labelled("radicand")};
}

Spinor transformed_spinor(const DarbouxTransform& t, const Field& psi0, const ScalarDiracModel& transformed) {
  return spinor_from_scalar(transformed, t.solution(psi0), t.spec().eps.real());
}

Field seed_solution_map(const ScalarDiracModel& model, Complex k_y, const Field& chi, Complex lambda) {
  const Field m = model.m, V = model.V;
  const Complex rate = k_y - lambda;
  // Reciprocal of the root used for psi1, so that a chi built from psi1 maps
  // back to h exactly even where m - V is negative.
  return Field([m, V, chi, rate](double x, int k) {
    return exp(rate * Jet::variable(x, k)) / sqrt(m(x, k) - V(x, k)) * chi(x, k);
  });
}

}  // namespace zdirac
