#include "zdirac/schrod.hpp"

#include <cmath>

namespace zdirac {

PotentialPair initial_pair(const ScalarDiracModel& model) {
  const Field f = model.f, m = model.m, V = model.V;
  Field X([f, m, V](double x, int k) {
    Jet d = m(x, k + 1) - V(x, k + 1);
    return -2.0 * f(x, k) - d.derive() / d.truncate(k);
  });
  Field Y([f, m, V](double x, int k) {
    Jet mm = m(x, k + 2), vv = V(x, k + 2), ff = f(x, k + 1);
    Jet d2j = mm - vv;
    Jet d1j = d2j.derive();
    Jet d = d2j.truncate(k), d1 = d1j.truncate(k), dd = d1j.derive();
    Jet fk = ff.truncate(k), fp = ff.derive();
    Jet mk = mm.truncate(k), vk = vv.truncate(k);
    Jet brace = 4.0 * fk * fk * d * d + 4.0 * fk * d * d1 + 3.0 * d1 * d1 +
                2.0 * d * (2.0 * d * (mk * mk - vk * vk - fp) - dd);
    return brace / (4.0 * d * d);
  });
  return {X.labelled("X0"), Y.labelled("Y0")};
}

Field simplifying_f(const Field& m, const Field& V) {
  return Field([m, V](double x, int k) {
    Jet mm = m(x, k + 1), vv = V(x, k + 1);
    Jet d = (mm - vv).truncate(k);
    return (vv.derive() - mm.derive()) / (2.0 * d);
  });
}

bool is_singular_point(const Error& e) {
  return e.kind() == ErrorKind::DivisionNearZero || e.kind() == ErrorKind::NodeEncountered;
}

Residual reduction_residual(const PotentialPair& pair, const Field& psi, Complex eps, std::span<const double> grid) {
  Residual r;
  for (double x : grid) {
    try {
      Jet p = psi(x, 2);
      Complex v = p[0], dd = 2.0 * p[2];
      Complex X = pair.X.value(x), Y = pair.Y.value(x);
      double err = std::abs(dd - (eps * eps + eps * X + Y) * v) / (1.0 + std::abs(v) + std::abs(dd));
      r.absorb(err, x);
    } catch (const Error& e) {
      if (!is_singular_point(e)) throw e.with_location(x);
      r.excluded.push_back(x);
    }
  }
  return r;
}

}  // namespace zdirac
