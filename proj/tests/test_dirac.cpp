#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "zdirac/catalog.hpp"
#include "zdirac/dirac.hpp"
#include "zdirac/exprlang.hpp"
#include "zdirac/verify.hpp"

using namespace zdirac;

namespace {

const std::vector<double> kGrid = uniform_grid(-8.0, 8.0, 321);
// Where the transformed potentials are not dominated by cancellation in What.
const std::vector<double> kFirstWindow = uniform_grid(-4.0, 7.0, 221);
const std::vector<double> kSecondWindow = uniform_grid(-2.0, 5.0, 141);

DarbouxTransform make(const ScalarDiracModel& model, std::vector<TransformPair> pairs, Complex eps,
                      const std::string& mhat = "0", int delta = -1) {
  TransformSpec spec;
  spec.eps = eps;
  spec.pairs = std::move(pairs);
  spec.delta = delta;
  spec.m_hat = expr::parse_field(mhat);
  return DarbouxTransform(spec, initial_pair(model), -10.0, 19.0);
}

DarbouxTransform first_order(double k, const std::string& mhat = "0", int delta = -1) {
  return make(catalog::set1(), {{5.0, catalog::p5(5)}}, k, mhat, delta);
}

bool pass(const CheckReport& r) {
  INFO(r.name << ": " << r.max_err << " at " << r.location << " " << r.notes);
  CHECK(r.status == Status::Pass);
  return r.status == Status::Pass;
}

CheckReport compare(const Field& a, const Field& b, const std::vector<double>& grid, double tol = 1e-8) {
  ClosedFormOptions o;
  o.tol = tol;
  return closed_form_check("cmp", a, b, grid, o);
}

CheckReport compare(const Field& a, const std::string& b, const std::vector<double>& grid, double tol = 1e-8) {
  return compare(a, expr::parse_field(b), grid, tol);
}

}  // namespace

TEST_CASE("magnetic field") {
  pass(compare(magnetic_field_z(catalog::set1().f), "-sech(x)^2/2", kGrid, 1e-14));
  pass(compare(magnetic_field_z(Field::constant(3.0)), "0", kGrid, 1e-300));
  pass(compare(magnetic_field_z(expr::parse_field("tanh(x)-1/2")), "-sech(x)^2", kGrid, 1e-14));
  // Only f' enters: a constant shift changes nothing.
  const Field f = expr::parse_field("sech(x)*tanh(x)");
  const Field a = magnetic_field_z(f), b = magnetic_field_z(f + Complex(4.0));
  for (double x : kGrid) CHECK(a.value(x) == b.value(x));
}

TEST_CASE("initial spinors") {
  const ScalarDiracModel model = catalog::set1();
  for (int k = 1; k <= 5; ++k) {
    const Spinor s = spinor_from_scalar(model, catalog::p5(k), k);
    INFO("k_y = " << k);
    CHECK(dirac_residual(model, s, kGrid).max_err < 1e-8);
    CHECK(classify_bound(density(s, uniform_grid(-20.0, 20.0, 2001))));
  }
  const Spinor zero = spinor_from_scalar(model, Field::constant(0.0), 2.0);
  CHECK(dirac_residual(model, zero, kGrid).max_err == 0.0);
}

TEST_CASE("corrupted lower component is detected") {
  const ScalarDiracModel model = catalog::set1();
  Spinor s = spinor_from_scalar(model, catalog::p5(5), 5.0);
  s.psi2 = Complex(1.01) * s.psi2;
  CHECK(dirac_residual(model, s, kGrid).max_err > 1e-3);
}

TEST_CASE("hypergeometric spinors of the alpha sech potential") {
  const ScalarDiracModel model = catalog::set3(-5.0);
  const std::vector<double> wide = uniform_grid(-16.0, 16.0, 1601);
  for (double k : {2.5, 3.5, 4.5}) {
    const catalog::QResolution q = catalog::resolve_q(-5.0, k);
    const Spinor s = spinor_from_scalar(model, catalog::psi03(k, q.q), k);
    INFO("k_y = " << k << ", q = " << q.q);
    CHECK(dirac_residual(model, s, kGrid).max_err < 1e-8);
    CHECK(classify_bound(density(s, wide)));
  }
}

TEST_CASE("first-order transformed model, massless") {
  const TransformedScalarModel tm = assemble_transformed(catalog::set1(), first_order(2.0));
  pass(compare(tm.model.V, "-2*sqrt(6)*sech(x)", kFirstWindow));
  pass(compare(tm.model.f, "tanh(x)-1/2", kFirstWindow));
  pass(compare(tm.model.m, "0", kFirstWindow, 1e-300));
}

TEST_CASE("first-order transformed model, massive") {
  const TransformedScalarModel tm = assemble_transformed(catalog::set1(), first_order(2.0, "sech(x)"));
  pass(compare(tm.model.V, "-5*sech(x)", kFirstWindow));
}

TEST_CASE("first-order transformed potential for general masses") {
  for (const char* m : {"1+tanh(x)", "exp(-x^2/3)", "sech(x+5)", "2"}) {
    const TransformedScalarModel tm = assemble_transformed(catalog::set1(), first_order(3.0, m));
    const Field mh = expr::parse_field(m);
    const Field ref = Field([mh](double x, int k) {
      Jet a = mh(x, k);
      Jet s = sech(Jet::variable(x, k));
      return -sqrt(a * a + 24.0 * s * s);
    });
    INFO(m);
    pass(compare(tm.model.V, ref, kFirstWindow));
  }
}

TEST_CASE("the transformed potential does not depend on the momentum") {
  const Field a = assemble_transformed(catalog::set1(), first_order(1.0)).model.V;
  const Field b = assemble_transformed(catalog::set1(), first_order(3.0)).model.V;
  pass(compare(a, b, kFirstWindow));
}

TEST_CASE("second-order transformed potential") {
  const DarbouxTransform t = make(catalog::set1(), {{5.0, catalog::p5(5)}, {4.0, catalog::p5(4)}}, 1.0);
  const TransformedScalarModel tm = assemble_transformed(catalog::set1(), t);
  pass(compare(tm.model.V, "-sqrt(18)*sech(x)", kSecondWindow));
  pass(compare(tm.model.f, "-1+3/2*tanh(x)", kSecondWindow));
}

TEST_CASE("transformed alpha sech potentials") {
  const std::vector<double> window = uniform_grid(-5.0, 6.0, 221);
  const ScalarDiracModel model = catalog::set3(-1.0);
  const TransformedScalarModel first = assemble_transformed(model, make(model, {{-1.0, catalog::h03()}}, 0.5));
  pass(compare(first.model.V, "-sqrt(12*exp(2*x))/(3+exp(2*x))", window));

  const DarbouxTransform t =
      make(model, {{Complex(-1, 1), catalog::h03_complex(1)}, {Complex(-1, -1), catalog::h03_complex(-1)}}, 0.5);
  const TransformedScalarModel second = assemble_transformed(model, t);
  pass(compare(second.model.V * second.model.V, "260*exp(2*x)/(13+5*exp(2*x))^2", window));
  pass(imaginary_part_check("im", second.model.V, window, 1e-10));
  pass(imaginary_part_check("im", second.model.f, window, 1e-10));
}

TEST_CASE("transformed bound states") {
  const ScalarDiracModel model = catalog::set1();
  const std::vector<double> grid = uniform_grid(-8.0, 17.5, 1276);
  for (int k = 1; k <= 4; ++k) {
    const DarbouxTransform t = first_order(k);
    const TransformedScalarModel tm = assemble_transformed(model, t);
    const Spinor s = transformed_spinor(t, catalog::p5(k), tm.model);
    INFO("k_y = " << k);
    CHECK(dirac_residual(tm.model, s, grid).max_err < 1e-8);
    CHECK(classify_bound(density(s, grid)));
  }
  // The seed's own momentum is removed from the spectrum.
  try {
    (void)first_order(5.0);
    FAIL("expected InvalidSpec");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidSpec);
  }
}

TEST_CASE("flipping delta negates the transformed potential") {
  const ScalarDiracModel model = catalog::set1();
  const DarbouxTransform a = first_order(2.0, "sech(x)", -1), b = first_order(2.0, "sech(x)", 1);
  const TransformedScalarModel ta = assemble_transformed(model, a), tb = assemble_transformed(model, b);
  for (double x : kFirstWindow) CHECK(tb.model.V.value(x) == -ta.model.V.value(x));
  const Spinor s = transformed_spinor(b, catalog::p5(2), tb.model);
  CHECK(dirac_residual(tb.model, s, kGrid).max_err < 1e-8);
}

TEST_CASE("seed solution map") {
  const ScalarDiracModel model = catalog::set1();
  const double k = 2.0;
  const Field h = catalog::p5(5);
  // chi = sqrt(m - V) h recovers the auxiliary function.
  const Field chi = Field([model, h](double x, int order) { return sqrt(model.m(x, order) - model.V(x, order)) * h(x, order); });
  pass(compare(seed_solution_map(model, k, chi, 5.0), build_v(h, 5.0, k), kGrid, 1e-12));

  // The first component of the spinor at momentum 5 builds the same transform.
  const Spinor s5 = spinor_from_scalar(model, h, 5.0);
  const Field v = seed_solution_map(model, k, s5.psi1, 5.0);
  TransformSpec spec;
  spec.eps = k;
  // Undo the exponential so the pair carries the seed in the usual form.
  spec.pairs.push_back({5.0, Field([v, k](double x, int order) {
                          return exp(-(k - 5.0) * Jet::variable(x, order)) * v(x, order);
                        })});
  spec.m_hat = Field::constant(0.0);
  const DarbouxTransform via_map(spec, initial_pair(model), -10.0, 10.0);
  const DarbouxTransform direct = first_order(k);
  const std::vector<double> mid = uniform_grid(-5.0, 5.0, 101);
  pass(compare(via_map.solution(catalog::p5(2)), direct.solution(catalog::p5(2)), mid, 1e-10));

  // Complex energies keep the modulus identity.
  const Field hc = catalog::h03_complex(1);
  const ScalarDiracModel m3 = catalog::set3(-1.0);
  const Field chic = Field([m3, hc](double x, int order) { return sqrt(m3.m(x, order) - m3.V(x, order)) * hc(x, order); });
  const Field vc = seed_solution_map(m3, 0.5, chic, Complex(-1, 1));
  for (double x : {-2.0, 0.0, 2.0})
    CHECK(std::abs(std::abs(vc.value(x)) - std::exp(1.5 * x) * std::abs(hc.value(x))) < 1e-12 * std::abs(vc.value(x)));
}

TEST_CASE("square-root clamp") {
  CHECK(signed_root(Jet::constant(0.0, 1, 4.0), -1)[0] == Complex(-2.0));
  CHECK(signed_root(Jet::constant(0.0, 1, 4.0), 1)[0] == Complex(2.0));
  CHECK(signed_root(Jet::constant(0.0, 1, -1e-11), 1)[0] == Complex(0.0));
  try {
    (void)signed_root(Jet::constant(0.0, 1, -1e-3), 1);
    FAIL("expected NegativeRadicand");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeRadicand);
  }
}
