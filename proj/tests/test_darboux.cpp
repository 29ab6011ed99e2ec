#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "zdirac/catalog.hpp"
#include "zdirac/darboux.hpp"
#include "zdirac/exprlang.hpp"
#include "zdirac/verify.hpp"

using namespace zdirac;

namespace {

const std::vector<double> kGrid = uniform_grid(-8.0, 8.0, 321);

DarbouxTransform make(const ScalarDiracModel& model, std::vector<TransformPair> pairs, Complex eps,
                      double anchor = 0.0) {
  TransformSpec spec;
  spec.eps = eps;
  spec.pairs = std::move(pairs);
  spec.delta = -1;
  spec.m_hat = Field::constant(0.0);
  spec.anchor = anchor;
  return DarbouxTransform(spec, initial_pair(model), -10.0, 10.0);
}

Field app2_seed(double k) { return catalog::psi03(k, catalog::resolve_q(-1.0, k).q); }

Field exp_field(double rate) {
  return Field([rate](double x, int k) { return exp(rate * Jet::variable(x, k)); });
}

}  // namespace

TEST_CASE("auxiliary functions") {
  const Field v = build_v(Field::constant(1.0), 0.0, 1.0);
  for (double x : {-2.0, 0.0, 1.5}) CHECK(std::abs(v.value(x) - std::exp(x)) < 1e-14 * std::exp(x));

  const Field h = catalog::p5(5);
  for (double k : {1.0, 2.0, 4.0}) {
    const Field vk = build_v(h, 5.0, k);
    for (double x : {-3.0, 0.5, 2.0})
      CHECK(std::abs(vk.value(x) - std::exp((k - 5) * x) * h.value(x)) < 1e-12 * std::abs(vk.value(x)));
  }

  const Field hc = catalog::h03_complex(1);
  const Field vc = build_v(hc, Complex(-1, 1), 2.0);
  for (double x : {-2.0, 0.0, 3.0})
    CHECK(std::abs(std::abs(vc.value(x)) - std::exp(3 * x) * std::abs(hc.value(x))) <
          1e-12 * std::abs(vc.value(x)));
}

TEST_CASE("Wronskian examples") {
  const std::vector<Field> one{exp_field(1.0)};
  Jet w1 = wronskian(one, Jet::variable(0.4, 3));
  Jet e = exp(Jet::variable(0.4, 3));
  for (int k = 0; k <= 3; ++k) CHECK(std::abs(w1[k] - e[k]) < 1e-15);

  const std::vector<Field> two{exp_field(1.0), exp_field(2.0)};
  CHECK(std::abs(wronskian(two, Jet::variable(0.0, 1))[0] - 1.0) < 1e-15);
  Jet w2 = wronskian(two, Jet::variable(0.7, 3));
  CHECK(w2.order() == 2);
  CHECK(std::abs(w2[0] - std::exp(2.1)) < 1e-13 * std::exp(2.1));
  CHECK(std::abs(w2.derivative(1) - 3 * std::exp(2.1)) < 1e-12 * std::exp(2.1));

  try {
    (void)wronskian(two, Jet::variable(0.0, 0));
    FAIL("expected OrderExceeded");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::OrderExceeded);
  }
}

TEST_CASE("Wronskian antisymmetry is exact") {
  const std::vector<Field> a{catalog::p5(5), catalog::p5(4), expr::parse_field("exp(-x^2/3)")};
  const std::vector<std::vector<Field>> swaps{{a[1], a[0], a[2]}, {a[0], a[2], a[1]}, {a[2], a[1], a[0]}};
  for (double x : {-1.3, 0.2, 2.9}) {
    Jet wa = wronskian(a, Jet::variable(x, 4));
    for (const auto& b : swaps) {
      Jet wb = wronskian(b, Jet::variable(x, 4));
      for (int k = 0; k <= wa.order(); ++k) CHECK(wb[k] == -wa[k]);
    }
    // A cyclic shift is even.
    Jet wc = wronskian(std::vector<Field>{a[1], a[2], a[0]}, Jet::variable(x, 4));
    for (int k = 0; k <= wa.order(); ++k) CHECK(wc[k] == wa[k]);
  }
}

TEST_CASE("transform spec validation") {
  TransformSpec spec;
  spec.eps = 5.0;
  spec.m_hat = Field::constant(0.0);
  auto kind = [&]() {
    try {
      spec.validate();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ConfigError;
  };
  CHECK(kind() == ErrorKind::InvalidSpec);  // no pairs
  spec.pairs.push_back({5.0, catalog::p5(5)});
  CHECK(kind() == ErrorKind::InvalidSpec);  // momentum equals lambda
  spec.eps = 4.0;
  spec.delta = 0;
  CHECK(kind() == ErrorKind::InvalidSpec);
  spec.delta = 1;
  spec.pairs.push_back({5.0, catalog::p5(4)});
  CHECK(kind() == ErrorKind::InvalidSpec);  // repeated lambda
  spec.pairs.back().lambda = 4.5;
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("G and What with a vanishing integrand") {
  const ScalarDiracModel model{expr::parse_field("0"), Field::constant(1.0), Field::constant(0.0)};
  const DarbouxTransform t = make(model, {{0.5, exp_field(2.0)}, {-0.5, exp_field(3.0)}}, 0.0);
  std::vector<Field> cols;
  for (const auto& p : t.spec().pairs) cols.push_back(build_v(p.h, p.lambda, 0.0));
  cols.push_back(Field::constant(1.0));
  for (double x : {-1.0, 0.0, 2.0}) {
    CHECK(std::abs(t.g(x, 2)[0] - 1.0) < 1e-14);
    CHECK(std::abs(t.g(x, 2)[1]) < 1e-14);
    const Complex ref = 4.0 * wronskian(cols, Jet::variable(x, 2))[0];
    CHECK(std::abs(t.w_hat(x, 0)[0] - ref) < 1e-12 * std::abs(ref));
  }
}

TEST_CASE("first-order closure and shortcut") {
  const ScalarDiracModel model = catalog::set1();
  for (double k : {1.0, 2.0, 3.0, 4.0}) {
    const DarbouxTransform t = make(model, {{5.0, catalog::p5(5)}}, k);
    INFO("k_y = " << k);
    CHECK(reduction_residual(t.transformed_pair(), t.solution(catalog::p5(static_cast<int>(k))), k, kGrid).max_err <
          1e-8);
    for (double x : {-4.0, -1.0, 0.0, 2.5, 6.0}) {
      const Jet a = t.w_hat(x, 2), b = t.first_order_w_hat(x, 2);
      for (int j = 0; j <= 2; ++j) CHECK(std::abs(a[j] - b[j]) <= 1e-10 * b.scale());
    }
  }
  const DarbouxTransform t2 = make(model, {{5.0, catalog::p5(5)}, {4.0, catalog::p5(4)}}, 2.0);
  CHECK_THROWS_AS((void)t2.first_order_w_hat(0.0, 1), Error);
}

TEST_CASE("second-order closure on the sech well") {
  const ScalarDiracModel model = catalog::set1();
  for (double k : {1.0, 2.0, 3.0}) {
    const DarbouxTransform t = make(model, {{5.0, catalog::p5(5)}, {4.0, catalog::p5(4)}}, k);
    INFO("k_y = " << k);
    CHECK(reduction_residual(t.transformed_pair(), t.solution(catalog::p5(static_cast<int>(k))), k,
                             uniform_grid(-4.0, 8.0, 241))
              .max_err < 1e-8);
  }
}

TEST_CASE("second-order closure of the alpha sech system") {
  const ScalarDiracModel model = catalog::set3(-1.0);
  const double k = 0.5;
  const DarbouxTransform t = make(model, {{-1.0, catalog::h03()}, {-2.0, catalog::h03_next()}}, k);
  CHECK(reduction_residual(t.transformed_pair(), t.solution(app2_seed(k)), k, kGrid).max_err < 1e-8);
}

TEST_CASE("conjugate pairs give real potentials") {
  const ScalarDiracModel model = catalog::set3(-1.0);
  const double k = 0.5;
  const DarbouxTransform t =
      make(model, {{Complex(-1, 1), catalog::h03_complex(1)}, {Complex(-1, -1), catalog::h03_complex(-1)}}, k);
  const PotentialPair p = t.transformed_pair();
  const Field psi = t.solution(app2_seed(k));
  for (double x : uniform_grid(-6.0, 6.0, 121)) {
    CHECK(std::abs(p.X.value(x).imag()) < 1e-10);
    CHECK(std::abs(p.Y.value(x).imag()) < 1e-10);
    const Complex v = psi.value(x);
    CHECK(std::abs(std::imag(v * std::conj(v))) < 1e-10);
  }
  CHECK(reduction_residual(p, psi, k, kGrid).max_err < 1e-8);
}

TEST_CASE("anchor only rescales the solution") {
  const ScalarDiracModel model = catalog::set1();
  const DarbouxTransform t0 = make(model, {{5.0, catalog::p5(5)}}, 2.0, 0.0);
  const DarbouxTransform t1 = make(model, {{5.0, catalog::p5(5)}}, 2.0, 1.5);
  const Field a = t0.solution(catalog::p5(2)), b = t1.solution(catalog::p5(2));
  const Complex ratio = a.value(0.3) / b.value(0.3);
  for (double x : uniform_grid(-5.0, 5.0, 41))
    CHECK(std::abs(a.value(x) - ratio * b.value(x)) < 1e-10 * std::max(1e-3, std::abs(a.value(x))));
}

TEST_CASE("branch signs keep the root continuous") {
  const ScalarDiracModel model = catalog::set1();
  const DarbouxTransform t = make(model, {{5.0, catalog::p5(5)}, {4.0, catalog::p5(4)}}, 2.0);
  const std::vector<double> grid = uniform_grid(-4.0, 8.0, 241);
  const std::vector<double> signs = t.branch_signs(grid);
  REQUIRE(signs.size() == grid.size());
  Complex prev{};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex r = signs[i] * sqrt(t.w_hat(grid[i], 0) * t.w(grid[i], 0))[0];
    if (i > 0) CHECK((r * std::conj(prev)).real() >= 0.0);
    prev = r;
  }
}

TEST_CASE("vanishing W is reported as a node") {
  const ScalarDiracModel model = catalog::set1();
  const DarbouxTransform t = make(model, {{0.5, expr::parse_field("x")}}, 2.0);
  try {
    (void)t.w(0.0, 1);
    FAIL("expected NodeEncountered");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NodeEncountered);
    REQUIRE(e.where().has_value());
    CHECK(*e.where() == 0.0);
  }
  const Residual r = reduction_residual(t.transformed_pair(), t.solution(catalog::p5(2)), 2.0,
                                        std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(r.excluded.size() == 1);
}
