#include "zdirac/field.hpp"

#include <vector>

namespace zdirac {

Field::Field() : Field([](double x, int order) { return Jet(x, order); }, "0") {}

Field::Field(Eval eval, std::string label)
    : eval_(std::make_shared<const Eval>(std::move(eval))), label_(std::move(label)) {}

Field Field::constant(Complex c, std::string label) {
  return Field([c](double x, int order) { return Jet::constant(x, order, c); }, std::move(label));
}

Field Field::coordinate() {
  return Field([](double x, int order) { return Jet::variable(x, order); }, "x");
}

Jet Field::operator()(const Jet& x) const {
  if (x.is_variable()) return (*eval_)(x.base(), x.order());
  // g(x(t)): Taylor coefficients of g at x(0), then compose.
  const double x0 = x[0].real();
  Jet g = (*eval_)(x0, x.order());
  Jet composed = compose(g.coeffs(), x);
  return composed;
}

Field Field::labelled(std::string label) const {
  Field f = *this;
  f.label_ = std::move(label);
  return f;
}

Field operator+(const Field& a, const Field& b) {
  return Field([a, b](double x, int k) { return a(x, k) + b(x, k); });
}

Field operator-(const Field& a, const Field& b) {
  return Field([a, b](double x, int k) { return a(x, k) - b(x, k); });
}

Field operator*(const Field& a, const Field& b) {
  return Field([a, b](double x, int k) { return a(x, k) * b(x, k); });
}

Field operator/(const Field& a, const Field& b) {
  return Field([a, b](double x, int k) { return a(x, k) / b(x, k); });
}

Field operator-(const Field& a) {
  return Field([a](double x, int k) { return -a(x, k); });
}

Field operator*(Complex s, const Field& a) {
  return Field([s, a](double x, int k) { return s * a(x, k); });
}

Field operator+(const Field& a, Complex s) {
  return Field([s, a](double x, int k) { return a(x, k) + s; });
}

Field derivative(const Field& f) {
  return Field([f](double x, int k) { return f(x, k + 1).derive(); });
}

Field log_derivative(const Field& f) {
  return Field([f](double x, int k) {
    Jet v = f(x, k + 1);
    return v.derive() / v.truncate(k);
  });
}

Field sqrt(const Field& f) {
  return Field([f](double x, int k) { return sqrt(f(x, k)); });
}

Field conj(const Field& f) {
  return Field([f](double x, int k) { return f(x, k).conj(); });
}

}  // namespace zdirac
