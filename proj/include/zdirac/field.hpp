#pragma once

#include <functional>
#include <memory>
#include <string>

#include "zdirac/jet.hpp"

namespace zdirac {

// A function of the coordinate x, evaluable as a jet of any order.
//
// The underlying callable receives (x0, K) and returns the order-K jet of the
// field at x0. Calling a Field on a general jet composes through Taylor
// expansion; on a pure variable jet it is a direct evaluation.
class Field {
 public:
  using Eval = std::function<Jet(double x, int order)>;

  Field();
  explicit Field(Eval eval, std::string label = {});

  static Field constant(Complex c, std::string label = {});
  static Field coordinate();

  Jet operator()(double x, int order) const { return (*eval_)(x, order); }
  Jet operator()(const Jet& x) const;

  Complex value(double x) const { return (*this)(x, 0)[0]; }
  Complex derivative(double x, int k) const { return (*this)(x, k).derivative(k); }

  const std::string& label() const noexcept { return label_; }
  Field labelled(std::string label) const;

 private:
  std::shared_ptr<const Eval> eval_;
  std::string label_;
};

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, const Field& b);
Field operator/(const Field& a, const Field& b);
Field operator-(const Field& a);
Field operator*(Complex s, const Field& a);
Field operator+(const Field& a, Complex s);

// d/dx
Field derivative(const Field& f);
// f'/f
Field log_derivative(const Field& f);
Field sqrt(const Field& f);
Field conj(const Field& f);

}  // namespace zdirac
