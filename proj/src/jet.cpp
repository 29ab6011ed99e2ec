#include "zdirac/jet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zdirac {

namespace {

void check_order(int order) {
  if (order < 0 || order > kMaxJetOrder) {
    std::ostringstream os;
    os << "jet order " << order << " outside [0, " << kMaxJetOrder << "]";
    throw Error(ErrorKind::OrderExceeded, os.str());
  }
}

void check_compatible(const Jet& a, const Jet& b) {
  if (a.base() != b.base() || a.order() != b.order()) {
    std::ostringstream os;
    os << "jets at (" << a.base() << ", K=" << a.order() << ") and (" << b.base() << ", K=" << b.order()
       << ") cannot be combined";
    throw Error(ErrorKind::JetMismatch, os.str());
  }
}

bool near_zero_leading(const Jet& a) { return std::abs(a[0]) <= kDivisionEps * a.scale(); }

// Principal branch with -0.0 imaginary parts folded onto +0.0 so that a
// value on the negative real axis always maps to the upper side of the cut.
Complex fold(Complex z) { return {z.real(), z.imag() == 0.0 ? 0.0 : z.imag()}; }

void require_off_branch_point(const Jet& a, const char* fn) {
  if (near_zero_leading(a)) {
    std::ostringstream os;
    os << fn << " at branch point (leading coefficient " << a[0] << ")";
    throw Error(ErrorKind::BranchCut, os.str());
  }
}

}  // namespace

Jet::Jet(double base, int order) : base_(base), order_(order) { check_order(order); }

Jet::Jet(double base, std::span<const Complex> coeffs) : base_(base), order_(static_cast<int>(coeffs.size()) - 1) {
  check_order(order_);
  std::copy(coeffs.begin(), coeffs.end(), c_.begin());
}

Jet Jet::variable(double x0, int order) {
  Jet j(x0, order);
  j.c_[0] = x0;
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

Jet Jet::constant(double x0, int order, Complex value) {
  Jet j(x0, order);
  j.c_[0] = value;
  return j;
}

Complex Jet::derivative(int k) const {
  if (k < 0 || k > order_) {
    std::ostringstream os;
    os << "derivative " << k << " requested from jet of order " << order_;
    throw Error(ErrorKind::OrderExceeded, os.str());
  }
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return fact * c_[static_cast<std::size_t>(k)];
}

Jet Jet::derive() const {
  if (order_ == 0) throw Error(ErrorKind::OrderExceeded, "cannot differentiate an order-0 jet");
  Jet d(base_, order_ - 1);
  for (int k = 0; k < order_; ++k) d.c_[k] = static_cast<double>(k + 1) * c_[k + 1];
  return d;
}

Jet Jet::antiderivative(Complex c0) const {
  Jet d(base_, order_ + 1);
  d.c_[0] = c0;
  for (int k = 0; k <= order_; ++k) d.c_[k + 1] = c_[k] / static_cast<double>(k + 1);
  return d;
}

Jet Jet::truncate(int order) const {
  if (order > order_) {
    std::ostringstream os;
    os << "cannot raise jet order " << order_ << " to " << order;
    throw Error(ErrorKind::OrderExceeded, os.str());
  }
  Jet t(base_, order);
  std::copy_n(c_.begin(), order + 1, t.c_.begin());
  return t;
}

Jet Jet::conj() const {
  Jet t = *this;
  for (int k = 0; k <= order_; ++k) t.c_[k] = std::conj(c_[k]);
  return t;
}

double Jet::scale() const noexcept {
  double s = 0.0;
  for (int k = 0; k <= order_; ++k) s = std::max(s, std::abs(c_[k]));
  return s;
}

bool Jet::is_variable() const noexcept {
  if (c_[0] != Complex(base_, 0.0)) return false;
  if (order_ >= 1 && c_[1] != Complex(1.0, 0.0)) return false;
  for (int k = 2; k <= order_; ++k)
    if (c_[k] != Complex{}) return false;
  return true;
}

Jet Jet::operator-() const {
  Jet t = *this;
  for (int k = 0; k <= order_; ++k) t.c_[k] = -c_[k];
  return t;
}

Jet& Jet::operator+=(const Jet& o) {
  check_compatible(*this, o);
  for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_compatible(*this, o);
  for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  check_compatible(*this, o);
  std::array<Complex, kMaxJetOrder + 1> r{};
  for (int k = 0; k <= order_; ++k) {
    Complex s{};
    for (int j = 0; j <= k; ++j) s += c_[j] * o.c_[k - j];
    r[k] = s;
  }
  c_ = r;
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  check_compatible(*this, o);
  if (near_zero_leading(o)) {
    std::ostringstream os;
    os << "division by jet with leading coefficient " << o.c_[0] << " (scale " << o.scale() << ")";
    throw Error(ErrorKind::DivisionNearZero, os.str()).with_location(base_);
  }
  std::array<Complex, kMaxJetOrder + 1> q{};
  for (int k = 0; k <= order_; ++k) {
    Complex s = c_[k];
    for (int j = 1; j <= k; ++j) s -= o.c_[j] * q[k - j];
    q[k] = s / o.c_[0];
  }
  c_ = q;
  return *this;
}

Jet& Jet::operator+=(Complex s) {
  c_[0] += s;
  return *this;
}

Jet& Jet::operator-=(Complex s) {
  c_[0] -= s;
  return *this;
}

Jet& Jet::operator*=(Complex s) {
  for (int k = 0; k <= order_; ++k) c_[k] *= s;
  return *this;
}

Jet& Jet::operator/=(Complex s) {
  if (s == Complex{}) throw Error(ErrorKind::DivisionNearZero, "division of jet by zero scalar").with_location(base_);
  for (int k = 0; k <= order_; ++k) c_[k] /= s;
  return *this;
}

Jet operator/(Complex s, const Jet& a) { return Jet::constant(a.base(), a.order(), s) / a; }

JetBuilder::JetBuilder(double base, int order) : jet_(base, order) {}

Jet exp(const Jet& a) {
  JetBuilder b(a.base(), a.order());
  b[0] = std::exp(a[0]);
  for (int k = 1; k <= a.order(); ++k) {
    Complex s{};
    for (int j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * b[k - j];
    b[k] = s / static_cast<double>(k);
  }
  return b.build();
}

Jet log(const Jet& a) {
  require_off_branch_point(a, "log");
  JetBuilder b(a.base(), a.order());
  b[0] = std::log(fold(a[0]));
  for (int k = 1; k <= a.order(); ++k) {
    Complex s = a[k];
    for (int j = 1; j < k; ++j) s -= static_cast<double>(j) / static_cast<double>(k) * b[j] * a[k - j];
    b[k] = s / a[0];
  }
  return b.build();
}

Jet pow(const Jet& a, int n) {
  if (n < 0) return 1.0 / pow(a, -n);
  Jet result = Jet::constant(a.base(), a.order(), 1.0);
  Jet base = a;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Jet pow(const Jet& a, Complex p) {
  if (p.imag() == 0.0 && std::nearbyint(p.real()) == p.real() && std::abs(p.real()) < 64.0)
    return pow(a, static_cast<int>(p.real()));
  require_off_branch_point(a, "pow");
  JetBuilder b(a.base(), a.order());
  b[0] = std::pow(fold(a[0]), p);
  for (int k = 1; k <= a.order(); ++k) {
    Complex s{};
    for (int j = 1; j <= k; ++j) s += ((p + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * a[j] * b[k - j];
    b[k] = s / (static_cast<double>(k) * a[0]);
  }
  return b.build();
}

Jet sqrt(const Jet& a) {
  require_off_branch_point(a, "sqrt");
  JetBuilder b(a.base(), a.order());
  b[0] = std::sqrt(fold(a[0]));
  for (int k = 1; k <= a.order(); ++k) {
    Complex s = a[k];
    for (int j = 1; j < k; ++j) s -= b[j] * b[k - j];
    b[k] = s / (2.0 * b[0]);
  }
  return b.build();
}

namespace {

void sinh_cosh(const Jet& a, JetBuilder& s, JetBuilder& c) {
  s[0] = std::sinh(a[0]);
  c[0] = std::cosh(a[0]);
  for (int k = 1; k <= a.order(); ++k) {
    Complex ss{}, cc{};
    for (int j = 1; j <= k; ++j) {
      ss += static_cast<double>(j) * a[j] * c[k - j];
      cc += static_cast<double>(j) * a[j] * s[k - j];
    }
    s[k] = ss / static_cast<double>(k);
    c[k] = cc / static_cast<double>(k);
  }
}

}  // namespace

Jet sinh(const Jet& a) {
  JetBuilder s(a.base(), a.order()), c(a.base(), a.order());
  sinh_cosh(a, s, c);
  return s.build();
}

Jet cosh(const Jet& a) {
  JetBuilder s(a.base(), a.order()), c(a.base(), a.order());
  sinh_cosh(a, s, c);
  return c.build();
}

// tanh and sech go through exp(-2|a|)-style forms so large arguments neither
// overflow nor lose the tail.
Jet tanh(const Jet& a) {
  if (a[0].real() >= 0.0) {
    Jet e = exp(-2.0 * a);
    return (1.0 - e) / (1.0 + e);
  }
  Jet e = exp(2.0 * a);
  return (e - 1.0) / (e + 1.0);
}

Jet sech(const Jet& a) {
  if (a[0].real() >= 0.0) {
    Jet e = exp(-a);
    return 2.0 * e / (1.0 + e * e);
  }
  Jet e = exp(a);
  return 2.0 * e / (1.0 + e * e);
}

Jet compose(std::span<const Complex> taylor, const Jet& inner) {
  const int order = inner.order();
  if (static_cast<int>(taylor.size()) < order + 1)
    throw Error(ErrorKind::OrderExceeded, "composition needs as many outer coefficients as the inner order");
  Jet d = inner - inner[0];
  Jet r = Jet::constant(inner.base(), order, taylor[static_cast<std::size_t>(order)]);
  for (int k = order - 1; k >= 0; --k) r = r * d + taylor[static_cast<std::size_t>(k)];
  return r;
}

}  // namespace zdirac
