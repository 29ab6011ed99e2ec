#include "zdirac/specfun.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace zdirac {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                               771.32342877765313,   -176.61502916214059,   12.507343278686905,
                               -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(Complex z, int* n = nullptr) {
  if (z.imag() != 0.0 || z.real() > 0.0) return false;
  double r = std::nearbyint(z.real());
  if (r != z.real() || r < -1e9) return false;
  if (n) *n = static_cast<int>(-r);
  return true;
}

template <class T>
T lanczos_gamma(T z) {
  // Valid for Re z >= 1/2.
  z -= 1.0;
  T a = kLanczos[0];
  T t = z + kLanczosG + 0.5;
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + static_cast<double>(i));
  return std::sqrt(2.0 * std::numbers::pi) * std::exp((z + 0.5) * std::log(t) - t) * a;
}

[[noreturn]] void gamma_pole(double x) {
  std::ostringstream os;
  os << "Gamma has a pole at " << x;
  throw Error(ErrorKind::PoleAtNonpositiveInteger, os.str());
}

// Stop a series once two consecutive terms are negligible.
constexpr double kSeriesEps = 1e-17;
constexpr long kMaxTerms = 1000000;

Complex gauss_series(Complex a, Complex b, Complex c, double z) {
  Complex sum = 1.0, term = 1.0;
  int small = 0;
  for (long k = 0; k < kMaxTerms; ++k) {
    const double kd = static_cast<double>(k);
    term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * z;
    sum += term;
    if (std::abs(term) <= kSeriesEps * std::abs(sum)) {
      if (++small == 2) return sum;
    } else {
      small = 0;
    }
    if (term == Complex{}) return sum;
  }
  std::ostringstream os;
  os << "2F1(" << a << ", " << b << "; " << c << "; " << z << ") series did not converge";
  throw Error(ErrorKind::NoConvergence, os.str());
}

// 2F1(a, b; a + b - m; z) for integer m >= 0 and 1/2 < z < 1, where both
// gamma factors of the generic connection formula have poles. This is the
// logarithmic limit of that formula, summed in w = 1 - z.
Complex log_case(double a, double b, int m, double z);

}  // namespace

double gamma_fn(double x) {
  if (x <= 0.0 && std::nearbyint(x) == x) gamma_pole(x);
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  return lanczos_gamma(x);
}

Complex gamma_fn(Complex z) {
  if (is_nonpositive_integer(z)) gamma_pole(z.real());
  if (z.real() < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * z) * lanczos_gamma(1.0 - z));
  return lanczos_gamma(z);
}

Complex rgamma(Complex z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() < 0.5) return std::sin(std::numbers::pi * z) * lanczos_gamma(1.0 - z) / std::numbers::pi;
  return 1.0 / lanczos_gamma(z);
}

Complex pochhammer(Complex a, int k) {
  Complex p = 1.0;
  for (int i = 0; i < k; ++i) p *= a + static_cast<double>(i);
  return p;
}

Complex hyp2f1(Complex a, Complex b, Complex c, double z) {
  int na = 0, nb = 0, nc = 0;
  const bool ta = is_nonpositive_integer(a, &na);
  const bool tb = is_nonpositive_integer(b, &nb);
  const bool terminating = ta || tb;
  // A terminating series is a polynomial and may be evaluated at z = 1, which
  // is where the argument rounds to for large |x|.
  if (!(z >= 0.0 && (z < 1.0 || (terminating && z == 1.0)))) {
    std::ostringstream os;
    os << "2F1 argument " << z << " outside [0, 1)";
    throw Error(ErrorKind::DomainError, os.str());
  }
  const int nterm = ta && tb ? std::min(na, nb) : (ta ? na : nb);
  if (is_nonpositive_integer(c, &nc) && !(terminating && nterm <= nc)) {
    std::ostringstream os;
    os << "2F1 with c = " << c << " has a pole";
    throw Error(ErrorKind::PoleAtC, os.str());
  }
  if (terminating) {
    Complex sum = 1.0, term = 1.0;
    for (int k = 0; k < nterm; ++k) {
      const double kd = k;
      term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * z;
      sum += term;
    }
    return sum;
  }
  if (z == 0.0) return 1.0;
  if (z <= 0.5) return gauss_series(a, b, c, z);
  const Complex s = c - a - b;
  const double sn = std::nearbyint(s.real());
  // Near-integer s (rounding in c - a - b) must not take the generic branch:
  // its gamma factors sit next to poles and cancel catastrophically.
  if (s.imag() == 0.0 && a.imag() == 0.0 && b.imag() == 0.0 && std::abs(s.real() - sn) < 1e-9) {
    const int m = static_cast<int>(sn);
    if (m <= 0) return log_case(a.real(), b.real(), -m, z);
    // Euler: F(a, b; c; z) = (1 - z)^s F(c - a, c - b; c; z).
    return std::pow(1.0 - z, s.real()) * log_case(c.real() - a.real(), c.real() - b.real(), m, z);
  }
  if (s.imag() != 0.0 || sn != s.real()) {
    // Connection to the neighbourhood of z = 1.
    const double w = 1.0 - z;
    Complex t1 = gamma_fn(c) * gamma_fn(s) * rgamma(c - a) * rgamma(c - b);
    Complex t2 = gamma_fn(c) * gamma_fn(-s) * rgamma(a) * rgamma(b);
    Complex r = {};
    if (t1 != Complex{}) r += t1 * hyp2f1(a, b, 1.0 - s, w);
    if (t2 != Complex{}) r += t2 * std::pow(Complex(w), s) * hyp2f1(c - a, c - b, 1.0 + s, w);
    return r;
  }
  return gauss_series(a, b, c, z);
}

namespace {

Complex log_case(double a, double b, int m, double z) {
  const double w = 1.0 - z, lw = std::log(w);
  const double c = a + b - m;
  double finite = 0.0;
  if (m > 0) {
    double term = 1.0, sum = 1.0;
    for (int n = 1; n < m; ++n) {
      const double k = n - 1;
      term *= (a - m + k) * (b - m + k) / ((k + 1.0) * (1.0 - m + k)) * w;
      sum += term;
    }
    finite = gamma_fn(static_cast<double>(m)) * gamma_fn(c) * rgamma(a).real() * rgamma(b).real() * sum /
             std::pow(w, m);
  }
  const double pref = ((m % 2) ? -1.0 : 1.0) * gamma_fn(c) * rgamma(a - m).real() * rgamma(b - m).real();
  if (pref == 0.0) return finite;
  // psi(n + 1), psi(n + m + 1), psi(a + n), psi(b + n), advanced by recurrence.
  const double euler = std::numbers::egamma;
  double p1 = -euler, pm = -euler;
  for (int k = 1; k <= m; ++k) pm += 1.0 / k;
  double pa = boost::math::digamma(a), pb = boost::math::digamma(b);
  double term = 1.0 / std::tgamma(m + 1.0), sum = 0.0;
  int small = 0;
  for (long n = 0; n < kMaxTerms; ++n) {
    const double contrib = term * (lw - p1 - pm + pa + pb);
    sum += contrib;
    if (std::abs(contrib) <= kSeriesEps * std::abs(sum)) {
      if (++small == 2) return finite - pref * sum;
    } else {
      small = 0;
    }
    const double nd = static_cast<double>(n);
    term *= (a + nd) * (b + nd) / ((nd + 1.0) * (nd + m + 1.0)) * w;
    p1 += 1.0 / (nd + 1.0);
    pm += 1.0 / (nd + m + 1.0);
    pa += 1.0 / (a + nd);
    pb += 1.0 / (b + nd);
  }
  throw Error(ErrorKind::NoConvergence, "2F1 logarithmic connection series did not converge");
}

}  // namespace

Jet hyp2f1(Complex a, Complex b, Complex c, const Jet& z) {
  const int order = z.order();
  const double z0 = z[0].real();
  std::vector<Complex> taylor(static_cast<std::size_t>(order) + 1);
  Complex scale = 1.0;  // (a)_k (b)_k / ((c)_k k!)
  for (int k = 0; k <= order; ++k) {
    if (k > 0) {
      const double kd = k - 1;
      scale *= (a + kd) * (b + kd) / ((c + kd) * static_cast<double>(k));
    }
    const double kd = k;
    taylor[static_cast<std::size_t>(k)] = scale == Complex{} ? Complex{} : scale * hyp2f1(a + kd, b + kd, c + kd, z0);
  }
  try {
    return compose(taylor, z);
  } catch (const Error& e) {
    throw e.with_location(z.base());
  }
}

LegendrePoint LegendrePoint::at(double z0) {
  return {z0, (1.0 - z0) * (1.0 + z0), (1.0 + z0) / (1.0 - z0), 0.5 * (1.0 - z0)};
}

LegendrePoint LegendrePoint::at_tanh(double x0) {
  const double e = std::exp(-2.0 * std::abs(x0));
  const double t = std::copysign((1.0 - e) / (1.0 + e), x0);
  const double s = 4.0 * e / ((1.0 + e) * (1.0 + e));
  const double h = x0 >= 0.0 ? e / (1.0 + e) : 1.0 / (1.0 + e);
  return {t, s, std::exp(2.0 * x0), h};
}

namespace {

bool is_integer_order(double mu) { return std::abs(mu - std::nearbyint(mu)) < 1e-12; }

// P_nu^mu for non-integer mu via the hypergeometric representation
// P = ((1+z)/(1-z))^{mu/2} 2F1(-nu, nu+1; 1-mu; (1-z)/2) / Gamma(1-mu).
std::pair<Complex, Complex> seed_p_hyper(double nu, double mu, const LegendrePoint& at) {
  const Complex a = -nu, b = nu + 1.0, c = 1.0 - mu;
  const Complex rg = rgamma(c);
  const double A = std::pow(at.r, 0.5 * mu);
  const double dA = A * mu / at.s;
  const Complex F = hyp2f1(a, b, c, at.h);
  const Complex dF = a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, at.h);
  return {rg * A * F, rg * (dA * F - 0.5 * A * dF)};
}

// P_nu^m for integer m >= 0: (-1)^m (1-z^2)^{m/2} d^m/dz^m P_nu, with the
// jet of P_nu = 2F1(-nu, nu+1; 1; (1-z)/2) carried to order m+1 in z.
std::pair<Complex, Complex> seed_p_integer(double nu, int m, const LegendrePoint& at) {
  std::vector<Complex> hc(static_cast<std::size_t>(m) + 2, Complex{});
  hc[0] = at.h;
  hc[1] = -0.5;
  Jet h(at.z, hc);
  Jet p = hyp2f1(-nu, nu + 1.0, 1.0, h);
  for (int i = 0; i < m; ++i) p = p.derive();
  // s^{m/2} is formed from the supplied s, which stays accurate where
  // 1 - z^2 would cancel; d/dz s^{m/2} = -m z s^{m/2} / s.
  const double sign = (m % 2) ? -1.0 : 1.0;
  const double root = std::pow(at.s, 0.5 * m);
  return {sign * root * p[0], sign * root * (p[1] - static_cast<double>(m) * at.z * p[0] / at.s)};
}

}  // namespace

std::pair<Complex, Complex> legendre_seed(const LegendreParams& p, const LegendrePoint& at) {
  const double nu = p.degree, mu = p.order;
  if (!(std::abs(at.z) <= 1.0) || !(at.s > 0.0)) {
    std::ostringstream os;
    os << "Legendre argument " << at.z << " outside (-1, 1)";
    throw Error(ErrorKind::DomainError, os.str());
  }
  if (p.kind == LegendreKind::P) {
    if (!is_integer_order(mu)) return seed_p_hyper(nu, mu, at);
    const int m = static_cast<int>(std::nearbyint(mu));
    if (m < 0) throw Error(ErrorKind::DomainError, "negative integer Legendre order is not supported");
    return seed_p_integer(nu, m, at);
  }
  if (is_integer_order(mu))
    throw Error(ErrorKind::DomainError, "Legendre Q is only provided for non-integer order");
  // Q = pi / (2 sin mu pi) [cos mu pi P^mu - Gamma(nu+mu+1)/Gamma(nu-mu+1) P^{-mu}]
  const double pi = std::numbers::pi;
  auto [pp, dpp] = seed_p_hyper(nu, mu, at);
  auto [pm, dpm] = seed_p_hyper(nu, -mu, at);
  const Complex ratio = gamma_fn(Complex(nu + mu + 1.0)) * rgamma(Complex(nu - mu + 1.0));
  const double pre = pi / (2.0 * std::sin(mu * pi));
  const double cs = std::cos(mu * pi);
  return {pre * (cs * pp - ratio * pm), pre * (cs * dpp - ratio * dpm)};
}

Jet solve_linear_ode_series(double base, int order, std::span<const Complex> P, std::span<const Complex> Q,
                            std::span<const Complex> R, Complex w0, Complex w1) {
  auto at = [](std::span<const Complex> s, int j) {
    return j >= 0 && j < static_cast<int>(s.size()) ? s[static_cast<std::size_t>(j)] : Complex{};
  };
  if (at(P, 0) == Complex{}) throw Error(ErrorKind::DomainError, "series expansion at a singular point");
  JetBuilder w(base, order);
  w[0] = w0;
  if (order >= 1) w[1] = w1;
  for (int k = 0; k + 2 <= order; ++k) {
    Complex sum{};
    for (int j = 1; j <= k; ++j) sum += at(P, j) * static_cast<double>((k - j + 2) * (k - j + 1)) * w[k - j + 2];
    for (int j = 0; j <= k; ++j) sum += at(Q, j) * static_cast<double>(k - j + 1) * w[k - j + 1];
    for (int j = 0; j <= k; ++j) sum += at(R, j) * w[k - j];
    w[k + 2] = -sum / (at(P, 0) * static_cast<double>((k + 2) * (k + 1)));
  }
  return w.build();
}

Jet legendre(const LegendreParams& p, const Jet& arg) {
  const double z0 = arg[0].real();
  if (!(std::abs(z0) < 1.0)) {
    std::ostringstream os;
    os << "Legendre argument " << z0 << " outside (-1, 1)";
    throw Error(ErrorKind::DomainError, os.str()).with_location(arg.base());
  }
  const int order = arg.order();
  auto [w0, w1] = legendre_seed(p, LegendrePoint::at(z0));
  // (1-z^2)^2 w'' - 2z(1-z^2) w' + [nu(nu+1)(1-z^2) - mu^2] w = 0 in t = z - z0.
  const double s = (1.0 - z0) * (1.0 + z0);
  const Complex u[] = {s, -2.0 * z0, -1.0};
  const double nn = p.degree * (p.degree + 1.0), mu2 = p.order * p.order;
  Complex P[5] = {}, Q[4] = {}, R[3] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) P[i + j] += u[i] * u[j];
  for (int i = 0; i < 3; ++i) {
    Q[i] += -2.0 * z0 * u[i];
    Q[i + 1] += -2.0 * u[i];
    R[i] = nn * u[i];
  }
  R[0] -= mu2;
  Jet w = solve_linear_ode_series(z0, order, P, Q, R, w0, w1);
  return compose(w.coeffs(), arg);
}

Jet legendre_of_tanh(const LegendreParams& p, const Jet& x) {
  const double x0 = x.base() == x[0].real() ? x.base() : x[0].real();
  const int order = x.order();
  LegendrePoint at = LegendrePoint::at_tanh(x0);
  auto [w0, w1] = legendre_seed(p, at);
  Jet sech2 = sech(Jet::variable(x0, order));
  sech2 *= sech2;
  const double nn = p.degree * (p.degree + 1.0), mu2 = p.order * p.order;
  std::vector<Complex> R(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) R[static_cast<std::size_t>(k)] = nn * sech2[k];
  R[0] -= mu2;
  const Complex one[] = {1.0};
  const Complex zero[] = {0.0};
  Jet u = solve_linear_ode_series(x0, order, one, zero, R, w0, w1 * at.s);
  if (x.is_variable()) return u;
  return compose(u.coeffs(), x);
}

}  // namespace zdirac
