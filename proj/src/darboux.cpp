#include "zdirac/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zdirac/quadrature.hpp"

namespace zdirac {

void TransformSpec::validate() const {
  if (pairs.empty()) throw Error(ErrorKind::InvalidSpec, "a transformation needs at least one pair");
  if (delta != 1 && delta != -1) throw Error(ErrorKind::InvalidSpec, "delta must be +1 or -1");
  std::vector<Complex> energies{eps};
  for (const auto& p : pairs) energies.push_back(p.lambda);
  for (std::size_t i = 0; i < energies.size(); ++i)
    for (std::size_t j = i + 1; j < energies.size(); ++j)
      if (std::abs(energies[i] - energies[j]) < 1e-12) {
        std::ostringstream os;
        os << "energies must be pairwise distinct; " << energies[i] << " appears twice"
           << (i == 0 ? " (momentum equals a transformation energy)" : "");
        throw Error(ErrorKind::InvalidSpec, os.str());
      }
}

Field build_v(const Field& h, Complex lambda, Complex eps) {
  const Complex rate = eps - lambda;
  return Field([h, rate](double x, int k) { return exp(rate * Jet::variable(x, k)) * h(x, k); });
}

namespace {

// Correctly rounded sum (Shewchuk's partials, as in Python's fsum). The
// result does not depend on the order of the terms and flips sign exactly
// with them.
double exact_sum(const std::vector<double>& xs) {
  std::vector<double> partials;
  for (double x : xs) {
    std::size_t i = 0;
    for (double y : partials) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials[i++] = lo;
      x = hi;
    }
    partials.resize(i);
    partials.push_back(x);
  }
  std::size_t n = partials.size();
  if (n == 0) return 0.0;
  double hi = partials[--n], lo = 0.0;
  while (n > 0) {
    const double x = hi, y = partials[--n];
    hi = x + y;
    lo = y - (hi - x);
    if (lo != 0.0) break;
  }
  // Round half-way cases using the sign of the next partial.
  if (n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0))) {
    const double y = lo * 2.0, x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

// Leibniz expansion. Each term multiplies its entries in row order and the
// terms are summed exactly, so permuting the columns permutes the terms and
// the determinant changes sign bit for bit.
Jet determinant(const std::vector<std::vector<Jet>>& a) {
  const std::size_t n = a.size();
  const Jet& corner = a[0][0];
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < n; ++j) perm[j] = j;
  std::vector<Jet> terms;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    Jet t = a[0][perm[0]];
    for (std::size_t i = 1; i < n; ++i) t *= a[i][perm[i]];
    terms.push_back(inversions % 2 ? -t : t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  JetBuilder out(corner.base(), corner.order());
  std::vector<double> re(terms.size()), im(terms.size());
  for (int k = 0; k <= corner.order(); ++k) {
    for (std::size_t t = 0; t < terms.size(); ++t) {
      re[t] = terms[t][k].real();
      im[t] = terms[t][k].imag();
    }
    out[k] = {exact_sum(re), exact_sum(im)};
  }
  return out.build();
}

Jet require_nonzero(const Jet& j, const char* what) {
  if (std::abs(j[0]) <= kDivisionEps * j.scale() || j[0] == Complex{}) {
    std::ostringstream os;
    os << what << " vanishes at x = " << j.base();
    throw Error(ErrorKind::NodeEncountered, os.str()).with_location(j.base());
  }
  return j;
}

}  // namespace

Jet wronskian(std::span<const Field> fields, const Jet& x) {
  const int n = static_cast<int>(fields.size());
  if (n == 0) throw Error(ErrorKind::InvalidSpec, "Wronskian of no functions");
  if (!x.is_variable()) throw Error(ErrorKind::JetMismatch, "Wronskian needs the coordinate jet");
  const int order = x.order();
  if (order < n - 1) {
    std::ostringstream os;
    os << "Wronskian of " << n << " functions needs jet order >= " << n - 1 << ", got " << order;
    throw Error(ErrorKind::OrderExceeded, os.str());
  }
  const int out = order - (n - 1);
  std::vector<std::vector<Jet>> a(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Jet d = fields[static_cast<std::size_t>(j)](x.base(), order);
    for (int i = 0; i < n; ++i) {
      a[static_cast<std::size_t>(i)].push_back(d.truncate(out));
      if (i + 1 < n) d = d.derive();
    }
  }
  return determinant(a);
}

struct DarbouxTransform::State {
  TransformSpec spec;
  PotentialPair initial;
  std::vector<Field> v;
  std::unique_ptr<CumulativeIntegral> x0_integral;

  int n() const { return static_cast<int>(v.size()); }

  Jet g(double x, int order) const {
    const Complex eps = spec.eps;
    const Complex c0 = 0.5 * (*x0_integral)(x) + eps * (x - spec.anchor);
    if (order == 0) return Jet::constant(x, 0, std::exp(c0));
    Jet integrand = 0.5 * (initial.X(x, order - 1) + 2.0 * eps);
    return exp(integrand.antiderivative(c0));
  }

  Jet w(double x, int order) const {
    return require_nonzero(wronskian(v, Jet::variable(x, order + n() - 1)), "W");
  }

  Jet w_hat(double x, int order) const {
    const Jet gj = g(x, order + n());
    std::vector<Field> cols = v;
    // Only ever evaluated at x, so the jet is computed once.
    cols.emplace_back([gj](double, int k) { return gj.truncate(k); });
    Jet wr = wronskian(cols, Jet::variable(x, order + n()));
    const double scale = std::pow(-2.0, n());
    return require_nonzero(scale * wr / gj.truncate(order), "What");
  }
};

DarbouxTransform::DarbouxTransform(TransformSpec spec, PotentialPair initial, double lo, double hi) {
  spec.validate();
  auto s = std::make_shared<State>();
  s->spec = std::move(spec);
  s->initial = std::move(initial);
  for (const auto& p : s->spec.pairs) s->v.push_back(build_v(p.h, p.lambda, s->spec.eps));
  Field X0 = s->initial.X;
  s->x0_integral =
      std::make_unique<CumulativeIntegral>([X0](double t) { return X0.value(t); }, s->spec.anchor, lo, hi);
  state_ = std::move(s);
}

const TransformSpec& DarbouxTransform::spec() const { return state_->spec; }
const PotentialPair& DarbouxTransform::initial() const { return state_->initial; }
int DarbouxTransform::n() const { return state_->n(); }

Jet DarbouxTransform::w(double x, int order) const { return state_->w(x, order); }
Jet DarbouxTransform::w_hat(double x, int order) const { return state_->w_hat(x, order); }
Jet DarbouxTransform::g(double x, int order) const { return state_->g(x, order); }

Field DarbouxTransform::solution(const Field& psi0) const {
  auto s = state_;
  return Field([s, psi0](double x, int k) {
    std::vector<Field> cols = s->v;
    cols.push_back(psi0);
    Jet num = wronskian(cols, Jet::variable(x, k + s->n()));
    Jet root = sqrt(s->w_hat(x, k) * s->w(x, k));
    return num / root;
  });
}

std::vector<double> DarbouxTransform::branch_signs(std::span<const double> grid) const {
  std::vector<double> signs(grid.size(), 1.0);
  bool have_prev = false;
  Complex prev{};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      Complex r = sqrt(state_->w_hat(grid[i], 0) * state_->w(grid[i], 0))[0];
      if (have_prev && (r * std::conj(prev)).real() < 0.0) signs[i] = -1.0;
      prev = signs[i] * r;
      have_prev = true;
    } catch (const Error&) {
      // Node or branch point: keep the previous reference root.
    }
  }
  return signs;
}

Field DarbouxTransform::delta_x() const {
  auto s = state_;
  return Field([s](double x, int k) {
    Jet wh = s->w_hat(x, k + 1), w = s->w(x, k + 1);
    return wh.derive() / wh.truncate(k) - w.derive() / w.truncate(k);
  });
}

Field DarbouxTransform::delta_y() const {
  auto s = state_;
  return Field([s](double x, int k) {
    Jet wh = s->w_hat(x, k + 2), w = s->w(x, k + 2);
    Jet wh1 = wh.derive(), w1 = w.derive();
    Jet whk = wh.truncate(k), wk = w.truncate(k);
    Jet a = wh1.truncate(k) / whk;  // What'/What
    Jet b = wh1.derive() / whk;     // What''/What
    Jet c = w1.truncate(k) / wk;    // W'/W
    Jet d = w1.derive() / wk;       // W''/W
    Jet x0 = s->initial.X(x, k + 1);
    const double n = s->n();
    return -0.5 * n * x0.derive() + 0.5 * x0.truncate(k) * (a - c) + 0.75 * a * a + 0.75 * c * c - 0.5 * a * c -
           0.5 * b - 0.5 * d;
  });
}

PotentialPair DarbouxTransform::transformed_pair() const {
  return {(state_->initial.X + delta_x()).labelled("Xn"), (state_->initial.Y + delta_y()).labelled("Yn")};
}

Jet DarbouxTransform::first_order_w_hat(double x, int order) const {
  if (n() != 1) throw Error(ErrorKind::InvalidSpec, "first-order shortcut needs exactly one pair");
  Jet v = state_->v[0](x, order + 1);
  Jet x0 = state_->initial.X(x, order);
  return 2.0 * v.derive() - (x0 + 2.0 * state_->spec.eps) * v.truncate(order);
}

}  // namespace zdirac
