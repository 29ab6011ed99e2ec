#include "zdirac/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zdirac/exprlang.hpp"
#include "zdirac/grid_kernels.hpp"

namespace zdirac {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::MismatchLogged: return "mismatch-logged";
  }
  return "fail";
}

CheckReport make_report(std::string name, double max_err, double location, double tol, std::string notes,
                        bool known_discrepancy) {
  CheckReport r{std::move(name), Status::Fail, max_err, location, std::move(notes)};
  if (max_err < tol)
    r.status = Status::Pass;
  else if (known_discrepancy && !std::isnan(max_err))  // a NaN is broken, not merely different
    r.status = Status::MismatchLogged;
  return r;
}

CheckReport residual_report(std::string name, const Residual& r, double tol, std::string notes) {
  if (!r.excluded.empty()) {
    std::ostringstream os;
    os << (notes.empty() ? "" : "; ") << r.excluded.size() << " singular point(s) excluded, first at x = "
       << r.excluded.front();
    notes += os.str();
  }
  return make_report(std::move(name), r.max_err, r.location, tol, std::move(notes));
}

CheckReport error_report(std::string name, const std::exception& e) {
  CheckReport r{std::move(name), Status::Fail, std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::quiet_NaN(), e.what()};
  if (const auto* z = dynamic_cast<const Error*>(&e)) {
    r.notes = std::string(to_string(z->kind())) + ": " + e.what();
    if (z->where()) r.location = *z->where();
  }
  return r;
}

std::vector<double> uniform_grid(double xmin, double xmax, int npoints) {
  if (npoints < 3 || !(xmin < xmax)) throw Error(ErrorKind::ConfigError, "grid needs xmin < xmax and npoints >= 3");
  std::vector<double> g(static_cast<std::size_t>(npoints));
  const double h = (xmax - xmin) / (npoints - 1);
  for (int i = 0; i < npoints; ++i) g[static_cast<std::size_t>(i)] = xmin + h * i;
  g.back() = xmax;
  return g;
}

std::vector<double> sub_grid(std::span<const double> grid, double lo, double hi) {
  std::vector<double> out;
  const double slack = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  for (double x : grid)
    if (x >= lo - slack && x <= hi + slack) out.push_back(x);
  return out;
}

std::vector<double> density(const Spinor& s, std::span<const double> grid) {
  std::vector<Complex> a(grid.size()), b(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      a[i] = s.psi1.value(grid[i]);
      b[i] = s.psi2.value(grid[i]);
    } catch (const Error& e) {
      throw e.with_location(grid[i]);
    }
  }
  std::vector<double> out(grid.size());
  kernels::density(a, b, out);
  return out;
}

double integrate_samples(std::span<const double> y, std::span<const double> grid) {
  const std::size_t n = y.size();
  if (n < 3 || grid.size() != n) throw Error(ErrorKind::DomainError, "integration needs at least three samples");
  const double h = (grid.back() - grid.front()) / static_cast<double>(n - 1);
  const std::size_t intervals = n - 1;
  if (intervals % 2 == 0) return kernels::simpson(y, h);
  if (intervals == 3) return 3.0 * h / 8.0 * (y[0] + 3.0 * y[1] + 3.0 * y[2] + y[3]);
  const double head = kernels::simpson(y.first(n - 3), h);
  return head + 3.0 * h / 8.0 * (y[n - 4] + 3.0 * y[n - 3] + 3.0 * y[n - 2] + y[n - 1]);
}

std::vector<double> normalize(std::span<const double> density, std::span<const double> grid) {
  const double total = integrate_samples(density, grid);
  if (!(total >= 1e-300)) throw Error(ErrorKind::ZeroNorm, "density integrates to zero");
  std::vector<double> out(density.begin(), density.end());
  for (double& v : out) v /= total;
  return out;
}

double tail_fraction(std::span<const double> density) {
  const std::size_t n = density.size();
  const std::size_t tail = std::max<std::size_t>(1, n / 10);
  const double total = kernels::range_sum(density);
  if (!(total > 0.0)) return std::numeric_limits<double>::infinity();
  const double outer = kernels::range_sum(density.first(tail)) + kernels::range_sum(density.last(tail));
  return outer / total;
}

bool classify_bound(std::span<const double> density) { return tail_fraction(density) < kBoundTailFraction; }

double well_degree(double alpha) { return -0.5 + 0.5 * std::sqrt(121.0 - 120.0 * alpha * alpha); }

int bound_state_count(double alpha) {
  const double nu = well_degree(alpha);
  const double nearest = std::round(nu);
  // States are k_y = nu, nu - 1, ... while positive; an integer nu stops one
  // short of k_y = 0.
  if (std::abs(nu - nearest) < 1e-9) return std::max(0, static_cast<int>(nearest));
  return nu > 0.0 ? static_cast<int>(std::floor(nu)) + 1 : 0;
}

CheckReport closed_form_check(std::string name, const Field& computed, const Field& reference,
                              std::span<const double> grid, const ClosedFormOptions& opt) {
  double worst = 0.0, where = std::numeric_limits<double>::quiet_NaN();
  std::size_t skipped = 0;
  double first_skipped = 0.0;
  try {
    for (double x : grid) {
      Complex a, b;
      try {
        a = computed.value(x);
        b = reference.value(x);
      } catch (const Error& e) {
        if (!is_singular_point(e)) throw e.with_location(x);
        if (skipped++ == 0) first_skipped = x;
        continue;
      }
      const double diff = std::abs(a - b);
      double err = diff;
      if (opt.metric == Metric::Mixed) err = diff / std::max(1.0, std::abs(b));
      if (opt.metric == Metric::Relative) err = diff == 0.0 ? 0.0 : diff / std::abs(b);
      if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
      if (std::isnan(where) || err > worst) {
        worst = err;
        where = x;
      }
    }
  } catch (const std::exception& e) {
    CheckReport r = error_report(std::move(name), e);
    if (opt.known_discrepancy) r.status = Status::MismatchLogged;
    return r;
  }
  std::string notes = opt.notes;
  if (skipped > 0) {
    std::ostringstream os;
    os << (notes.empty() ? "" : "; ") << skipped << " singular point(s) skipped, first at x = " << first_skipped;
    notes += os.str();
  }
  return make_report(std::move(name), worst, where, opt.tol, std::move(notes), opt.known_discrepancy);
}

CheckReport closed_form_check(std::string name, const Field& computed, std::string_view reference,
                              std::span<const double> grid, const ClosedFormOptions& opt) {
  Field ref;
  try {
    ref = expr::parse_field(reference);
  } catch (const std::exception& e) {
    return error_report(std::move(name), e);
  }
  ClosedFormOptions o = opt;
  o.notes = (o.notes.empty() ? "" : o.notes + "; ") + "reference " + std::string(reference);
  return closed_form_check(std::move(name), computed, ref, grid, o);
}

CheckReport imaginary_part_check(std::string name, const Field& f, std::span<const double> grid, double tol) {
  Residual r;
  try {
    for (double x : grid) {
      try {
        r.absorb(std::abs(f.value(x).imag()), x);
      } catch (const Error& e) {
        if (!is_singular_point(e)) throw e.with_location(x);
        r.excluded.push_back(x);
      }
    }
  } catch (const std::exception& e) {
    return error_report(std::move(name), e);
  }
  return residual_report(std::move(name), r, tol);
}

}  // namespace zdirac
