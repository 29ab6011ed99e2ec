#pragma once

// Independent oracles: densities and normalization, the tail criterion for
// bound states, bound-state counting for the sech^2 well, and pointwise
// comparison of computed fields against closed forms.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zdirac/dirac.hpp"
#include "zdirac/field.hpp"
#include "zdirac/schrod.hpp"

namespace zdirac {

enum class Status { Pass, Fail, MismatchLogged };
std::string_view to_string(Status s);

struct CheckReport {
  std::string name;
  Status status = Status::Fail;
  double max_err = 0.0;
  double location = std::numeric_limits<double>::quiet_NaN();
  std::string notes;
};

// Pass iff max_err < tol. A failing check tagged as a known discrepancy is
// logged as a mismatch instead. NaN errors always fail.
CheckReport make_report(std::string name, double max_err, double location, double tol, std::string notes = {},
                        bool known_discrepancy = false);
CheckReport residual_report(std::string name, const Residual& r, double tol, std::string notes = {});
// A check that could not be evaluated.
CheckReport error_report(std::string name, const std::exception& e);

std::vector<double> uniform_grid(double xmin, double xmax, int npoints);
// Points of `grid` inside [lo, hi].
std::vector<double> sub_grid(std::span<const double> grid, double lo, double hi);

// |psi1|^2 + |psi2|^2 at each grid point.
std::vector<double> density(const Spinor& s, std::span<const double> grid);
// Composite Simpson over a uniform grid; an odd number of intervals ends with
// the 3/8 rule on the last three.
double integrate_samples(std::span<const double> y, std::span<const double> grid);
// density / integral. ZeroNorm when the integral is below 1e-300.
std::vector<double> normalize(std::span<const double> density, std::span<const double> grid);

// Mass in the outermost 10% of the grid at both ends, relative to the total.
double tail_fraction(std::span<const double> density);
inline constexpr double kBoundTailFraction = 1e-6;
bool classify_bound(std::span<const double> density);

// nu(alpha) = -1/2 + sqrt(121 - 120 alpha^2)/2, the degree of the sech^2 well
// with strength 30 (1 - alpha^2).
double well_degree(double alpha);
// Number of integers N >= 0 with k_y = nu - N > 0.
int bound_state_count(double alpha);

enum class Metric {
  Mixed,     // |a - b| / max(1, |b|)
  Relative,  // |a - b| / |b|
  Absolute,  // |a - b|
};

struct ClosedFormOptions {
  double tol = 1e-8;
  Metric metric = Metric::Mixed;
  bool known_discrepancy = false;
  std::string notes;
};

// Pointwise comparison. Singular points of either field are skipped and
// counted in the notes; other evaluation errors produce a fail report.
CheckReport closed_form_check(std::string name, const Field& computed, const Field& reference,
                              std::span<const double> grid, const ClosedFormOptions& opt);
// Reference given as a field expression.
CheckReport closed_form_check(std::string name, const Field& computed, std::string_view reference,
                              std::span<const double> grid, const ClosedFormOptions& opt);

// max |Im f| over the grid, as a report.
CheckReport imaginary_part_check(std::string name, const Field& f, std::span<const double> grid, double tol);

}  // namespace zdirac
