#include "zdirac/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "zdirac/catalog.hpp"
#include "zdirac/darboux.hpp"
#include "zdirac/dirac.hpp"
#include "zdirac/dirac_matrix.hpp"
#include "zdirac/exprlang.hpp"

namespace zdirac {

namespace {

using nlohmann::ordered_json;
constexpr Complex kI{0.0, 1.0};
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Magnetic fields are derivatives of fhat and carry one more order of the
// cancellation noise in the transformed fields.
constexpr double kDerivedPinTol = 1e-6;

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string num_short(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Field parse(std::string_view text) { return expr::parse_field(text); }

bool is_default_expr(const std::string& text, const char* def) {
  try {
    return expr::same_tree(expr::parse(text).root(), expr::parse(def).root());
  } catch (const Error&) {
    return false;
  }
}

// Worst relative mismatch between jet derivatives of orders 1 and 2 and
// Richardson-extrapolated central differences.
double fd_mismatch(const Field& f, double x, int order) {
  auto v = [&f](double t) { return f.value(t); };
  auto d1 = [&](double h) { return (v(x + h) - v(x - h)) / (2.0 * h); };
  auto d2 = [&](double h) { return (v(x + h) - 2.0 * v(x) + v(x - h)) / (h * h); };
  const Complex r1 = (4.0 * d1(5e-4) - d1(1e-3)) / 3.0;
  const Complex r2 = (4.0 * d2(5e-3) - d2(1e-2)) / 3.0;
  Jet j = f(x, order);
  return std::max(std::abs(j.derivative(1) - r1) / std::max(1.0, std::abs(r1)),
                  std::abs(j.derivative(2) - r2) / std::max(1.0, std::abs(r2)));
}

// ---------------------------------------------------------------------------
// Per-run context

struct Ctx {
  const ScenarioConfig& cfg;
  ScenarioResult& res;
  std::vector<double> grid;
  std::vector<double> pins;  // grid points inside the scenario's pin window
  double pin_lo, pin_hi;

  double tol() const { return cfg.tolerance; }
  void add(CheckReport r) { res.reports.push_back(std::move(r)); }

  // Runs a check body; anything it throws becomes a fail report.
  void check(const std::string& name, const std::function<CheckReport()>& body) {
    try {
      add(body());
    } catch (const std::exception& e) {
      add(error_report(name, e));
    }
  }

  ClosedFormOptions pin_options(double t = -1.0, Metric metric = Metric::Mixed) const {
    ClosedFormOptions o;
    o.tol = t > 0.0 ? t : tol();
    o.metric = metric;
    std::ostringstream os;
    os << "window [" << pin_lo << ", " << pin_hi << "]";
    o.notes = os.str();
    return o;
  }

  void pin(const std::string& name, const Field& computed, const Field& reference, ClosedFormOptions o) {
    if (pins.empty()) {
      add(make_report(name, kNaN, kNaN, o.tol, "no grid points inside the comparison window"));
      return;
    }
    add(closed_form_check(name, computed, reference, pins, o));
  }
  void pin(const std::string& name, const Field& computed, std::string_view reference, ClosedFormOptions o) {
    if (pins.empty()) {
      add(make_report(name, kNaN, kNaN, o.tol, "no grid points inside the comparison window"));
      return;
    }
    add(closed_form_check(name, computed, reference, pins, o));
  }

  void emit(const std::string& name, const Field& f, bool complex = false) {
    SampledField s{name, {}, complex};
    s.values.reserve(grid.size());
    for (double x : grid) {
      try {
        s.values.push_back(f.value(x));
      } catch (const Error&) {
        s.values.push_back({kNaN, kNaN});
      }
    }
    res.fields.push_back(std::move(s));
  }

  // Samples and normalizes the density; returns the raw samples.
  std::vector<double> emit_density(const std::string& name, const Spinor& s) {
    std::vector<double> raw = density(s, grid);
    res.densities.push_back({name, normalize(raw, grid)});
    return raw;
  }

  void bound_check(const std::string& name, const std::vector<double>& raw, bool expect_bound = true) {
    const double frac = tail_fraction(raw);
    std::ostringstream os;
    os << "tail mass fraction " << frac << " (bound below " << kBoundTailFraction << ")";
    if (expect_bound) {
      add(make_report(name, frac, kNaN, kBoundTailFraction, os.str()));
    } else {
      add(make_report(name, classify_bound(raw) ? 1.0 : 0.0, kNaN, 0.5, os.str() + "; expected not bound"));
    }
  }

  // Jet derivatives of orders 1..2 against central differences, with the
  // jets taken at the configured order.
  void jet_check(const std::string& name, const Field& f) {
    check(name, [&]() {
      Residual r;
      const double lo = std::max(pin_lo, grid.front()), hi = std::min(pin_hi, grid.back());
      for (int i = 0; i < 5; ++i) {
        const double x = lo + (hi - lo) * (0.1 + 0.2 * i) + 0.0123;
        r.absorb(fd_mismatch(f, x, cfg.jet_order), x);
      }
      return residual_report(name, r, 1e-6, "jet order " + std::to_string(cfg.jet_order));
    });
  }
};

std::string ky_tag(double k) { return "[k_y=" + num_short(k) + "]"; }

// ---------------------------------------------------------------------------
// Shared pieces

void initial_checks(Ctx& c, const ScalarDiracModel& model, const std::string& x0_ref, const std::string& y0_ref) {
  const PotentialPair pair = initial_pair(model);
  ClosedFormOptions ox = c.pin_options(1e-12, Metric::Absolute);
  c.pin("reduction.X0", pair.X, x0_ref, ox);
  c.pin("reduction.Y0", pair.Y, y0_ref, c.pin_options(1e-10, Metric::Relative));
  c.check("elimination.Y0", [&]() {
    const Elimination e = eliminate(MatrixDiracModel::from_scalar(model));
    return closed_form_check("elimination.Y0", e.Y, pair.Y, c.pins, c.pin_options(1e-9));
  });
  c.emit("X0", pair.X);
  c.emit("Y0", pair.Y);
}

struct SeedSpec {
  Complex lambda;
  Field h;
};

// Transformation at momentum k with the scenario's delta and mass.
DarbouxTransform make_transform(const Ctx& c, const std::vector<SeedSpec>& seeds, const PotentialPair& pair, double k,
                                const Field& mhat, int delta, double anchor = 0.0) {
  TransformSpec spec;
  spec.eps = k;
  for (const auto& s : seeds) spec.pairs.push_back({s.lambda, s.h});
  spec.delta = delta;
  spec.m_hat = mhat;
  spec.anchor = anchor;
  return DarbouxTransform(spec, pair, std::min(c.grid.front(), -1.0) - 1.0, std::max(c.grid.back(), 1.0) + 1.0);
}

bool coincides(double k, const std::vector<SeedSpec>& seeds) {
  for (const auto& s : seeds)
    if (std::abs(s.lambda - Complex(k)) < 1e-12) return true;
  return false;
}

double reference_momentum(const Ctx& c, const std::vector<SeedSpec>& seeds) {
  for (double k : c.cfg.k_y)
    if (!coincides(k, seeds)) return k;
  return 0.25;
}

// Vhat = delta sqrt(mhat^2 + tail) and
// fhat = base - (mhat' - Vhat')/(2 mhat - 2 Vhat), the shape every scalar
// example takes.
struct Family {
  std::string tail;
  std::string base;
};

Field family_vhat(const Field& mhat, const Family& fam, int delta) {
  const Field tail = parse(fam.tail);
  return Field([mhat, tail, delta](double x, int k) {
    Jet m = mhat(x, k);
    return static_cast<double>(delta) * sqrt(m * m + tail(x, k));
  });
}

Field family_fhat(const Field& mhat, const Field& vhat, const Family& fam) {
  const Field base = parse(fam.base);
  return Field([mhat, vhat, base](double x, int k) {
    Jet m = mhat(x, k + 1), v = vhat(x, k + 1);
    Jet d = m - v;
    return base(x, k) - d.derive() / (2.0 * d.truncate(k));
  });
}

struct ScalarTransformPlan {
  ScalarDiracModel model;
  std::vector<SeedSpec> seeds;
  std::function<Field(double)> psi0;
  Family family;
  bool bound_expected = true;  // classify transformed densities
  bool extra_properties = false;
};

struct ScalarTransformOut {
  Field vhat, fhat, mhat;
  DarbouxTransform transform;
  TransformedScalarModel transformed;
};

ScalarTransformOut run_scalar_transform(Ctx& c, const ScalarTransformPlan& plan) {
  const PotentialPair pair = initial_pair(plan.model);
  const Field mhat = parse(c.cfg.m_hat_expr).labelled(c.cfg.m_hat_expr);
  const double kref = reference_momentum(c, plan.seeds);
  DarbouxTransform t = make_transform(c, plan.seeds, pair, kref, mhat, c.cfg.delta);
  TransformedScalarModel tm = assemble_transformed(plan.model, t);
  const Field vhat = tm.model.V, fhat = tm.model.f;

  const Field vfam = family_vhat(mhat, plan.family, c.cfg.delta);
  c.pin("Vhat.family", vhat, vfam, c.pin_options());
  c.pin("fhat.family", fhat, family_fhat(mhat, vfam, plan.family), c.pin_options());
  c.jet_check("jets.Vhat", vhat);

  if (t.n() == 1) {
    c.check("What.first-order-shortcut", [&]() {
      Residual r;
      for (double x : c.pins) {
        try {
          const Complex a = t.w_hat(x, 2).derivative(2), b = t.first_order_w_hat(x, 2).derivative(2);
          const Complex a0 = t.w_hat(x, 0)[0], b0 = t.first_order_w_hat(x, 0)[0];
          r.absorb(std::max(std::abs(a0 - b0) / std::abs(b0), std::abs(a - b) / std::max(std::abs(b), std::abs(b0))),
                   x);
        } catch (const Error& e) {
          if (!is_singular_point(e)) throw;
          r.excluded.push_back(x);
        }
      }
      return residual_report("What.first-order-shortcut", r, 1e-10);
    });
  }

  c.emit("V", plan.model.V);
  c.emit("f", plan.model.f);
  c.emit("m", plan.model.m);
  c.emit("mhat", mhat);
  c.emit("Vhat", vhat);
  c.emit("fhat", fhat);
  c.emit("Bzhat", magnetic_field_z(fhat));
  c.emit("radicand", tm.radicand);

  for (double k : c.cfg.k_y) {
    const std::string tag = ky_tag(k);
    if (coincides(k, plan.seeds)) {
      c.check("state" + tag + ".absent", [&]() {
        try {
          make_transform(c, plan.seeds, pair, k, mhat, c.cfg.delta);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::InvalidSpec)
            return make_report("state" + tag + ".absent", 0.0, kNaN, 0.5,
                               "k_y equals a transformation energy; the transformation removes this state");
          throw;
        }
        return make_report("state" + tag + ".absent", 1.0, kNaN, 0.5, "transformation was not rejected");
      });
      continue;
    }
    try {
      DarbouxTransform tk = make_transform(c, plan.seeds, pair, k, mhat, c.cfg.delta);
      TransformedScalarModel tmk = assemble_transformed(plan.model, tk);
      const Field psi0 = plan.psi0(k);
      c.check("psi-hat" + tag + ".reduction", [&]() {
        return residual_report("psi-hat" + tag + ".reduction",
                               reduction_residual(tk.transformed_pair(), tk.solution(psi0), k, c.grid), c.tol());
      });
      const Spinor s = transformed_spinor(tk, psi0, tmk.model);
      c.check("spinor-hat" + tag + ".dirac", [&]() {
        return residual_report("spinor-hat" + tag + ".dirac", dirac_residual(tmk.model, s, c.grid), c.tol());
      });
      c.check("density-hat" + tag + ".bound", [&]() {
        const auto raw = c.emit_density("k_y=" + num_short(k), s);
        if (!plan.bound_expected) {
          return make_report("density-hat" + tag + ".finite", 0.0, kNaN, 0.5,
                             "tail mass fraction " + num_short(tail_fraction(raw)) + " (not classified)");
        }
        c.bound_check("density-hat" + tag + ".bound", raw);
        CheckReport r = c.res.reports.back();
        c.res.reports.pop_back();
        return r;
      });
    } catch (const std::exception& e) {
      c.add(error_report("transform" + tag, e));
    }
  }

  if (plan.extra_properties) {
    const double k = kref;
    c.check("delta-flip.Vhat", [&]() {
      DarbouxTransform tf = make_transform(c, plan.seeds, pair, k, mhat, -c.cfg.delta);
      TransformedScalarModel tmf = assemble_transformed(plan.model, tf);
      return closed_form_check("delta-flip.Vhat", tmf.model.V, -vhat, c.pins, c.pin_options(1e-10));
    });
    c.check("delta-flip.dirac", [&]() {
      DarbouxTransform tf = make_transform(c, plan.seeds, pair, k, mhat, -c.cfg.delta);
      TransformedScalarModel tmf = assemble_transformed(plan.model, tf);
      const Spinor s = transformed_spinor(tf, plan.psi0(k), tmf.model);
      return residual_report("delta-flip.dirac", dirac_residual(tmf.model, s, c.grid), c.tol());
    });
    c.check("anchor-invariance.density", [&]() {
      DarbouxTransform t0 = make_transform(c, plan.seeds, pair, k, mhat, c.cfg.delta, 0.0);
      DarbouxTransform t1 = make_transform(c, plan.seeds, pair, k, mhat, c.cfg.delta, 1.5);
      const auto d0 = normalize(density(transformed_spinor(t0, plan.psi0(k), tm.model), c.grid), c.grid);
      const auto d1 = normalize(density(transformed_spinor(t1, plan.psi0(k), tm.model), c.grid), c.grid);
      Residual r;
      for (std::size_t i = 0; i < d0.size(); ++i) r.absorb(std::abs(d0[i] - d1[i]), c.grid[i]);
      return residual_report("anchor-invariance.density", r, 1e-9, "anchors 0 and 1.5");
    });
  }
  return {vhat, fhat, mhat, t, tm};
}

// ---------------------------------------------------------------------------
// Application 1: set1 and the massless well family

void run_app1_initial(Ctx& c) {
  const ScalarDiracModel model = catalog::set1();
  initial_checks(c, model, "0", "-30*sech(x)^2");
  c.pin("simplifying-f", simplifying_f(model.m, model.V), "tanh(x)/2", c.pin_options(1e-12));
  c.pin("Bz", magnetic_field_z(model.f), "-sech(x)^2/2", c.pin_options(1e-12));
  c.emit("f", model.f);
  c.emit("V", model.V);
  c.emit("m", model.m);
  c.emit("Bz", magnetic_field_z(model.f));
  const PotentialPair pair = initial_pair(model);
  for (double k : c.cfg.k_y) {
    const std::string tag = ky_tag(k);
    const Field psi0 = catalog::legendre_field(5.0, k);
    c.check("psi0" + tag + ".reduction", [&]() {
      return residual_report("psi0" + tag + ".reduction", reduction_residual(pair, psi0, k, c.grid), c.tol());
    });
    const Spinor s = spinor_from_scalar(model, psi0, k);
    c.check("spinor" + tag + ".dirac", [&]() {
      return residual_report("spinor" + tag + ".dirac", dirac_residual(model, s, c.grid), c.tol());
    });
    c.check("density" + tag + ".bound", [&]() {
      const auto raw = c.emit_density("k_y=" + num_short(k), s);
      c.bound_check("density" + tag + ".bound", raw);
      CheckReport r = c.res.reports.back();
      c.res.reports.pop_back();
      return r;
    });
  }
  c.jet_check("jets.Y0", pair.Y);
}

Field set1_seed(double k) { return catalog::legendre_field(5.0, k); }

void run_app1_first(Ctx& c, bool massive) {
  ScalarTransformPlan plan{catalog::set1(), {{5.0, catalog::p5(5)}}, set1_seed,
                           {"24*sech(x)^2", "-1/2+tanh(x)/2"}, true, !massive};
  ScalarTransformOut out = run_scalar_transform(c, plan);
  const double d = c.cfg.delta;
  if (!massive && is_default_expr(c.cfg.m_hat_expr, "0")) {
    c.pin("Vhat.closed-form", out.vhat, num(d * 2.0 * std::sqrt(6.0)) + "*sech(x)", c.pin_options());
    c.pin("fhat.closed-form", out.fhat, "tanh(x)-1/2", c.pin_options());
    c.pin("Bzhat.closed-form", magnetic_field_z(out.fhat), "-sech(x)^2", c.pin_options(kDerivedPinTol));
    ClosedFormOptions o = c.pin_options();
    o.known_discrepancy = true;
    o.notes += "; printed transformed-f formula taken literally (2f + log-derivative) gives twice the solved value";
    c.pin("fhat.printed-prefactor", 2.0 * out.fhat, "tanh(x)-1/2", o);
  }
  if (massive && is_default_expr(c.cfg.m_hat_expr, "sech(x)")) {
    c.pin("Vhat.closed-form", out.vhat, num(d * 5.0) + "*sech(x)", c.pin_options());
    c.pin("fhat.closed-form", out.fhat, "tanh(x)-1/2", c.pin_options());
    c.pin("Bzhat.closed-form", magnetic_field_z(out.fhat), "-sech(x)^2", c.pin_options(kDerivedPinTol));
  }
}

void run_app1_q551(Ctx& c) {
  const double lambda = 5.51;
  const Field h = catalog::legendre_field(5.0, lambda, LegendreKind::Q).labelled("Q5^5.51");
  ScalarTransformPlan plan{catalog::set1(), {{lambda, h}}, set1_seed, {"0", "0"}, false, false};
  const PotentialPair pair = initial_pair(plan.model);
  c.check("seed.reduction", [&]() {
    return residual_report("seed.reduction", reduction_residual(pair, h, lambda, c.grid), c.tol());
  });
  c.emit("h0", h);
  // No closed form is known for this seed: only closure is checked, so the
  // family pins are replaced by the transformed-model assembly itself.
  const Field mhat = parse(c.cfg.m_hat_expr);
  const double kref = reference_momentum(c, plan.seeds);
  DarbouxTransform t = make_transform(c, plan.seeds, pair, kref, mhat, c.cfg.delta);
  TransformedScalarModel tm = assemble_transformed(plan.model, t);
  c.emit("mhat", mhat);
  c.emit("Vhat", tm.model.V);
  c.emit("fhat", tm.model.f);
  c.emit("Bzhat", magnetic_field_z(tm.model.f));
  c.emit("radicand", tm.radicand);
  for (double k : c.cfg.k_y) {
    const std::string tag = ky_tag(k);
    try {
      DarbouxTransform tk = make_transform(c, plan.seeds, pair, k, mhat, c.cfg.delta);
      TransformedScalarModel tmk = assemble_transformed(plan.model, tk);
      const Field psi0 = set1_seed(k);
      c.check("psi-hat" + tag + ".reduction", [&]() {
        return residual_report("psi-hat" + tag + ".reduction",
                               reduction_residual(tk.transformed_pair(), tk.solution(psi0), k, c.grid), c.tol());
      });
      const Spinor s = transformed_spinor(tk, psi0, tmk.model);
      c.check("spinor-hat" + tag + ".dirac", [&]() {
        return residual_report("spinor-hat" + tag + ".dirac", dirac_residual(tmk.model, s, c.grid), c.tol());
      });
      c.check("density-hat" + tag, [&]() {
        const auto raw = c.emit_density("k_y=" + num_short(k), s);
        return make_report("density-hat" + tag, 0.0, kNaN, 0.5,
                           "tail mass fraction " + num_short(tail_fraction(raw)) + " (not classified)");
      });
    } catch (const std::exception& e) {
      c.add(error_report("transform" + tag, e));
    }
  }
}

void run_app1_second(Ctx& c) {
  ScalarTransformPlan plan{catalog::set1(),
                           {{5.0, catalog::p5(5)}, {4.0, catalog::p5(4)}},
                           set1_seed,
                           {"18*sech(x)^2", "-1+tanh(x)"},
                           false,
                           false};
  ScalarTransformOut out = run_scalar_transform(c, plan);
  const double d = c.cfg.delta;
  const bool massless = is_default_expr(c.cfg.m_hat_expr, "0");
  {
    // The printed second-order potential has the mass unsquared.
    const Field mhat = out.mhat;
    const Field tail = parse("18*sech(x)^2");
    Field unsquared([mhat, tail, d](double x, int k) { return d * sqrt(mhat(x, k) + tail(x, k)); });
    ClosedFormOptions o = c.pin_options();
    o.known_discrepancy = !massless;
    o.notes += "; unsquared-mass reading, coincides with the squared one when mhat = 0";
    c.pin("Vhat.unsquared-mass-reading", out.vhat, unsquared, o);
  }
  if (massless) {
    c.pin("Vhat.closed-form", out.vhat, num(d * std::sqrt(18.0)) + "*sech(x)", c.pin_options());
    c.pin("fhat.closed-form", out.fhat, "-1+3/2*tanh(x)", c.pin_options());
    c.pin("Bzhat.derived", magnetic_field_z(out.fhat), "-3/2*sech(x)^2", c.pin_options(kDerivedPinTol));
    ClosedFormOptions o = c.pin_options(kDerivedPinTol);
    o.known_discrepancy = true;
    o.notes += "; printed value, inconsistent with differentiating the printed fhat";
    c.pin("Bzhat.printed", magnetic_field_z(out.fhat), "-3*sqrt(2)*sech(x)^2", o);
  }
}

void run_app1_alpha_scan(Ctx& c) {
  const std::vector<double> alphas = {0.0, std::sqrt(1.0 / 3.0), std::sqrt(3.0 / 5.0), std::sqrt(4.0 / 5.0),
                                      std::sqrt(14.0 / 15.0)};
  ordered_json rows = ordered_json::array();
  for (double alpha : alphas) {
    const std::string at = "[alpha=" + num_short(alpha) + "]";
    const ScalarDiracModel model = catalog::set2(alpha);
    const PotentialPair pair = initial_pair(model);
    c.pin("reduction" + at + ".X0", pair.X, "0", c.pin_options(1e-12, Metric::Absolute));
    c.pin("reduction" + at + ".Y0", pair.Y, num(-30.0 * (1.0 - alpha * alpha)) + "*sech(x)^2",
          c.pin_options(1e-10));
    c.pin("simplifying-f" + at, simplifying_f(model.m, model.V), "tanh(x)/2", c.pin_options(1e-12));
    c.emit("Y0" + at, pair.Y);
    const double nu = well_degree(alpha);
    const double nearest = std::round(nu);
    int found = 0;
    if (std::abs(nu - nearest) < 1e-9) {
      for (int N = 0; nearest - N > 0; ++N) {
        const double k = nearest - N;
        const std::string tag = at + ky_tag(k);
        const Field psi0 = catalog::legendre_field(nearest, k);
        c.check("psi0" + tag + ".reduction", [&]() {
          return residual_report("psi0" + tag + ".reduction", reduction_residual(pair, psi0, k, c.grid), c.tol());
        });
        const Spinor s = spinor_from_scalar(model, psi0, k);
        c.check("spinor" + tag + ".dirac", [&]() {
          return residual_report("spinor" + tag + ".dirac", dirac_residual(model, s, c.grid), c.tol());
        });
        try {
          const auto raw = c.emit_density("alpha=" + num_short(alpha) + ",k_y=" + num_short(k), s);
          c.bound_check("density" + tag + ".bound", raw);
          if (classify_bound(raw)) ++found;
        } catch (const std::exception& e) {
          c.add(error_report("density" + tag + ".bound", e));
        }
      }
      const int count = bound_state_count(alpha);
      c.add(make_report("count" + at, std::abs(found - count), kNaN, 0.5,
                        "normalizable states found " + std::to_string(found) + ", counted " + std::to_string(count)));
    }
    rows.push_back({{"alpha", alpha}, {"nu", nu}, {"count", bound_state_count(alpha)}});
  }
  c.res.extra["alpha_scan"] = rows;
}

void run_table1(Ctx& c) {
  struct Row {
    std::string label;
    double alpha;
    int expected;
    bool printed;
  };
  const std::vector<Row> rows = {
      {"0", 0.0, 5, true},
      {"sqrt(1/3)", std::sqrt(1.0 / 3.0), 4, true},
      {"sqrt(3/5)", std::sqrt(3.0 / 5.0), 3, true},
      {"sqrt(2/5)", std::sqrt(2.0 / 5.0), 2, true},
      {"sqrt(14/15)", std::sqrt(14.0 / 15.0), 1, true},
      {"sqrt(4/5)", std::sqrt(4.0 / 5.0), 2, false},
      {"1", 1.0, 0, false},
  };
  ordered_json table = ordered_json::array();
  for (const auto& r : rows) {
    const int count = bound_state_count(r.alpha);
    const bool known = r.label == "sqrt(2/5)";
    std::string notes = "nu = " + num(well_degree(r.alpha)) + ", computed count " + std::to_string(count) +
                        ", expected " + std::to_string(r.expected);
    if (known) notes += "; the row is inconsistent with the count condition, sqrt(4/5) gives 2";
    if (!r.printed) notes += "; derived row";
    CheckReport rep = make_report("table.row[alpha=" + r.label + "]", std::abs(count - r.expected), kNaN, 0.5,
                                  notes, known);
    if (r.printed)
      table.push_back({{"alpha_label", r.label},
                     {"alpha", r.alpha},
                     {"nu", well_degree(r.alpha)},
                     {"count", count},
                     {"expected", r.expected},
                     {"status", std::string(to_string(rep.status))}});
    c.add(std::move(rep));
  }
  c.res.extra["table"] = table;

  // Monotone decrease on a 101-point sweep of [0, 1].
  std::vector<double> alphas;
  std::vector<Complex> nus, counts;
  int violations = 0, prev = bound_state_count(0.0);
  double where = kNaN;
  for (int i = 0; i <= 100; ++i) {
    const double a = i / 100.0;
    const int n = bound_state_count(a);
    if (n > prev && violations++ == 0) where = a;
    prev = n;
    alphas.push_back(a);
    nus.push_back(well_degree(a));
    counts.push_back(static_cast<double>(n));
  }
  c.add(make_report("table.monotone-sweep", violations, where, 0.5, "101 points on [0, 1]"));
  c.res.abscissa = "alpha";
  c.res.grid = alphas;
  c.res.fields.push_back({"nu", nus, false});
  c.res.fields.push_back({"count", counts, false});
}

// ---------------------------------------------------------------------------
// Application 2: V = alpha sech, f = m = 0

Field psi23_closed_form(const Field& psi0, double k, double alpha) {
  return Field([psi0, k, alpha](double x, int order) {
    Jet X = Jet::variable(x, order);
    Jet p = psi0(x, order + 1);
    return (-kI / (2.0 * alpha)) * sqrt(sech(X)) *
           ((2.0 * k * cosh(X) + sinh(X)) * p.truncate(order) - 2.0 * cosh(X) * p.derive());
  });
}

void run_app2_initial(Ctx& c) {
  const double alpha = -5.0;
  const ScalarDiracModel model = catalog::set3(alpha);
  initial_checks(c, model, "tanh(x)", "(1/4-25)*sech(x)^2+1/4");
  c.emit("V", model.V);
  const PotentialPair pair = initial_pair(model);
  ordered_json qs = ordered_json::array();
  for (double k : c.cfg.k_y) {
    const std::string tag = ky_tag(k);
    catalog::QResolution q{};
    try {
      q = catalog::resolve_q(alpha, k);
    } catch (const std::exception& e) {
      c.add(error_report("psi0" + tag + ".q", e));
      continue;
    }
    qs.push_back({{"k_y", k}, {"q", q.q}, {"objective", q.objective}, {"snapped", q.snapped}});
    const Field psi0 = catalog::psi03(k, q.q);
    c.check("psi0" + tag + ".reduction", [&]() {
      std::ostringstream os;
      os << "q resolved to " << num(q.q) << (q.snapped ? " (snapped to a terminating series)" : "");
      return residual_report("psi0" + tag + ".reduction", reduction_residual(pair, psi0, k, c.grid), c.tol(),
                             os.str());
    });
    c.check("psi0" + tag + ".product-form", [&]() {
      const Field scaled = catalog::psi03_phase(k) * psi0;
      return closed_form_check("psi0" + tag + ".product-form", catalog::psi03_product(k, q.q), scaled,
                               sub_grid(c.grid, -3.0, 3.0), {1e-10, Metric::Relative, false, "window [-3, 3]"});
    });
    const Spinor s = spinor_from_scalar(model, psi0, k);
    c.check("spinor" + tag + ".dirac", [&]() {
      return residual_report("spinor" + tag + ".dirac", dirac_residual(model, s, c.grid), c.tol());
    });
    c.check("spinor" + tag + ".psi2-closed-form", [&]() {
      const Field ref = std::sqrt(-alpha) * psi23_closed_form(psi0, k, alpha);
      return closed_form_check("spinor" + tag + ".psi2-closed-form", s.psi2, ref, sub_grid(c.grid, -4.0, 4.0),
                               {1e-10, Metric::Relative, false, "window [-4, 4]"});
    });
    c.check("density" + tag + ".bound", [&]() {
      const auto raw = c.emit_density("k_y=" + num_short(k), s);
      c.bound_check("density" + tag + ".bound", raw);
      CheckReport r = c.res.reports.back();
      c.res.reports.pop_back();
      return r;
    });
  }
  c.res.extra["q"] = qs;
}

Field app2_seed(double k) {
  const catalog::QResolution q = catalog::resolve_q(-1.0, k);
  return catalog::psi03(k, q.q);
}

void app2_common(Ctx& c, const ScalarTransformPlan& plan, bool complex_pair) {
  const PotentialPair pair = initial_pair(plan.model);
  c.check("seed.h0-from-psi0", [&]() {
    return closed_form_check("seed.h0-from-psi0", catalog::h03(), catalog::psi03(-1.0, 1.0), c.pins,
                             c.pin_options(1e-12));
  });
  c.check("seed.h0.reduction", [&]() {
    return residual_report("seed.h0.reduction", reduction_residual(pair, plan.seeds[0].h, plan.seeds[0].lambda, c.grid),
                           c.tol());
  });
  if (plan.seeds.size() > 1) {
    c.check("seed.h1.reduction", [&]() {
      return residual_report("seed.h1.reduction",
                             reduction_residual(pair, plan.seeds[1].h, plan.seeds[1].lambda, c.grid), c.tol());
    });
  }
  ScalarTransformOut out = run_scalar_transform(c, plan);
  if (complex_pair) {
    const PotentialPair tp = out.transform.transformed_pair();
    c.check("reality.Xn", [&]() { return imaginary_part_check("reality.Xn", tp.X, c.grid, 1e-10); });
    c.check("reality.Yn", [&]() { return imaginary_part_check("reality.Yn", tp.Y, c.grid, 1e-10); });
    c.check("reality.Vhat", [&]() { return imaginary_part_check("reality.Vhat", out.vhat, c.grid, 1e-10); });
    c.check("reality.fhat", [&]() { return imaginary_part_check("reality.fhat", out.fhat, c.grid, 1e-10); });
  }
}

void run_app2_first(Ctx& c) {
  app2_common(c,
              {catalog::set3(-1.0), {{-1.0, catalog::h03()}}, app2_seed,
               {"12*exp(2*x)/(3+exp(2*x))^2", "-1/2+3/(3+exp(2*x))"}, false, false},
              false);
}

void run_app2_second(Ctx& c) {
  app2_common(c,
              {catalog::set3(-1.0), {{-1.0, catalog::h03()}, {-2.0, catalog::h03_next()}}, app2_seed,
               {"20*exp(2*x)/(5+exp(2*x))^2", "-1/2+5/(5+exp(2*x))"}, false, false},
              false);
}

void run_app2_second_complex(Ctx& c) {
  app2_common(c,
              {catalog::set3(-1.0),
               {{Complex(-1.0, 1.0), catalog::h03_complex(1)}, {Complex(-1.0, -1.0), catalog::h03_complex(-1)}},
               app2_seed,
               {"260*exp(2*x)/(13+5*exp(2*x))^2", "-1/2+13/(13+5*exp(2*x))"},
               false,
               false},
              true);
}

// ---------------------------------------------------------------------------
// Matrix potential

void run_matrix_example(Ctx& c) {
  const MatrixDiracModel model = catalog::setm();
  const ScalarDiracModel scalar = catalog::set1();
  const PotentialPair pair = matrix_reduction(model);
  const PotentialPair spair = initial_pair(scalar);
  const Elimination elim = eliminate(model);
  c.pin("reduction.X0", pair.X, "0", c.pin_options(1e-12, Metric::Absolute));
  c.pin("reduction.Y0", pair.Y, "-30*sech(x)^2", c.pin_options(1e-10, Metric::Relative));
  c.pin("elimination.first-order", elim.first_order, "0", c.pin_options(1e-10, Metric::Absolute));
  c.pin("elimination.quadratic", elim.quadratic, "1", c.pin_options(1e-10));
  c.pin("elimination.X0", elim.X, pair.X, c.pin_options(1e-10, Metric::Absolute));

  const double scalar_tol = 1e-10;
  c.pin("scalar-limit.X0", pair.X, spair.X, c.pin_options(scalar_tol));
  c.pin("scalar-limit.Y0", pair.Y, spair.Y, c.pin_options(scalar_tol));
  c.pin("scalar-limit.simplifying-f", simplifying_f_matrix(model), simplifying_f(scalar.m, scalar.V),
        c.pin_options(scalar_tol));

  const Field mhat = parse(c.cfg.m_hat_expr), v22 = parse(c.cfg.vhat22_expr);
  const Field v12 = parse(c.cfg.vhat12_expr), v21 = parse(c.cfg.vhat21_expr);
  const std::vector<SeedSpec> seeds = {{5.0, catalog::p5(5)}};
  const double kref = reference_momentum(c, seeds);
  DarbouxTransform t = make_transform(c, seeds, pair, kref, mhat, c.cfg.delta);
  const TransformedMatrixModel tr = assemble_transformed_matrix(model, t, {mhat, v12, v21, v22});

  // Scalar limit of the transformed quantities: feed the scalar Vhat in as
  // V22hat with vanishing off-diagonal entries.
  c.check("scalar-limit.transformed", [&]() {
    const TransformedScalarModel st = assemble_transformed(scalar, t);
    const Field zero = Field::constant(0.0);
    CheckReport a = closed_form_check("scalar-limit.fhat", f_hat_matrix(model, t, zero, zero, st.model.V, mhat),
                                      st.model.f, c.pins, c.pin_options(scalar_tol));
    CheckReport b = closed_form_check("scalar-limit.V11hat", v11_hat_solution(model, t, st.model.V, mhat),
                                      st.model.V, c.pins, c.pin_options(scalar_tol));
    c.add(a);
    return b;
  });
  c.check("scalar-limit.spinor", [&]() {
    const double k = kref;
    const Field psi0 = set1_seed(k);
    const Spinor ms = matrix_spinor(model, psi0, k);
    const Spinor ss = spinor_from_scalar(scalar, psi0, k);
    CheckReport a = closed_form_check("scalar-limit.psi1", ms.psi1, ss.psi1, c.pins, c.pin_options(scalar_tol));
    CheckReport b = closed_form_check("scalar-limit.psi2", ms.psi2, ss.psi2, c.pins, c.pin_options(scalar_tol));
    c.add(a);
    c.add(b);
    const double rm = matrix_dirac_residual(model, ms, c.grid).max_err;
    const double rs = dirac_residual(scalar, ss, c.grid).max_err;
    return make_report("scalar-limit.dirac-residual", std::abs(rm - rs), kNaN, 1e-12,
                       "matrix " + num_short(rm) + ", scalar " + num_short(rs));
  });

  const bool defaults = is_default_expr(c.cfg.m_hat_expr, "1+tanh(x)") &&
                        is_default_expr(c.cfg.vhat22_expr, "-4*sech(x)") &&
                        is_default_expr(c.cfg.vhat12_expr, "0") && is_default_expr(c.cfg.vhat21_expr, "0");
  {
    // V11hat = -mhat + 24 sech^2 / (V22hat - mhat) for any free entries.
    Field fam([mhat, v22](double x, int k) {
      Jet s = sech(Jet::variable(x, k));
      return -mhat(x, k) + 24.0 * s * s / (v22(x, k) - mhat(x, k));
    });
    c.pin("V11hat.family", tr.model.V11, fam, c.pin_options());
  }
  c.check("mhat.inverse-loop", [&]() {
    // The root in the mhat solution is |2 mhat + V11hat - V22hat|, so the sign
    // is taken from that combination point by point.
    const Field up = m_hat_solution(model, t, tr.model.V11, v22, 1);
    const Field down = m_hat_solution(model, t, tr.model.V11, v22, -1);
    Residual r;
    int flips = 0;
    for (double x : c.pins) {
      const double side = (2.0 * mhat.value(x) + tr.model.V11.value(x) - v22.value(x)).real();
      flips += side < 0.0;
      const Complex got = (side >= 0.0 ? up : down).value(x), want = mhat.value(x);
      r.absorb(std::abs(got - want) / std::max(1.0, std::abs(want)), x);
    }
    return residual_report("mhat.inverse-loop", r, c.tol(),
                           "sign -1 branch at " + std::to_string(flips) + " of " + std::to_string(c.pins.size()) +
                               " points");
  });
  c.check("V22hat.inverse-loop", [&]() {
    return closed_form_check("V22hat.inverse-loop", v22_hat_solution(model, t, tr.model.V11, mhat), v22, c.pins,
                             c.pin_options());
  });
  if (defaults) {
    c.pin("fhat.closed-form", tr.model.f, "-sech(x)*(2+sech(x)-4*tanh(x))/(1+4*sech(x)+tanh(x))", c.pin_options());
    c.pin("Bzhat.closed-form", magnetic_field_z(tr.model.f), "2*exp(x)/(4+exp(x))^2-4/(exp(-x)+exp(x))^2",
          c.pin_options());
    c.pin("V11hat.derived-form", tr.model.V11, "-(25+4*sech(x)-23*tanh(x))*(1+tanh(x))/(1+4*sech(x)+tanh(x))",
          c.pin_options());
    ClosedFormOptions o = c.pin_options();
    o.known_discrepancy = true;
    o.notes += "; printed form with 22 tanh, inconsistent with the general V11hat solution";
    c.pin("V11hat.printed-form", tr.model.V11, "-(25+4*sech(x)-22*tanh(x))*(1+tanh(x))/(1+4*sech(x)+tanh(x))", o);
  }
  c.jet_check("jets.V11hat", tr.model.V11);

  c.emit("V11hat", tr.model.V11);
  c.emit("V22hat", v22);
  c.emit("V12hat", v12, true);
  c.emit("V21hat", v21, true);
  c.emit("mhat", mhat);
  c.emit("fhat", tr.model.f, true);
  c.emit("Bzhat", magnetic_field_z(tr.model.f), true);

  for (double k : c.cfg.k_y) {
    const std::string tag = ky_tag(k);
    if (coincides(k, seeds)) {
      c.add(make_report("state" + tag + ".absent", 0.0, kNaN, 0.5,
                        "k_y equals a transformation energy; the transformation removes this state"));
      continue;
    }
    try {
      DarbouxTransform tk = make_transform(c, seeds, pair, k, mhat, c.cfg.delta);
      const TransformedMatrixModel trk = assemble_transformed_matrix(model, tk, {mhat, v12, v21, v22});
      const Field psi0 = set1_seed(k);
      c.check("psi-hat" + tag + ".reduction", [&]() {
        return residual_report("psi-hat" + tag + ".reduction",
                               reduction_residual(tk.transformed_pair(), tk.solution(psi0), k, c.grid), c.tol());
      });
      const Spinor s = matrix_spinor(trk.model, tk.solution(psi0), k, 0.0, c.grid.front() - 1.0, c.grid.back() + 1.0);
      c.check("spinor-hat" + tag + ".matrix-dirac", [&]() {
        return residual_report("spinor-hat" + tag + ".matrix-dirac", matrix_dirac_residual(trk.model, s, c.grid),
                               c.tol());
      });
      c.check("density-hat" + tag + ".bound", [&]() {
        const auto raw = c.emit_density("k_y=" + num_short(k), s);
        c.bound_check("density-hat" + tag + ".bound", raw);
        CheckReport r = c.res.reports.back();
        c.res.reports.pop_back();
        return r;
      });
    } catch (const std::exception& e) {
      c.add(error_report("transform" + tag, e));
    }
  }
}

// ---------------------------------------------------------------------------
// Registry

struct Entry {
  std::string name;
  std::string summary;
  ScenarioConfig defaults;
  double pin_lo, pin_hi;
  std::string provenance;
  std::function<void(Ctx&)> run;
};

ScenarioConfig make_defaults(std::string name, GridSpec grid, std::vector<double> ky, std::string mhat = "0") {
  ScenarioConfig c;
  c.scenario = std::move(name);
  c.grid = grid;
  c.k_y = std::move(ky);
  c.m_hat_expr = std::move(mhat);
  c.output = "out/" + c.scenario;
  return c;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    const GridSpec wide{-20.0, 20.0, 2001};
    const GridSpec skew{-8.0, 17.5, 1276};
    const GridSpec second{-4.0, 16.0, 1001};
    const GridSpec mid{-16.0, 16.0, 1601};
    const GridSpec app2t{-12.0, 12.0, 1201};
    const GridSpec narrow{-8.0, 8.0, 801};
    e.push_back({"app1-initial", "set1 well: reduction, P5^k states and spinors for k_y = 1..5",
                 make_defaults("app1-initial", wide, {1, 2, 3, 4, 5}), -8.0, 8.0,
                 "f = tanh/2, V = sqrt(30) sech, m = 0; reduced well -30 sech^2 with P5^k(tanh) bound states",
                 run_app1_initial});
    e.push_back({"app1-first-massless", "first-order transform of set1 with P5^5, mhat = 0",
                 make_defaults("app1-first-massless", skew, {1, 2, 3, 4, 5}), -4.0, 7.0,
                 "first-order transformation with seed P5^5 at energy 5; transformed potential "
                 "-sqrt(mhat^2 + 24 sech^2), massless case",
                 [](Ctx& c) { run_app1_first(c, false); }});
    e.push_back({"app1-first-massive", "first-order transform of set1 with P5^5, mhat = sech",
                 make_defaults("app1-first-massive", skew, {1, 2, 3, 4, 5}, "sech(x)"), -4.0, 7.0,
                 "first-order transformation with seed P5^5 at energy 5; mass sech gives Vhat = -5 sech",
                 [](Ctx& c) { run_app1_first(c, true); }});
    e.push_back({"app1-first-q551", "first-order transform of set1 with Q5^5.51 at energy 5.51",
                 make_defaults("app1-first-q551", narrow, {1, 2, 3, 4, 5}), -4.0, 7.0,
                 "first-order transformation with the second-kind Legendre seed Q5^5.51(tanh)", run_app1_q551});
    e.push_back({"app1-alpha-scan", "set2 mass family: reduced well depth and bound states versus alpha",
                 make_defaults("app1-alpha-scan", wide, {}), -8.0, 8.0,
                 "mass alpha sqrt(30) sech; reduced well -30 (1 - alpha^2) sech^2 with degree "
                 "-1/2 + sqrt(121 - 120 alpha^2)/2",
                 run_app1_alpha_scan});
    e.push_back({"app1-second-order", "second-order transform of set1 with P5^5 and P5^4",
                 make_defaults("app1-second-order", second, {1, 2, 3}), -2.0, 5.0,
                 "second-order transformation with seeds P5^5 (energy 5) and P5^4 (energy 4); "
                 "transformed potential -sqrt(mhat^2 + 18 sech^2)",
                 run_app1_second});
    e.push_back({"app2-initial", "alpha sech potential at alpha = -5: hypergeometric bound states",
                 make_defaults("app2-initial", mid, {2.5, 3.5, 4.5}), -8.0, 8.0,
                 "f = 0, V = alpha sech, m = 0; reduced equation with tanh term, 2F1 solutions terminating "
                 "when 1/2 + k_y + alpha is a nonpositive integer",
                 run_app2_initial});
    e.push_back({"app2-first", "first-order transform of the alpha = -1 system with an elementary seed",
                 make_defaults("app2-first", app2t, {0.5}), -5.0, 6.0,
                 "seed exp(3x/2)/(2 sqrt(1+e^{2x})) at energy -1; Vhat^2 = mhat^2 + 12 e^{2x}/(3+e^{2x})^2",
                 run_app2_first});
    e.push_back({"app2-second", "second-order transform of the alpha = -1 system, energies -1 and -2",
                 make_defaults("app2-second", app2t, {0.5}), -5.0, 6.0,
                 "seeds at energies -1 and -2; Vhat^2 = mhat^2 + 20 e^{2x}/(5+e^{2x})^2", run_app2_second});
    e.push_back({"app2-second-complex", "second-order transform with complex-conjugate energies -1 +- i",
                 make_defaults("app2-second-complex", app2t, {0.5}), -5.0, 6.0,
                 "seeds exp((3/2 -+ i)x)/sqrt(1+e^{2x}) at energies -1 +- i; "
                 "Vhat^2 = mhat^2 + 260 e^{2x}/(13+5 e^{2x})^2",
                 run_app2_second_complex});
    {
      ScenarioConfig m = make_defaults("matrix-example", skew, {2, 3, 4}, "1+tanh(x)");
      m.vhat22_expr = "-4*sech(x)";
      e.push_back({"matrix-example", "matrix potential: set1 times identity, transformed with P5^5", m, -4.0, 7.0,
                   "matrix potential sqrt(30) sech I2; free entries mhat = 1 + tanh, V22hat = -4 sech, "
                   "V12hat = V21hat = 0; V11hat and fhat solved from the matching conditions",
                   run_matrix_example});
    }
    e.push_back({"table1", "bound-state count of the set2 family against the tabulated alpha values",
                 make_defaults("table1", narrow, {}), -8.0, 8.0,
                 "count of k_y = nu - N > 0 with nu = -1/2 + sqrt(121 - 120 alpha^2)/2", run_table1});
    return e;
  }();
  return entries;
}

const Entry* find_entry(std::string_view name) {
  for (const auto& e : registry())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); };
  if (grid.npoints < 3) fail("grid needs at least 3 points");
  if (!(grid.xmin < grid.xmax)) fail("grid needs xmin < xmax");
  if (!std::isfinite(grid.xmin) || !std::isfinite(grid.xmax)) fail("grid bounds must be finite");
  if (delta != 1 && delta != -1) fail("delta must be +1 or -1");
  if (jet_order < 2 || jet_order > 8) fail("jet order must be between 2 and 8");
  if (!(tolerance > 0.0)) fail("tolerance must be positive");
  for (const auto* e : {&m_hat_expr, &vhat22_expr, &vhat12_expr, &vhat21_expr}) {
    try {
      expr::parse(*e);
    } catch (const Error& err) {
      fail("expression '" + *e + "': " + err.what());
    }
  }
  for (double k : k_y)
    if (!std::isfinite(k)) fail("k_y values must be finite");
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& e : registry()) n.push_back(e.name);
    n.push_back("verify-all");
    return n;
  }();
  return names;
}

std::string_view scenario_summary(std::string_view name) {
  if (name == "verify-all") return "every scenario with its defaults plus the engine property checks";
  const Entry* e = find_entry(name);
  return e ? std::string_view(e->summary) : std::string_view{};
}

ScenarioConfig default_config(std::string_view name) {
  if (name == "verify-all") {
    ScenarioConfig c;
    c.scenario = "verify-all";
    c.output = "out/verify-all";
    return c;
  }
  const Entry* e = find_entry(name);
  if (!e) throw Error(ErrorKind::ConfigError, "unknown scenario '" + std::string(name) + "'");
  return e->defaults;
}

ScenarioConfig config_from_json(const ordered_json& j, ScenarioConfig c) {
  if (!j.is_object()) throw Error(ErrorKind::ConfigError, "config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "scenario") {
        c.scenario = value.get<std::string>();
      } else if (key == "grid") {
        if (!value.is_object()) throw Error(ErrorKind::ConfigError, "grid must be an object");
        for (const auto& [gk, gv] : value.items()) {
          if (gk == "xmin")
            c.grid.xmin = gv.get<double>();
          else if (gk == "xmax")
            c.grid.xmax = gv.get<double>();
          else if (gk == "npoints")
            c.grid.npoints = gv.get<int>();
          else
            throw Error(ErrorKind::ConfigError, "unknown grid key '" + gk + "'");
        }
      } else if (key == "jet_order") {
        c.jet_order = value.get<int>();
      } else if (key == "delta") {
        c.delta = value.get<int>();
      } else if (key == "m_hat_expr") {
        c.m_hat_expr = value.get<std::string>();
      } else if (key == "vhat22_expr") {
        c.vhat22_expr = value.get<std::string>();
      } else if (key == "vhat12_expr") {
        c.vhat12_expr = value.get<std::string>();
      } else if (key == "vhat21_expr") {
        c.vhat21_expr = value.get<std::string>();
      } else if (key == "k_y") {
        c.k_y = value.get<std::vector<double>>();
      } else if (key == "tolerance") {
        c.tolerance = value.get<double>();
      } else if (key == "output") {
        c.output = value.get<std::string>();
      } else {
        throw Error(ErrorKind::ConfigError, "unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("config: ") + e.what());
  }
  return c;
}

ordered_json config_to_json(const ScenarioConfig& c) {
  ordered_json j;
  j["scenario"] = c.scenario;
  j["grid"] = {{"xmin", c.grid.xmin}, {"xmax", c.grid.xmax}, {"npoints", c.grid.npoints}};
  j["jet_order"] = c.jet_order;
  j["delta"] = c.delta;
  j["m_hat_expr"] = c.m_hat_expr;
  j["vhat22_expr"] = c.vhat22_expr;
  j["vhat12_expr"] = c.vhat12_expr;
  j["vhat21_expr"] = c.vhat21_expr;
  j["k_y"] = c.k_y;
  j["tolerance"] = c.tolerance;
  j["output"] = c.output;
  return j;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  const Entry* e = find_entry(config.scenario);
  if (!e) throw Error(ErrorKind::ConfigError, "unknown scenario '" + config.scenario + "'");
  ScenarioResult res;
  res.config = config;
  res.provenance = e->provenance;
  res.grid = uniform_grid(config.grid.xmin, config.grid.xmax, config.grid.npoints);
  Ctx ctx{config, res, res.grid, sub_grid(res.grid, e->pin_lo, e->pin_hi), e->pin_lo, e->pin_hi};
  try {
    e->run(ctx);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::ConfigError) throw;
    res.reports.push_back(error_report("scenario", err));
  } catch (const std::exception& err) {
    res.reports.push_back(error_report("scenario", err));
  }
  return res;
}

std::vector<CheckReport> engine_checks() {
  std::vector<CheckReport> out;
  auto guard = [&out](const std::string& name, const std::function<CheckReport()>& body) {
    try {
      out.push_back(body());
    } catch (const std::exception& e) {
      out.push_back(error_report(name, e));
    }
  };
  guard("jet-vs-finite-difference", [] {
    const Field f = catalog::p5(3) * parse("exp(-x^2/3)");
    Residual r;
    for (double x : {-1.3, -0.4, 0.2, 0.9, 1.7}) {
      r.absorb(fd_mismatch(f, x, 4), x);
    }
    return residual_report("jet-vs-finite-difference", r, 1e-6);
  });
  guard("wronskian-antisymmetry", [] {
    const std::vector<Field> a = {catalog::p5(5), catalog::p5(4), parse("exp(x/3)")};
    const std::vector<Field> b = {catalog::p5(4), catalog::p5(5), parse("exp(x/3)")};
    const std::vector<Field> c = {parse("exp(x/3)"), catalog::p5(4), catalog::p5(5)};
    Residual r;
    for (double x : {-1.0, 0.0, 0.5, 2.0}) {
      Jet wa = wronskian(a, Jet::variable(x, 5)), wb = wronskian(b, Jet::variable(x, 5));
      Jet wc = wronskian(c, Jet::variable(x, 5));
      double worst = 0.0;
      for (int k = 0; k <= wa.order(); ++k)
        worst = std::max({worst, std::abs(wa[k] + wb[k]), std::abs(wa[k] + wc[k])});
      r.absorb(worst, x);
    }
    return make_report("wronskian-antisymmetry", r.max_err, r.location, 1e-300,
                       "coefficientwise |W(a,b,c) + W(b,a,c)| and |W(a,b,c) + W(c,b,a)|, must vanish exactly");
  });
  guard("parse-round-trip", [] {
    double worst = 0.0;
    for (const char* text : {"sech(x)", "1+tanh(x)", "sqrt(3/5)*sqrt(30)*sech(x)"}) {
      const expr::Expr e = expr::parse(text);
      const expr::Expr back = expr::parse(expr::render(e));
      if (!expr::same_tree(e.root(), back.root())) worst = 1.0;
      for (double x : {-2.0, -0.5, 0.0, 0.7, 3.0})
        worst = std::max(worst, std::abs(expr::evaluate(e, x) - expr::evaluate(back, x)));
    }
    return make_report("parse-round-trip", worst, kNaN, 1e-300,
                       "sech(x), 1+tanh(x), sqrt(3/5) sqrt(30) sech(x): render then parse gives the same tree and values");
  });
  return out;
}

bool has_failures(const std::vector<CheckReport>& reports) {
  return std::any_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.status == Status::Fail; });
}

const std::vector<std::string>& documented_discrepancies() {
  static const std::vector<std::string> names = {
      "app1-first-massless: fhat.printed-prefactor",
      "app1-second-order: Bzhat.printed",
      "matrix-example: V11hat.printed-form",
      "table1: table.row[alpha=sqrt(2/5)]",
  };
  return names;
}

}  // namespace zdirac
