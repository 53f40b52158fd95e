#include "checks.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>

#include "airy.hpp"
#include "basis.hpp"
#include "errors.hpp"
#include "interferometry.hpp"
#include "propagator.hpp"
#include "qfi.hpp"
#include "quadrature.hpp"
#include "spectrum.hpp"

namespace qbouncer {

namespace {

class Suite {
public:
  explicit Suite(double tighten) : tighten_(tighten) {}

  void add(const std::string& name, double discrepancy, double tolerance) {
    CheckResult r;
    r.name = name;
    r.value = std::fabs(discrepancy);
    r.tolerance = tolerance / tighten_;
    r.pass = r.value <= r.tolerance;
    results_.push_back(r);
  }

  // A check that throws counts as failed with an infinite discrepancy.
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception&) {
      CheckResult r;
      r.name = name;
      r.value = 1e308;
      r.tolerance = 0.0;
      r.pass = false;
      results_.push_back(r);
    }
  }

  std::vector<CheckResult> take() { return std::move(results_); }

private:
  double tighten_;
  std::vector<CheckResult> results_;
};

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

std::vector<CheckResult> run_checks(const Constants& c, double tighten) {
  if (!(tighten > 0.0))
    throw ValidationError("checks: tighten factor must be positive");
  Suite suite(tighten);
  const Scales s = derive_scales(c);

  // --- units: algebraic identities of the derived scales
  suite.add("units.mg_lambda_equals_eps0",
            rel(c.mass * c.gravity * s.length, s.energy), 1e-14);
  suite.add("units.t0_eps0_equals_hbar", rel(s.time * s.energy, c.hbar), 1e-14);

  // --- airy: ODE residual of the two independent evaluation routes
  {
    double worst = 0.0;
    for (double x = -14.0; x <= 10.0; x += 0.375)
      worst = std::max(worst,
                       std::fabs(airy_ai_second(x) - x * airy_ai(x)));
    suite.add("airy.ode_residual", worst, 1e-10);
  }
  {
    // five-point derivative of Ai against Ai'
    double worst = 0.0;
    const double h = 5e-3;
    for (double x = -11.0; x <= 7.0; x += 0.875) {
      const double fd = (-airy_ai(x + 2 * h) + 8 * airy_ai(x + h) -
                         8 * airy_ai(x - h) + airy_ai(x - 2 * h)) /
                        (12 * h);
      worst = std::max(worst, std::fabs(fd - airy_ai_prime(x)));
    }
    suite.add("airy.derivative_consistency", worst, 1e-8);
  }
  {
    double worst = 0.0;
    for (int n = 1; n <= 10; ++n)
      worst = std::max(worst, std::fabs(airy_ai(airy_zero(n))));
    suite.add("airy.zero_residual", worst, 1e-12);
  }

  // --- basis: orthonormality, virial, momentum parity
  {
    std::vector<BoundState> states;
    for (int n = 1; n <= 8; ++n) states.emplace_back(n, s);
    double worst = 0.0;
    for (int i = 0; i < 8; ++i)
      for (int j = i; j < 8; ++j) {
        const double ov = state_overlap(states[i], states[j]);
        worst = std::max(worst, std::fabs(ov - (i == j ? 1.0 : 0.0)));
      }
    suite.add("basis.orthonormality", worst, 1e-8);

    double worst_virial = 0.0;
    for (int n = 1; n <= 8; ++n) {
      const double en = unperturbed_energy(s, n);
      const double kin =
          expectation(states[n - 1], Observable::p_pow(2)).real() /
          (2.0 * c.mass);
      worst_virial = std::max(worst_virial, rel(kin, en / 3.0));
    }
    suite.add("basis.virial_kinetic_third", worst_virial, 1e-8);

    double worst_odd = 0.0;
    for (int k : {1, 3, 5})
      worst_odd = std::max(
          worst_odd,
          std::fabs(expectation(states[0], Observable::p_pow(k)).real()) /
              std::pow(s.momentum, k));
    suite.add("basis.odd_momentum_moments", worst_odd, 1e-10);

    const std::complex<double> zp =
        expectation(states[0], Observable::sym_zp());
    suite.add("basis.symmetrized_zp_vanishes", std::abs(zp) / c.hbar, 1e-8);
  }

  // --- spectrum: binomial vs exact root, slope, monotonicity, linearity
  {
    double worst = 0.0;
    for (double d : {1e-6, 1e-4, 1e-2})
      for (int n : {1, 3}) {
        const double en = unperturbed_energy(s, n);
        const double diff =
            std::fabs(corrected_energy(s, n, Spin::Up, d,
                                       EnergyMethod::ExactRoot) -
                      corrected_energy(s, n, Spin::Up, d,
                                       EnergyMethod::Binomial));
        worst = std::max(worst, diff / (d * d * en) - 1.0 / 8.0);
      }
    // discrepancy defined as the excess above the delta^2 E_n / 8 envelope
    suite.add("spectrum.binomial_vs_exact_envelope", std::max(worst, 0.0),
              0.0 + 1e-15);

    const double d = 1e-3;
    const double slope =
        (corrected_energy(s, 1, Spin::Up, d, EnergyMethod::ExactRoot) -
         corrected_energy(s, 1, Spin::Up, -d, EnergyMethod::ExactRoot)) /
        (2.0 * d);
    suite.add("spectrum.exact_slope_vs_perturbation",
              rel(slope, perturbation_first_order(s, 1, Spin::Up)), 1e-6);

    const FieldConfig f = field_from_delta(c, 1e-2, true);
    const double up =
        corrected_energy(s, 2, Spin::Up, f.delta, EnergyMethod::ExactRoot);
    const double dn =
        corrected_energy(s, 2, Spin::Down, f.delta, EnergyMethod::ExactRoot);
    const double en = unperturbed_energy(s, 2);
    suite.add("spectrum.monotonic_up_above_down",
              (up > en && en > dn) ? 0.0 : 1.0, 0.5);

    const FieldConfig f1 = field_from_tesla(c, 45.0);
    const FieldConfig f2 = field_from_tesla(c, 90.0);
    suite.add("spectrum.delta_linear_in_field", rel(f2.delta, 2.0 * f1.delta),
              1e-15);
  }

  // --- interferometry: phase linearity, probability bounds, visibility
  {
    const FieldConfig f = field_from_delta(c, 1e-4, true);
    suite.add("interferometry.phase_linearity",
              rel(precession_phase(c, s, 2e-3, 1, f),
                  2.0 * precession_phase(c, s, 1e-3, 1, f)),
              1e-12);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double t = 5e-3 * i / 200.0;
      const double p = interference_probability(c, s, t, 1, f, false);
      worst = std::max(worst, std::max(-p, p - 1.0));
    }
    suite.add("interferometry.probability_bounds", std::max(worst, 0.0),
              1e-12);

    const FieldConfig fa = field_from_delta(c, 1e-5, true);
    const FieldConfig fb = field_from_delta(c, 2e-5, true);
    const double t = 1e-3;
    const double da = visibility_deficit(c, s, t, 1, fa);
    const double db = visibility_deficit(c, s, t, 1, fb);
    suite.add("interferometry.visibility_deficit_delta_sq",
              rel(db, 4.0 * da), 1e-10);
  }

  // --- qfi: coefficient positivity, formula equivalence, limits
  {
    for (int n : {1, 4}) {
      const CoefficientSet cs = qfi_coefficients(c, s, n);
      suite.add("qfi.coefficients_positive_n" + std::to_string(n),
                (cs.alpha > 0 && cs.gamma > 0 && cs.alpha - cs.beta > 0)
                    ? 0.0
                    : 1.0,
                0.5);
    }
    // variance-formula route: assemble <G^2> - <G>^2-style moments directly
    double worst = 0.0;
    for (int n : {1, 2, 3, 4}) {
      BoundState st(n, s);
      const double p2 = expectation(st, Observable::p_pow(2)).real();
      const double p3 = expectation(st, Observable::p_pow(3)).real();
      const double p4 = expectation(st, Observable::p_pow(4)).real();
      const double z1 = expectation(st, Observable::z_pow(1)).real();
      const double z2 = expectation(st, Observable::z_pow(2)).real();
      const double p2z = expectation(st, Observable::sym_p2z()).real();
      const double zp = expectation(st, Observable::sym_zp()).real();
      for (double t : {1e-4, 1e-3, 5e-3}) {
        const double g = c.gravity;
        const double m = c.mass;
        const double cnum = -m * g * g * t * t / 3.0;
        const double mean = -p2 / (2 * m) + m * g * z1 + cnum;
        const double sq = p4 / (4 * m * m) + m * m * g * g * z2 +
                          t * t * g * g * p2 - g / 2.0 * p2z +
                          t * g * (-p3 / m + m * g * zp) +
                          2.0 * cnum * (-p2 / (2 * m) + m * g * z1) +
                          cnum * cnum;
        // spin superposition: <sigma_z G> = <sigma_z><G> = 0, so
        // Var(sigma_z G) = <G^2>
        const double f_moments = 4.0 * t * t / (c.hbar * c.hbar) * sq;
        (void)mean;
        worst = std::max(worst, rel(f_moments, qfi_full(c, s, n, t)));
      }
    }
    suite.add("qfi.variance_formula_equivalence", worst, 1e-6);

    suite.add("qfi.full_to_short_small_t",
              rel(qfi_full(c, s, 1, 1e-5), qfi_short_time(c, s, 1, 1e-5)),
              1e-4);
    double worst_order = 0.0;
    for (double t : {1e-4, 1e-3, 3e-3, 1e-2})
      worst_order =
          std::max(worst_order, qfi_semiclassical(c, s, 1, t) -
                                    qfi_full(c, s, 1, t));
    suite.add("qfi.full_dominates_semiclassical", std::max(worst_order, 0.0),
              1e-12);

    // free-fall Gaussian: closed form vs moment assembly
    double worst_ff = 0.0;
    for (auto [sig, t] : {std::pair{5e-6, 1e-3}, {1e-5, 1e-2}, {2e-5, 5e-2}}) {
      const double m = c.mass, g = c.gravity, hb = c.hbar;
      const double p2 = hb * hb / (2 * sig * sig);
      const double p4 = 3 * hb * hb * hb * hb / (4 * std::pow(sig, 4));
      const double z2 = sig * sig / 2;
      const double cnum = -m * g * g * t * t / 3.0;
      const double mean = -p2 / (2 * m) + cnum;
      const double sq = p4 / (4 * m * m) + m * m * g * g * z2 +
                        t * t * g * g * p2 + 2.0 * cnum * (-p2 / (2 * m)) +
                        cnum * cnum;
      (void)mean;
      const double f_moments = 4.0 * t * t / (hb * hb) * sq;
      worst_ff = std::max(worst_ff, rel(f_moments,
                                        qfi_freefall_gaussian(c, sig, t)));
    }
    suite.add("qfi.freefall_gaussian_moment_oracle", worst_ff, 1e-10);

    // spin-phase route reproduces the t^6 law exactly
    const double t = 2e-2, dstep = 1e-6;
    const double dphi =
        (freefall_phase(c, t, dstep) - freefall_phase(c, t, -dstep)) /
        (2 * dstep);
    const double f_spin = dphi * dphi;
    const double f_t6 =
        4.0 / 9.0 * std::pow(c.mass * c.gravity * c.gravity, 2) *
        std::pow(t, 6) / (c.hbar * c.hbar);
    suite.add("qfi.freefall_phase_t6_identity", rel(f_spin, f_t6), 1e-10);

    // overlap magnitude deficit scales as delta^2 (with genuine O(delta^2)
    // relative corrections, ~1e-5 at delta = 1e-4)
    const auto o1 = freefall_overlap(c, 1e-5, 3e-4, 0.0, 5e-3, 1e-4);
    const auto o2 = freefall_overlap(c, 1e-5, 3e-4, 0.0, 5e-3, 2e-4);
    suite.add("qfi.freefall_overlap_deficit_delta_sq",
              rel(1.0 - std::abs(o2), 4.0 * (1.0 - std::abs(o1))), 1e-4);
  }

  // --- propagator: unitarity, stationarity, discretization, Ehrenfest
  {
    GridSpec spec;  // default 120 um / 4096 / 1e-7 s
    Grid g(c, s, spec);
    g.load_eigenstate(1);
    const double e_grid = g.energy();
    suite.add("propagator.grid_energy_eigenvalue",
              rel(e_grid, unperturbed_energy(s, 1)), 1e-6);
    suite.add("propagator.grid_norm_unit", std::fabs(g.norm() - 1.0), 1e-10);

    Grid ref(c, s, spec);
    ref.load_eigenstate(1);
    g.evolve(1e-3, 0.0, Spin::Up);  // 10^4 steps
    suite.add("propagator.unitarity_drift", std::fabs(g.norm() - 1.0), 1e-8);
    suite.add("propagator.stationary_eigenstate",
              1.0 - std::abs(Grid::overlap(ref, g)), 1e-6);

    Grid g2(c, s, spec);
    g2.load_eigenstate(2);
    suite.add("propagator.grid_orthogonality",
              std::abs(Grid::overlap(ref, g2)), 1e-6);

    // free fall against the Ehrenfest trajectory, wall kept far away
    GridSpec ff;
    ff.z_max = 400e-6;
    ff.points = 4096;
    ff.dt = 1e-7;
    Grid gf(c, s, ff);
    const double z0 = 3.2e-4, tfall = 4e-3;
    gf.load_gaussian(8e-6, z0, 0.0);
    gf.evolve(tfall, 0.0, Spin::Up);
    const double expect = z0 - 0.5 * c.gravity * tfall * tfall;
    suite.add("propagator.ehrenfest_mean_height",
              rel(gf.mean_z(), expect), 1e-3);
  }

  return suite.take();
}

std::string checks_to_json(const std::vector<CheckResult>& checks,
                           double tighten) {
  char buf[256];
  std::string out = "{\n  \"tighten\": ";
  std::snprintf(buf, sizeof buf, "%.17g", tighten);
  out += buf;
  out += ",\n  \"checks\": [\n";
  int failed = 0;
  for (size_t i = 0; i < checks.size(); ++i) {
    const CheckResult& r = checks[i];
    if (!r.pass) ++failed;
    std::snprintf(buf, sizeof buf,
                  "    {\"name\": \"%s\", \"value\": %.17g, \"tolerance\": "
                  "%.17g, \"margin\": %.17g, \"pass\": %s}%s\n",
                  r.name.c_str(), r.value, r.tolerance, r.margin(),
                  r.pass ? "true" : "false",
                  i + 1 < checks.size() ? "," : "");
    out += buf;
  }
  out += "  ],\n  \"failed\": " + std::to_string(failed) + "\n}\n";
  return out;
}

}  // namespace qbouncer
