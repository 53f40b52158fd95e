#include "qfi.hpp"

#include <cmath>

#include "basis.hpp"
#include "errors.hpp"
#include "spectrum.hpp"

namespace qbouncer {

namespace {

void check_time(double t) {
  if (!std::isfinite(t) || t < 0.0)
    throw ValidationError("qfi: time must be >= 0");
}

void check_count(double n, const char* what) {
  if (!std::isfinite(n) || n < 1.0)
    throw ValidationError(std::string("qfi: ") + what + " must be >= 1");
}

}  // namespace

CoefficientSet qfi_coefficients(const Constants& c, const Scales& s, int n) {
  BoundState state(n, s);
  const double en = unperturbed_energy(s, n);
  const double p2 = expectation(state, Observable::p_pow(2)).real();
  const double h1 = expectation(state, Observable::hprime_pow(1)).real();
  CoefficientSet out;
  out.level = n;
  out.alpha = c.gravity * c.gravity * p2 / (en * en);
  out.beta = 2.0 * c.mass * c.gravity * c.gravity * h1 / (3.0 * en * en);
  out.gamma = c.mass * c.mass * std::pow(c.gravity, 4) / (9.0 * en * en);
  return out;
}

double qfi_variance_coefficient(const Scales& s, int n) {
  BoundState state(n, s);
  const double en = unperturbed_energy(s, n);
  const double h2 = expectation(state, Observable::hprime_pow(2)).real();
  return 4.0 * h2 / (en * en);
}

double qfi_full(const Constants& c, const Scales& s, int n, double t) {
  check_time(t);
  const double en = unperturbed_energy(s, n);
  const double k = qfi_variance_coefficient(s, n);
  const CoefficientSet cs = qfi_coefficients(c, s, n);
  const double t2 = t * t;
  const double e2h2 = en * en / (c.hbar * c.hbar);
  return t2 * e2h2 *
         (k + 4.0 * t2 * (cs.alpha - cs.beta + t2 * cs.gamma));
}

double qfi_short_time(const Constants& c, const Scales& s, int n, double t,
                      bool* within_window) {
  check_time(t);
  if (within_window) *within_window = (t <= 1e-3);
  const double en = unperturbed_energy(s, n);
  return qfi_variance_coefficient(s, n) * t * t * en * en /
         (c.hbar * c.hbar);
}

double qfi_semiclassical(const Constants& c, const Scales& s, int n, double t) {
  check_time(t);
  const double en = unperturbed_energy(s, n);
  return 4.0 * t * t * en * en / (9.0 * c.hbar * c.hbar);
}

double improvement_ratio(const Constants& c, const Scales& s, QfiModel model,
                         int n, double t) {
  check_time(t);
  switch (model) {
    case QfiModel::Semiclassical:
      return 1.0;
    case QfiModel::ShortTime:
      return 1.5 * std::sqrt(qfi_variance_coefficient(s, n));
    case QfiModel::FullAnalytic: {
      const double k = qfi_variance_coefficient(s, n);
      const CoefficientSet cs = qfi_coefficients(c, s, n);
      const double t2 = t * t;
      return 1.5 * std::sqrt(k + 4.0 * t2 * (cs.alpha - cs.beta + t2 * cs.gamma));
    }
    default:
      throw ValidationError("improvement_ratio: model has no F/t^2 form");
  }
}

double sensitivity_spin(const Constants& c, const Scales& s, int n, double t,
                        double n_particles) {
  if (!(t > 0.0)) throw ValidationError("sensitivity: time must be positive");
  check_count(n_particles, "particle count");
  const double en = unperturbed_energy(s, n);
  return (1.0 / std::sqrt(n_particles)) * 3.0 * c.hbar / (2.0 * t * en);
}

double cramer_rao(double fisher, double n_particles) {
  if (!(fisher > 0.0)) throw ValidationError("cramer_rao: F_Q must be positive");
  check_count(n_particles, "particle count");
  return 1.0 / std::sqrt(n_particles * fisher);
}

double qfi_freefall_window(const Constants& c, const Scales& s, int n) {
  BoundState state(n, s);
  const double zmean = expectation(state, Observable::z_pow(1)).real();
  return std::sqrt(2.0 * zmean / c.gravity);
}

double freefall_phase(const Constants& c, double t, double delta) {
  check_time(t);
  return 2.0 * delta / 3.0 * c.mass * c.gravity * c.gravity * t * t * t /
         c.hbar;
}

double freefall_sensitivity(const Constants& c, double t, double n_particles,
                            double repeats) {
  if (!(t > 0.0)) throw ValidationError("sensitivity: time must be positive");
  check_count(n_particles, "particle count");
  check_count(repeats, "repeat count");
  return (1.0 / std::sqrt(repeats * n_particles)) * 1.5 * c.hbar /
         (c.mass * c.gravity * c.gravity * t * t * t);
}

double qfi_freefall_gaussian(const Constants& c, double sigma, double t) {
  check_time(t);
  if (!(sigma > 0.0))
    throw ValidationError("freefall qfi: packet width must be positive");
  const double pref = 2.0 * c.mass * c.gravity * t / c.hbar;
  const double disp = c.hbar * t / (sigma * c.mass);
  const double zp = c.hbar * c.hbar / (sigma * sigma * c.mass * c.mass);
  return pref * pref *
         (0.5 * sigma * sigma + 2.0 / 3.0 * disp * disp +
          3.0 / 16.0 * zp * zp / (c.gravity * c.gravity) +
          c.gravity * c.gravity * std::pow(t, 4) / 9.0);
}

std::complex<double> freefall_overlap(const Constants& c, double sigma,
                                      double z0, double p_mean, double t,
                                      double delta) {
  check_time(t);
  if (!(sigma > 0.0))
    throw ValidationError("freefall overlap: packet width must be positive");
  if (!std::isfinite(delta) || std::fabs(delta) >= 1.0)
    throw ValidationError("freefall overlap: |delta| must be below 1");
  using cd = std::complex<double>;
  const double mu = c.mass * (1.0 + delta);  // spin-up branch mass
  const double md = c.mass * (1.0 - delta);  // spin-down branch mass
  const double s2 = sigma * sigma;
  // Each branch is the freely falling frame transform of a drifting free
  // Gaussian: psi_M(x,t) = e^{-i(M g t x + M g^2 t^3/6)/hbar}
  //   (sigma sqrt(pi))^{-1/2} (1+i tau)^{-1/2}
  //   e^{i p0 xi/hbar - i p0^2 t/(2 M hbar)}
  //   e^{-(xi - z0 - p0 t/M)^2 / (2 sigma^2 (1+i tau))},  xi = x + g t^2/2.
  // The overlap is one complex Gaussian integral.
  const cd uu(1.0, c.hbar * t / (mu * s2));        // 1 + i tau_up
  const cd ud_conj(1.0, -c.hbar * t / (md * s2));  // conj(1 + i tau_down)
  const cd au = 1.0 / (2.0 * s2 * uu);
  const cd ad = 1.0 / (2.0 * s2 * ud_conj);
  const double zu = z0 + p_mean * t / mu;
  const double zd = z0 + p_mean * t / md;
  const double k = -(mu - md) * c.gravity * t / c.hbar;
  const cd ssum = au + ad;
  const cd centre = (ad * zd + au * zu) / ssum;
  const cd norm = std::sqrt(2.0 / (uu + ud_conj));  // collects the prefactors
  const cd gauss =
      std::exp(cd(0.0, k) * centre - k * k / (4.0 * ssum) -
               ad * au / ssum * (zd - zu) * (zd - zu));
  // action parts: phi_g from the x-independent pieces plus the kinetic
  // drift phase p0^2 t (1/m_dn - 1/m_up)/2hbar
  const double drift = p_mean * p_mean * t * (1.0 / md - 1.0 / mu) / (2.0 * c.hbar);
  const double phi = freefall_phase(c, t, delta) + drift;
  return norm * gauss * std::polar(1.0, phi);
}

QfiCurve qfi_curve(const Constants& c, const Scales& s, QfiModel model, int n,
                   const std::vector<double>& times) {
  QfiCurve curve;
  curve.model = model;
  curve.times = times;
  curve.values.reserve(times.size());
  // Quadrature coefficients hoisted out of the sampling loop.
  const double en = unperturbed_energy(s, n);
  const double e2h2 = en * en / (c.hbar * c.hbar);
  double k = 0.0;
  CoefficientSet cs;
  if (model == QfiModel::FullAnalytic || model == QfiModel::ShortTime)
    k = qfi_variance_coefficient(s, n);
  if (model == QfiModel::FullAnalytic) cs = qfi_coefficients(c, s, n);
  for (double t : times) {
    check_time(t);
    const double t2 = t * t;
    double v = 0.0;
    switch (model) {
      case QfiModel::FullAnalytic:
        v = t2 * e2h2 * (k + 4.0 * t2 * (cs.alpha - cs.beta + t2 * cs.gamma));
        break;
      case QfiModel::ShortTime:
        v = k * t2 * e2h2;
        break;
      case QfiModel::Semiclassical:
        v = 4.0 / 9.0 * t2 * e2h2;
        break;
      default:
        throw ValidationError("qfi_curve: use the grid for the numeric model "
                              "and the Gaussian form for free fall");
    }
    curve.values.push_back(v);
  }
  return curve;
}

}  // namespace qbouncer
