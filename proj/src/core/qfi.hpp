#ifndef QBOUNCER_CORE_QFI_HPP
#define QBOUNCER_CORE_QFI_HPP

#include <complex>
#include <vector>

#include "constants.hpp"

namespace qbouncer {

enum class QfiModel { FullAnalytic, ShortTime, Semiclassical, FreeFall, Numeric };

// Coefficients of the non-quadratic QFI terms:
//   alpha_n = g^2 <p^2> / E_n^2          [1/s^2]
//   beta_n  = (2 m g^2 / 3 E_n^2) <-T+V> [1/s^2]
//   gamma_n = m^2 g^4 / (9 E_n^2)        [1/s^4]
// alpha and beta come from quadrature, not the closed forms.
struct CoefficientSet {
  int level = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

CoefficientSet qfi_coefficients(const Constants& c, const Scales& s, int n);

// K = 4 <(-T+V)^2> / E_n^2 by quadrature (the short-time prefactor, ~1.9).
double qfi_variance_coefficient(const Scales& s, int n);

// Bound-state QFI per unit delta^2:
//   F_Q(t) = (t^2/hbar^2) [ K E_n^2 + 4 t^2 E_n^2 (alpha - beta + t^2 gamma) ]
double qfi_full(const Constants& c, const Scales& s, int n, double t);

// Short-time law K t^2 E_n^2 / hbar^2. *within_window (optional) reports
// whether t is inside the default 1 ms validity range.
double qfi_short_time(const Constants& c, const Scales& s, int n, double t,
                      bool* within_window = nullptr);

// 4 t^2 E_n^2 / (9 hbar^2): the phase-only (spin interferometry) value.
double qfi_semiclassical(const Constants& c, const Scales& s, int n, double t);

// (Delta delta' / Delta delta)_n = (3/2) sqrt(F_Q hbar^2 / t^2 E_n^2);
// finite at t = 0 for every analytic model.
double improvement_ratio(const Constants& c, const Scales& s, QfiModel model,
                         int n, double t);

// Spin-only shot-noise sensitivity (1/sqrt(N)) (2 t E_n / 3 hbar)^(-1).
double sensitivity_spin(const Constants& c, const Scales& s, int n, double t,
                        double n_particles);

double cramer_rao(double fisher, double n_particles);

// Advisory window sqrt(2 <z>_n / g) within which free-fall dynamics of a
// bound state is a sensible approximation.
double qfi_freefall_window(const Constants& c, const Scales& s, int n);

// ---- free-fall branch -------------------------------------------------

// phi_g = (2 delta / 3) m g^2 t^3 / hbar
double freefall_phase(const Constants& c, double t, double delta);

// Delta delta = (1/sqrt(a N)) (3/2) hbar / (m g^2 t^3)
double freefall_sensitivity(const Constants& c, double t, double n_particles,
                            double repeats);

// Gaussian packet (paper normalization exp(-z^2/2 sigma^2), at rest):
//   F_Q = (2 m g t / hbar)^2 [ sigma^2/2 + (2/3)(hbar t / sigma m)^2
//                              + (3/16) hbar^4/(sigma^4 g^2 m^4) + g^2 t^4/9 ]
double qfi_freefall_gaussian(const Constants& c, double sigma, double t);

// Overlap of the spin-up motional branch against spin-down after free
// flight of a Gaussian packet released at height z0 with mean momentum
// p_mean (masses m(1 +/- delta)):
//   <psi_down(t)|psi_up(t)> = C(t) exp(i phi_g) exp(-2 i m delta g z0 t/hbar)
// times O(delta) drift and dispersion phases; |C| = 1 - O(delta^2). Exact
// closed form from the free-fall propagator.
std::complex<double> freefall_overlap(const Constants& c, double sigma,
                                      double z0, double p_mean, double t,
                                      double delta);

struct QfiCurve {
  std::vector<double> times;
  std::vector<double> values;
  QfiModel model = QfiModel::FullAnalytic;
};

QfiCurve qfi_curve(const Constants& c, const Scales& s, QfiModel model, int n,
                   const std::vector<double>& times);

}  // namespace qbouncer

#endif
