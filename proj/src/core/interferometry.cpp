#include "interferometry.hpp"

#include <cmath>

#include "basis.hpp"
#include "errors.hpp"

namespace qbouncer {

double resonance_frequency(const Scales& s, int n_from, int n_to) {
  return (unperturbed_energy(s, n_to) - unperturbed_energy(s, n_from)) /
         (s.energy * s.time);
}

double rabi_frequency(const Constants& c, const Scales& s, int n,
                      double accel) {
  if (n < 2) throw ValidationError("rabi_frequency: target level must be >= 2");
  if (!std::isfinite(accel) || accel < 0.0)
    throw ValidationError("rabi_frequency: vibration strength must be >= 0");
  if (accel == 0.0) return 0.0;
  BoundState ground(1, s), target(n, s);
  return c.mass * accel * std::fabs(matrix_element_z(ground, target)) / c.hbar;
}

double pi_pulse_time(const Constants& c, const Scales& s, int n, double accel) {
  const double omega = rabi_frequency(c, s, n, accel);
  if (omega <= 0.0)
    throw ValidationError("pi_pulse_time: Rabi frequency is zero");
  return M_PI / omega;
}

double precession_phase(const Constants& c, const Scales& s, double t, int n,
                        const FieldConfig& field) {
  if (!std::isfinite(t) || t < 0.0)
    throw ValidationError("phase: time must be >= 0");
  return t * field.larmor + t * splitting(s, n, field) / c.hbar;
}

double interference_probability(const Constants& c, const Scales& s, double t,
                                int n, const FieldConfig& field,
                                bool include_visibility) {
  const double theta = precession_phase(c, s, t, n, field);
  const double a =
      include_visibility ? visibility(c, s, t, n, field) : 1.0;
  return 0.5 * (1.0 + a * std::cos(theta));
}

double visibility_deficit(const Constants& c, const Scales& s, double t, int n,
                          const FieldConfig& field) {
  if (!std::isfinite(t) || t < 0.0)
    throw ValidationError("visibility: time must be >= 0");
  const double en = unperturbed_energy(s, n);
  // small-argument window for the second-order expansion
  const double arg = field.delta * en * t / c.hbar;
  if (std::fabs(arg) > 0.1)
    throw ValidationError(
        "visibility: delta E_n t / hbar beyond the second-order window; "
        "evolve on the grid instead");

  BoundState state(n, s);
  const double h1 = expectation(state, Observable::hprime_pow(1)).real();
  const double h2 = expectation(state, Observable::hprime_pow(2)).real();
  const double p2 = expectation(state, Observable::p_pow(2)).real();
  const double var =
      (h2 - h1 * h1) + t * t * c.gravity * c.gravity * p2;
  const double deficit =
      2.0 * field.delta * field.delta * t * t * var / (c.hbar * c.hbar);
  if (deficit > 5e-3)
    throw ValidationError(
        "visibility: accumulated generator variance beyond the second-order "
        "window; evolve on the grid instead");
  return deficit;
}

double visibility(const Constants& c, const Scales& s, double t, int n,
                  const FieldConfig& field) {
  return 1.0 - visibility_deficit(c, s, t, n, field);
}

InterferenceTrace interference_trace(const Constants& c, const Scales& s,
                                     double t_max, int samples, int n,
                                     const FieldConfig& field,
                                     bool include_visibility) {
  if (samples < 2) throw ValidationError("trace: need at least 2 samples");
  if (!(t_max > 0.0)) throw ValidationError("trace: t_max must be positive");
  InterferenceTrace tr;
  tr.times.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = t_max * i / (samples - 1);
    tr.times.push_back(t);
    tr.phase.push_back(precession_phase(c, s, t, n, field));
    const double a = include_visibility ? visibility(c, s, t, n, field) : 1.0;
    tr.visibility.push_back(a);
    tr.probability.push_back(0.5 * (1.0 + a * std::cos(tr.phase.back())));
  }
  return tr;
}

}  // namespace qbouncer
