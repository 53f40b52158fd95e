#ifndef QBOUNCER_CORE_INTERFEROMETRY_HPP
#define QBOUNCER_CORE_INTERFEROMETRY_HPP

#include <vector>

#include "constants.hpp"
#include "spectrum.hpp"

namespace qbouncer {

// Four-stage protocol quantities: state-preparation frequencies (resonance,
// Rabi, pi-pulse time), precession phase, interference probability and the
// second-order visibility loss.

// omega_{from,to} = (E_to - E_from) / hbar (0 for equal levels).
double resonance_frequency(const Scales& s, int n_from, int n_to);

// Omega_R,n = m a |<psi_1| z |psi_n>| / hbar for mirror vibration strength a.
double rabi_frequency(const Constants& c, const Scales& s, int n,
                      double accel);

double pi_pulse_time(const Constants& c, const Scales& s, int n, double accel);

// theta(t) = (t/hbar)(hbar omega0 + Delta E_r), Delta E_r = (2/3) delta E_n.
double precession_phase(const Constants& c, const Scales& s, double t, int n,
                        const FieldConfig& field);

// p(t) = (1 + A(t) cos theta)/2 with A == 1 unless include_visibility.
double interference_probability(const Constants& c, const Scales& s, double t,
                                int n, const FieldConfig& field,
                                bool include_visibility);

// Second-order visibility
//   A(t) = 1 - 2 (delta t / hbar)^2 [ Var(-T+V) + t^2 g^2 <p^2> ],
// the exact second-order overlap expansion (variance of the accumulated
// generator; the cross terms vanish by momentum parity). Throws outside the
// small-argument window; use the numeric propagator there instead.
double visibility(const Constants& c, const Scales& s, double t, int n,
                  const FieldConfig& field);

// 1 - A(t) without the cancellation against 1 (the deficit is ~1e-30 at
// physical delta); scales exactly as delta^2.
double visibility_deficit(const Constants& c, const Scales& s, double t, int n,
                          const FieldConfig& field);

struct InterferenceTrace {
  std::vector<double> times;        // [s]
  std::vector<double> probability;  // in [0,1]
  std::vector<double> phase;        // [rad]
  std::vector<double> visibility;   // in [0,1]
};

InterferenceTrace interference_trace(const Constants& c, const Scales& s,
                                     double t_max, int samples, int n,
                                     const FieldConfig& field,
                                     bool include_visibility);

}  // namespace qbouncer

#endif
