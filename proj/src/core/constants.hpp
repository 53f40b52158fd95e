#ifndef QBOUNCER_CORE_CONSTANTS_HPP
#define QBOUNCER_CORE_CONSTANTS_HPP

#include <optional>

namespace qbouncer {

// Physical constants in SI units. Defaults are CODATA 2018 values with
// g = 9.81 m/s^2.
struct Constants {
  double mass = 1.67492749804e-27;           // neutron mass [kg]
  double gravity = 9.81;                     // g [m/s^2]
  double hbar = 1.054571817e-34;             // [J s]
  double light_speed = 299792458.0;          // [m/s]
  double magnetic_moment = 9.6623651e-27;    // |mu_n| [J/T]
};

// Characteristic bouncer scales. All internal physics is done in these
// units (lengths / lambda, energies / eps0, times / t0, momenta / p0);
// conversion to SI happens at the API boundary.
struct Scales {
  double length = 0.0;    // lambda = (hbar^2 / 2 m^2 g)^(1/3) [m]
  double energy = 0.0;    // eps0   = (m g^2 hbar^2 / 2)^(1/3) [J]
  double time = 0.0;      // t0     = hbar / eps0 [s]
  double momentum = 0.0;  // p0     = hbar / lambda [kg m/s]
};

struct ConstantOverrides {
  std::optional<double> mass;
  std::optional<double> gravity;
  std::optional<double> hbar;
  std::optional<double> light_speed;
  std::optional<double> magnetic_moment;
};

// Defaults merged with overrides; throws ValidationError naming the field
// for a non-finite or non-positive override.
Constants make_constants(const ConstantOverrides& overrides = {});

// Throws ValidationError if any field is non-finite or non-positive.
void validate(const Constants& c);

Scales derive_scales(const Constants& c);

}  // namespace qbouncer

#endif
