#include "constants.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace qbouncer {

namespace {

void check_field(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0)
    throw ValidationError(std::string(name) + " must be positive and finite");
}

}  // namespace

void validate(const Constants& c) {
  check_field(c.mass, "m");
  check_field(c.gravity, "g");
  check_field(c.hbar, "hbar");
  check_field(c.light_speed, "c");
  check_field(c.magnetic_moment, "mu_n");
}

Constants make_constants(const ConstantOverrides& o) {
  Constants c;
  if (o.mass) c.mass = *o.mass;
  if (o.gravity) c.gravity = *o.gravity;
  if (o.hbar) c.hbar = *o.hbar;
  if (o.light_speed) c.light_speed = *o.light_speed;
  if (o.magnetic_moment) c.magnetic_moment = *o.magnetic_moment;
  validate(c);
  return c;
}

Scales derive_scales(const Constants& c) {
  validate(c);
  Scales s;
  s.length = std::cbrt(c.hbar * c.hbar / (2.0 * c.mass * c.mass * c.gravity));
  s.energy = std::cbrt(c.mass * c.gravity * c.gravity * c.hbar * c.hbar / 2.0);
  s.time = c.hbar / s.energy;
  s.momentum = c.hbar / s.length;
  return s;
}

}  // namespace qbouncer
