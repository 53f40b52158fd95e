#include "spectrum.hpp"

#include <cmath>
#include <string>

#include "airy.hpp"
#include "basis.hpp"
#include "errors.hpp"

namespace qbouncer {

FieldConfig field_from_tesla(const Constants& c, double tesla) {
  if (!std::isfinite(tesla) || tesla < 0.0)
    throw ValidationError("field: B must be non-negative and finite");
  FieldConfig f;
  f.field_tesla = tesla;
  f.larmor = 2.0 * c.magnetic_moment * tesla / c.hbar;
  f.delta = c.magnetic_moment * tesla / (c.mass * c.light_speed * c.light_speed);
  if (f.delta >= kDeltaPhysicalLimit)
    throw ValidationError(
        "field: delta >= 1e-3; no physical field reaches this regime "
        "(use the inflated-delta override for validation runs)");
  return f;
}

FieldConfig field_from_delta(const Constants& c, double delta,
                             bool allow_inflated) {
  if (!std::isfinite(delta) || delta < 0.0)
    throw ValidationError("field: delta must be non-negative and finite");
  const double limit = allow_inflated ? kDeltaInflatedLimit : kDeltaPhysicalLimit;
  if (delta > limit)
    throw ValidationError("field: delta exceeds " +
                          std::to_string(limit) +
                          (allow_inflated ? "" : " (pass the inflated-delta "
                                                 "override to go further)"));
  FieldConfig f;
  f.delta = delta;
  f.larmor = 2.0 * delta * c.mass * c.light_speed * c.light_speed / c.hbar;
  f.field_tesla = f.larmor * c.hbar / (2.0 * c.magnetic_moment);
  return f;
}

FieldConfig override_delta(const FieldConfig& base, double delta) {
  if (!std::isfinite(delta) || delta < 0.0 || delta > kDeltaInflatedLimit)
    throw ValidationError("field: delta override must lie in [0, 0.5]");
  FieldConfig f = base;
  f.delta = delta;
  return f;
}

double unperturbed_energy(const Scales& s, int n) {
  if (n < 1) throw ValidationError("energy: level index must be >= 1");
  return -airy_zero(n) * s.energy;
}

namespace {

void check_delta_domain(Spin spin, double delta) {
  if (!std::isfinite(delta))
    throw ValidationError("corrected energy: delta must be finite");
  const double mass_factor = 1.0 + spin_sign(spin) * delta;
  if (mass_factor <= 0.0)
    throw ValidationError("corrected energy: mass factor 1 +/- delta must stay "
                          "positive");
  if (std::fabs(delta) > kDeltaInflatedLimit)
    throw ValidationError("corrected energy: |delta| above the inflated-delta "
                          "test limit 0.5");
}

}  // namespace

double corrected_energy(const Scales& s, int n, Spin spin, double delta,
                        EnergyMethod method) {
  check_delta_domain(spin, delta);
  const double base = unperturbed_energy(s, n);
  const double sd = spin_sign(spin) * delta;
  switch (method) {
    case EnergyMethod::Binomial:
      return base * (1.0 + sd / 3.0);
    case EnergyMethod::ExactRoot:
      return base * std::cbrt(1.0 + sd);
    case EnergyMethod::Perturbation:
      return base + delta * perturbation_first_order(s, n, spin);
  }
  throw ValidationError("corrected energy: unknown method");
}

double perturbation_first_order(const Scales& s, int n, Spin spin) {
  BoundState state(n, s);
  const double hp = expectation(state, Observable::hprime_pow(1)).real();
  return spin_sign(spin) * hp;
}

EnergyRecord total_energy(const Constants& c, const Scales& s, int n,
                          Spin spin, const FieldConfig& field) {
  EnergyRecord rec;
  rec.level = n;
  rec.method = EnergyMethod::Binomial;
  rec.energy = unperturbed_energy(s, n);
  rec.gravitational = corrected_energy(s, n, spin, field.delta, rec.method);
  rec.total =
      rec.gravitational + spin_sign(spin) * 0.5 * c.hbar * field.larmor;
  return rec;
}

double splitting(const Scales& s, int n, const FieldConfig& field) {
  return 2.0 / 3.0 * field.delta * unperturbed_energy(s, n);
}

double level_shift(const Scales& s, int n, const FieldConfig& field) {
  return field.delta / 3.0 * unperturbed_energy(s, n);
}

std::vector<ShiftRecord> shift_table(const Constants& c, const Scales& s,
                                     const std::vector<double>& fields_tesla,
                                     const std::vector<int>& levels) {
  std::vector<ShiftRecord> out;
  out.reserve(fields_tesla.size() * levels.size());
  for (double b : fields_tesla) {
    // The table covers neutron-star-scale fields; the same linear
    // omega0(B) model applies, so bypass the physical-delta gate.
    FieldConfig f;
    f.field_tesla = b;
    f.larmor = 2.0 * c.magnetic_moment * b / c.hbar;
    f.delta = c.magnetic_moment * b / (c.mass * c.light_speed * c.light_speed);
    if (f.delta > kDeltaInflatedLimit)
      throw ValidationError("shift_table: field implies delta beyond 0.5");
    for (int n : levels) out.push_back({b, n, level_shift(s, n, f)});
  }
  return out;
}

}  // namespace qbouncer
