#ifndef QBOUNCER_CORE_SPECTRUM_HPP
#define QBOUNCER_CORE_SPECTRUM_HPP

#include <vector>

#include "constants.hpp"

namespace qbouncer {

enum class Spin : int { Up = +1, Down = -1 };

inline int spin_sign(Spin s) { return static_cast<int>(s); }

enum class EnergyMethod { Binomial, ExactRoot, Perturbation };

// Magnetic-field configuration: hbar omega0 = 2 mu_n B and
// delta = hbar omega0 / (2 m c^2) = mu_n B / (m c^2).
struct FieldConfig {
  double field_tesla = 0.0;
  double larmor = 0.0;  // omega0 [rad/s]
  double delta = 0.0;
};

// Physical fields keep delta << 1; anything at or above this is only
// reachable in the inflated-delta test mode.
constexpr double kDeltaPhysicalLimit = 1e-3;
constexpr double kDeltaInflatedLimit = 0.5;

FieldConfig field_from_tesla(const Constants& c, double tesla);
FieldConfig field_from_delta(const Constants& c, double delta,
                             bool allow_inflated);

// Inflated-delta test mode: keep the applied field and its Larmor frequency,
// replace only the relativistic correction. (Keeping the tie hbar omega0 =
// 2 m c^2 delta at delta ~ 1e-3 would put the Larmor phase 20 orders above
// the relativistic term and make every trace numerically meaningless.)
FieldConfig override_delta(const FieldConfig& base, double delta);

struct EnergyRecord {
  int level = 0;
  double energy = 0.0;         // unperturbed E_n [J]
  double gravitational = 0.0;  // E_{n,s} [J]
  double total = 0.0;          // E_{n,s} +/- hbar omega0/2 [J]
  EnergyMethod method = EnergyMethod::Binomial;
};

// E_n = -gamma_n eps0
double unperturbed_energy(const Scales& s, int n);

// E_{n,s}: binomial E_n (1 +/- delta/3); exact root E_n (1 +/- delta)^(1/3);
// perturbation E_n +/- delta <psi_n| -T + V |psi_n> by quadrature.
double corrected_energy(const Scales& s, int n, Spin spin, double delta,
                        EnergyMethod method);

// First-order energy shift per unit delta: spin sign times <-T + V>,
// computed by quadrature; equals E_n / 3 for spin up by the virial theorem.
double perturbation_first_order(const Scales& s, int n, Spin spin);

EnergyRecord total_energy(const Constants& c, const Scales& s, int n,
                          Spin spin, const FieldConfig& field);

// E_{n,up} - E_{n,down} = (2/3) delta E_n
double splitting(const Scales& s, int n, const FieldConfig& field);

// Table cell E_{n,up} - E_n = (delta/3) E_n, formed symbolically (the direct
// subtraction would cancel 15 orders below E_n).
double level_shift(const Scales& s, int n, const FieldConfig& field);

struct ShiftRecord {
  double field_tesla;
  int level;
  double shift;  // [J]
};

// The (field x level) grid of spin-up shifts.
std::vector<ShiftRecord> shift_table(const Constants& c, const Scales& s,
                                     const std::vector<double>& fields_tesla,
                                     const std::vector<int>& levels);

}  // namespace qbouncer

#endif
