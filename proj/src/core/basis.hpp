#ifndef QBOUNCER_CORE_BASIS_HPP
#define QBOUNCER_CORE_BASIS_HPP

#include <complex>

#include "constants.hpp"

namespace qbouncer {

// One gravitational eigenstate psi_n(z) = A_n Ai(z/lambda + gamma_n) above
// the mirror at z = 0. Immutable; cheap to copy.
class BoundState {
public:
  BoundState(int n, const Scales& scales);

  int level() const { return level_; }
  double airy_zero_value() const { return gamma_; }
  // A_n = 1 / (sqrt(lambda) |Ai'(gamma_n)|)  [m^-1/2]
  double norm_constant() const { return norm_; }
  const Scales& scales() const { return scales_; }

  // psi_n(z) in m^-1/2; 0 for z < 0.
  double evaluate(double z_m) const;
  // dimensionless wavefunction of z~ = z/lambda, unit L2 norm in z~
  double evaluate_dimensionless(double zt) const;

private:
  int level_;
  double gamma_;      // n-th Airy zero (negative)
  double aip_;        // |Ai'(gamma_n)|
  double norm_;       // SI normalization
  Scales scales_;
};

// Hermitian-representable observables for expectation values. Mixed
// monomials are stored symmetrized; odd momentum powers are evaluated as
// principal-value moments (the canonical split of p^k across bra and ket),
// which vanish for the real bound states.
struct Observable {
  enum class Kind { ZPower, PPower, SymmetrizedZP, SymmetrizedP2Z, HPrimePower };
  Kind kind = Kind::ZPower;
  int order = 1;

  static Observable z_pow(int k) { return {Kind::ZPower, k}; }
  static Observable p_pow(int k) { return {Kind::PPower, k}; }
  static Observable sym_zp() { return {Kind::SymmetrizedZP, 1}; }
  static Observable sym_p2z() { return {Kind::SymmetrizedP2Z, 1}; }
  static Observable hprime_pow(int k) { return {Kind::HPrimePower, k}; }
};

// <bra| obs |ket> by adaptive quadrature, SI units. Momentum acts through
// the analytic derivatives of the Airy form (Ai'' = u Ai), never by
// numerical differencing. Relative accuracy ~1e-9.
std::complex<double> expectation(const BoundState& bra, const Observable& obs,
                                 const BoundState& ket);

inline std::complex<double> expectation(const BoundState& state,
                                        const Observable& obs) {
  return expectation(state, obs, state);
}

// <psi_m| z |psi_n> in metres (m != n allowed; m == n routed to expectation).
double matrix_element_z(const BoundState& bra, const BoundState& ket);

// <psi_m| p |psi_n>, analytic derivative route [kg m/s].
std::complex<double> matrix_element_p(const BoundState& bra,
                                      const BoundState& ket);

// <psi_m|psi_n> by quadrature (orthonormality probe).
double state_overlap(const BoundState& bra, const BoundState& ket);

}  // namespace qbouncer

#endif
