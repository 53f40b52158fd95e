#include "basis.hpp"

#include <cmath>
#include <string>

#include "airy.hpp"
#include "errors.hpp"
#include "quadrature.hpp"

namespace qbouncer {

namespace {

// Integration cut: the wavefunction decays like exp(-(2/3) s^{3/2}) past the
// classical turning point at z~ = |gamma_n|, so 15 lengths beyond it leave
// a tail below 1e-30 in probability.
double z_cut(const BoundState& a, const BoundState& b) {
  return std::max(-a.airy_zero_value(), -b.airy_zero_value()) + 15.0;
}

constexpr double kAbsTol = 5e-14;
constexpr double kRelTol = 1e-10;

// Dimensionless derivatives of psi~ via the Airy ODE:
//   d^0: Ai(u)      d^1: Ai'(u)      d^2: u Ai(u)      d^3: Ai + u Ai'
double airy_derivative(int order, double u) {
  switch (order) {
    case 0:
      return airy_ai(u);
    case 1:
      return airy_ai_prime(u);
    case 2:
      return u * airy_ai(u);
    case 3:
      return airy_ai(u) + u * airy_ai_prime(u);
    default:
      throw ValidationError("airy_derivative: unsupported order");
  }
}

// i^k phase of (-i d/dz)^k acting on a real function, split into the real
// magnitude (the derivative) and the power of -i.
std::complex<double> minus_i_pow(int k) {
  switch (k & 3) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, -1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, 1.0};
  }
}

}  // namespace

BoundState::BoundState(int n, const Scales& s) : level_(n), scales_(s) {
  if (n < 1) throw ValidationError("BoundState: level index must be >= 1");
  gamma_ = airy_zero(n);
  aip_ = std::fabs(airy_ai_prime(gamma_));
  norm_ = 1.0 / (std::sqrt(s.length) * aip_);
}

double BoundState::evaluate(double z_m) const {
  if (z_m < 0.0) return 0.0;
  return norm_ * airy_ai(z_m / scales_.length + gamma_);
}

double BoundState::evaluate_dimensionless(double zt) const {
  if (zt < 0.0) return 0.0;
  return airy_ai(zt + gamma_) / aip_;
}

std::complex<double> expectation(const BoundState& bra, const Observable& obs,
                                 const BoundState& ket) {
  if (bra.scales().length != ket.scales().length)
    throw ValidationError("expectation: bra and ket use different scales");
  const Scales& sc = bra.scales();
  const double gb = bra.airy_zero_value();
  const double gk = ket.airy_zero_value();
  const double cut = z_cut(bra, ket);
  const double nb = 1.0 / std::fabs(airy_ai_prime(gb));
  const double nk = 1.0 / std::fabs(airy_ai_prime(gk));
  const double nn = nb * nk;

  switch (obs.kind) {
    case Observable::Kind::ZPower: {
      const int k = obs.order;
      if (k < 0 || k > 6)
        throw ValidationError("expectation: z power must be in [0, 6]");
      const double val = integrate(
          [&](double zt) {
            return std::pow(zt, k) * airy_ai(zt + gb) * airy_ai(zt + gk) * nn;
          },
          0.0, cut, kAbsTol, kRelTol);
      return {val * std::pow(sc.length, k), 0.0};
    }
    case Observable::Kind::PPower: {
      const int k = obs.order;
      if (k < 0 || k > 6)
        throw ValidationError("expectation: p power must be in [0, 6]");
      const int a = k / 2, b = k - a;
      // <p^a psi_bra | p^b psi_ket> with analytic derivatives; the bra
      // factor is conjugated.
      const std::complex<double> phase =
          std::conj(minus_i_pow(a)) * minus_i_pow(b);
      const double val = integrate(
          [&](double zt) {
            return airy_derivative(a, zt + gb) * airy_derivative(b, zt + gk) *
                   nn;
          },
          0.0, cut, kAbsTol, kRelTol);
      return phase * val * std::pow(sc.momentum, k);
    }
    case Observable::Kind::SymmetrizedZP: {
      // (z p + p z) psi = -i (2 z~ psi' + psi) in units of hbar.
      const double val = integrate(
          [&](double zt) {
            return airy_ai(zt + gb) *
                   (2.0 * zt * airy_ai_prime(zt + gk) + airy_ai(zt + gk)) * nn;
          },
          0.0, cut, kAbsTol, kRelTol);
      const double hbar = sc.momentum * sc.length;
      return {0.0, -val * hbar};
    }
    case Observable::Kind::SymmetrizedP2Z: {
      // (p^2 z + z p^2) psi = -(2 psi' + 2 z~ psi''), psi'' = u Ai(u).
      const double val = integrate(
          [&](double zt) {
            const double uk = zt + gk;
            return airy_ai(zt + gb) *
                   (-2.0 * airy_ai_prime(uk) - 2.0 * zt * uk * airy_ai(uk)) *
                   nn;
          },
          0.0, cut, kAbsTol, kRelTol);
      return {val * sc.momentum * sc.momentum * sc.length, 0.0};
    }
    case Observable::Kind::HPrimePower: {
      // H' = -p^2/2m + m g z acts locally on an eigenstate-shifted Airy
      // function: H' psi = eps0 (2u - gamma) Ai(u) / |Ai'|.
      const int k = obs.order;
      if (k < 0 || k > 2)
        throw ValidationError("expectation: H' power must be in [0, 2]");
      double val = 0.0;
      if (k == 0) {
        val = integrate(
            [&](double zt) { return airy_ai(zt + gb) * airy_ai(zt + gk) * nn; },
            0.0, cut, kAbsTol, kRelTol);
      } else if (k == 1) {
        val = integrate(
            [&](double zt) {
              const double uk = zt + gk;
              return airy_ai(zt + gb) * (2.0 * uk - gk) * airy_ai(uk) * nn;
            },
            0.0, cut, kAbsTol, kRelTol);
      } else {
        // self-adjoint split <H' bra | H' ket>
        val = integrate(
            [&](double zt) {
              const double ub = zt + gb;
              const double uk = zt + gk;
              return (2.0 * ub - gb) * airy_ai(ub) * (2.0 * uk - gk) *
                     airy_ai(uk) * nn;
            },
            0.0, cut, kAbsTol, kRelTol);
      }
      return {val * std::pow(sc.energy, k), 0.0};
    }
  }
  throw ValidationError("expectation: unsupported observable kind");
}

double matrix_element_z(const BoundState& bra, const BoundState& ket) {
  return expectation(bra, Observable::z_pow(1), ket).real();
}

std::complex<double> matrix_element_p(const BoundState& bra,
                                      const BoundState& ket) {
  return expectation(bra, Observable::p_pow(1), ket);
}

double state_overlap(const BoundState& bra, const BoundState& ket) {
  return expectation(bra, Observable::z_pow(0), ket).real();
}

}  // namespace qbouncer
