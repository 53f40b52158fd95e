#ifndef QBOUNCER_CORE_PROPAGATOR_HPP
#define QBOUNCER_CORE_PROPAGATOR_HPP

#include <complex>
#include <vector>

#include "constants.hpp"
#include "qfi.hpp"
#include "spectrum.hpp"

namespace qbouncer {

struct GridSpec {
  double z_max = 120e-6;  // [m], Dirichlet walls at 0 and z_max
  int points = 4096;
  double dt = 1e-7;  // [s]
};

// Complex wavefunction samples on the uniform grid, evolved by a
// Crank-Nicolson step of H = p^2/2m(1 +/- delta) + m(1 +/- delta) g z.
// The scheme is a Cayley transform of the (real symmetric) discrete
// Hamiltonian, so the L2 norm is conserved to solver roundoff. Internally
// everything is dimensionless (z/lambda, t/t0, E/eps0).
//
// A Grid is owned by a single evolution run; independent runs on separate
// instances may execute in parallel.
class Grid {
public:
  Grid(const Constants& c, const Scales& s, const GridSpec& spec);

  void load_eigenstate(int n);
  // exp(i p_mean z / hbar) Gaussian of width sigma centred at z0; both
  // tails must clear the walls by 8 sigma.
  void load_gaussian(double sigma, double z0, double p_mean);

  // duration must be a whole number of dt steps.
  void evolve(double duration, double delta, Spin spin);

  double time() const { return t_; }
  double norm() const;
  double mean_z() const;
  // <H0> through the same finite-difference Hamiltonian the stepper uses.
  double energy() const;
  const GridSpec& spec() const { return spec_; }
  const std::vector<std::complex<double>>& samples() const { return psi_; }

  static std::complex<double> overlap(const Grid& bra, const Grid& ket);

private:
  void require_loaded() const;
  void factorize(double mu);
  void step(long nsteps);

  Constants c_;
  Scales s_;
  GridSpec spec_;
  double dzt_ = 0.0;  // dimensionless spacing
  double dtt_ = 0.0;  // dimensionless step
  double t_ = 0.0;    // SI elapsed time
  bool loaded_ = false;
  std::vector<std::complex<double>> psi_;

  // cached Crank-Nicolson factorization for the current mass factor
  double cached_mu_ = 0.0;
  double r_ = 0.0;   // dt~/(2 mu dz~^2)
  double hq_ = 0.0;  // potential slope of the (dt~/2) H diagonal
  std::vector<std::complex<double>> dinv_;  // Thomas pivots
};

// Numeric QFI for eigenstate n by central differencing in delta of the
// spin (x) motion state evolved on the grid: the spin-up branch carries
// mass factor 1 + delta, spin-down 1 - delta. flags[i] is set for points
// whose value moves by more than 5% under epsilon halving.
QfiCurve qfi_numeric(const Constants& c, const Scales& s, const GridSpec& spec,
                     int n, const std::vector<double>& times, double epsilon,
                     std::vector<int>* flags = nullptr);

}  // namespace qbouncer

#endif
