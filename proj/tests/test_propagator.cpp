#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "core/basis.hpp"
#include "core/constants.hpp"
#include "core/errors.hpp"
#include "core/propagator.hpp"
#include "core/qfi.hpp"
#include "core/spectrum.hpp"
#include "doctest.h"

using namespace qbouncer;

namespace {
const Constants kC = make_constants();
const Scales kS = derive_scales(kC);
const GridSpec kDefault;  // 120 um, 4096 points, dt = 1e-7 s
}  // namespace

TEST_CASE("grid validation") {
  GridSpec bad = kDefault;
  bad.points = 100;
  CHECK_THROWS_AS(Grid(kC, kS, bad), ValidationError);
  bad = kDefault;
  bad.z_max = -1.0;
  CHECK_THROWS_AS(Grid(kC, kS, bad), ValidationError);
  bad = kDefault;
  bad.dt = 0.0;
  CHECK_THROWS_AS(Grid(kC, kS, bad), ValidationError);
  Grid g(kC, kS, kDefault);
  CHECK_THROWS_AS(g.norm(), ValidationError);  // nothing loaded yet
}

TEST_CASE("discretized eigenstates: norm, energy and domain guard") {
  Grid g(kC, kS, kDefault);
  g.load_eigenstate(1);
  CHECK(std::fabs(g.norm() - 1.0) < 1e-10);
  CHECK(std::fabs(g.energy() / unperturbed_energy(kS, 1) - 1.0) < 1e-6);
  g.load_eigenstate(5);
  // the finite-difference bias grows with <p^4> ~ gamma_n^2
  CHECK(std::fabs(g.energy() / unperturbed_energy(kS, 5) - 1.0) < 5e-6);
  // a state whose tail would spill past the wall is refused with guidance
  GridSpec small = kDefault;
  small.z_max = 30e-6;
  Grid gs(kC, kS, small);
  CHECK_THROWS_AS(gs.load_eigenstate(5), ValidationError);
}

TEST_CASE("discretized Gaussian") {
  GridSpec spec = kDefault;
  Grid g(kC, kS, spec);
  g.load_gaussian(1e-6, 50e-6, 0.0);
  CHECK(std::fabs(g.norm() - 1.0) < 1e-12);
  CHECK(std::fabs(g.mean_z() - 50e-6) < spec.z_max / (spec.points - 1));
  CHECK_THROWS_AS(g.load_gaussian(1e-6, 3e-6, 0.0), ValidationError);
  CHECK_THROWS_AS(g.load_gaussian(30e-6, 60e-6, 0.0), ValidationError);
}

TEST_CASE("eigenstates are stationary; norm is conserved") {
  Grid g(kC, kS, kDefault);
  Grid ref(kC, kS, kDefault);
  for (int n : {1, 2, 3, 4}) {
    g.load_eigenstate(n);
    ref.load_eigenstate(n);
    g.evolve(1e-3, 0.0, Spin::Up);  // 10^4 steps
    INFO("n = ", n);
    CHECK(std::fabs(g.norm() - 1.0) < 1e-8);
    CHECK(1.0 - std::abs(Grid::overlap(ref, g)) < 1e-6);
  }
}

TEST_CASE("grid orthogonality") {
  Grid a(kC, kS, kDefault), b(kC, kS, kDefault);
  a.load_eigenstate(1);
  b.load_eigenstate(2);
  CHECK(std::abs(Grid::overlap(a, b)) < 1e-6);
  GridSpec other = kDefault;
  other.points = 2048;
  Grid c(kC, kS, other);
  c.load_eigenstate(1);
  CHECK_THROWS_AS(Grid::overlap(a, c), ValidationError);
}

TEST_CASE("free fall follows the Ehrenfest trajectory") {
  GridSpec spec;
  spec.z_max = 400e-6;
  spec.points = 4096;
  spec.dt = 1e-7;
  Grid g(kC, kS, spec);
  const double z0 = 3.2e-4, t = 4e-3;
  g.load_gaussian(8e-6, z0, 0.0);
  g.evolve(t, 0.0, Spin::Up);
  const double expect = z0 - 0.5 * kC.gravity * t * t;
  CHECK(std::fabs(g.mean_z() / expect - 1.0) < 1e-3);

  // with an initial kick the packet drifts ballistically
  Grid k(kC, kS, spec);
  const double p0 = 2e-29;  // upward
  k.load_gaussian(8e-6, 2e-4, p0);
  k.evolve(2e-3, 0.0, Spin::Up);
  const double expect_k =
      2e-4 + p0 * 2e-3 / kC.mass - 0.5 * kC.gravity * 4e-6;
  CHECK(std::fabs(k.mean_z() / expect_k - 1.0) < 1e-3);
}

TEST_CASE("evolution guards") {
  Grid g(kC, kS, kDefault);
  g.load_eigenstate(1);
  CHECK_THROWS_AS(g.evolve(-1e-3, 0.0, Spin::Up), ValidationError);
  CHECK_THROWS_AS(g.evolve(1.37e-7, 0.0, Spin::Up), ValidationError);
  CHECK_THROWS_AS(g.evolve(1e-3, 1.5, Spin::Down), ValidationError);
  GridSpec coarse = kDefault;
  coarse.dt = 2e-3;  // dt max|V|/hbar blows past 0.1
  Grid gc(kC, kS, coarse);
  gc.load_eigenstate(1);
  CHECK_THROWS_AS(gc.evolve(2e-3, 0.0, Spin::Up), ValidationError);
}

TEST_CASE("second-order convergence in dt and dz") {
  // dt: Richardson triplet of the overlap phase of a falling packet
  GridSpec spec;
  spec.z_max = 60e-6;
  spec.points = 1024;
  const double t = 5e-4;
  auto phase_with_dt = [&](double dt) {
    GridSpec sp = spec;
    sp.dt = dt;
    Grid g(kC, kS, sp);
    Grid ref(kC, kS, sp);
    g.load_gaussian(3e-6, 30e-6, 0.0);
    ref.load_gaussian(3e-6, 30e-6, 0.0);
    g.evolve(t, 0.0, Spin::Up);
    return std::arg(Grid::overlap(ref, g));
  };
  const double p1 = phase_with_dt(4e-7);
  const double p2 = phase_with_dt(2e-7);
  const double p4 = phase_with_dt(1e-7);
  const double ratio = (p1 - p2) / (p2 - p4);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.15));

  // dz: the finite-difference eigen-energy error drops 4x per halving
  auto energy_err = [&](int points) {
    GridSpec sp = kDefault;
    sp.points = points;
    Grid g(kC, kS, sp);
    g.load_eigenstate(1);
    return std::fabs(g.energy() - unperturbed_energy(kS, 1));
  };
  CHECK(energy_err(1025) / energy_err(2049) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("numeric QFI matches the spectral mode-sum oracle") {
  // reference values from the exact spectral representation of the
  // delta-derivative (4000 levels), frozen
  const std::vector<double> times{1e-4, 2.5e-4, 5e-4};
  const std::vector<double> oracle{0.08504641, 0.5241147, 2.005154};
  std::vector<int> flags;
  const QfiCurve curve =
      qfi_numeric(kC, kS, kDefault, 1, times, 1e-6, &flags);
  REQUIRE(curve.values.size() == 3);
  for (size_t i = 0; i < times.size(); ++i) {
    INFO("t = ", times[i]);
    CHECK(std::fabs(curve.values[i] / oracle[i] - 1.0) < 1e-2);
    CHECK(flags[i] == 0);
  }
}

TEST_CASE("numeric QFI is robust under epsilon halving") {
  const std::vector<double> times{2e-4};
  const QfiCurve a = qfi_numeric(kC, kS, kDefault, 1, times, 1e-6);
  const QfiCurve b = qfi_numeric(kC, kS, kDefault, 1, times, 5e-7);
  CHECK(std::fabs(a.values[0] / b.values[0] - 1.0) < 1e-2);
}

TEST_CASE("numeric QFI agrees with the fidelity-susceptibility form") {
  const double t = 5e-4, eps = 1e-3;
  const QfiCurve c = qfi_numeric(kC, kS, kDefault, 1, {t}, eps);
  // |<Psi(0)|Psi(eps)>| = 1 - F eps^2/8 for the full spin (x) motion state
  Grid up(kC, kS, kDefault), dn(kC, kS, kDefault), mid(kC, kS, kDefault);
  up.load_eigenstate(1);
  dn.load_eigenstate(1);
  mid.load_eigenstate(1);
  up.evolve(t, eps, Spin::Up);
  dn.evolve(t, eps, Spin::Down);
  mid.evolve(t, 0.0, Spin::Up);
  const std::complex<double> fid =
      0.5 * (Grid::overlap(mid, up) + Grid::overlap(mid, dn));
  const double f_fidelity = 8.0 * (1.0 - std::abs(fid)) / (eps * eps);
  CHECK(std::fabs(f_fidelity / c.values[0] - 1.0) < 2e-2);
}

TEST_CASE("numeric QFI input validation") {
  CHECK_THROWS_AS(qfi_numeric(kC, kS, kDefault, 1, {}, 1e-6),
                  ValidationError);
  CHECK_THROWS_AS(qfi_numeric(kC, kS, kDefault, 1, {1e-3, 5e-4}, 1e-6),
                  ValidationError);
  CHECK_THROWS_AS(qfi_numeric(kC, kS, kDefault, 1, {4e-3}, 1e-6),
                  ValidationError);
  CHECK_THROWS_AS(qfi_numeric(kC, kS, kDefault, 1, {1e-4}, 0.5),
                  ValidationError);
}

TEST_CASE("two-mass overlap phase matches the free-fall closed form") {
  GridSpec spec;
  spec.z_max = 200e-6;
  spec.points = 8192;
  spec.dt = 1e-7;
  const double sigma = 3e-6, z0 = 1.5e-4, t = 1.5e-3, d = 1e-3;
  Grid up(kC, kS, spec), dn(kC, kS, spec);
  up.load_gaussian(sigma, z0, 0.0);
  dn.load_gaussian(sigma, z0, 0.0);
  up.evolve(t, d, Spin::Up);
  dn.evolve(t, d, Spin::Down);
  const std::complex<double> grid_ov = Grid::overlap(dn, up);
  const std::complex<double> closed =
      freefall_overlap(kC, sigma, z0, 0.0, t, d);
  CHECK(std::abs(std::arg(grid_ov * std::conj(closed))) < 1e-4);
  CHECK(std::abs(grid_ov) ==
        doctest::Approx(std::abs(closed)).epsilon(1e-4));
}
