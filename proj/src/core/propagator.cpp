#include "propagator.hpp"

#include <cmath>
#include <future>
#include <string>

#include "airy.hpp"
#include "basis.hpp"
#include "errors.hpp"

namespace qbouncer {

using cd = std::complex<double>;

Grid::Grid(const Constants& c, const Scales& s, const GridSpec& spec)
    : c_(c), s_(s), spec_(spec) {
  if (!(spec.z_max > 0.0)) throw ValidationError("grid: z_max must be positive");
  if (spec.points < 512) throw ValidationError("grid: need at least 512 points");
  if (!(spec.dt > 0.0)) throw ValidationError("grid: dt must be positive");
  dzt_ = spec.z_max / s_.length / (spec.points - 1);
  dtt_ = spec.dt / s_.time;
  psi_.assign(spec.points, cd(0.0, 0.0));
}

void Grid::require_loaded() const {
  if (!loaded_) throw ValidationError("grid: no state loaded");
}

void Grid::load_eigenstate(int n) {
  const double gamma = airy_zero(n);
  const double ztmax = spec_.z_max / s_.length;
  // tail mass beyond the top wall: int_x^inf Ai^2 = Ai'(x)^2 - x Ai(x)^2
  const double x = ztmax + gamma;
  const double aip = airy_ai_prime(gamma);
  const double tail =
      (std::pow(airy_ai_prime(x), 2) - x * std::pow(airy_ai(x), 2)) /
      (aip * aip);
  if (!(tail < 1e-12))
    throw ValidationError(
        "grid: eigenstate tail mass beyond z_max exceeds 1e-12; use z_max >= " +
        std::to_string(s_.length * (-gamma + 15.0)) + " m");
  double sum = 0.0;
  for (int j = 0; j < spec_.points; ++j) {
    const double zt = j * dzt_;
    const double v = airy_ai(zt + gamma) / std::fabs(aip);
    psi_[j] = cd(v, 0.0);
    sum += v * v;
  }
  psi_.front() = psi_.back() = cd(0.0, 0.0);
  const double inv = 1.0 / std::sqrt(sum * dzt_);
  for (auto& p : psi_) p *= inv;
  t_ = 0.0;
  loaded_ = true;
}

void Grid::load_gaussian(double sigma, double z0, double p_mean) {
  if (!(sigma > 0.0)) throw ValidationError("grid: sigma must be positive");
  if (z0 < 8.0 * sigma || z0 > spec_.z_max - 8.0 * sigma)
    throw ValidationError(
        "grid: Gaussian must clear both walls by 8 sigma; increase z_max or "
        "recentre (need " +
        std::to_string(8.0 * sigma) + " m of clearance)");
  const double st = sigma / s_.length;
  const double zt0 = z0 / s_.length;
  const double pt = p_mean / s_.momentum;
  double sum = 0.0;
  for (int j = 0; j < spec_.points; ++j) {
    const double zt = j * dzt_;
    const double amp = std::exp(-(zt - zt0) * (zt - zt0) / (2.0 * st * st));
    psi_[j] = std::polar(amp, pt * zt);
    sum += amp * amp;
  }
  psi_.front() = psi_.back() = cd(0.0, 0.0);
  const double inv = 1.0 / std::sqrt(sum * dzt_);
  for (auto& p : psi_) p *= inv;
  t_ = 0.0;
  loaded_ = true;
}

void Grid::factorize(double mu) {
  if (mu == cached_mu_) return;
  const int m = spec_.points - 2;  // interior points
  const double r = dtt_ / (2.0 * mu * dzt_ * dzt_);
  const cd off_a(0.0, -r);  // lhs off-diagonal
  r_ = r;
  hq_ = 0.5 * dtt_ * mu * dzt_;  // potential slope of the (dt/2) H diagonal
  dinv_.resize(m);
  cd prev;
  for (int i = 0; i < m; ++i) {
    // the step loop recomputes this expression verbatim; keep them identical
    const double hd = 2.0 * r + hq_ * (i + 1);
    const cd a(1.0, hd);  // lhs diagonal
    const cd denom = (i == 0) ? a : a - off_a * (off_a * prev);
    dinv_[i] = 1.0 / denom;
    prev = dinv_[i];
  }
  cached_mu_ = mu;
}

void Grid::step(long nsteps) {
  const int m = spec_.points - 2;
  const double r = r_;
  const double hq = hq_;
  // Hot loop in explicit real/imaginary form, memory-lean: the rhs matrix
  // is (1 - i hd_j) diagonal and +i r off it, the factorized lhs lower band
  // is -i r and its sweep coefficient is c'_j = -i r dinv_j, so everything
  // is derived from dinv and two scalars. The forward sweep stores y_j in
  // the psi slot j (one slot below its interior index), carrying the
  // overwritten old values in registers; back substitution shifts them
  // home and restores the Dirichlet zero at the wall.
  const double* dinv = reinterpret_cast<const double*>(dinv_.data());
  double* psi = reinterpret_cast<double*>(psi_.data());
  for (long s = 0; s < nsteps; ++s) {
    double pre = 0.0, pim = 0.0;        // y_{i-1}
    double lre = psi[0], lim = psi[1];  // old psi_{i} (left neighbour)
    double cre = psi[2], cim = psi[3];  // old psi_{i+1} (centre)
    for (int i = 0; i < m; ++i) {
      const double rre = psi[2 * i + 4], rim = psi[2 * i + 5];
      const double hd = 2.0 * r + hq * (i + 1);
      const double ure = cre + hd * cim - r * (lim + rim + pim);
      const double uim = cim - hd * cre + r * (lre + rre + pre);
      const double dre = dinv[2 * i], dim = dinv[2 * i + 1];
      pre = ure * dre - uim * dim;
      pim = ure * dim + uim * dre;
      psi[2 * i] = pre;  // y_i parked one slot down
      psi[2 * i + 1] = pim;
      lre = cre;
      lim = cim;
      cre = rre;
      cim = rim;
    }
    // back substitution: x_i = y_i - c'_i x_{i+1}, c'_i = -i r dinv_i
    double xre = psi[2 * (m - 1)], xim = psi[2 * (m - 1) + 1];
    psi[2 * m] = xre;
    psi[2 * m + 1] = xim;
    for (int i = m - 2; i >= 0; --i) {
      const double dre = dinv[2 * i], dim = dinv[2 * i + 1];
      const double nre = psi[2 * i] - r * (dim * xre + dre * xim);
      const double nim = psi[2 * i + 1] - r * (dim * xim - dre * xre);
      xre = nre;
      xim = nim;
      psi[2 * i + 2] = xre;
      psi[2 * i + 3] = xim;
    }
    psi[0] = 0.0;  // Dirichlet wall slot reused as y_0 scratch above
    psi[1] = 0.0;
  }
}

void Grid::evolve(double duration, double delta, Spin spin) {
  require_loaded();
  if (!(duration > 0.0))
    throw ValidationError("evolve: duration must be positive");
  const double mu = 1.0 + spin_sign(spin) * delta;
  if (!(mu > 0.0))
    throw ValidationError("evolve: mass factor 1 +/- delta must stay positive");
  const long nsteps = std::llround(duration / spec_.dt);
  if (nsteps < 1 ||
      std::fabs(nsteps * spec_.dt - duration) > 1e-9 * (duration + spec_.dt))
    throw ValidationError("evolve: duration must be a whole number of dt steps");
  // accuracy guard on the potential phase per step
  const double vmax_phase = dtt_ * mu * (spec_.z_max / s_.length);
  if (vmax_phase > 0.1)
    throw ValidationError(
        "evolve: dt max|V|/hbar = " + std::to_string(vmax_phase) +
        " > 0.1; reduce dt or z_max");
  factorize(mu);
  step(nsteps);
  t_ += nsteps * spec_.dt;
}

double Grid::norm() const {
  require_loaded();
  double sum = 0.0;
  for (const auto& p : psi_) sum += std::norm(p);
  return std::sqrt(sum * dzt_);
}

double Grid::mean_z() const {
  require_loaded();
  double sum = 0.0, w = 0.0;
  for (int j = 0; j < spec_.points; ++j) {
    const double d = std::norm(psi_[j]);
    sum += d * j * dzt_;
    w += d;
  }
  return sum / w * s_.length;
}

double Grid::energy() const {
  require_loaded();
  const int np = spec_.points;
  double num = 0.0, den = 0.0;
  for (int j = 1; j + 1 < np; ++j) {
    const cd lap =
        (psi_[j + 1] - 2.0 * psi_[j] + psi_[j - 1]) / (dzt_ * dzt_);
    const cd h = -lap + (j * dzt_) * psi_[j];
    num += std::real(std::conj(psi_[j]) * h);
    den += std::norm(psi_[j]);
  }
  return num / den * s_.energy;
}

cd Grid::overlap(const Grid& bra, const Grid& ket) {
  bra.require_loaded();
  ket.require_loaded();
  if (bra.spec_.points != ket.spec_.points ||
      bra.spec_.z_max != ket.spec_.z_max)
    throw ValidationError("overlap: grids do not match");
  cd sum(0.0, 0.0);
  for (int j = 0; j < bra.spec_.points; ++j)
    sum += std::conj(bra.psi_[j]) * ket.psi_[j];
  return sum * bra.dzt_;
}

namespace {

// Snapshots of one mass-factor branch at the requested times.
std::vector<std::vector<cd>> evolve_branch(const Constants& c, const Scales& s,
                                           const GridSpec& spec, int n,
                                           double delta_branch,
                                           const std::vector<double>& times) {
  Grid g(c, s, spec);
  g.load_eigenstate(n);
  std::vector<std::vector<cd>> shots;
  shots.reserve(times.size());
  double prev = 0.0;
  for (double t : times) {
    g.evolve(t - prev, std::fabs(delta_branch),
             delta_branch >= 0.0 ? Spin::Up : Spin::Down);
    prev = g.time();
    shots.push_back(g.samples());
  }
  return shots;
}

cd dot(const std::vector<cd>& a, const std::vector<cd>& b, double dzt) {
  cd sum(0.0, 0.0);
  for (size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum * dzt;
}

}  // namespace

QfiCurve qfi_numeric(const Constants& c, const Scales& s, const GridSpec& spec,
                     int n, const std::vector<double>& times, double epsilon,
                     std::vector<int>* flags) {
  if (times.empty()) throw ValidationError("qfi_numeric: no sample times");
  if (times.size() > 512)
    throw ValidationError("qfi_numeric: too many sample times (max 512)");
  double prev = 0.0;
  for (double t : times) {
    if (!(t > prev))
      throw ValidationError("qfi_numeric: times must be positive and "
                            "strictly increasing");
    prev = t;
  }
  if (times.back() > 3e-3 + 1e-12)
    throw ValidationError("qfi_numeric: times beyond 3 ms are outside the "
                          "validated window");
  if (!(epsilon > 0.0) || epsilon > 0.1)
    throw ValidationError("qfi_numeric: epsilon must be in (0, 0.1]");

  // Five independent mass-factor branches; +/-eps/2 feeds the convergence
  // probe. Branches run concurrently (disjoint grids).
  const double branches[5] = {epsilon, -epsilon, 0.5 * epsilon,
                              -0.5 * epsilon, 0.0};
  std::future<std::vector<std::vector<cd>>> fut[5];
  for (int b = 0; b < 5; ++b)
    fut[b] = std::async(std::launch::async, evolve_branch, std::cref(c),
                        std::cref(s), std::cref(spec), n, branches[b],
                        std::cref(times));
  std::vector<std::vector<cd>> up = fut[0].get(), dn = fut[1].get(),
                               uph = fut[2].get(), dnh = fut[3].get(),
                               mid = fut[4].get();

  const double dzt = spec.z_max / s.length / (spec.points - 1);
  QfiCurve curve;
  curve.model = QfiModel::Numeric;
  curve.times = times;
  if (flags) flags->assign(times.size(), 0);

  std::vector<cd> chi(spec.points);
  auto fisher = [&](const std::vector<cd>& plus, const std::vector<cd>& minus,
                    const std::vector<cd>& centre, double eps) {
    for (int j = 0; j < spec.points; ++j)
      chi[j] = (plus[j] - minus[j]) / (2.0 * eps);
    // spin-up derivative is chi, spin-down is -chi; the centre state is
    // common to both components, so <d psi|psi> cancels between the blocks
    const double dd = std::real(dot(chi, chi, dzt));
    const cd block = dot(chi, centre, dzt);
    const cd dpsi_psi = 0.5 * (block - block);
    return 4.0 * (dd - std::norm(dpsi_psi));
  };

  for (size_t i = 0; i < times.size(); ++i) {
    const double f_eps = fisher(up[i], dn[i], mid[i], epsilon);
    const double f_half = fisher(uph[i], dnh[i], mid[i], 0.5 * epsilon);
    curve.values.push_back(f_eps);
    if (flags) {
      const double scale = std::max(std::fabs(f_half), 1e-300);
      (*flags)[i] = std::fabs(f_eps - f_half) > 0.05 * scale ? 1 : 0;
    }
  }
  return curve;
}

}  // namespace qbouncer
