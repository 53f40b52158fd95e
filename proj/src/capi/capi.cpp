// extern-C shim over the C++ core: opaque handles, status codes, and a
// thread-local error message. No exception may cross this boundary.
#include "qbouncer/qbouncer.h"

#include <complex>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "core/airy.hpp"
#include "core/basis.hpp"
#include "core/checks.hpp"
#include "core/constants.hpp"
#include "core/errors.hpp"
#include "core/interferometry.hpp"
#include "core/propagator.hpp"
#include "core/qfi.hpp"
#include "core/spectrum.hpp"

struct qb_context {
  qbouncer::Constants constants;
  qbouncer::Scales scales;
};

struct qb_grid {
  qbouncer::Grid grid;
};

namespace {

thread_local std::string t_last_error;

void set_error(const char* msg) { t_last_error = msg ? msg : "unknown error"; }

// Runs body, mapping exceptions onto status codes.
template <class F>
qb_status guarded(F&& body) {
  try {
    body();
    return QB_OK;
  } catch (const qbouncer::ValidationError& e) {
    set_error(e.what());
    return QB_ERROR_VALIDATION;
  } catch (const qbouncer::ConvergenceError& e) {
    set_error(e.what());
    return QB_ERROR_CONVERGENCE;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return QB_ERROR_CONVERGENCE;
  } catch (const std::exception& e) {
    set_error(e.what());
    return QB_ERROR_CONVERGENCE;
  }
}

qb_status require(bool ok, const char* msg) {
  if (ok) return QB_OK;
  set_error(msg);
  return QB_ERROR_VALIDATION;
}

qbouncer::Constants to_core(const qb_constants& c) {
  qbouncer::Constants out;
  out.mass = c.mass_kg;
  out.gravity = c.gravity_m_s2;
  out.hbar = c.hbar_J_s;
  out.light_speed = c.light_speed_m_s;
  out.magnetic_moment = c.magnetic_moment_J_T;
  return out;
}

qbouncer::FieldConfig to_core(const qb_field& f) {
  qbouncer::FieldConfig out;
  out.field_tesla = f.field_tesla;
  out.larmor = f.larmor_rad_s;
  out.delta = f.delta;
  return out;
}

qb_field from_core(const qbouncer::FieldConfig& f) {
  return {f.field_tesla, f.larmor, f.delta};
}

qbouncer::Spin to_core(qb_spin s) {
  return s == QB_SPIN_UP ? qbouncer::Spin::Up : qbouncer::Spin::Down;
}

qbouncer::GridSpec to_core(const qb_grid_spec& s) {
  qbouncer::GridSpec out;
  out.z_max = s.z_max_m;
  out.points = s.points;
  out.dt = s.dt_s;
  return out;
}

}  // namespace

extern "C" {

const char* qb_last_error(void) { return t_last_error.c_str(); }

const char* qb_version(void) { return QBOUNCER_VERSION_STRING; }

qb_constants qb_constants_default(void) {
  const qbouncer::Constants c;
  return {c.mass, c.gravity, c.hbar, c.light_speed, c.magnetic_moment};
}

qb_status qb_context_create(const qb_constants* constants, qb_context** out) {
  if (auto st = require(constants && out, "null argument")) return st;
  return guarded([&] {
    qbouncer::Constants c = to_core(*constants);
    qbouncer::validate(c);
    *out = new qb_context{c, qbouncer::derive_scales(c)};
  });
}

void qb_context_destroy(qb_context* ctx) { delete ctx; }

qb_status qb_context_constants(const qb_context* ctx, qb_constants* out) {
  if (auto st = require(ctx && out, "null argument")) return st;
  const qbouncer::Constants& c = ctx->constants;
  *out = {c.mass, c.gravity, c.hbar, c.light_speed, c.magnetic_moment};
  return QB_OK;
}

qb_status qb_context_scales(const qb_context* ctx, qb_scales* out) {
  if (auto st = require(ctx && out, "null argument")) return st;
  const qbouncer::Scales& s = ctx->scales;
  *out = {s.length, s.energy, s.time, s.momentum};
  return QB_OK;
}

qb_status qb_airy_ai(double x, double* out) {
  if (auto st = require(out != nullptr, "null output")) return st;
  return guarded([&] { *out = qbouncer::airy_ai(x); });
}

qb_status qb_airy_ai_prime(double x, double* out) {
  if (auto st = require(out != nullptr, "null output")) return st;
  return guarded([&] { *out = qbouncer::airy_ai_prime(x); });
}

qb_status qb_airy_zero(int n, double* out) {
  if (auto st = require(out != nullptr, "null output")) return st;
  return guarded([&] { *out = qbouncer::airy_zero(n); });
}

qb_status qb_eigenstate_eval(const qb_context* ctx, int n, double z_m,
                             double* out) {
  if (auto st = require(ctx && out, "null argument")) return st;
  return guarded([&] {
    *out = qbouncer::BoundState(n, ctx->scales).evaluate(z_m);
  });
}

qb_status qb_expectation(const qb_context* ctx, int n, qb_observable obs,
                         int order, double* out_re, double* out_im) {
  if (auto st = require(ctx && out_re, "null argument")) return st;
  return guarded([&] {
    qbouncer::Observable o;
    switch (obs) {
      case QB_OBS_Z_POW:
        o = qbouncer::Observable::z_pow(order);
        break;
      case QB_OBS_P_POW:
        o = qbouncer::Observable::p_pow(order);
        break;
      case QB_OBS_SYM_ZP:
        o = qbouncer::Observable::sym_zp();
        break;
      case QB_OBS_SYM_P2Z:
        o = qbouncer::Observable::sym_p2z();
        break;
      case QB_OBS_HPRIME_POW:
        o = qbouncer::Observable::hprime_pow(order);
        break;
      default:
        throw qbouncer::ValidationError("unknown observable kind");
    }
    qbouncer::BoundState state(n, ctx->scales);
    const std::complex<double> v = qbouncer::expectation(state, o);
    *out_re = v.real();
    if (out_im) *out_im = v.imag();
  });
}

qb_status qb_matrix_element_z(const qb_context* ctx, int m, int n,
                              double* out) {
  if (auto st = require(ctx && out, "null argument")) return st;
  return guarded([&] {
    qbouncer::BoundState bra(m, ctx->scales), ket(n, ctx->scales);
    *out = qbouncer::matrix_element_z(bra, ket);
  });
}

qb_status qb_state_overlap(const qb_context* ctx, int m, int n, double* out) {
  if (auto st = require(ctx && out, "null argument")) return st;
  return guarded([&] {
    qbouncer::BoundState bra(m, ctx->scales), ket(n, ctx->scales);
    *out = qbouncer::state_overlap(bra, ket);
  });
}

qb_status qb_energy(const qb_context* ctx, int n, double* out_J) {
  if (auto st = require(ctx && out_J, "null argument")) return st;
  return guarded([&] { *out_J = qbouncer::unperturbed_energy(ctx->scales, n); });
}

qb_status qb_field_from_tesla(const qb_context* ctx, double tesla,
                              qb_field* out) {
  if (auto st = require(ctx && out, "null argument")) return st;
  return guarded(
      [&] { *out = from_core(qbouncer::field_from_tesla(ctx->constants, tesla)); });
}

qb_status qb_field_from_delta(const qb_context* ctx, double delta,
                              int allow_inflated, qb_field* out) {
  if (auto st = require(ctx && out, "null argument")) return st;
  return guarded([&] {
    *out = from_core(
        qbouncer::field_from_delta(ctx->constants, delta, allow_inflated != 0));
  });
}

qb_status qb_energy_corrected(const qb_context* ctx, int n, qb_spin spin,
                              double delta, qb_energy_method method,
                              double* out_J) {
  if (auto st = require(ctx && out_J, "null argument")) return st;
  return guarded([&] {
    qbouncer::EnergyMethod m;
    switch (method) {
      case QB_ENERGY_BINOMIAL:
        m = qbouncer::EnergyMethod::Binomial;
        break;
      case QB_ENERGY_EXACT_ROOT:
        m = qbouncer::EnergyMethod::ExactRoot;
        break;
      case QB_ENERGY_PERTURBATION:
        m = qbouncer::EnergyMethod::Perturbation;
        break;
      default:
        throw qbouncer::ValidationError("unknown energy method");
    }
    *out_J = qbouncer::corrected_energy(ctx->scales, n, to_core(spin), delta, m);
  });
}

qb_status qb_energy_total(const qb_context* ctx, int n, qb_spin spin,
                          const qb_field* field, qb_energy_record* out) {
  if (auto st = require(ctx && field && out, "null argument")) return st;
  return guarded([&] {
    const qbouncer::EnergyRecord r = qbouncer::total_energy(
        ctx->constants, ctx->scales, n, to_core(spin), to_core(*field));
    out->level = r.level;
    out->energy_J = r.energy;
    out->gravitational_J = r.gravitational;
    out->total_J = r.total;
  });
}

qb_status qb_splitting(const qb_context* ctx, int n, const qb_field* field,
                       double* out_J) {
  if (auto st = require(ctx && field && out_J, "null argument")) return st;
  return guarded(
      [&] { *out_J = qbouncer::splitting(ctx->scales, n, to_core(*field)); });
}

qb_status qb_level_shift(const qb_context* ctx, int n, const qb_field* field,
                         double* out_J) {
  if (auto st = require(ctx && field && out_J, "null argument")) return st;
  return guarded(
      [&] { *out_J = qbouncer::level_shift(ctx->scales, n, to_core(*field)); });
}

qb_status qb_resonance_frequency(const qb_context* ctx, int n_from, int n_to,
                                 double* out_rad_s) {
  if (auto st = require(ctx && out_rad_s, "null argument")) return st;
  return guarded([&] {
    *out_rad_s = qbouncer::resonance_frequency(ctx->scales, n_from, n_to);
  });
}

qb_status qb_rabi_frequency(const qb_context* ctx, int n, double accel_m_s2,
                            double* out_rad_s) {
  if (auto st = require(ctx && out_rad_s, "null argument")) return st;
  return guarded([&] {
    *out_rad_s =
        qbouncer::rabi_frequency(ctx->constants, ctx->scales, n, accel_m_s2);
  });
}

qb_status qb_pi_pulse_time(const qb_context* ctx, int n, double accel_m_s2,
                           double* out_s) {
  if (auto st = require(ctx && out_s, "null argument")) return st;
  return guarded([&] {
    *out_s = qbouncer::pi_pulse_time(ctx->constants, ctx->scales, n, accel_m_s2);
  });
}

qb_status qb_precession_phase(const qb_context* ctx, double t_s,
                              const qb_field* field, int n, double* out_rad) {
  if (auto st = require(ctx && field && out_rad, "null argument")) return st;
  return guarded([&] {
    *out_rad = qbouncer::precession_phase(ctx->constants, ctx->scales, t_s, n,
                                          to_core(*field));
  });
}

qb_status qb_interference_probability(const qb_context* ctx, double t_s,
                                      const qb_field* field, int n,
                                      int include_visibility, double* out) {
  if (auto st = require(ctx && field && out, "null argument")) return st;
  return guarded([&] {
    *out = qbouncer::interference_probability(ctx->constants, ctx->scales, t_s,
                                              n, to_core(*field),
                                              include_visibility != 0);
  });
}

qb_status qb_visibility(const qb_context* ctx, double t_s,
                        const qb_field* field, int n, double* out) {
  if (auto st = require(ctx && field && out, "null argument")) return st;
  return guarded([&] {
    *out = qbouncer::visibility(ctx->constants, ctx->scales, t_s, n,
                                to_core(*field));
  });
}

qb_status qb_qfi_coefficients(const qb_context* ctx, int n, double* alpha,
                              double* beta, double* gamma) {
  if (auto st = require(ctx && alpha && beta && gamma, "null argument"))
    return st;
  return guarded([&] {
    const qbouncer::CoefficientSet cs =
        qbouncer::qfi_coefficients(ctx->constants, ctx->scales, n);
    *alpha = cs.alpha;
    *beta = cs.beta;
    *gamma = cs.gamma;
  });
}

qb_status qb_qfi_variance_coefficient(const qb_context* ctx, int n,
                                      double* K) {
  if (auto st = require(ctx && K, "null argument")) return st;
  return guarded(
      [&] { *K = qbouncer::qfi_variance_coefficient(ctx->scales, n); });
}

namespace {

qbouncer::QfiModel to_core_model(qb_qfi_model model) {
  switch (model) {
    case QB_QFI_FULL:
      return qbouncer::QfiModel::FullAnalytic;
    case QB_QFI_SHORT_TIME:
      return qbouncer::QfiModel::ShortTime;
    case QB_QFI_SEMICLASSICAL:
      return qbouncer::QfiModel::Semiclassical;
    case QB_QFI_FREE_FALL:
      return qbouncer::QfiModel::FreeFall;
  }
  throw qbouncer::ValidationError("unknown QFI model");
}

}  // namespace

qb_status qb_qfi_value(const qb_context* ctx, qb_qfi_model model, int n,
                       double t_s, double* out) {
  if (auto st = require(ctx && out, "null argument")) return st;
  return guarded([&] {
    switch (to_core_model(model)) {
      case qbouncer::QfiModel::FullAnalytic:
        *out = qbouncer::qfi_full(ctx->constants, ctx->scales, n, t_s);
        break;
      case qbouncer::QfiModel::ShortTime:
        *out = qbouncer::qfi_short_time(ctx->constants, ctx->scales, n, t_s);
        break;
      case qbouncer::QfiModel::Semiclassical:
        *out = qbouncer::qfi_semiclassical(ctx->constants, ctx->scales, n, t_s);
        break;
      default:
        throw qbouncer::ValidationError(
            "use qb_qfi_freefall_gaussian for the free-fall model");
    }
  });
}

qb_status qb_qfi_improvement_ratio(const qb_context* ctx, qb_qfi_model model,
                                   int n, double t_s, double* out) {
  if (auto st = require(ctx && out, "null argument")) return st;
  return guarded([&] {
    *out = qbouncer::improvement_ratio(ctx->constants, ctx->scales,
                                       to_core_model(model), n, t_s);
  });
}

qb_status qb_spin_sensitivity(const qb_context* ctx, int n, double t_s,
                              double n_atoms, double* out) {
  if (auto st = require(ctx && out, "null argument")) return st;
  return guarded([&] {
    *out = qbouncer::sensitivity_spin(ctx->constants, ctx->scales, n, t_s,
                                      n_atoms);
  });
}

qb_status qb_cramer_rao(double fisher, double n_atoms, double* out) {
  if (auto st = require(out != nullptr, "null output")) return st;
  return guarded([&] { *out = qbouncer::cramer_rao(fisher, n_atoms); });
}

qb_status qb_qfi_freefall_window(const qb_context* ctx, int n, double* out_s) {
  if (auto st = require(ctx && out_s, "null argument")) return st;
  return guarded([&] {
    *out_s = qbouncer::qfi_freefall_window(ctx->constants, ctx->scales, n);
  });
}

qb_status qb_freefall_phase(const qb_context* ctx, double t_s, double delta,
                            double* out_rad) {
  if (auto st = require(ctx && out_rad, "null argument")) return st;
  return guarded(
      [&] { *out_rad = qbouncer::freefall_phase(ctx->constants, t_s, delta); });
}

qb_status qb_freefall_sensitivity(const qb_context* ctx, double t_s,
                                  double n_atoms, double repeats,
                                  double* out) {
  if (auto st = require(ctx && out, "null argument")) return st;
  return guarded([&] {
    *out = qbouncer::freefall_sensitivity(ctx->constants, t_s, n_atoms, repeats);
  });
}

qb_status qb_qfi_freefall_gaussian(const qb_context* ctx, double sigma_m,
                                   double t_s, double* out) {
  if (auto st = require(ctx && out, "null argument")) return st;
  return guarded([&] {
    *out = qbouncer::qfi_freefall_gaussian(ctx->constants, sigma_m, t_s);
  });
}

qb_status qb_freefall_overlap(const qb_context* ctx, double sigma_m,
                              double z0_m, double p_mean_kg_m_s, double t_s,
                              double delta, double* out_re, double* out_im) {
  if (auto st = require(ctx && out_re && out_im, "null argument")) return st;
  return guarded([&] {
    const std::complex<double> v = qbouncer::freefall_overlap(
        ctx->constants, sigma_m, z0_m, p_mean_kg_m_s, t_s, delta);
    *out_re = v.real();
    *out_im = v.imag();
  });
}

qb_status qb_grid_create(const qb_context* ctx, const qb_grid_spec* spec,
                         qb_grid** out) {
  if (auto st = require(ctx && spec && out, "null argument")) return st;
  return guarded([&] {
    *out = new qb_grid{
        qbouncer::Grid(ctx->constants, ctx->scales, to_core(*spec))};
  });
}

void qb_grid_destroy(qb_grid* grid) { delete grid; }

qb_status qb_grid_load_eigenstate(qb_grid* grid, int n) {
  if (auto st = require(grid != nullptr, "null grid")) return st;
  return guarded([&] { grid->grid.load_eigenstate(n); });
}

qb_status qb_grid_load_gaussian(qb_grid* grid, double sigma_m, double z0_m,
                                double p_mean_kg_m_s) {
  if (auto st = require(grid != nullptr, "null grid")) return st;
  return guarded([&] { grid->grid.load_gaussian(sigma_m, z0_m, p_mean_kg_m_s); });
}

qb_status qb_grid_evolve(qb_grid* grid, double duration_s, double delta,
                         qb_spin spin) {
  if (auto st = require(grid != nullptr, "null grid")) return st;
  return guarded([&] { grid->grid.evolve(duration_s, delta, to_core(spin)); });
}

qb_status qb_grid_time(const qb_grid* grid, double* out_s) {
  if (auto st = require(grid && out_s, "null argument")) return st;
  *out_s = grid->grid.time();
  return QB_OK;
}

qb_status qb_grid_norm(const qb_grid* grid, double* out) {
  if (auto st = require(grid && out, "null argument")) return st;
  return guarded([&] { *out = grid->grid.norm(); });
}

qb_status qb_grid_mean_z(const qb_grid* grid, double* out_m) {
  if (auto st = require(grid && out_m, "null argument")) return st;
  return guarded([&] { *out_m = grid->grid.mean_z(); });
}

qb_status qb_grid_energy(const qb_grid* grid, double* out_J) {
  if (auto st = require(grid && out_J, "null argument")) return st;
  return guarded([&] { *out_J = grid->grid.energy(); });
}

qb_status qb_grid_overlap(const qb_grid* a, const qb_grid* b, double* out_re,
                          double* out_im) {
  if (auto st = require(a && b && out_re && out_im, "null argument")) return st;
  return guarded([&] {
    const std::complex<double> v = qbouncer::Grid::overlap(a->grid, b->grid);
    *out_re = v.real();
    *out_im = v.imag();
  });
}

qb_status qb_qfi_numeric(const qb_context* ctx, const qb_grid_spec* spec,
                         int n, const double* times_s, int n_times,
                         double epsilon, double* out_values, int* out_flags) {
  if (auto st = require(ctx && spec && times_s && out_values && n_times > 0,
                        "null argument"))
    return st;
  return guarded([&] {
    const std::vector<double> times(times_s, times_s + n_times);
    std::vector<int> flags;
    const qbouncer::QfiCurve curve =
        qbouncer::qfi_numeric(ctx->constants, ctx->scales, to_core(*spec), n,
                              times, epsilon, &flags);
    for (int i = 0; i < n_times; ++i) {
      out_values[i] = curve.values[i];
      if (out_flags) out_flags[i] = flags[i];
    }
  });
}

qb_status qb_check_run(const qb_context* ctx, double tighten, char** out_json,
                       int* out_failed) {
  if (auto st = require(ctx && out_json, "null argument")) return st;
  return guarded([&] {
    const std::vector<qbouncer::CheckResult> checks =
        qbouncer::run_checks(ctx->constants, tighten);
    const std::string json = qbouncer::checks_to_json(checks, tighten);
    int failed = 0;
    for (const auto& r : checks)
      if (!r.pass) ++failed;
    char* buf = new char[json.size() + 1];
    std::memcpy(buf, json.c_str(), json.size() + 1);
    *out_json = buf;
    if (out_failed) *out_failed = failed;
  });
}

void qb_string_free(char* s) { delete[] s; }

}  // extern "C"
