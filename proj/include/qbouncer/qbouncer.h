/* qbouncer -- gravitationally bound neutron states with spin-dependent
 * mass-energy corrections: spectra, spin interferometry, quantum Fisher
 * information, and grid-based wavepacket propagation.
 *
 * C API of the shared library. All functions are thread-safe as long as a
 * given qb_context / qb_grid instance is not used from two threads at once;
 * contexts are immutable after creation and may be shared freely.
 *
 * Conventions:
 *   - SI units everywhere at this boundary (kg, m, s, J, T, rad/s).
 *   - Functions return QB_OK on success; on failure they return an error
 *     code and leave outputs untouched. qb_last_error() gives a message
 *     for the calling thread.
 */
#ifndef QBOUNCER_H
#define QBOUNCER_H

#ifdef __cplusplus
extern "C" {
#endif

#define QBOUNCER_VERSION_MAJOR 0
#define QBOUNCER_VERSION_MINOR 1
#define QBOUNCER_VERSION_PATCH 0
#define QBOUNCER_VERSION_STRING "0.1.0"

typedef enum qb_status {
  QB_OK = 0,
  QB_ERROR_VALIDATION = 2,
  QB_ERROR_CONVERGENCE = 3,
  QB_ERROR_IO = 4
} qb_status;

typedef enum qb_spin { QB_SPIN_UP = 1, QB_SPIN_DOWN = -1 } qb_spin;

typedef enum qb_energy_method {
  QB_ENERGY_BINOMIAL = 0,   /* E_n (1 +/- delta/3)                      */
  QB_ENERGY_EXACT_ROOT = 1, /* E_n (1 +/- delta)^(1/3), exact root      */
  QB_ENERGY_PERTURBATION = 2 /* E_n +/- delta <-T+V>, quadrature route  */
} qb_energy_method;

typedef enum qb_qfi_model {
  QB_QFI_FULL = 0,          /* bound-state variance formula             */
  QB_QFI_SHORT_TIME = 1,    /* K t^2 E_n^2 / hbar^2                     */
  QB_QFI_SEMICLASSICAL = 2, /* 4 t^2 E_n^2 / (9 hbar^2)                 */
  QB_QFI_FREE_FALL = 3      /* Gaussian free-fall closed form           */
} qb_qfi_model;

/* Observables for diagonal expectation values in a bound state.
 * Odd momentum powers are principal-value moments (zero for the real
 * bound states up to quadrature noise). */
typedef enum qb_observable {
  QB_OBS_Z_POW = 0,     /* <z^k>, k = order, k <= 6                     */
  QB_OBS_P_POW = 1,     /* <p^k>, k = order, k <= 6                     */
  QB_OBS_SYM_ZP = 2,    /* <z p + p z>                                  */
  QB_OBS_SYM_P2Z = 3,   /* <p^2 z + z p^2>                              */
  QB_OBS_HPRIME_POW = 4 /* <(-p^2/2m + m g z)^k>, k <= 2                */
} qb_observable;

typedef struct qb_constants {
  double mass_kg;             /* neutron mass                           */
  double gravity_m_s2;        /* local gravitational acceleration       */
  double hbar_J_s;            /* reduced Planck constant                */
  double light_speed_m_s;     /* speed of light                         */
  double magnetic_moment_J_T; /* neutron magnetic moment magnitude      */
} qb_constants;

typedef struct qb_scales {
  double length_m;        /* lambda = (hbar^2 / 2 m^2 g)^(1/3)          */
  double energy_J;        /* eps0   = (m g^2 hbar^2 / 2)^(1/3)          */
  double time_s;          /* t0     = hbar / eps0                       */
  double momentum_kg_m_s; /* p0     = hbar / lambda                     */
} qb_scales;

typedef struct qb_field {
  double field_tesla;   /* applied magnetic field B                     */
  double larmor_rad_s;  /* omega0, with hbar omega0 = 2 mu_n B          */
  double delta;         /* hbar omega0 / (2 m c^2)                      */
} qb_field;

typedef struct qb_energy_record {
  int level;
  double energy_J;           /* unperturbed E_n                         */
  double gravitational_J;    /* E_{n,s} including the mass shift        */
  double total_J;            /* E_{n,s} +/- hbar omega0 / 2             */
} qb_energy_record;

typedef struct qb_grid_spec {
  double z_max_m;  /* domain height, Dirichlet walls at 0 and z_max     */
  int points;      /* >= 512 grid points                                */
  double dt_s;     /* Crank-Nicolson time step                          */
} qb_grid_spec;

typedef struct qb_context qb_context;
typedef struct qb_grid qb_grid;

/* ---- context ------------------------------------------------------- */

qb_constants qb_constants_default(void);
qb_status qb_context_create(const qb_constants* constants, qb_context** out);
void qb_context_destroy(qb_context* ctx);
qb_status qb_context_constants(const qb_context* ctx, qb_constants* out);
qb_status qb_context_scales(const qb_context* ctx, qb_scales* out);

/* Message describing the most recent failure on the calling thread. */
const char* qb_last_error(void);
const char* qb_version(void);

/* ---- Airy machinery (stateless) ------------------------------------ */

qb_status qb_airy_ai(double x, double* out);
qb_status qb_airy_ai_prime(double x, double* out);
/* n-th negative zero of Ai (n >= 1), absolute accuracy ~1e-12 */
qb_status qb_airy_zero(int n, double* out);

/* ---- eigenbasis ----------------------------------------------------- */

/* psi_n(z) in m^(-1/2); zero for z < 0. */
qb_status qb_eigenstate_eval(const qb_context* ctx, int n, double z_m, double* out);
/* Diagonal expectation <psi_n| obs |psi_n>; odd-p and z*p observables
 * may carry an imaginary part at quadrature-noise level. */
qb_status qb_expectation(const qb_context* ctx, int n, qb_observable obs,
                         int order, double* out_re, double* out_im);
/* <psi_m| z |psi_n>, m != n, in metres. */
qb_status qb_matrix_element_z(const qb_context* ctx, int m, int n, double* out);
/* <psi_m|psi_n> by quadrature (orthonormality probe). */
qb_status qb_state_overlap(const qb_context* ctx, int m, int n, double* out);

/* ---- spectrum with mass-energy correction --------------------------- */

qb_status qb_energy(const qb_context* ctx, int n, double* out_J);
qb_status qb_field_from_tesla(const qb_context* ctx, double tesla, qb_field* out);
/* allow_inflated permits desk-scale delta up to 0.5 for validation runs. */
qb_status qb_field_from_delta(const qb_context* ctx, double delta,
                              int allow_inflated, qb_field* out);
qb_status qb_energy_corrected(const qb_context* ctx, int n, qb_spin spin,
                              double delta, qb_energy_method method,
                              double* out_J);
qb_status qb_energy_total(const qb_context* ctx, int n, qb_spin spin,
                          const qb_field* field, qb_energy_record* out);
/* E_{n,up} - E_{n,down} = (2/3) delta E_n */
qb_status qb_splitting(const qb_context* ctx, int n, const qb_field* field,
                       double* out_J);
/* E_{n,up} - E_n = (delta/3) E_n, evaluated without cancellation. */
qb_status qb_level_shift(const qb_context* ctx, int n, const qb_field* field,
                         double* out_J);

/* ---- spin interferometry -------------------------------------------- */

qb_status qb_resonance_frequency(const qb_context* ctx, int n_from, int n_to,
                                 double* out_rad_s);
/* Omega_R,n = m a |<psi_1| z |psi_n>| / hbar for vibration strength a. */
qb_status qb_rabi_frequency(const qb_context* ctx, int n, double accel_m_s2,
                            double* out_rad_s);
qb_status qb_pi_pulse_time(const qb_context* ctx, int n, double accel_m_s2,
                           double* out_s);
/* theta(t) = t (omega0 + (2/3) delta E_n / hbar) */
qb_status qb_precession_phase(const qb_context* ctx, double t_s,
                              const qb_field* field, int n, double* out_rad);
qb_status qb_interference_probability(const qb_context* ctx, double t_s,
                                      const qb_field* field, int n,
                                      int include_visibility, double* out);
/* Second-order visibility; fails with QB_ERROR_VALIDATION outside the
 * small-argument window (delta E_n t / hbar <= 0.1). */
qb_status qb_visibility(const qb_context* ctx, double t_s,
                        const qb_field* field, int n, double* out);

/* ---- quantum Fisher information ------------------------------------- */

/* alpha_n = g^2 <p^2> / E_n^2, beta_n = (2 m g^2 / 3 E_n^2) <-T + V>,
 * gamma_n = m^2 g^4 / (9 E_n^2); first two by quadrature. */
qb_status qb_qfi_coefficients(const qb_context* ctx, int n, double* alpha,
                              double* beta, double* gamma);
/* K = 4 <(-T+V)^2> / E_n^2 (the short-time QFI prefactor, ~1.9). */
qb_status qb_qfi_variance_coefficient(const qb_context* ctx, int n, double* K);
/* F_Q(t) per unit delta^2 for the analytic models (not FREE_FALL). */
qb_status qb_qfi_value(const qb_context* ctx, qb_qfi_model model, int n,
                       double t_s, double* out);
/* (3/2) sqrt(F_Q hbar^2 / t^2 E_n^2) */
qb_status qb_qfi_improvement_ratio(const qb_context* ctx, qb_qfi_model model,
                                   int n, double t_s, double* out);
/* Spin-only shot-noise sensitivity (1/sqrt(N)) (2 t E_n / 3 hbar)^(-1). */
qb_status qb_spin_sensitivity(const qb_context* ctx, int n, double t_s,
                              double n_atoms, double* out);
qb_status qb_cramer_rao(double fisher, double n_atoms, double* out);
/* Advisory time window sqrt(2 <z>_n / g) within which the free-fall
 * treatment of a bound state is trustworthy. */
qb_status qb_qfi_freefall_window(const qb_context* ctx, int n, double* out_s);

/* ---- free-fall branch ------------------------------------------------ */

/* phi_g = (2 delta / 3) m g^2 t^3 / hbar */
qb_status qb_freefall_phase(const qb_context* ctx, double t_s, double delta,
                            double* out_rad);
qb_status qb_freefall_sensitivity(const qb_context* ctx, double t_s,
                                  double n_atoms, double repeats, double* out);
/* Gaussian-packet QFI, closed form; packet at rest (zero mean momentum). */
qb_status qb_qfi_freefall_gaussian(const qb_context* ctx, double sigma_m,
                                   double t_s, double* out);
/* Overlap of the spin-up motional branch against spin-down after free
 * flight from height z0 with mean momentum p_mean: C exp(i phi_g) up to
 * the documented drift, dispersion and height phases. */
qb_status qb_freefall_overlap(const qb_context* ctx, double sigma_m,
                              double z0_m, double p_mean_kg_m_s, double t_s,
                              double delta, double* out_re, double* out_im);

/* ---- grid propagation ------------------------------------------------ */

qb_status qb_grid_create(const qb_context* ctx, const qb_grid_spec* spec,
                         qb_grid** out);
void qb_grid_destroy(qb_grid* grid);
qb_status qb_grid_load_eigenstate(qb_grid* grid, int n);
qb_status qb_grid_load_gaussian(qb_grid* grid, double sigma_m, double z0_m,
                                double p_mean_kg_m_s);
/* Crank-Nicolson evolution under p^2/2m(1 +/- delta) + m(1 +/- delta) g z
 * with Dirichlet walls; sign from spin. */
qb_status qb_grid_evolve(qb_grid* grid, double duration_s, double delta,
                         qb_spin spin);
qb_status qb_grid_time(const qb_grid* grid, double* out_s);
qb_status qb_grid_norm(const qb_grid* grid, double* out);
qb_status qb_grid_mean_z(const qb_grid* grid, double* out_m);
/* <H0> via the same finite-difference Hamiltonian the evolution uses. */
qb_status qb_grid_energy(const qb_grid* grid, double* out_J);
qb_status qb_grid_overlap(const qb_grid* a, const qb_grid* b, double* out_re,
                          double* out_im);
/* Numeric QFI for eigenstate n by central epsilon-differencing of the
 * spin (x) motion state. out_flags[i] nonzero marks a point that failed
 * the epsilon-halving convergence test (changed by more than 5%). */
qb_status qb_qfi_numeric(const qb_context* ctx, const qb_grid_spec* spec,
                         int n, const double* times_s, int n_times,
                         double epsilon, double* out_values, int* out_flags);

/* ---- invariant suite -------------------------------------------------- */

/* Runs every module's invariant checks. Returns a JSON report (caller frees
 * with qb_string_free); *out_failed receives the number of failed checks.
 * tighten > 1 shrinks every tolerance by that factor. */
qb_status qb_check_run(const qb_context* ctx, double tighten,
                       char** out_json, int* out_failed);
void qb_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QBOUNCER_H */
