#ifndef QBOUNCER_CORE_AIRY_HPP
#define QBOUNCER_CORE_AIRY_HPP

namespace qbouncer {

// Airy function of the first kind and derivatives, built from scratch:
// Maclaurin series in extended precision for |x| <= 8, Poincare asymptotic
// expansions beyond (exponential branch for x > 8, oscillatory branch with
// phase function for x < -8). Absolute accuracy ~1e-13 on [-40, +inf);
// underflows to 0 for x beyond ~+106.
double airy_ai(double x);
double airy_ai_prime(double x);

// Second derivative evaluated through its own expansion route (series term
// sums / differentiated asymptotics), deliberately NOT via the identity
// Ai'' = x Ai, so the differential-equation residual is a genuine
// cross-check of the two routes.
double airy_ai_second(double x);

// n-th negative zero of Ai (n >= 1), asymptotic seed plus safeguarded
// Newton with bisection fallback; accurate to ~1e-14 relative.
double airy_zero(int n);

}  // namespace qbouncer

#endif
