#ifndef QBOUNCER_CORE_QUADRATURE_HPP
#define QBOUNCER_CORE_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "errors.hpp"

namespace qbouncer {

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1, 1]. Positive abscissae; the odd-index
// Kronrod nodes coincide with the 7-point Gauss nodes.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(F&& f, double a, double b, double* value, double* error) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kKronrodNodes[i];
    const double fsum = f(c - dx) + f(c + dx);
    kron += kKronrodWeights[i] * fsum;
    if (i & 1) gauss += kGaussWeights[i / 2] * fsum;
  }
  *value = kron * h;
  *error = std::fabs((kron - gauss) * h);
}

}  // namespace detail

// Adaptive bisection driven by the Gauss-Kronrod error estimate. Throws
// ConvergenceError if the interval budget is exhausted before reaching
// max(abs_tol, rel_tol * |integral|).
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-13,
                 double rel_tol = 1e-11, int max_intervals = 4000) {
  struct Piece {
    double a, b, value, error;
  };
  std::vector<Piece> pieces;
  Piece first{a, b, 0, 0};
  detail::gk15(f, a, b, &first.value, &first.error);
  pieces.push_back(first);
  double total = first.value;
  double err = first.error;

  while (err > std::max(abs_tol, rel_tol * std::fabs(total))) {
    if (static_cast<int>(pieces.size()) >= max_intervals)
      throw ConvergenceError("quadrature failed to converge");
    auto worst = std::max_element(
        pieces.begin(), pieces.end(),
        [](const Piece& x, const Piece& y) { return x.error < y.error; });
    const Piece w = *worst;
    const double mid = 0.5 * (w.a + w.b);
    Piece left{w.a, mid, 0, 0}, right{mid, w.b, 0, 0};
    detail::gk15(f, left.a, left.b, &left.value, &left.error);
    detail::gk15(f, right.a, right.b, &right.value, &right.error);
    *worst = left;
    pieces.push_back(right);
    total += left.value + right.value - w.value;
    err += left.error + right.error - w.error;
  }
  // Re-sum once for a cleaner value (the incremental total accumulates
  // cancellation noise over many splits).
  total = 0.0;
  for (const Piece& p : pieces) total += p.value;
  return total;
}

}  // namespace qbouncer

#endif
