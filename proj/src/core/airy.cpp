#include "airy.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace qbouncer {

namespace {

// Ai(0) = 3^(-2/3)/Gamma(2/3), Ai'(0) = -3^(-1/3)/Gamma(1/3)
const long double kAi0 = 0.3550280538878172392600632L;
const long double kAip0 = -0.2588194037928067984051836L;
const double kSqrtPi = 1.7724538509055160272981675;

constexpr double kSeriesLimit = 8.0;  // series/asymptotic switchover

// Maclaurin solutions of y'' = x y:
//   f = 1 + x^3/6 + ...,  g = x + x^4/12 + ...
// Terms are accumulated in 80-bit long double: the partial sums reach ~1e6
// near |x| = 8 while the result can be ~1e-8, so the extra mantissa keeps
// the cancellation error near 1e-13 absolute.
struct SeriesSums {
  long double f = 0, g = 0;    // function values
  long double fp = 0, gp = 0;  // first derivatives
  long double f2 = 0, g2 = 0;  // second derivatives (independent sums)
};

SeriesSums maclaurin(double xd) {
  const long double x = xd;
  const long double x3 = x * x * x;
  SeriesSums s;
  long double tf = 1.0L;  // f term: x^{3k} coefficient * x^{3k}
  long double tg = x;     // g term: x^{3k+1}
  s.f = tf;
  s.g = tg;
  s.gp = 1.0L;  // g' leading term (k=0): 1
  // f' k=0 term is 0; f'' k=0 term is 0; g'' k=0 term is 0.
  for (int k = 1; k < 120; ++k) {
    const long double threek = 3.0L * k;
    tf *= x3 / (threek * (threek - 1.0L));
    tg *= x3 / ((threek + 1.0L) * threek);
    s.f += tf;
    s.g += tg;
    // d/dx of x^{3k} and x^{3k+1} terms
    const long double tfp = tf * threek / x;
    const long double tgp = tg * (threek + 1.0L) / x;
    s.fp += tfp;
    s.gp += tgp;
    s.f2 += tfp * (threek - 1.0L) / x;
    s.g2 += tgp * threek / x;
    if (fabsl(tf) < 1e-25L && fabsl(tg) < 1e-25L && k > 4) break;
  }
  return s;
}

double series_ai(double x) {
  if (x == 0.0) return static_cast<double>(kAi0);
  SeriesSums s = maclaurin(x);
  return static_cast<double>(kAi0 * s.f + kAip0 * s.g);
}

double series_ai_prime(double x) {
  if (x == 0.0) return static_cast<double>(kAip0);
  SeriesSums s = maclaurin(x);
  return static_cast<double>(kAi0 * s.fp + kAip0 * s.gp);
}

double series_ai_second(double x) {
  if (x == 0.0) return 0.0;
  SeriesSums s = maclaurin(x);
  return static_cast<double>(kAi0 * s.f2 + kAip0 * s.g2);
}

// Asymptotic coefficients u_k (for Ai) and v_k (for Ai'), DLMF 9.7.
constexpr int kAsymTerms = 42;
struct AsymCoeffs {
  double u[kAsymTerms];
  double v[kAsymTerms];
  AsymCoeffs() {
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 1; k < kAsymTerms; ++k) {
      u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
             (216.0 * k * (2.0 * k - 1.0));
      v[k] = u[k] * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    }
  }
};
const AsymCoeffs kC;

// Sums the alternating series sum_k (-1)^k c_k / zeta^k to its smallest
// term. der accumulates the zeta-derivative sum_k (-1)^{k+1} k c_k zeta^-k-1.
double asym_sum(const double* c, double zeta, double* der = nullptr) {
  double sum = c[0];
  double dsum = 0.0;
  double pow = 1.0;
  double prev = 1.0;
  for (int k = 1; k < kAsymTerms; ++k) {
    pow /= zeta;
    const double term = ((k & 1) ? -1.0 : 1.0) * c[k] * pow;
    if (std::fabs(term) > prev) break;  // divergence onset
    sum += term;
    dsum += -term * k / zeta;
    prev = std::fabs(term);
    if (prev < 1e-18) break;
  }
  if (der) *der = dsum;
  return sum;
}

// x >= kSeriesLimit branch.
void asym_pos(double x, double* ai, double* aip, double* aipp) {
  const double sx = std::sqrt(x);
  const double zeta = 2.0 / 3.0 * x * sx;
  const double e = std::exp(-zeta);
  const double q = std::pow(x, 0.25);
  double dsb;
  const double sa = asym_sum(kC.u, zeta);
  const double sb = asym_sum(kC.v, zeta, &dsb);
  if (ai) *ai = e / (2.0 * kSqrtPi * q) * sa;
  if (aip) *aip = -q * e / (2.0 * kSqrtPi) * sb;
  // Differentiate the Ai' expansion once more (independent of Ai'' = x Ai):
  // Ai'' = (x^{3/4} e^-zeta / 2 sqrt(pi)) [ S_B (1 - 1/(6 zeta)) - S_B' ]
  if (aipp)
    *aipp = std::pow(x, 0.75) * e / (2.0 * kSqrtPi) *
            (sb * (1.0 - 1.0 / (6.0 * zeta)) - dsb);
}

// x <= -kSeriesLimit branch: oscillatory form with phase zeta - pi/4.
void asym_neg(double x, double* ai, double* aip, double* aipp) {
  const double t = -x;
  const double st = std::sqrt(t);
  const double zeta = 2.0 / 3.0 * t * st;
  const double w = zeta - 0.25 * M_PI;
  const double cw = std::cos(w);
  const double sw = std::sin(w);
  const double q = std::pow(t, 0.25);

  // Split u and v into even/odd subsequences of the alternating series.
  double pe = 0, po = 0, re = 0, ro = 0, dre = 0, dro = 0;
  {
    double powz = 1.0;
    double prev = 1e300;
    for (int k = 0; 2 * k + 1 < kAsymTerms; ++k) {
      const double sgn = (k & 1) ? -1.0 : 1.0;
      const double te = sgn * kC.u[2 * k] * powz;
      if (std::fabs(te) > prev) break;  // divergence onset
      prev = std::fabs(te);
      const double tre = sgn * kC.v[2 * k] * powz;
      const double to = sgn * kC.u[2 * k + 1] * powz / zeta;
      const double tro = sgn * kC.v[2 * k + 1] * powz / zeta;
      pe += te;
      po += to;
      re += tre;
      ro += tro;
      dre += -tre * (2.0 * k) / zeta;
      dro += -tro * (2.0 * k + 1.0) / zeta;
      powz /= zeta * zeta;
      if (prev < 1e-18 && k > 2) break;
    }
  }
  if (ai) *ai = (cw * pe + sw * po) / (kSqrtPi * q);
  if (aip) *aip = q / kSqrtPi * (sw * re - cw * ro);
  // Ai''(x) = -d/dt [Ai'(-t)]
  if (aipp)
    *aipp = -((sw * re - cw * ro) / (4.0 * std::pow(t, 0.75)) +
              std::pow(t, 0.75) * (cw * (re - dro) + sw * (dre + ro))) /
            kSqrtPi;
}

}  // namespace

double airy_ai(double x) {
  if (!std::isfinite(x)) throw ValidationError("airy_ai: non-finite argument");
  if (std::fabs(x) <= kSeriesLimit) return series_ai(x);
  double ai;
  if (x > 0)
    asym_pos(x, &ai, nullptr, nullptr);
  else
    asym_neg(x, &ai, nullptr, nullptr);
  return ai;
}

double airy_ai_prime(double x) {
  if (!std::isfinite(x))
    throw ValidationError("airy_ai_prime: non-finite argument");
  if (std::fabs(x) <= kSeriesLimit) return series_ai_prime(x);
  double aip;
  if (x > 0)
    asym_pos(x, nullptr, &aip, nullptr);
  else
    asym_neg(x, nullptr, &aip, nullptr);
  return aip;
}

double airy_ai_second(double x) {
  if (!std::isfinite(x))
    throw ValidationError("airy_ai_second: non-finite argument");
  if (std::fabs(x) <= kSeriesLimit) return series_ai_second(x);
  double aipp;
  if (x > 0)
    asym_pos(x, nullptr, nullptr, &aipp);
  else
    asym_neg(x, nullptr, nullptr, &aipp);
  return aipp;
}

double airy_zero(int n) {
  if (n < 1) throw ValidationError("airy_zero: level index must be >= 1");
  // Seed from the McMahon-style expansion of the zero at t = 3 pi (4n-1)/8.
  const double t = 3.0 * M_PI * (4.0 * n - 1.0) / 8.0;
  const double t2 = t * t;
  const double seed =
      -std::pow(t, 2.0 / 3.0) *
      (1.0 + (5.0 / 48.0 - (5.0 / 36.0 - 77125.0 / (82944.0 * t2)) / t2) / t2);

  // Bracket around the seed at a fraction of the local zero spacing pi/sqrt|x|.
  const double h = 0.35 * M_PI / std::sqrt(-seed);
  double lo = seed - h, hi = seed + h;
  double flo = airy_ai(lo), fhi = airy_ai(hi);
  if (flo * fhi > 0.0)
    throw ConvergenceError("airy_zero: bracketing failed for n=" +
                           std::to_string(n));

  double x = seed;
  double fx = airy_ai(x);
  for (int it = 0; it < 80; ++it) {
    const double dfx = airy_ai_prime(x);
    double next = x - fx / dfx;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisect fallback
    const double fnext = airy_ai(next);
    if (fnext * flo < 0.0) {
      hi = next;
      fhi = fnext;
    } else {
      lo = next;
      flo = fnext;
    }
    const double step = std::fabs(next - x);
    x = next;
    fx = fnext;
    if (step < 1e-15 * std::fabs(x) || fx == 0.0) return x;
  }
  if (std::fabs(fx) < 1e-12) return x;
  throw ConvergenceError("airy_zero: Newton failed for n=" + std::to_string(n));
}

}  // namespace qbouncer
