#include "equimax/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace equimax {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;
constexpr double kHalfLog2Pi = 0.9189385332046727417803297364056176;
constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490;

// Below this point log Phi and the Mill's ratio run through the asymptotic
// expansion Phi(x) = phi(x)/(-x) * S(x) instead of erfc.
constexpr double kTailCutoff = -10.0;

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(name) + " must be finite");
  }
}

// S(x) = 1 - 1/x^2 + 3/x^4 - 15/x^6 + ...; for x <= -10 the alternating
// series reaches machine precision well before its divergent tail.
double tail_series(double x) {
  const double inv_x2 = 1.0 / (x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 64; ++n) {
    term *= -(2.0 * n - 1.0) * inv_x2;
    const double prev = sum;
    sum += term;
    if (sum == prev) break;
  }
  return sum;
}

// 1 - S(x) = 1/x^2 - 3/x^4 + 15/x^6 - ...; summed directly so that
// x + m(x) does not cancel catastrophically for very negative x.
double tail_series_defect(double x) {
  const double inv_x2 = 1.0 / (x * x);
  double term = inv_x2;
  double sum = inv_x2;
  for (int n = 2; n < 64; ++n) {
    term *= -(2.0 * n - 1.0) * inv_x2;
    const double prev = sum;
    sum += term;
    if (sum == prev) break;
  }
  return sum;
}

// Wichura's AS241 (PPND16) rational approximations, good to ~1e-15 on their
// own; a Newton step afterwards removes the residual.
double quantile_as241(double p) {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
              6.7265770927008700853e+4) *
                 r +
             4.5921953931549871457e+4) *
                r +
            1.3731693765509461125e+4) *
               r +
           1.9715909503065514427e+3) *
              r +
          1.3314166789178437745e+2) *
             r +
         3.3871328727963666080e+0);
    const double den =
        (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
              3.9307895800092710610e+4) *
                 r +
             2.1213794301586595867e+4) *
                r +
            5.3941960214247511077e+3) *
               r +
           6.8718700749205790830e+2) *
              r +
          4.2313330701600911252e+1) *
             r +
         1.0);
    return q * num / den;
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) *
                 r +
             1.27045825245236838258e+0) *
                r +
            3.64784832476320460504e+0) *
               r +
           5.76949722146069140550e+0) *
              r +
          4.63033784615654529590e+0) *
             r +
         1.42343711074968357734e+0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) *
                 r +
             1.48103976427480074590e-1) *
                r +
            6.89767334985100004550e-1) *
               r +
           1.67638483018380384940e+0) *
              r +
          2.05319162663775882187e+0) *
             r +
         1.0);
    x = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) *
                 r +
             2.65321895265761230930e-2) *
                r +
            2.96560571828504891230e-1) *
               r +
           1.78482653991729133580e+0) *
              r +
          5.46378491116411436990e+0) *
             r +
         6.65790464350110377720e+0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) *
                 r +
             7.86869131145613259100e-4) *
                r +
            1.48753612908506148525e-2) *
               r +
           1.36929880922735805310e-1) *
              r +
          5.99832206555887937690e-1) *
             r +
         1.0);
    x = num / den;
  }
  return (q < 0.0) ? -x : x;
}

}  // namespace

double std_normal_pdf(double x) {
  require_finite(x, "std_normal_pdf argument");
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double std_normal_log_pdf(double x) {
  require_finite(x, "std_normal_log_pdf argument");
  return -0.5 * x * x - kHalfLog2Pi;
}

double std_normal_cdf(double x) {
  require_finite(x, "std_normal_cdf argument");
  if (x <= kTailCutoff) {
    // erfc(-x/sqrt(2)) loses relative accuracy here: the rounding of the
    // argument product is amplified by x^2. Assemble phi(x)*S(x)/(-x) from
    // factors whose own arguments are exact, via a Dekker split of x.
    const double a = -x;
    const double t = a * 134217729.0;  // 2^27 + 1
    const double hi = t - (t - a);
    const double lo = a - hi;
    const double lead = 0.5 * hi * hi;            // exact: hi has 26 bits
    const double rest = hi * lo + 0.5 * lo * lo;  // exact products, tiny sum
    return kInvSqrt2Pi * std::exp(-lead) * std::exp(-rest) *
           tail_series(x) / a;
  }
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double std_normal_log_cdf(double x) {
  require_finite(x, "std_normal_log_cdf argument");
  if (x <= kTailCutoff) {
    return std_normal_log_pdf(x) - std::log(-x) + std::log(tail_series(x));
  }
  if (x >= 5.0) {
    return std::log1p(-0.5 * std::erfc(x * kInvSqrt2));
  }
  return std::log(std_normal_cdf(x));
}

double std_normal_quantile(double p) {
  require_finite(p, "std_normal_quantile argument");
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("std_normal_quantile argument must lie in (0, 1)");
  }
  // Reflect the upper half; 1 - p is exact for p >= 0.5 (Sterbenz).
  if (p > 0.5) return -std_normal_quantile(1.0 - p);
  double x = quantile_as241(p);
  const double log_p = std::log(p);
  // Newton on log Phi: stable arbitrarily deep into the tail.
  for (int it = 0; it < 3; ++it) {
    const double e = log_p - std_normal_log_cdf(x);
    const double dx = std::expm1(e) / inverse_mills(x);
    x += dx;
    if (std::fabs(dx) <= 1e-16 * std::fabs(x)) break;
  }
  return x;
}

double inverse_mills(double x) {
  require_finite(x, "inverse_mills argument");
  if (x <= kTailCutoff) {
    return -x / tail_series(x);
  }
  return std::exp(std_normal_log_pdf(x) - std_normal_log_cdf(x));
}

double inverse_mills_deriv(double x) {
  require_finite(x, "inverse_mills_deriv argument");
  if (x <= kTailCutoff) {
    // m' = -m(x)(x + m(x)) with x + m = -x(1-S)/S; keeping 1-S in series
    // form avoids the cancellation that the direct sum suffers.
    const double s = tail_series(x);
    const double d = tail_series_defect(x);
    return -(x * x) * d / (s * s);
  }
  const double m = inverse_mills(x);
  return -m * (x + m);
}

}  // namespace equimax
