#ifndef EQUIMAX_SPECIAL_FUNCTIONS_HPP
#define EQUIMAX_SPECIAL_FUNCTIONS_HPP

namespace equimax {

// Standard normal density and log density.
double std_normal_pdf(double x);
double std_normal_log_pdf(double x);

// Standard normal CDF, computed from erfc so relative accuracy survives in
// the lower tail; the log variant switches to an asymptotic expansion below
// x = -10 where log(erfc) would drown.
double std_normal_cdf(double x);
double std_normal_log_cdf(double x);

// Inverse CDF for p in the open interval (0, 1): rational approximation
// polished by Newton steps in log space.
double std_normal_quantile(double p);

// Inverse Mill's ratio m(x) = phi(x)/Phi(x) and its derivative
// m'(x) = -m(x)(x + m(x)); m is positive and decreasing, m' lies in (-1, 0).
double inverse_mills(double x);
double inverse_mills_deriv(double x);

}  // namespace equimax

#endif  // EQUIMAX_SPECIAL_FUNCTIONS_HPP
