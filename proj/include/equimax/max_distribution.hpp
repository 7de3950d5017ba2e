#ifndef EQUIMAX_MAX_DISTRIBUTION_HPP
#define EQUIMAX_MAX_DISTRIBUTION_HPP

#include <vector>

#include "equimax/quadrature.hpp"

namespace equimax {

// The equicorrelated Gaussian vector: unit variances, common correlation
// rho strictly inside (0,1), means mu of length k. X* is its maximum.
struct EquicorrParams {
  int k = 1;
  double rho = 0.5;
  std::vector<double> mu;
};

void validate(const EquicorrParams& p);

// Location arguments of the kernel G: nu0 is the mean of the dominating
// component, nu the means of the k competing components.
struct LocationArgs {
  double nu0 = 0.0;
  std::vector<double> nu;
};

void validate(const LocationArgs& args);

// G(nu0, nu) = P(N(nu0, rho) exceeds k independent N(nu_i, 1-rho)), as the
// single integral of phi(u) * prod_j Phi((nu0 + sqrt(rho) u - nu_j)/sqrt(1-rho)).
double g_integral(const LocationArgs& args, double rho,
                  const QuadratureSpec& q = {});

// Distribution of the maximum: F, density, and quantile.
double max_cdf(double x, const EquicorrParams& p, const QuadratureSpec& q = {});
double max_pdf(double x, const EquicorrParams& p, const QuadratureSpec& q = {});
double max_quantile(double zeta, const EquicorrParams& p,
                    const QuadratureSpec& q = {});

// Partial derivatives of G. dG_dnu0 is the density of the maximum at nu0
// when nu holds the means; dG_dnui uses 1-based coordinate indices.
double dG_dnu0(const LocationArgs& args, double rho,
               const QuadratureSpec& q = {});
double dG_dnui(int i, const LocationArgs& args, double rho,
               const QuadratureSpec& q = {});
double d2G_dnu0_dnui(int i, const LocationArgs& args, double rho,
                     const QuadratureSpec& q = {});
double d2G_dnu02(const LocationArgs& args, double rho,
                 const QuadratureSpec& q = {});

}  // namespace equimax

#endif  // EQUIMAX_MAX_DISTRIBUTION_HPP
