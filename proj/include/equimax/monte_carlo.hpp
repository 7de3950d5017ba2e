#ifndef EQUIMAX_MONTE_CARLO_HPP
#define EQUIMAX_MONTE_CARLO_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "equimax/max_distribution.hpp"

namespace equimax {

// A seeded draw set of realized maxima, sorted for ECDF queries.
// Reproducible: the vector is a pure function of (seed, n, params).
struct McSample {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  EquicorrParams params;
  std::vector<double> maxima;
};

// Draws n maxima via the random-effects decomposition
// X_i = mu_i + sqrt(rho) Y0 + sqrt(1-rho) Y_i with all Y counter-generated
// from (seed, draw index, coordinate index) and mapped through the normal
// quantile, so no generator state is carried between draws.
McSample sample_maxima(const EquicorrParams& p, std::size_t n, std::uint64_t seed);

// Fraction of maxima <= x (binary search on the sorted vector).
double ecdf_at(const McSample& s, double x);

// Dvoretzky-Kiefer-Wolfowitz simultaneous band: with probability 1 - alpha
// the ECDF stays within epsilon = sqrt(ln(2/alpha)/(2n)) of the true CDF.
struct DkwBand {
  double epsilon = 0.0;
  double alpha = 0.0;
};

DkwBand dkw_band(std::size_t n, double alpha);

// Compares the empirical CDF against the quadrature CDF over a grid.
struct AgreementReport {
  double epsilon = 0.0;   // DKW half-width used
  double worst_gap = 0.0; // max_x |ecdf(x) - max_cdf(x)|
  double worst_x = 0.0;   // where it happened
  bool pass = false;      // worst_gap <= epsilon
};

AgreementReport kernel_agreement(const EquicorrParams& p, std::size_t n,
                                 std::uint64_t seed,
                                 const std::vector<double>& grid, double alpha,
                                 const QuadratureSpec& q = {});

// CSV dump: header "index,x_star", one row per draw (sorted order, since
// the sample stores its maxima sorted).
void write_sample_csv(const McSample& s, std::ostream& os);

}  // namespace equimax

#endif  // EQUIMAX_MONTE_CARLO_HPP
