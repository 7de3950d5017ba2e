#ifndef EQUIMAX_THEOREM_VERIFIER_HPP
#define EQUIMAX_THEOREM_VERIFIER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "equimax/max_distribution.hpp"

namespace equimax {

// One randomized evaluation point for the inequality checks: correlation,
// location arguments with nu sorted nonincreasing, plus scalar evaluation
// points t (for the hazard-quotient functions) and zeta (quantile level).
struct ProofProbe {
  double rho = 0.5;
  double nu0 = 0.0;
  std::vector<double> nu;
  double t = 0.0;
  double zeta = 0.5;
};

// Result of checking one quantity at one probe. lower_bound_ok mirrors the
// quantity's claimed inequality (or cross-check) exactly; violations are
// data for the caller, never exceptions.
struct ProbeReport {
  std::string quantity;
  double value = 0.0;
  bool lower_bound_ok = false;
  ProofProbe context;
};

// z(zeta) = 1/phi(Phi^{-1}(zeta)) - 1/f_{X*}(max_quantile(zeta)): the slope
// gap of the quantile functions. Nonnegative; identically 0 at k = 1.
double z_eval(double zeta, const EquicorrParams& p, const QuadratureSpec& q = {});

// Q_i = (dG/dnu_i)/(dG/dnu_0): negative, and the Q_i sum to -1.
double q_ratio(int i, const LocationArgs& args, double rho,
               const QuadratureSpec& q = {});

// dQ_i/dnu_0 assembled from the second derivatives of G. Requires nu sorted
// nonincreasing. Nonnegative once the coordinates beyond i are sent to the
// far-left surrogate; can be negative for general nu.
double dq_dnu0(int i, const LocationArgs& args, double rho,
               const QuadratureSpec& q = {});

// H_i(t) = (1/sqrt(1-rho)) * sum_j m(z_j)/m(z_i), z_j = (t-nu_j)/sqrt(1-rho).
double h_i_eval(int i, double t, const std::vector<double>& nu, double rho);

// Closed-form t-derivative of H_i. Requires nu sorted nonincreasing; each
// summand carries the sign of nu_j - nu_i, so the prefix-only (surrogate
// limit) value is nonnegative.
double dh_i_dt(int i, double t, const std::vector<double>& nu, double rho);

// Delta_i two ways: (a) the second-derivative combination
// d2G/dnu0dnu_i * dG/dnu0 - d2G/dnu0^2 * dG/dnu_i, and (b) the symmetrized
// double integral with the (s - t)(H_i(s) - H_i(t)) kernel on a tensor grid
// of half the 1-D node budget per axis.
struct DeltaPair {
  double derivative_form = 0.0;
  double double_integral_form = 0.0;
};

DeltaPair delta_i_forms(int i, const LocationArgs& args, double rho,
                        const QuadratureSpec& q = {});

// Returns the derivative form after checking the two forms agree to
// relative 1e-5 (absolute floor 1e-9); disagreement is an integrity error.
double delta_i(int i, const LocationArgs& args, double rho,
               const QuadratureSpec& q = {});

struct SweepSpec {
  int probes = 500;
  std::uint64_t seed = 1;
  int k_max = 4;
  std::vector<double> rhos = {0.1, 0.3, 0.5, 0.7, 0.9};
  double nu_lo = -3.0;
  double nu_hi = 1.0;
  QuadratureSpec quad;
};

// Runs the whole inequality battery over seeded random probes. The limit
// quantities (dq_dnu0, dh_i_dt, delta_i positivity) are evaluated with the
// coordinates beyond i replaced by the -40 surrogate; the sum rule and
// z_eval run at the probe's own nu.
std::vector<ProbeReport> sweep_proof_chain(const SweepSpec& spec);

// One JSON object per line: {quantity, k, rho, nu0, nu, t, zeta, value, ok}.
std::string report_to_json_line(const ProbeReport& r);

}  // namespace equimax

#endif  // EQUIMAX_THEOREM_VERIFIER_HPP
