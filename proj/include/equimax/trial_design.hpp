#ifndef EQUIMAX_TRIAL_DESIGN_HPP
#define EQUIMAX_TRIAL_DESIGN_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "equimax/max_distribution.hpp"

namespace equimax {

// The threshold bound for k treatments against a standard-normal control
// score: if P(all X_i < 0) >= kappa, then P(all X_i < shift) > zeta for
// shift = Phi^{-1}(zeta) - Phi^{-1}(kappa).
struct CorollaryResult {
  double kappa = 0.0;
  double zeta = 0.0;
  double shift = 0.0;     // Phi^{-1}(zeta) - Phi^{-1}(kappa), positive
  double attained = 0.0;  // P(all X_i < shift) = max_cdf(shift)
  double margin = 0.0;    // attained - zeta; positive away from the k=1 frontier
};

// Phi^{-1}(zeta) - Phi^{-1}(kappa) for 0 < kappa < zeta < 1.
double threshold_shift(double kappa, double zeta);

// The largest kappa for which the hypothesis P(all X_i < 0) >= kappa holds:
// exactly max_cdf(0).
double calibrate_kappa(const EquicorrParams& p, const QuadratureSpec& q = {});

// Evaluates the bound. Throws std::invalid_argument when the hypothesis
// fails (kappa above calibrate_kappa), falsification_error if the attained
// probability lands at or below zeta beyond the degenerate k=1 frontier.
CorollaryResult corollary_check(const EquicorrParams& p, double kappa,
                                double zeta, const QuadratureSpec& q = {});

// One zeta_sweep entry: either a result or the error message that entry hit.
struct SweepEntry {
  double zeta = 0.0;
  std::optional<CorollaryResult> result;
  std::string error;
};

// Tabulates the bound over several zeta values; per-entry errors are
// collected rather than aborting the sweep.
std::vector<SweepEntry> zeta_sweep(const EquicorrParams& p, double kappa,
                                   const std::vector<double>& zetas,
                                   const QuadratureSpec& q = {});

// CSV table "zeta,kappa,shift,attained,margin"; errored entries are skipped.
void write_corollary_csv(const std::vector<SweepEntry>& entries, std::ostream& os);

}  // namespace equimax

#endif  // EQUIMAX_TRIAL_DESIGN_HPP
