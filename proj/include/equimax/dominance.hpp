#ifndef EQUIMAX_DOMINANCE_HPP
#define EQUIMAX_DOMINANCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "equimax/max_distribution.hpp"

namespace equimax {

// Trichotomy of F_{X*} against the standard normal CDF: one of them
// dominates everywhere on the probed range, they cross exactly once, or
// (k = 1, mu = 0 only) they coincide.
enum class DominanceKind { MAX_DOMINATES, STD_DOMINATES, SINGLE_CROSSING, IDENTICAL };

std::string to_string(DominanceKind kind);

// One certificate entry: the statistic F(Phi^{-1}(zeta)) - zeta, which has
// the same sign as h(zeta) because F is increasing, so the recorded signs
// are exactly the ones the classification used.
struct CertificatePoint {
  double zeta = 0.0;
  double stat = 0.0;
};

struct DominanceVerdict {
  DominanceKind kind = DominanceKind::IDENTICAL;
  std::optional<double> x0;       // crossing abscissa, SINGLE_CROSSING only
  std::optional<double> pdf_gap;  // f_{X*}(x0) - phi(x0), positive at a crossing
  std::vector<CertificatePoint> certificate_grid;
};

// h(zeta) = Phi^{-1}(zeta) - max_quantile(zeta, p); strictly increasing in
// zeta, negative where the maximum dominates, positive where the standard
// normal does.
double h_eval(double zeta, const EquicorrParams& p, const QuadratureSpec& q = {});

// Classifies the dominance relation. Fast path: any positive mean means the
// maximum dominates outright. Otherwise the sign of h at zeta = 1e-6 and
// 1 - 1e-6 decides; a sign change is bisected to the unique crossing.
DominanceVerdict find_crossing(const EquicorrParams& p, const QuadratureSpec& q = {});

// Counts strict sign alternations of max_cdf - Phi over the grid, ignoring
// gaps smaller than 1e-10. The single-crossing property caps this at 1.
int count_sign_changes(const EquicorrParams& p, const std::vector<double>& grid,
                       const QuadratureSpec& q = {});

// Verifies the conditional dominance statements on each side of a certified
// crossing x0 over n_grid points per side.
bool conditional_dominance_check(const EquicorrParams& p, double x0, int n_grid,
                                 const QuadratureSpec& q = {});

}  // namespace equimax

#endif  // EQUIMAX_DOMINANCE_HPP
