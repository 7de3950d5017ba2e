#include "equimax/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "equimax/errors.hpp"
#include "equimax/special_functions.hpp"

namespace equimax {

namespace {

constexpr double kProbeLo = 1e-6;
constexpr double kProbeHi = 1.0 - 1e-6;
constexpr double kFlatTol = 1e-9;

// Sign of h(zeta) without the inner quantile solve: h(zeta) and
// F(Phi^{-1}(zeta)) - zeta have the same sign because F is increasing,
// so the zeta-bisection below is exactly the bisection of monotone h.
double h_sign_stat(double zeta, const EquicorrParams& p, const QuadratureSpec& q) {
  const double x = std_normal_quantile(zeta);
  return max_cdf(x, p, q) - zeta;
}

}  // namespace

std::string to_string(DominanceKind kind) {
  switch (kind) {
    case DominanceKind::MAX_DOMINATES: return "MAX_DOMINATES";
    case DominanceKind::STD_DOMINATES: return "STD_DOMINATES";
    case DominanceKind::SINGLE_CROSSING: return "SINGLE_CROSSING";
    case DominanceKind::IDENTICAL: return "IDENTICAL";
  }
  return "UNKNOWN";
}

double h_eval(double zeta, const EquicorrParams& p, const QuadratureSpec& q) {
  validate(p);
  if (!(zeta > 0.0 && zeta < 1.0)) {
    throw std::invalid_argument("zeta must lie in (0, 1)");
  }
  return std_normal_quantile(zeta) - max_quantile(zeta, p, q);
}

DominanceVerdict find_crossing(const EquicorrParams& p, const QuadratureSpec& q) {
  validate(p);
  DominanceVerdict v;
  const double mu_max = *std::max_element(p.mu.begin(), p.mu.end());
  if (mu_max > 0.0) {
    // A positive mean alone forces F below Phi everywhere.
    v.kind = DominanceKind::MAX_DOMINATES;
    return v;
  }

  const double h_lo = h_eval(kProbeLo, p, q);
  const double h_hi = h_eval(kProbeHi, p, q);
  v.certificate_grid.push_back({kProbeLo, h_sign_stat(kProbeLo, p, q)});
  v.certificate_grid.push_back({kProbeHi, h_sign_stat(kProbeHi, p, q)});

  if (std::fabs(h_lo) < kFlatTol && std::fabs(h_hi) < kFlatTol) {
    if (p.k == 1 && std::fabs(p.mu[0]) < kFlatTol) {
      v.kind = DominanceKind::IDENTICAL;
      return v;
    }
    throw integrity_error(
        "find_crossing: h below resolution at both probes for a non-degenerate "
        "parameter set");
  }
  if (std::fabs(h_lo) < kFlatTol || std::fabs(h_hi) < kFlatTol) {
    throw integrity_error(
        "find_crossing: h within tolerance of zero at a probe; classification "
        "inconclusive");
  }

  if (h_lo < 0.0 && h_hi < 0.0) {
    v.kind = DominanceKind::MAX_DOMINATES;
    return v;
  }
  if (h_lo > 0.0 && h_hi > 0.0) {
    v.kind = DominanceKind::STD_DOMINATES;
    return v;
  }
  if (h_lo > 0.0 && h_hi < 0.0) {
    throw integrity_error("find_crossing: h decreased between probes; monotonicity lost");
  }

  // Sign change: bisect h's root in zeta to width 1e-10.
  double lo = kProbeLo, hi = kProbeHi;
  double s_lo = h_sign_stat(lo, p, q);
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    const double s_mid = h_sign_stat(mid, p, q);
    v.certificate_grid.push_back({mid, s_mid});
    if ((s_mid > 0.0) == (s_lo > 0.0)) {
      lo = mid;
      s_lo = s_mid;
    } else {
      hi = mid;
    }
  }
  const double zeta_star = 0.5 * (lo + hi);
  const double x0 = std_normal_quantile(zeta_star);
  if (std::fabs(max_cdf(x0, p, q) - std_normal_cdf(x0)) > 1e-9) {
    throw integrity_error("find_crossing: crossing certificate failed the CDF check");
  }
  const double gap = max_pdf(x0, p, q) - std_normal_pdf(x0);
  if (!(gap > 0.0)) {
    throw falsification_error(
        "find_crossing: density gap at the crossing is not positive");
  }
  v.kind = DominanceKind::SINGLE_CROSSING;
  v.x0 = x0;
  v.pdf_gap = gap;
  return v;
}

int count_sign_changes(const EquicorrParams& p, const std::vector<double>& grid,
                       const QuadratureSpec& q) {
  validate(p);
  if (grid.size() < 100) {
    throw std::invalid_argument("count_sign_changes: grid needs at least 100 points");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("count_sign_changes: grid must be strictly increasing");
    }
  }
  const double mu_min = *std::min_element(p.mu.begin(), p.mu.end());
  const double span_hi = 8.0 + std::sqrt(2.0 * std::log(static_cast<double>(p.k)));
  if (grid.front() > mu_min - 8.0 + 1e-9 || grid.back() < span_hi - 1e-9) {
    throw std::invalid_argument(
        "count_sign_changes: grid must span [min mu - 8, 8 + sqrt(2 ln k)]");
  }

  int changes = 0;
  int last_sign = 0;
  for (double x : grid) {
    const double d = max_cdf(x, p, q) - std_normal_cdf(x);
    if (std::fabs(d) <= 1e-10) continue;
    const int sign = d > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

bool conditional_dominance_check(const EquicorrParams& p, double x0, int n_grid,
                                 const QuadratureSpec& q) {
  validate(p);
  if (!std::isfinite(x0)) throw std::invalid_argument("x0 must be finite");
  if (n_grid < 2) throw std::invalid_argument("n_grid must be >= 2");
  const double f0 = max_cdf(x0, p, q);
  const double c0 = std_normal_cdf(x0);
  if (std::fabs(f0 - c0) > 1e-9) {
    throw std::invalid_argument("conditional_dominance_check: x0 is not a crossing");
  }

  constexpr double kSlack = 1e-10;
  constexpr double kHalfWidth = 6.0;
  for (int j = 1; j <= n_grid; ++j) {
    const double step = kHalfWidth * j / n_grid;
    // Above x0 the conditional CDF of X* must sit on or above the normal's.
    const double xu = x0 + step;
    const double upper_lhs = (max_cdf(xu, p, q) - f0) / (1.0 - f0);
    const double upper_rhs = (std_normal_cdf(xu) - c0) / (1.0 - c0);
    if (upper_lhs < upper_rhs - kSlack) return false;
    // Below x0 the comparison reverses for the conditionals given X* <= x0.
    const double xl = x0 - step;
    const double lower_lhs = max_cdf(xl, p, q) / f0;
    const double lower_rhs = std_normal_cdf(xl) / c0;
    if (lower_lhs > lower_rhs + kSlack) return false;
  }
  return true;
}

}  // namespace equimax
