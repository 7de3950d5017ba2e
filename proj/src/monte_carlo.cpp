#include "equimax/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "equimax/format.hpp"
#include "equimax/philox.hpp"
#include "equimax/special_functions.hpp"

namespace equimax {

McSample sample_maxima(const EquicorrParams& p, std::size_t n, std::uint64_t seed) {
  validate(p);
  if (n == 0) throw std::invalid_argument("sample_maxima: n must be >= 1");
  const double sr = std::sqrt(p.rho);
  const double s1r = std::sqrt(1.0 - p.rho);

  McSample s;
  s.seed = seed;
  s.n = n;
  s.params = p;
  s.maxima.resize(n);
  for (std::size_t d = 0; d < n; ++d) {
    // Coordinate 0 is the shared effect, 1..k the idiosyncratic ones.
    const double y0 = std_normal_quantile(detail::philox_u01(d, 0u, seed));
    const double shared = sr * y0;
    double best = -HUGE_VAL;
    for (int i = 1; i <= p.k; ++i) {
      const double yi = std_normal_quantile(
          detail::philox_u01(d, static_cast<std::uint32_t>(i), seed));
      const double xi = p.mu[static_cast<std::size_t>(i - 1)] + shared + s1r * yi;
      if (xi > best) best = xi;
    }
    s.maxima[d] = best;
  }
  std::sort(s.maxima.begin(), s.maxima.end());
  return s;
}

double ecdf_at(const McSample& s, double x) {
  if (s.maxima.empty()) throw std::invalid_argument("ecdf_at: empty sample");
  const auto it = std::upper_bound(s.maxima.begin(), s.maxima.end(), x);
  return static_cast<double>(it - s.maxima.begin()) /
         static_cast<double>(s.maxima.size());
}

DkwBand dkw_band(std::size_t n, double alpha) {
  if (n == 0) throw std::invalid_argument("dkw_band: n must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("dkw_band: alpha must lie in (0, 1)");
  }
  DkwBand b;
  b.alpha = alpha;
  b.epsilon = std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
  return b;
}

AgreementReport kernel_agreement(const EquicorrParams& p, std::size_t n,
                                 std::uint64_t seed,
                                 const std::vector<double>& grid, double alpha,
                                 const QuadratureSpec& q) {
  if (grid.empty()) throw std::invalid_argument("kernel_agreement: empty grid");
  for (double x : grid) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("kernel_agreement: grid must be finite");
    }
  }
  const McSample s = sample_maxima(p, n, seed);
  const DkwBand band = dkw_band(n, alpha);

  AgreementReport rep;
  rep.epsilon = band.epsilon;
  rep.worst_gap = -1.0;
  for (double x : grid) {
    const double gap = std::fabs(ecdf_at(s, x) - max_cdf(x, p, q));
    if (gap > rep.worst_gap) {
      rep.worst_gap = gap;
      rep.worst_x = x;
    }
  }
  rep.pass = rep.worst_gap <= band.epsilon;
  return rep;
}

void write_sample_csv(const McSample& s, std::ostream& os) {
  os << "index,x_star\n";
  for (std::size_t i = 0; i < s.maxima.size(); ++i) {
    os << i << ',' << format_double(s.maxima[i]) << '\n';
  }
}

}  // namespace equimax
