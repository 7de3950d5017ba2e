#include "equimax/trial_design.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "equimax/errors.hpp"
#include "equimax/format.hpp"
#include "equimax/special_functions.hpp"

namespace equimax {

double threshold_shift(double kappa, double zeta) {
  if (!(kappa > 0.0 && kappa < zeta && zeta < 1.0)) {
    throw std::invalid_argument("threshold_shift requires 0 < kappa < zeta < 1");
  }
  return std_normal_quantile(zeta) - std_normal_quantile(kappa);
}

double calibrate_kappa(const EquicorrParams& p, const QuadratureSpec& q) {
  return max_cdf(0.0, p, q);
}

CorollaryResult corollary_check(const EquicorrParams& p, double kappa,
                                double zeta, const QuadratureSpec& q) {
  validate(p);
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw std::invalid_argument("kappa must lie in (0, 1)");
  }
  if (!(zeta > kappa && zeta < 1.0)) {
    throw std::invalid_argument("zeta must lie in (kappa, 1)");
  }
  const double kappa_star = calibrate_kappa(p, q);
  // Tiny slack so that kappa = calibrate_kappa(p) round-trips.
  if (kappa > kappa_star + 1e-12) {
    throw std::invalid_argument(
        "corollary_check: hypothesis P(all X_i < 0) >= kappa fails; largest "
        "admissible kappa is " + format_double(kappa_star));
  }

  CorollaryResult r;
  r.kappa = kappa;
  r.zeta = zeta;
  r.shift = threshold_shift(kappa, zeta);
  r.attained = max_cdf(r.shift, p, q);
  r.margin = r.attained - zeta;
  // The bound is strict except on the k=1 frontier with kappa at its
  // calibrated maximum, where attained == zeta identically.
  if (r.margin <= -1e-10) {
    throw falsification_error(
        "corollary_check: attained probability " + format_double(r.attained) +
        " does not exceed zeta " + format_double(zeta));
  }
  return r;
}

std::vector<SweepEntry> zeta_sweep(const EquicorrParams& p, double kappa,
                                   const std::vector<double>& zetas,
                                   const QuadratureSpec& q) {
  validate(p);
  std::vector<SweepEntry> out;
  out.reserve(zetas.size());
  for (double z : zetas) {
    SweepEntry e;
    e.zeta = z;
    try {
      e.result = corollary_check(p, kappa, z, q);
    } catch (const falsification_error&) {
      throw;  // a falsified conclusion must not be swallowed by the sweep
    } catch (const std::exception& ex) {
      e.error = ex.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

void write_corollary_csv(const std::vector<SweepEntry>& entries, std::ostream& os) {
  os << "zeta,kappa,shift,attained,margin\n";
  for (const auto& e : entries) {
    if (!e.result) continue;
    const CorollaryResult& r = *e.result;
    os << format_double(r.zeta) << ',' << format_double(r.kappa) << ','
       << format_double(r.shift) << ',' << format_double(r.attained) << ','
       << format_double(r.margin) << '\n';
  }
}

}  // namespace equimax
