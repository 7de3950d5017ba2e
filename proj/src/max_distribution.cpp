#include "equimax/max_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "equimax/errors.hpp"
#include "equimax/special_functions.hpp"

namespace equimax {

namespace {

constexpr double kPhiMax = 0.3989422804014326779399460599343819;

void require_finite_vec(const std::vector<double>& v, const char* name) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(name) + " entries must be finite");
    }
  }
}

void check_rho(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw std::invalid_argument("rho must lie strictly in (0, 1)");
  }
}

void check_index(int i, std::size_t k) {
  if (i < 1 || static_cast<std::size_t>(i) > k) {
    throw std::invalid_argument("coordinate index out of range [1, k]");
  }
}

// Shared per-u scratch for the integrands: z_j, log Phi(z_j) and their sum.
struct KernelScratch {
  std::vector<double> z;
  std::vector<double> lcdf;

  // Returns L = sum_j log Phi(z_j(u)); fills z and lcdf.
  double fill(double u, double nu0, const std::vector<double>& nu, double sr,
              double s1r) {
    const std::size_t k = nu.size();
    z.resize(k);
    lcdf.resize(k);
    const double base = nu0 + sr * u;
    double L = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      z[j] = (base - nu[j]) / s1r;
      lcdf[j] = std_normal_log_cdf(z[j]);
      L += lcdf[j];
    }
    return L;
  }

  // S(u) = sum_i phi(z_i) * prod_{j != i} Phi(z_j), in log space per term.
  double hazard_sum(double L) const {
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      s += std::exp(std_normal_log_pdf(z[i]) + L - lcdf[i]);
    }
    return s;
  }

  // Single term phi(z_i) * prod_{j != i} Phi(z_j), i zero-based here.
  double hazard_term(double L, std::size_t i) const {
    return std::exp(std_normal_log_pdf(z[i]) + L - lcdf[i]);
  }
};

// Classic Brent root finder on [a, b] with f(a), f(b) of opposite signs.
// Stops once the bracket is below xtol or |f| below ftol.
template <typename F>
double brent_root(F&& f, double a, double b, double fa, double fb, double xtol,
                  double ftol) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < 200; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * 2.220446049250313e-16 * std::fabs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::fabs(m) <= tol || std::fabs(fb) <= ftol) return b;
    if (std::fabs(e) < tol || std::fabs(fa) <= std::fabs(fb)) {
      d = e = m;  // bisection
    } else {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;  // secant
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = e = m;
      }
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
    if (fb == 0.0) return b;
  }
  return b;
}

}  // namespace

void validate(const EquicorrParams& p) {
  if (p.k < 1) throw std::invalid_argument("k must be >= 1");
  if (p.mu.size() != static_cast<std::size_t>(p.k)) {
    throw std::invalid_argument("mu must hold exactly k entries");
  }
  check_rho(p.rho);
  require_finite_vec(p.mu, "mu");
}

void validate(const LocationArgs& args) {
  if (args.nu.empty()) throw std::invalid_argument("nu must be nonempty");
  if (!std::isfinite(args.nu0)) throw std::invalid_argument("nu0 must be finite");
  require_finite_vec(args.nu, "nu");
}

double g_integral(const LocationArgs& args, double rho, const QuadratureSpec& q) {
  validate(args);
  check_rho(rho);
  validate(q);
  const double sr = std::sqrt(rho);
  const double s1r = std::sqrt(1.0 - rho);
  KernelScratch scratch;
  auto f = [&](double u) {
    const double L = scratch.fill(u, args.nu0, args.nu, sr, s1r);
    return std::exp(std_normal_log_pdf(u) + L);
  };
  // Integrand is bounded by phi(u), so the truncated mass is 2 Phi(-R).
  const double tail = 2.0 * std_normal_cdf(-q.radius);
  const double v = integrate(f, q, tail);
  return std::clamp(v, 0.0, 1.0);
}

double max_cdf(double x, const EquicorrParams& p, const QuadratureSpec& q) {
  validate(p);
  if (!std::isfinite(x)) throw std::invalid_argument("x must be finite");
  return g_integral(LocationArgs{x, p.mu}, p.rho, q);
}

double dG_dnu0(const LocationArgs& args, double rho, const QuadratureSpec& q) {
  validate(args);
  check_rho(rho);
  validate(q);
  const double sr = std::sqrt(rho);
  const double s1r = std::sqrt(1.0 - rho);
  KernelScratch scratch;
  auto f = [&](double u) {
    const double L = scratch.fill(u, args.nu0, args.nu, sr, s1r);
    return std::exp(std_normal_log_pdf(u)) * scratch.hazard_sum(L);
  };
  const double bound = args.nu.size() * kPhiMax / s1r;
  const double tail = bound * 2.0 * std_normal_cdf(-q.radius);
  return integrate(f, q, tail) / s1r;
}

double max_pdf(double x, const EquicorrParams& p, const QuadratureSpec& q) {
  validate(p);
  if (!std::isfinite(x)) throw std::invalid_argument("x must be finite");
  return dG_dnu0(LocationArgs{x, p.mu}, p.rho, q);
}

double max_quantile(double zeta, const EquicorrParams& p, const QuadratureSpec& q) {
  validate(p);
  validate(q);
  if (!(zeta > 0.0 && zeta < 1.0)) {
    throw std::invalid_argument("zeta must lie in (0, 1)");
  }
  const double z = std_normal_quantile(zeta);
  const auto [mu_lo, mu_hi] = std::minmax_element(p.mu.begin(), p.mu.end());
  double lo = *mu_lo + z - 1.0;
  double hi = *mu_hi + z + std::sqrt(static_cast<double>(p.k)) + 1.0;

  auto f = [&](double x) { return max_cdf(x, p, q) - zeta; };
  double flo = f(lo);
  double width = std::max(1.0, hi - lo);
  int grow = 0;
  while (flo > 0.0) {
    if (++grow > 60) {
      throw integrity_error("max_quantile: lower bracket failed to capture zeta");
    }
    lo -= width;
    width *= 2.0;
    flo = f(lo);
  }
  double fhi = f(hi);
  width = std::max(1.0, hi - lo);
  grow = 0;
  while (fhi < 0.0) {
    if (++grow > 60) {
      throw integrity_error("max_quantile: upper bracket failed to capture zeta");
    }
    hi += width;
    width *= 2.0;
    fhi = f(hi);
  }
  return brent_root(f, lo, hi, flo, fhi, 1e-13, 1e-15);
}

double dG_dnui(int i, const LocationArgs& args, double rho, const QuadratureSpec& q) {
  validate(args);
  check_rho(rho);
  validate(q);
  check_index(i, args.nu.size());
  const double sr = std::sqrt(rho);
  const double s1r = std::sqrt(1.0 - rho);
  const std::size_t idx = static_cast<std::size_t>(i - 1);
  KernelScratch scratch;
  auto f = [&](double u) {
    const double L = scratch.fill(u, args.nu0, args.nu, sr, s1r);
    return std::exp(std_normal_log_pdf(u)) * scratch.hazard_term(L, idx);
  };
  const double bound = kPhiMax / s1r;
  const double tail = bound * 2.0 * std_normal_cdf(-q.radius);
  return -integrate(f, q, tail) / s1r;
}

double d2G_dnu0_dnui(int i, const LocationArgs& args, double rho,
                     const QuadratureSpec& q) {
  validate(args);
  check_rho(rho);
  validate(q);
  check_index(i, args.nu.size());
  const double sr = std::sqrt(rho);
  const double s1r = std::sqrt(1.0 - rho);
  const std::size_t idx = static_cast<std::size_t>(i - 1);
  KernelScratch scratch;
  auto f = [&](double u) {
    const double L = scratch.fill(u, args.nu0, args.nu, sr, s1r);
    return u * std::exp(std_normal_log_pdf(u)) * scratch.hazard_term(L, idx);
  };
  // |u| phi(u) integrates to 2 phi(R) outside the window.
  const double bound = kPhiMax / (sr * s1r);
  const double tail = bound * 2.0 * std_normal_pdf(q.radius);
  return -integrate(f, q, tail) / (sr * s1r);
}

double d2G_dnu02(const LocationArgs& args, double rho, const QuadratureSpec& q) {
  validate(args);
  check_rho(rho);
  validate(q);
  const double sr = std::sqrt(rho);
  const double s1r = std::sqrt(1.0 - rho);
  KernelScratch scratch;
  auto f = [&](double u) {
    const double L = scratch.fill(u, args.nu0, args.nu, sr, s1r);
    return u * std::exp(std_normal_log_pdf(u)) * scratch.hazard_sum(L);
  };
  const double bound = args.nu.size() * kPhiMax / (sr * s1r);
  const double tail = bound * 2.0 * std_normal_pdf(q.radius);
  return integrate(f, q, tail) / (sr * s1r);
}

}  // namespace equimax
