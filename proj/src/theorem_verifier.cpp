#include "equimax/theorem_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "equimax/errors.hpp"
#include "equimax/format.hpp"
#include "equimax/special_functions.hpp"

namespace equimax {

namespace {

constexpr double kFarLeftSurrogate = -40.0;

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

void check_sorted_nonincreasing(const std::vector<double>& nu) {
  for (std::size_t j = 1; j < nu.size(); ++j) {
    if (nu[j] > nu[j - 1]) {
      throw std::invalid_argument("nu must be sorted nonincreasing");
    }
  }
}

double log_mills(double x) {
  return std_normal_log_pdf(x) - std_normal_log_cdf(x);
}

// splitmix64: tiny, fully specified generator for reproducible probe draws.
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double draw_u01(std::uint64_t& state) {
  return ((splitmix64(state) >> 11) + 0.5) * 0x1.0p-53;
}

double draw_range(std::uint64_t& state, double lo, double hi) {
  return lo + (hi - lo) * draw_u01(state);
}

bool forms_agree(const DeltaPair& d) {
  const double a = d.derivative_form;
  const double b = d.double_integral_form;
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return std::fabs(a - b) <= 1e-5 * scale + 1e-9;
}

}  // namespace

double z_eval(double zeta, const EquicorrParams& p, const QuadratureSpec& q) {
  validate(p);
  if (!(zeta > 1e-4 && zeta < 1.0 - 1e-4)) {
    throw std::invalid_argument(
        "z_eval: zeta must lie in (1e-4, 1 - 1e-4); 1/phi(quantile) is "
        "ill-conditioned beyond that");
  }
  const double x = std_normal_quantile(zeta);
  const double g = max_quantile(zeta, p, q);
  return 1.0 / std_normal_pdf(x) - 1.0 / max_pdf(g, p, q);
}

double q_ratio(int i, const LocationArgs& args, double rho, const QuadratureSpec& q) {
  validate(args);
  check_rho(rho);
  check_index(i, args.nu.size());
  return dG_dnui(i, args, rho, q) / dG_dnu0(args, rho, q);
}

double dq_dnu0(int i, const LocationArgs& args, double rho, const QuadratureSpec& q) {
  validate(args);
  check_rho(rho);
  check_index(i, args.nu.size());
  check_sorted_nonincreasing(args.nu);
  const double g0 = dG_dnu0(args, rho, q);
  const double gi = dG_dnui(i, args, rho, q);
  const double g00 = d2G_dnu02(args, rho, q);
  const double g0i = d2G_dnu0_dnui(i, args, rho, q);
  return (g0i * g0 - g00 * gi) / (g0 * g0);
}

double h_i_eval(int i, double t, const std::vector<double>& nu, double rho) {
  if (nu.empty()) throw std::invalid_argument("nu must be nonempty");
  check_rho(rho);
  check_index(i, nu.size());
  if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");
  for (double v : nu) {
    if (!std::isfinite(v)) throw std::invalid_argument("nu entries must be finite");
  }
  const double s1r = std::sqrt(1.0 - rho);
  const double lm_i = log_mills((t - nu[static_cast<std::size_t>(i - 1)]) / s1r);
  double sum = 0.0;
  for (double nj : nu) {
    sum += std::exp(log_mills((t - nj) / s1r) - lm_i);
  }
  return sum / s1r;
}

double dh_i_dt(int i, double t, const std::vector<double>& nu, double rho) {
  if (nu.empty()) throw std::invalid_argument("nu must be nonempty");
  check_rho(rho);
  check_index(i, nu.size());
  check_sorted_nonincreasing(nu);
  if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");
  const double s1r = std::sqrt(1.0 - rho);
  const double nu_i = nu[static_cast<std::size_t>(i - 1)];
  const double z_i = (t - nu_i) / s1r;
  const double lm_i = log_mills(z_i);
  const double m_i = inverse_mills(z_i);
  double sum = 0.0;
  for (double nj : nu) {
    const double z_j = (t - nj) / s1r;
    const double ratio = std::exp(log_mills(z_j) - lm_i);
    // Each term is m(z_j)/m(z_i) times the integral of 1 + m' over
    // [nu_i, nu_j], so it carries the sign of nu_j - nu_i.
    sum += ratio * ((nj - nu_i) / s1r + m_i - inverse_mills(z_j));
  }
  return sum / (1.0 - rho);
}

DeltaPair delta_i_forms(int i, const LocationArgs& args, double rho,
                        const QuadratureSpec& q) {
  validate(args);
  check_rho(rho);
  validate(q);
  check_index(i, args.nu.size());
  check_sorted_nonincreasing(args.nu);

  DeltaPair out;
  {
    const double g0 = dG_dnu0(args, rho, q);
    const double gi = dG_dnui(i, args, rho, q);
    const double g00 = d2G_dnu02(args, rho, q);
    const double g0i = d2G_dnu0_dnui(i, args, rho, q);
    out.derivative_form = g0i * g0 - g00 * gi;
  }

  // Symmetrized tensor form. At grid point u: T_i(u) is the hazard term of
  // coordinate i, and R(u) = sqrt(1-rho) * H_i(nu0 + sqrt(rho) u) is the
  // Mill's-quotient sum; then
  //   Delta_i = (1/(2 sqrt(rho(1-rho)))) * sum_{m,n} A_m A_n (u_m - u_n)
  //             (H_m - H_n),  A = w phi(u) T_i(u).
  const double sr = std::sqrt(rho);
  const double s1r = std::sqrt(1.0 - rho);
  const std::size_t idx = static_cast<std::size_t>(i - 1);
  const std::size_t k = args.nu.size();

  int panels = (q.nodes / 2) / 16;
  if (panels < 1) panels = 1;
  std::vector<double> xs, ws;
  detail::gl16_grid(-q.radius, q.radius, panels, xs, ws);

  const std::size_t n = xs.size();
  std::vector<double> amp(n), quot(n);
  std::vector<double> lcdf(k), lm(k);
  for (std::size_t mpt = 0; mpt < n; ++mpt) {
    const double u = xs[mpt];
    const double base = args.nu0 + sr * u;
    double L = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double z = (base - args.nu[j]) / s1r;
      lcdf[j] = std_normal_log_cdf(z);
      lm[j] = std_normal_log_pdf(z) - lcdf[j];
      L += lcdf[j];
    }
    const double t_i = std::exp(lm[idx] + L);
    double r = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      r += std::exp(lm[j] - lm[idx]);
    }
    amp[mpt] = ws[mpt] * std::exp(std_normal_log_pdf(u)) * t_i;
    quot[mpt] = r / s1r;
  }
  double acc = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      acc += 2.0 * amp[a] * amp[b] * (xs[a] - xs[b]) * (quot[a] - quot[b]);
    }
  }
  out.double_integral_form = acc / (2.0 * std::sqrt(rho * (1.0 - rho)));
  return out;
}

double delta_i(int i, const LocationArgs& args, double rho, const QuadratureSpec& q) {
  const DeltaPair d = delta_i_forms(i, args, rho, q);
  if (!forms_agree(d)) {
    throw integrity_error(
        "delta_i: derivative form " + format_double(d.derivative_form) +
        " and double-integral form " + format_double(d.double_integral_form) +
        " disagree beyond relative 1e-5");
  }
  return d.derivative_form;
}

std::vector<ProbeReport> sweep_proof_chain(const SweepSpec& spec) {
  if (spec.probes < 0) throw std::invalid_argument("probes must be nonnegative");
  if (spec.k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (spec.rhos.empty()) throw std::invalid_argument("rhos must be nonempty");
  for (double r : spec.rhos) check_rho(r);
  if (!(spec.nu_lo < spec.nu_hi)) {
    throw std::invalid_argument("nu range must be nonempty");
  }
  validate(spec.quad);

  std::vector<ProbeReport> reports;
  std::uint64_t state = spec.seed;
  for (int pi = 0; pi < spec.probes; ++pi) {
    ProofProbe probe;
    const int k = 1 + static_cast<int>(draw_u01(state) * spec.k_max);
    probe.rho = spec.rhos[static_cast<std::size_t>(draw_u01(state) * spec.rhos.size())];
    probe.nu.resize(k);
    for (double& v : probe.nu) v = draw_range(state, spec.nu_lo, spec.nu_hi);
    std::sort(probe.nu.begin(), probe.nu.end(), std::greater<double>());
    probe.nu0 = draw_range(state, spec.nu_lo, spec.nu_hi);
    probe.t = draw_range(state, -3.0, 3.0);
    probe.zeta = draw_range(state, 0.05, 0.95);

    const LocationArgs full{probe.nu0, probe.nu};

    {
      ProbeReport r;
      r.quantity = "q_sum";
      double sum = 0.0;
      for (int i = 1; i <= k; ++i) sum += q_ratio(i, full, probe.rho, spec.quad);
      r.value = sum;
      r.lower_bound_ok = std::fabs(sum + 1.0) <= 1e-8;
      r.context = probe;
      reports.push_back(std::move(r));
    }
    {
      ProbeReport r;
      r.quantity = "z";
      const EquicorrParams params{k, probe.rho, probe.nu};
      r.value = z_eval(probe.zeta, params, spec.quad);
      r.lower_bound_ok =
          (k == 1) ? std::fabs(r.value) <= 1e-7 : r.value > -1e-7;
      r.context = probe;
      reports.push_back(std::move(r));
    }

    for (int i = 1; i <= k; ++i) {
      // The proof's inequalities hold at the limit where coordinates past i
      // drop to -infinity; the -40 surrogate realizes it to machine precision.
      std::vector<double> lim(probe.nu.begin(), probe.nu.begin() + i);
      lim.resize(k, kFarLeftSurrogate);
      const LocationArgs lim_args{probe.nu0, lim};
      const double spread = probe.nu[0] - probe.nu[static_cast<std::size_t>(i - 1)];
      ProofProbe lim_probe = probe;
      lim_probe.nu = lim;

      {
        ProbeReport r;
        r.quantity = "dq_dnu0[i=" + std::to_string(i) + "]";
        r.value = dq_dnu0(i, lim_args, probe.rho, spec.quad);
        r.lower_bound_ok =
            r.value >= -1e-7 && (spread <= 0.1 || r.value > 0.0);
        r.context = lim_probe;
        reports.push_back(std::move(r));
      }
      {
        ProbeReport r;
        r.quantity = "dh_i_dt[i=" + std::to_string(i) + "]";
        r.value = dh_i_dt(i, probe.t, lim, probe.rho);
        r.lower_bound_ok =
            r.value >= -1e-10 && (spread <= 1e-12 || r.value > 0.0);
        r.context = lim_probe;
        reports.push_back(std::move(r));
      }
      {
        ProbeReport r;
        r.quantity = "delta_i[i=" + std::to_string(i) + "]";
        const DeltaPair d = delta_i_forms(i, lim_args, probe.rho, spec.quad);
        r.value = d.derivative_form;
        r.lower_bound_ok = forms_agree(d) && d.derivative_form >= -1e-7 &&
                           (spread <= 0.1 || d.derivative_form > 0.0);
        r.context = lim_probe;
        reports.push_back(std::move(r));
      }
    }
  }
  return reports;
}

std::string report_to_json_line(const ProbeReport& r) {
  std::string out = "{\"quantity\":\"" + json_escape(r.quantity) + "\"";
  out += ",\"k\":" + std::to_string(r.context.nu.size());
  out += ",\"rho\":" + format_double(r.context.rho);
  out += ",\"nu0\":" + format_double(r.context.nu0);
  out += ",\"nu\":[";
  for (std::size_t j = 0; j < r.context.nu.size(); ++j) {
    if (j) out += ",";
    out += format_double(r.context.nu[j]);
  }
  out += "]";
  out += ",\"t\":" + format_double(r.context.t);
  out += ",\"zeta\":" + format_double(r.context.zeta);
  out += ",\"value\":" + format_double(r.value);
  out += ",\"ok\":";
  out += r.lower_bound_ok ? "true" : "false";
  out += "}";
  return out;
}

}  // namespace equimax
