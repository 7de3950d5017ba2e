#ifndef EQUIMAX_QUADRATURE_HPP
#define EQUIMAX_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "equimax/errors.hpp"

namespace equimax {

// Controls the 1-D integrals over the mixing variable: node budget, the
// truncation half-width in mixing standard deviations, and the absolute
// error target (truncation tail included).
struct QuadratureSpec {
  int nodes = 256;
  double radius = 9.0;
  double abs_tol = 1e-12;
};

inline void validate(const QuadratureSpec& q) {
  if (q.nodes < 16) throw std::invalid_argument("QuadratureSpec: nodes must be >= 16");
  if (!(q.radius >= 6.0)) throw std::invalid_argument("QuadratureSpec: radius must be >= 6");
  if (!(q.abs_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: abs_tol must be > 0");
}

namespace detail {

// 16-point Gauss-Legendre rule on [-1, 1] (Abramowitz & Stegun table 25.4).
inline constexpr std::array<double, 8> kGl16Nodes = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};

inline constexpr std::array<double, 8> kGl16Weights = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

template <typename F>
double gl16_panels(F&& f, double lo, double hi, int panels) {
  const double h = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    const double half = 0.5 * h;
    double acc = 0.0;
    for (int j = 0; j < 8; ++j) {
      const double dx = half * kGl16Nodes[j];
      acc += kGl16Weights[j] * (f(mid - dx) + f(mid + dx));
    }
    total += half * acc;
  }
  return total;
}

// Fills xs/ws with the abscissae and weights of a composite 16-point rule;
// used where an integrand family is tabulated once and reused.
inline void gl16_grid(double lo, double hi, int panels, std::vector<double>& xs,
                      std::vector<double>& ws) {
  const double h = (hi - lo) / panels;
  xs.clear();
  ws.clear();
  xs.reserve(16 * panels);
  ws.reserve(16 * panels);
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    const double half = 0.5 * h;
    for (int j = 7; j >= 0; --j) {
      xs.push_back(mid - half * kGl16Nodes[j]);
      ws.push_back(half * kGl16Weights[j]);
    }
    for (int j = 0; j < 8; ++j) {
      xs.push_back(mid + half * kGl16Nodes[j]);
      ws.push_back(half * kGl16Weights[j]);
    }
  }
}

}  // namespace detail

// Integrates f over [-radius, radius] with composite 16-point Gauss-Legendre
// panels, doubling the panel count until two consecutive levels agree within
// the error budget left after the caller's truncation tail bound. Throws
// quadrature_error if the budget is unreachable.
template <typename F>
double integrate(F&& f, const QuadratureSpec& spec, double tail_bound = 0.0) {
  validate(spec);
  if (!(tail_bound >= 0.0)) {
    throw std::invalid_argument("integrate: tail_bound must be nonnegative");
  }
  if (tail_bound >= spec.abs_tol) {
    throw quadrature_error(
        "integrate: truncation tail bound " + std::to_string(tail_bound) +
        " already exceeds abs_tol " + std::to_string(spec.abs_tol) +
        "; enlarge radius or relax abs_tol");
  }
  const double budget = spec.abs_tol - tail_bound;
  const double lo = -spec.radius;
  const double hi = spec.radius;

  int coarse_panels = spec.nodes / 32;
  if (coarse_panels < 1) coarse_panels = 1;
  constexpr int kMaxPanels = 4096;

  double coarse = detail::gl16_panels(f, lo, hi, coarse_panels);
  for (int panels = 2 * coarse_panels; panels <= kMaxPanels; panels *= 2) {
    const double fine = detail::gl16_panels(f, lo, hi, panels);
    if (std::fabs(fine - coarse) <= budget) {
      return fine;
    }
    coarse = fine;
  }
  throw quadrature_error("integrate: failed to reach abs_tol " +
                         std::to_string(spec.abs_tol) + " within " +
                         std::to_string(16 * kMaxPanels) + " nodes");
}

}  // namespace equimax

#endif  // EQUIMAX_QUADRATURE_HPP
