#ifndef EQUIMAX_ERRORS_HPP
#define EQUIMAX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace equimax {

// Quadrature could not reach the requested absolute tolerance.
class quadrature_error : public std::runtime_error {
 public:
  explicit quadrature_error(const std::string& what) : std::runtime_error(what) {}
};

// Two routes that must agree disagreed, or a classification could not be
// resolved within tolerance. A bug in the harness, not in the mathematics.
class integrity_error : public std::runtime_error {
 public:
  explicit integrity_error(const std::string& what) : std::runtime_error(what) {}
};

// A bound that the theory guarantees came out violated. Kept distinct from
// integrity_error so callers can escalate loudly (CLI exit code 3).
class falsification_error : public std::runtime_error {
 public:
  explicit falsification_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace equimax

#endif  // EQUIMAX_ERRORS_HPP
