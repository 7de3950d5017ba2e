#ifndef EQUIMAX_FORMAT_HPP
#define EQUIMAX_FORMAT_HPP

#include <string>

namespace equimax {

// Renders a double with 17 significant digits via std::to_chars: locale-free,
// '.' decimal point, round-trippable.
std::string format_double(double v);

// Minimal JSON string escaping (quotes, backslash, control characters).
std::string json_escape(const std::string& s);

}  // namespace equimax

#endif  // EQUIMAX_FORMAT_HPP
