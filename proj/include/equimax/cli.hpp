#ifndef EQUIMAX_CLI_HPP
#define EQUIMAX_CLI_HPP

#include <iosfwd>

namespace equimax::cli {

// Parses argv, dispatches to the library, writes results to `out` and
// diagnostics to `err`. Exit status: 0 success, 1 usage or precondition
// error, 2 numerical failure, 3 falsified theorem bound.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace equimax::cli

#endif  // EQUIMAX_CLI_HPP
