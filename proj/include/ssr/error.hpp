#ifndef SSR_ERROR_HPP
#define SSR_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ssr {

/// Malformed input (unparseable instance file, bad JSON, unknown ids).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A semantic invariant was violated: non-functorial data, a non-cartesian
/// square, a non-natural transformation, a dimension mismatch.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A construction exceeded the cell budget or needs a larger cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Total number of simplices a single construction may enumerate.
/// Read once from SSR_MAX_CELLS (default 10^6).
std::size_t max_cells();

/// Overrides the budget for the current process (tests, CLI flags).
void set_max_cells(std::size_t n);

}  // namespace ssr

#endif
