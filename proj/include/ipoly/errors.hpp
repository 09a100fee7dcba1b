#ifndef IPOLY_ERRORS_HPP
#define IPOLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ipoly {

// Inversion of zero in the field, or a series/divisor with non-invertible
// leading/constant term.
struct ZeroInverse : std::runtime_error {
    explicit ZeroInverse(const std::string& what) : std::runtime_error(what) {}
};

// A workspace acquisition went past its budget.  For metered workspaces this
// is the test oracle that falsifies a space claim; for region-backed
// workspaces it means an algorithm schedule did not leave enough free output
// space.  Never caught and "handled" inside the library.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Interpolation requires pairwise distinct points.
struct DuplicatePoint : std::runtime_error {
    explicit DuplicatePoint(const std::string& what) : std::runtime_error(what) {}
};

// Region slicing/splitting outside the valid index range.
struct OutOfRange : std::runtime_error {
    explicit OutOfRange(const std::string& what) : std::runtime_error(what) {}
};

// Coefficient vectors of different lengths where equal lengths are required.
struct LengthMismatch : std::runtime_error {
    explicit LengthMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ipoly

#endif
