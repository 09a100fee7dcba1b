#ifndef IPOLY_ORACLES_HPP
#define IPOLY_ORACLES_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <ipoly/field.hpp>
#include <ipoly/regions.hpp>

namespace ipoly::oracles {

// Brute-force references for tests and CLI --check runs.  These use their
// own unmetered modular arithmetic loops and allocate freely, so agreement
// with the instrumented implementations is evidence, not tautology.

struct OracleReport {
    bool matched = false;
    std::optional<std::size_t> first_mismatch;
};

// Exact coefficient comparison; throws LengthMismatch on unequal sizes.
OracleReport compare(const std::vector<Fe>& a, const std::vector<Fe>& b);

// Plain convolution of two coefficient vectors mod p.
std::vector<Fe> convolve(u64 p, const std::vector<Fe>& a, const std::vector<Fe>& b);

// G with sum_{j<=i} F_j G_{i-j} = [i=0], solved as a triangular system.
// Throws ZeroInverse when F_0 = 0.
std::vector<Fe> series_inverse_solve(u64 p, Region f, std::size_t n);

// Q with G*Q = F mod X^n via the same triangular recurrence.
std::vector<Fe> series_divide_solve(u64 p, Region f, Region g, std::size_t n);

// F(a) by an independent Horner loop.
Fe horner_ref(u64 p, Region f, Fe a);

}  // namespace ipoly::oracles

#endif
