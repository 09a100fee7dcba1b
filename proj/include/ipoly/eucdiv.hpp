#ifndef IPOLY_EUCDIV_HPP
#define IPOLY_EUCDIV_HPP

#include <cstddef>

#include <ipoly/engines.hpp>
#include <ipoly/field.hpp>
#include <ipoly/regions.hpp>

namespace ipoly {

// Euclidean division of polynomials.  Shapes follow the dividend = quotient
// + remainder register identity: dividing a size-la dividend by a size-n
// divisor yields a size-(la-n+1) quotient and a size-(n-1) remainder, with
// high remainder cells zero-filled.  Divisors need an invertible leading
// coefficient.

// Classical quadratic long division, constant auxiliary space: the working
// image of the dividend lives in r++q and ends up holding remainder and
// quotient exactly.
void long_division(FieldCtx& ctx, Region a, Region b, RegionMut q, RegionMut r);

// Remainder only, keeping just the latest window of quotient coefficients:
// r gets n registers (top cell ends zero), ws needs (c_s+2)*n.
void rem_only(FieldCtx& ctx, const Engine& e, Region a, Region b, RegionMut r,
              Workspace& ws);
std::size_t rem_only_ws(const EngineProfile& p, std::size_t n);

// ceil(m/n) balanced divisions against a precomputed inverse of rev(b);
// a has size m+n-1, q size m, r size n-1.
void chunked_division(FieldCtx& ctx, const Engine& e, Region a, Region b,
                      RegionMut q, RegionMut r, Workspace& ws);
std::size_t chunked_division_ws(const EngineProfile& p, std::size_t n);

// Constant-space division with remainder for a size-(m+n) dividend, m >= n:
// q size m+1, r size n-1.  Chunks of the quotient come from erasing
// divisions on a window held in r plus one auxiliary register.
void eucdiv_inplace(FieldCtx& ctx, const Engine& e, Region a, Region b,
                    RegionMut q, RegionMut r, Workspace& aux);

}  // namespace ipoly

#endif
