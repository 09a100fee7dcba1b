#ifndef IPOLY_SERIES_HPP
#define IPOLY_SERIES_HPP

#include <cstddef>

#include <ipoly/engines.hpp>
#include <ipoly/field.hpp>
#include <ipoly/regions.hpp>

namespace ipoly {

// Power series inversion and division.  Baselines take an explicit workspace
// sized by the *_ws helpers; the in-place variants take only the constant
// auxiliary allowance and carve everything else out of the unwritten suffix
// of their own output.

// Newton refinement: given g[0..k) = f^{-1} mod X^k, writes g[k..k+ell) so
// that g[0..k+ell) = f^{-1} mod X^{k+ell}.  Requires 0 < ell <= k.
void series_invert_step(FieldCtx& ctx, const Engine& e, Region f, RegionMut g,
                        std::size_t k, std::size_t ell, Workspace& ws);

// Classical doubling iteration; g (n cells) = f^{-1} mod X^n.
void series_invert(FieldCtx& ctx, const Engine& e, Region f, RegionMut g,
                   Workspace& ws);

// Constant-space inversion: acceleration then deceleration schedule with
// step ell = min(k, (n-k)/c), c = 2 + max(c_m, c_s); terminal coefficients
// by the quadratic engine through the auxiliary register file.
void series_invert_inplace(FieldCtx& ctx, const Engine& e, Region f,
                           RegionMut g, Workspace& aux);

// Karp-Markstein division: q (n cells) with g*q = f mod X^n.
void series_divide(FieldCtx& ctx, const Engine& e, Region f, Region g,
                   RegionMut q, Workspace& ws);

// Constant-space division; inverse prefix kept reversed in the top of q.
void series_divide_inplace(FieldCtx& ctx, const Engine& e, Region f, Region g,
                           RegionMut q, Workspace& aux);

// Division that destroys its dividend, enabling the fixed step
// ell = floor(n/c), c = max(c_m+3, c_s+2).  f's content is unspecified
// afterwards.
void series_divide_erase(FieldCtx& ctx, const Engine& e, RegionMut f, Region g,
                         RegionMut q, Workspace& aux);

// Same with the dividend's constant term held in a separate register:
// the layout Euclidean division needs (remainder space plus one register).
void series_divide_erase_split(FieldCtx& ctx, const Engine& e, Fe& d0,
                               RegionMut frest, Region g, RegionMut q,
                               Workspace& aux);

// Division with a linear scratch grant of roughly alpha*n registers; the
// step schedule widens with the grant so the loop runs a bounded number of
// iterations independent of n.  Returns the loop iteration count.
std::size_t series_divide_linear(FieldCtx& ctx, const Engine& e, Region f,
                                 Region g, RegionMut q, Workspace& ws,
                                 double alpha);

// Workspace grants for the baselines.
std::size_t series_invert_ws(const EngineProfile& p, std::size_t n);
std::size_t series_divide_ws(const EngineProfile& p, std::size_t n);
std::size_t series_divide_linear_ws(double alpha, std::size_t n);

// Schedule constants (integer ceilings of the profile's space factors).
std::size_t invert_step_constant(const EngineProfile& p);   // 2 + max(c_m, c_s)
std::size_t divide_step_constant(const EngineProfile& p);   // 3 + max(c_m, c_s)
std::size_t erase_step_constant(const EngineProfile& p);    // max(c_m+3, c_s+2)

}  // namespace ipoly

#endif
