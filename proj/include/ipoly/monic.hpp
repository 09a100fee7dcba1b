#ifndef IPOLY_MONIC_HPP
#define IPOLY_MONIC_HPP

#include <cstddef>

#include <ipoly/engines.hpp>
#include <ipoly/field.hpp>
#include <ipoly/regions.hpp>

namespace ipoly {

// Helpers for monic polynomials stored without their leading 1: a monic
// polynomial of degree d occupies exactly d registers (coefficients of
// X^0..X^{d-1}).  Subproduct-tree nodes and the T_i group moduli use this
// layout throughout.

// dest (la+lb) = A (explicit, la cells) * (X^lb + tlow), tlow of lb cells.
// dest must be disjoint from a and tlow.
void mul_by_monic(FieldCtx& ctx, const Engine& e, Region a, Region tlow,
                  RegionMut dest, Workspace& ws);

// out (n) = A * (X^lb + tlow) mod X^n, accumulate-capable.
void short_mul_by_monic(FieldCtx& ctx, const Engine& e, Region a, Region tlow,
                        RegionMut out, Workspace& ws, bool accumulate = false);

// dest holds two implicit-monic factors packed as L (h cells) | R (rest);
// replaces them with their product using one result-sized temporary.
void monic_merge(FieldCtx& ctx, const Engine& e, RegionMut dest, std::size_t h,
                 Workspace& ws);

// In-place remainder of work by the monic divisor X^d + tlow (d = tlow size):
// classical long division, quadratic time, no workspace.  On return the low
// d cells of work hold the remainder; cells d.. hold the quotient
// (coefficient of X^i of the quotient at work[d+i]).
void rem_by_monic(FieldCtx& ctx, RegionMut work, Region tlow);

// Streaming remainder modulo X^d + tlow of a dividend read once from the
// top through `at`; rem (d cells) is the only state.  Quadratic, no
// workspace: the reduction for dividends too large to stage.
template <class At>
void rem_streaming(FieldCtx& ctx, At&& at, std::size_t len, Region tlow,
                   RegionMut rem) {
    const std::size_t d = tlow.size();
    rem.fill_zero();
    for (std::size_t t = len; t-- > 0;) {
        Fe top = d > 0 ? rem.at(d - 1) : at(t);
        for (std::size_t j = d; j-- > 1;)
            rem.set(j, ctx.sub(rem.at(j - 1), ctx.mul(top, tlow.at(j))));
        if (d > 0) rem.set(0, ctx.sub(at(t), ctx.mul(top, tlow.at(0))));
    }
}

// Reduce f modulo X^k + mcells (k = mcells.size()) by chunked balanced
// divisions against the inverse of the reversed divisor; the reduced
// polynomial of k cells is left in win[0..k).  win/inv/qc each have k+1
// cells; beyond them only the engine's short-product workspace is used.
void reduce_by_monic_chunked(FieldCtx& ctx, const Engine& e, Region f,
                             Region mcells, RegionMut win, RegionMut inv,
                             RegionMut qc, Workspace& ws);

// Evaluate the monic polynomial X^d + tlow at a.
Fe eval_monic(FieldCtx& ctx, Region tlow, Fe a);

}  // namespace ipoly

#endif
