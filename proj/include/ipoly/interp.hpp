#ifndef IPOLY_INTERP_HPP
#define IPOLY_INTERP_HPP

#include <cstddef>
#include <vector>

#include <ipoly/engines.hpp>
#include <ipoly/evaltree.hpp>
#include <ipoly/field.hpp>
#include <ipoly/regions.hpp>

namespace ipoly {

// Interpolation at pairwise-distinct points.  Duplicate points surface as
// DuplicatePoint wherever a vanishing denominator betrays them.

// Classic quadratic method: one synthetic division of the master product
// per point.  Allocates freely; doubles as the reference everything else is
// compared against.
std::vector<Fe> lagrange(FieldCtx& ctx, const PointView& pts, const PointView& vals);

// f has n+1 cells; f[0..n) receives the formal derivative, the last cell is
// zeroed.
void derivative_inplace(FieldCtx& ctx, RegionMut f);

// Full-tree interpolation: one subproduct tree for the derivative values
// and the rational-sum ascent.
void interp_fulltree(FieldCtx& ctx, const Engine& e, const PointView& pts,
                     const PointView& vals, RegionMut out, Workspace& ws);
std::size_t interp_fulltree_ws(const EngineProfile& p, std::size_t n);

// Linear-space interpolation: per-group subproduct roots, the master product
// assembled in the output, derivative in place, per-group remainders and
// evaluations, then a divide-and-conquer rational-function combination.
void interp_linear(FieldCtx& ctx, const Engine& e, const PointView& pts,
                   const PointView& vals, RegionMut out, Workspace& ws);
std::size_t interp_linear_ws(const EngineProfile& p, std::size_t n);

// Partial interpolation: with g = F mod X^s known and n-s point/value pairs,
// writes H mod X^k where F = g + X^s H is the unique size-n interpolant.
// Space is cpi_constant(profile) * k plus a constant.
void part_interpol(FieldCtx& ctx, const Engine& e, Region g,
                   const PointView& pts, const PointView& vals, std::size_t k,
                   RegionMut h_out, Workspace& ws);
std::size_t part_interpol_ws(const EngineProfile& p, std::size_t k);

// Declared auxiliary factor of part_interpol; the in-place schedule divides
// by cpi_constant + 1.
double cpi_constant(const EngineProfile& p);

// Constant-space interpolation: grows a known prefix of f by
// k = (n-s)/(cpi+1) coefficients per round, partial interpolation running in
// the unwritten suffix.
void interp_inplace(FieldCtx& ctx, const Engine& e, Region pts, Region vals,
                    RegionMut f, Workspace& aux);

}  // namespace ipoly

#endif
