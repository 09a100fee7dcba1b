#ifndef IPOLY_ENGINES_HPP
#define IPOLY_ENGINES_HPP

#include <cmath>
#include <cstddef>
#include <memory>
#include <string>

#include <ipoly/field.hpp>
#include <ipoly/regions.hpp>

namespace ipoly {

// Declared constants of a multiplication engine: time factors lambda_* are
// read against the engine's own M(n); space factors c_* bound the peak
// workspace of a size-n call by ceil(c*n) + kConstBudget.
struct EngineProfile {
    std::string name;
    double lambda_f = 1.0, lambda_s = 1.0, lambda_m = 1.0;
    double c_f = 0.0, c_s = 0.0, c_m = 0.0;

    std::size_t ws_full(std::size_t n) const { return bound(c_f, n); }
    std::size_t ws_short(std::size_t n) const { return bound(c_s, n); }
    std::size_t ws_middle(std::size_t n) const { return bound(c_m, n); }

    // M(n) used for reporting ratios; never asserted as an absolute count.
    virtual double model_cost(std::size_t n) const {
        return static_cast<double>(n) * static_cast<double>(n);
    }
    virtual ~EngineProfile() = default;

  private:
    static std::size_t bound(double c, std::size_t n) {
        return static_cast<std::size_t>(std::ceil(c * static_cast<double>(n)));
    }
};

// Full, short and middle products with caller-supplied workspace.  Engines
// never allocate: all scratch flows through ws, so in-place callers can hand
// them carved-up pieces of the output bank.
//
//   full_product    out (a+b-1) = F (a) * G (b)
//   short_product   out (n)     = F (n) * G (n) mod X^n
//   middle_product  out (n)     = coefficients X^{n-1}..X^{2n-2} of F (2n-1) * G (n)
//
// middle_product is the balanced kernel; arbitrary-shape middle products are
// assembled from it by ipoly::middle_product below.  With accumulate set the
// result is added onto out instead of overwriting it.  out must be disjoint
// from both inputs in every case.
class Engine {
  public:
    virtual ~Engine() = default;
    virtual const EngineProfile& profile() const = 0;

    virtual void full_product(FieldCtx& ctx, Region f, Region g, RegionMut out,
                              Workspace& ws, bool accumulate = false) const = 0;
    virtual void short_product(FieldCtx& ctx, Region f, Region g, RegionMut out,
                               Workspace& ws, bool accumulate = false) const = 0;
    virtual void middle_product(FieldCtx& ctx, Region f, Region g, RegionMut out,
                                Workspace& ws, bool accumulate = false) const = 0;
};

// Quadratic engine, zero workspace on every operation: the stand-in for an
// in-place full-product primitive.  M(n) = n^2.
const Engine& schoolbook_engine();

// Karatsuba engine with workspace-passed recursion, c_f = c_s = c_m = 2.
// The middle product is a reversed short product on the low part plus an
// accumulated short product on the high part, so lambda_m ~ 2 against
// M(n) = 3^ceil(log2 n).
const Engine& karatsuba_engine();

// nullptr if the name is unknown.
const Engine* engine_by_name(const std::string& name);

// General middle product: out (m) = coefficients X^{n-1}..X^{n+m-2} of
// F (m+n-1) * G (n).  Unbalanced shapes are tiled with balanced kernels of
// the smaller size: for m < n this is the ceil(n/m)-blocks-of-size-m scheme
// accumulated straight into out, using at most ws_middle(m) workspace on top
// of the output; for m > n the output is cut into independent size-n slices.
void middle_product(FieldCtx& ctx, const Engine& e, Region f, Region g,
                    RegionMut out, Workspace& ws, bool accumulate = false);

// Truncated product out (n) = F (any) * G (any) mod X^n, padding semantics
// for short operands.  Falls back to a full product into scratch when either
// operand is shorter than n.
void short_product_any(FieldCtx& ctx, const Engine& e, Region f, Region g,
                       RegionMut out, Workspace& ws, bool accumulate = false);

}  // namespace ipoly

#endif
