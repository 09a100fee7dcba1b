#ifndef IPOLY_EVALTREE_HPP
#define IPOLY_EVALTREE_HPP

#include <cstddef>

#include <ipoly/engines.hpp>
#include <ipoly/field.hpp>
#include <ipoly/monic.hpp>
#include <ipoly/regions.hpp>

namespace ipoly {

// Read-only list of evaluation points: a window into a register bank plus
// an optional transposition of two absolute indices.  The transposition is
// how interpolation moves a zero point to the end of the list without
// touching the input bank.
class PointView {
  public:
    PointView() = default;
    explicit PointView(Region pts)
        : base_(pts), off_(0), len_(pts.size()), sa_(0), sb_(0) {}

    std::size_t size() const { return len_; }

    Fe at(std::size_t i) const {
        std::size_t idx = off_ + i;
        if (idx == sa_) idx = sb_;
        else if (idx == sb_) idx = sa_;
        return base_.at(idx);
    }

    PointView subrange(std::size_t a, std::size_t b) const {
        PointView v = *this;
        v.off_ = off_ + a;
        v.len_ = b - a;
        return v;
    }

    PointView with_swap(std::size_t a, std::size_t b) const {
        PointView v = *this;
        v.sa_ = a;
        v.sb_ = b;
        return v;
    }

  private:
    Region base_;
    std::size_t off_ = 0, len_ = 0;
    std::size_t sa_ = 0, sb_ = 0;
};

// product_root over a point view (leaf access only).
void product_root(FieldCtx& ctx, const Engine& e, const PointView& pts,
                  RegionMut dest, Workspace& ws);

// F(a) by Horner; n-1 muls, n-1 adds, no workspace.
Fe horner(FieldCtx& ctx, Region f, Fe a);

// Full subproduct tree over k points.  Level j holds ceil(k/2^j) monic
// nodes (implicit leading 1) packed into exactly k cells; node t at level j
// covers points [t*2^j, min((t+1)*2^j, k)).  Storage is acquired from the
// workspace handed to the constructor and held for the tree's lifetime.
class SubproductTree {
  public:
    SubproductTree(FieldCtx& ctx, const Engine& e, const PointView& pts,
                   Workspace& ws);

    std::size_t count() const { return k_; }
    std::size_t levels() const { return levels_; }
    std::size_t nodes(std::size_t level) const;

    // Coefficient cells of a node (its monic polynomial minus the lead).
    Region node(std::size_t level, std::size_t idx) const;
    Region root() const { return node(levels_ - 1, 0); }

    // Root with the explicit leading 1; out has count()+1 cells.
    void root_explicit(RegionMut out) const;

    static std::size_t storage(std::size_t k);

  private:
    std::pair<std::size_t, std::size_t> node_span(std::size_t level,
                                                  std::size_t idx) const;
    Scratch store_;
    std::size_t k_ = 0;
    std::size_t levels_ = 0;
};

// Evaluate f at every tree point by walking remainders down the tree.
void eval_fulltree(FieldCtx& ctx, const Engine& e, Region f,
                   const SubproductTree& tree, RegionMut out, Workspace& ws);

// Grouped linear-space evaluation: ceil(log2 n) groups, one subproduct tree
// at a time, f reduced modulo each group root.
void eval_linear_balanced(FieldCtx& ctx, const Engine& e, Region f,
                          const PointView& pts, RegionMut out, Workspace& ws);
std::size_t eval_linear_balanced_ws(const EngineProfile& p, std::size_t n);

// k <= n points: the group-root reduction route when the workspace allows
// it, per-point Horner otherwise.  out may be used as scratch.
void eval_linear_unbalanced(FieldCtx& ctx, const Engine& e, Region f,
                            const PointView& pts, RegionMut out, Workspace& ws);
std::size_t eval_linear_unbalanced_ws(const EngineProfile& p, std::size_t k);

// Constant-space multipoint evaluation: rounds of k = (n-s)/(c_s+3) points
// evaluated into the output prefix with the unwritten suffix as workspace.
void eval_inplace(FieldCtx& ctx, const Engine& e, Region f,
                  const PointView& pts, RegionMut out, Workspace& aux);

}  // namespace ipoly

#endif
