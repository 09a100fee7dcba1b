#include <ipoly/evaltree.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>

#include <ipoly/errors.hpp>
#include <ipoly/eucdiv.hpp>

namespace ipoly {

namespace {

constexpr std::size_t kEvalFile = 8;

std::size_t iceil(double x) { return static_cast<std::size_t>(std::ceil(x - 1e-9)); }

std::size_t ceil_log2(std::size_t n) {
    std::size_t lg = 0;
    while ((std::size_t{1} << lg) < n) ++lg;
    return lg;
}

void product_root_rec(FieldCtx& ctx, const Engine& e, const PointView& pts,
                      RegionMut dest, Workspace& ws, std::size_t school_above) {
    const std::size_t k = pts.size();
    assert(dest.size() == k);
    if (k == 0) return;
    if (k == 1) {
        dest.set(0, ctx.neg(pts.at(0)));
        return;
    }
    const std::size_t h = k / 2;
    product_root_rec(ctx, e, pts.subrange(0, h), dest.slice(0, h), ws, school_above);
    product_root_rec(ctx, e, pts.subrange(h, k), dest.slice(h, k), ws, school_above);
    const Engine& eng = (k >= school_above) ? schoolbook_engine() : e;
    monic_merge(ctx, eng, dest, h, ws);
}

}  // namespace

void product_root(FieldCtx& ctx, const Engine& e, const PointView& pts,
                  RegionMut dest, Workspace& ws) {
    // The top ceil(loglog k) merge levels run on the constant-space engine.
    const std::size_t k = pts.size();
    const std::size_t lg = ceil_log2(k);
    const std::size_t lglg = ceil_log2(lg ? lg : 1);
    std::size_t school_above = k;
    for (std::size_t i = 0; i < lglg && school_above > 2; ++i) school_above /= 2;
    product_root_rec(ctx, e, pts, dest, ws, std::max<std::size_t>(school_above, 2));
}

Fe horner(FieldCtx& ctx, Region f, Fe a) {
    if (f.size() == 0) return ctx.zero();
    Fe acc = f.at(f.size() - 1);
    for (std::size_t i = f.size() - 1; i-- > 0;)
        acc = ctx.mul_add(acc, a, f.at(i));
    return acc;
}

std::size_t SubproductTree::storage(std::size_t k) {
    if (k == 0) return 0;
    return k * (ceil_log2(k) + 1);
}

SubproductTree::SubproductTree(FieldCtx& ctx, const Engine& e,
                               const PointView& pts, Workspace& ws)
    : store_(ws.acquire(storage(pts.size()))), k_(pts.size()),
      levels_(k_ ? ceil_log2(k_) + 1 : 0) {
    RegionMut bank = store_.view();
    for (std::size_t t = 0; t < k_; ++t) bank.set(t, ctx.neg(pts.at(t)));
    for (std::size_t j = 1; j < levels_; ++j) {
        const std::size_t width = std::size_t{1} << j;
        const std::size_t half = width / 2;
        for (std::size_t t = 0; t * width < k_; ++t) {
            const std::size_t lo = t * width;
            const std::size_t hi = std::min(lo + width, k_);
            RegionMut dst = bank.slice(j * k_ + lo, j * k_ + hi);
            Region below = Region(bank).slice((j - 1) * k_ + lo, (j - 1) * k_ + hi);
            for (std::size_t i = 0; i < hi - lo; ++i) dst.set(i, below.at(i));
            if (hi - lo > half) monic_merge(ctx, e, dst, half, ws);
        }
    }
}

std::size_t SubproductTree::nodes(std::size_t level) const {
    const std::size_t width = std::size_t{1} << level;
    return (k_ + width - 1) / width;
}

std::pair<std::size_t, std::size_t> SubproductTree::node_span(
    std::size_t level, std::size_t idx) const {
    const std::size_t width = std::size_t{1} << level;
    const std::size_t lo = idx * width;
    return {lo, std::min(lo + width, k_)};
}

Region SubproductTree::node(std::size_t level, std::size_t idx) const {
    auto [lo, hi] = node_span(level, idx);
    return Region(store_.data() + level * k_ + lo, hi - lo);
}

void SubproductTree::root_explicit(RegionMut out) const {
    assert(out.size() == k_ + 1);
    Region r = root();
    for (std::size_t i = 0; i < k_; ++i) out.set(i, r.at(i));
    out.set(k_, Fe{1});
}

namespace {

// Walk remainders down the tree.  The incoming polynomial is read-only and
// may be longer than the node; each child remainder is produced by the
// streaming reduction into a child-width buffer, so the live scratch along
// a root-to-leaf path sums to less than twice the point count.
void eval_descend(FieldCtx& ctx, const SubproductTree& tree, std::size_t level,
                  std::size_t idx, Region p, RegionMut out, Workspace& ws) {
    if (level == 0) {
        Fe a = ctx.neg(tree.node(0, idx).at(0));
        out.set(idx, horner(ctx, p, a));
        return;
    }
    const std::size_t half = std::size_t{1} << (level - 1);
    if (tree.node(level, idx).size() <= half) {
        // No right child; the node equals its left child.
        eval_descend(ctx, tree, level - 1, 2 * idx, p, out, ws);
        return;
    }
    auto at = [&](std::size_t t) { return p.at(t); };
    Region left = tree.node(level - 1, 2 * idx);
    Region right = tree.node(level - 1, 2 * idx + 1);
    {
        Scratch sub = ws.acquire(left.size());
        rem_streaming(ctx, at, p.size(), left, sub.view());
        eval_descend(ctx, tree, level - 1, 2 * idx, sub, out, ws);
    }
    {
        Scratch sub = ws.acquire(right.size());
        rem_streaming(ctx, at, p.size(), right, sub.view());
        eval_descend(ctx, tree, level - 1, 2 * idx + 1, sub, out, ws);
    }
}

}  // namespace

void eval_fulltree(FieldCtx& ctx, const Engine& e, Region f,
                   const SubproductTree& tree, RegionMut out, Workspace& ws) {
    (void)e;
    const std::size_t k = tree.count();
    if (k == 0) return;
    assert(out.size() == k);
    eval_descend(ctx, tree, tree.levels() - 1, 0, f, out, ws);
}

std::size_t eval_linear_balanced_ws(const EngineProfile& p, std::size_t n) {
    if (n < 2) return kConstBudget;
    const std::size_t g = std::max<std::size_t>(1, ceil_log2(n));
    const std::size_t b = (n + g - 1) / g;
    // tree + reduced polynomial + remainder internals + descent path
    std::size_t need = SubproductTree::storage(b) + (b + 1) +
                       std::max(rem_only_ws(p, b + 1), 3 * b + 8) +
                       iceil(p.c_f * static_cast<double>(b));
    return std::max(need, iceil(1.5 * static_cast<double>(n))) + kConstBudget;
}

void eval_linear_balanced(FieldCtx& ctx, const Engine& e, Region f,
                          const PointView& pts, RegionMut out, Workspace& ws) {
    const std::size_t n = pts.size();
    assert(out.size() == n);
    if (n <= 2) {
        for (std::size_t i = 0; i < n; ++i) out.set(i, horner(ctx, f, pts.at(i)));
        return;
    }
    const std::size_t g = ceil_log2(n);
    const std::size_t b = (n + g - 1) / g;
    for (std::size_t g0 = 0; g0 < n; g0 += b) {
        const std::size_t bg = std::min(b, n - g0);
        if (bg < 4) {
            for (std::size_t i = 0; i < bg; ++i)
                out.set(g0 + i, horner(ctx, f, pts.at(g0 + i)));
            continue;
        }
        SubproductTree tree(ctx, e, pts.subrange(g0, g0 + bg), ws);
        Scratch rr = ws.acquire(bg + 1);
        {
            Scratch rootexp = ws.acquire(bg + 1);
            tree.root_explicit(rootexp.view());
            rem_only(ctx, e, f, rootexp, rr.view(), ws);
        }
        eval_fulltree(ctx, e, Region(rr).slice(0, bg), tree,
                      out.slice(g0, g0 + bg), ws);
    }
}

std::size_t eval_linear_unbalanced_ws(const EngineProfile& p, std::size_t k) {
    return iceil((p.c_s + 2.0) * static_cast<double>(k)) + k + kConstBudget;
}

void eval_linear_unbalanced(FieldCtx& ctx, const Engine& e, Region f,
                            const PointView& pts, RegionMut out, Workspace& ws) {
    const std::size_t k = pts.size();
    const std::size_t n = f.size();
    if (k == 0) return;
    assert(out.size() == k);
    const std::size_t structured_need =
        3 * (k + 1) +
        std::max(e.profile().ws_short(k + 1), e.profile().ws_middle((k + 1) / 2)) +
        4;
    if (n > k + 1 && k >= 8 &&
        ws.budget() >= ws.live() + structured_need &&
        ws.capacity() >= ws.live() + structured_need) {
        // Root of the point product in the output registers, then reduce f
        // and evaluate the size-k remainder.
        product_root(ctx, e, pts, out, ws);
        Scratch win = ws.acquire(k + 1);
        Scratch inv = ws.acquire(k + 1);
        Scratch qc = ws.acquire(k + 1);
        reduce_by_monic_chunked(ctx, e, f, Region(out), win.view(), inv.view(),
                                qc.view(), ws);
        Region red = Region(win).slice(0, k);
        for (std::size_t i = 0; i < k; ++i) out.set(i, horner(ctx, red, pts.at(i)));
        return;
    }
    for (std::size_t i = 0; i < k; ++i) out.set(i, horner(ctx, f, pts.at(i)));
}

void eval_inplace(FieldCtx& ctx, const Engine& e, Region f,
                  const PointView& pts, RegionMut out, Workspace& aux) {
    const std::size_t n = pts.size();
    assert(out.size() == n);
    Scratch file = aux.acquire(kEvalFile);
    const std::size_t c4 = iceil(e.profile().c_s) + 3;
    std::size_t s = 0;
    std::size_t k = n / c4;
    while (k > 0) {
        Workspace sub = Workspace::over({out.slice(s + k, n), file.view()});
        eval_linear_unbalanced(ctx, e, f, pts.subrange(s, s + k),
                               out.slice(s, s + k), sub);
        s += k;
        k = (n - s) / c4;
    }
    for (std::size_t i = s; i < n; ++i) out.set(i, horner(ctx, f, pts.at(i)));
}

}  // namespace ipoly
