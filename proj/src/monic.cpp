#include <ipoly/monic.hpp>

#include <cassert>

namespace ipoly {

void mul_by_monic(FieldCtx& ctx, const Engine& e, Region a, Region tlow,
                  RegionMut dest, Workspace& ws) {
    const std::size_t la = a.size(), lb = tlow.size();
    assert(dest.size() == la + lb);
    if (la == 0) {
        for (std::size_t i = 0; i < lb; ++i) dest.set(i, tlow.at(i));
        return;
    }
    if (lb == 0) {
        for (std::size_t i = 0; i < la; ++i) dest.set(i, a.at(i));
        return;
    }
    e.full_product(ctx, a, tlow, dest.slice(0, la + lb - 1), ws);
    dest.set(la + lb - 1, Fe{0});
    for (std::size_t i = 0; i < la; ++i)
        dest.set(lb + i, ctx.add(dest.at(lb + i), a.at(i)));
}

void short_mul_by_monic(FieldCtx& ctx, const Engine& e, Region a, Region tlow,
                        RegionMut out, Workspace& ws, bool accumulate) {
    const std::size_t n = out.size(), lb = tlow.size();
    short_product_any(ctx, e, a, tlow, out, ws, accumulate);
    for (std::size_t i = lb; i < n; ++i) {
        if (i - lb >= a.size()) break;
        out.set(i, ctx.add(out.at(i), a.at(i - lb)));
    }
}

void monic_merge(FieldCtx& ctx, const Engine& e, RegionMut dest, std::size_t h,
                 Workspace& ws) {
    const std::size_t k = dest.size();
    assert(h >= 1 && h < k);
    Scratch tmp = ws.acquire(k - 1);
    e.full_product(ctx, Region(dest).slice(0, h), Region(dest).slice(h, k),
                   tmp.view(), ws);
    // (X^h + L)(X^{k-h} + R) = X^k + X^{k-h} L + X^h R + L R, with L in
    // dest[0..h) and R in dest[h..k): the X^h R term contributes R[t-h],
    // which sits at cell t.  Fold from the top so nothing is read after
    // being overwritten.
    RegionMut tv = tmp.view();
    for (std::size_t t = k; t-- > 0;) {
        Fe s = t < k - 1 ? tv.at(t) : Fe{0};
        if (t >= k - h) s = ctx.add(s, dest.at(t - (k - h)));
        if (t >= h) s = ctx.add(s, dest.at(t));
        dest.set(t, s);
    }
}

void rem_by_monic(FieldCtx& ctx, RegionMut work, Region tlow) {
    const std::size_t d = tlow.size();
    const std::size_t len = work.size();
    if (len <= d) return;
    for (std::size_t j = len - d; j-- > 0;) {
        Fe q = work.at(j + d);
        if (q.v == 0) continue;
        for (std::size_t i = 0; i < d; ++i)
            work.set(j + i, ctx.sub(work.at(j + i), ctx.mul(q, tlow.at(i))));
    }
}

Fe eval_monic(FieldCtx& ctx, Region tlow, Fe a) {
    Fe acc = ctx.one();
    for (std::size_t i = tlow.size(); i-- > 0;)
        acc = ctx.add(ctx.mul(acc, a), tlow.at(i));
    return acc;
}

void reduce_by_monic_chunked(FieldCtx& ctx, const Engine& e, Region f,
                             Region mcells, RegionMut win, RegionMut inv,
                             RegionMut qc, Workspace& ws) {
    const std::size_t k = mcells.size();
    const std::size_t nb = k + 1;
    const std::size_t n = f.size();
    assert(win.size() == nb && inv.size() == nb && qc.size() == nb);
    if (n <= k) {
        for (std::size_t i = 0; i < k; ++i)
            win.set(i, i < n ? f.at(i) : Fe{0});
        return;
    }

    // Inverse of rev(X^k + m) = 1 + X*u to precision nb, u = rev(m).  The
    // refinement buffer borrows the quotient-chunk registers, which have no
    // use until the division loop starts.
    Region u = mcells.rev();
    inv.set(0, ctx.one());
    std::size_t kk = 1;
    while (kk < nb) {
        const std::size_t ell = std::min(kk, nb - kk);
        RegionMut bv = qc.slice(0, ell);
        middle_product(ctx, e, u.slice(0, kk + ell - 1), Region(inv).slice(0, kk),
                       bv, ws);
        for (std::size_t i = 0; i < ell; ++i) bv.set(i, ctx.neg(bv.at(i)));
        e.short_product(ctx, Region(inv).slice(0, ell), bv,
                        inv.slice(kk, kk + ell), ws);
        kk += ell;
    }

    for (std::size_t i = 0; i < nb; ++i) win.set(i, f.at(n - nb + i));
    std::size_t kq = n - nb + 1;
    while (kq > nb) {
        e.short_product(ctx, Region(win).rev(), inv, qc, ws);
        // The chunk's contribution to the next window, then the slide that
        // pulls in the untouched dividend coefficients.
        e.short_product(ctx, Region(qc).slice(1, nb).rev(), mcells,
                        win.slice(0, nb - 1), ws);
        for (std::size_t i = nb; i-- > 1;)
            win.set(i, ctx.sub(f.at(kq - nb - 1 + i), win.at(i - 1)));
        win.set(0, f.at(kq - nb - 1));
        kq -= nb;
    }
    const std::size_t s = kq;
    e.short_product(ctx, Region(win).slice(nb - s, nb).rev(),
                    Region(inv).slice(0, s), qc.slice(0, s), ws);
    // Final merge: remainder = pre-chunk dividend minus the chunk's product,
    // staged in the inverse's dead cells.
    RegionMut contrib = inv.slice(0, nb - 1);
    for (std::size_t t = 0; t < nb - 1; ++t) {
        Fe sum = ctx.zero();
        for (std::size_t i = 0; i <= t && i < s; ++i)
            sum = ctx.mul_add(qc.at(s - 1 - i), mcells.at(t - i), sum);
        contrib.set(t, sum);
    }
    // Top-down: cell j reads window index j-(s-1), which lives at or below j.
    for (std::size_t j = nb - 1; j-- > 0;) {
        Fe base = (j + 1 < s) ? f.at(j) : win.at(j - (s - 1));
        win.set(j, ctx.sub(base, contrib.at(j)));
    }
}

}  // namespace ipoly
