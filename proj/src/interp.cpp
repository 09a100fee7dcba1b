#include <ipoly/interp.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>

#include <ipoly/errors.hpp>
#include <ipoly/eucdiv.hpp>
#include <ipoly/monic.hpp>

namespace ipoly {

namespace {

constexpr std::size_t kInterpFile = 28;
constexpr std::size_t kSmallDense = 32;

std::size_t iceil(double x) { return static_cast<std::size_t>(std::ceil(x - 1e-9)); }

std::size_t ceil_log2(std::size_t n) {
    std::size_t lg = 0;
    while ((std::size_t{1} << lg) < n) ++lg;
    return lg;
}

void copy_region(Region src, RegionMut dst) {
    assert(src.size() == dst.size());
    for (std::size_t i = 0; i < src.size(); ++i) dst.set(i, src.at(i));
}

// p[0..sz) <- p[0..sz)*(X - a) + [c], writing p[0..sz+1) in place.
void mul_linear_add(FieldCtx& ctx, RegionMut p, std::size_t sz, Fe a, Fe c) {
    assert(p.size() >= sz + 1);
    if (sz == 0) {
        p.set(0, c);
        return;
    }
    p.set(sz, p.at(sz - 1));
    for (std::size_t t = sz - 1; t >= 1; --t)
        p.set(t, ctx.sub(p.at(t - 1), ctx.mul(a, p.at(t))));
    p.set(0, ctx.sub(c, ctx.mul(a, p.at(0))));
}

// Implicit-monic m of degree `deg` in m[0..deg): multiply by (X - a) in
// place, new degree deg+1.
void monic_mul_linear(FieldCtx& ctx, RegionMut m, std::size_t deg, Fe a) {
    assert(m.size() >= deg + 1);
    if (deg == 0) {
        m.set(0, ctx.neg(a));
        return;
    }
    m.set(deg, ctx.sub(m.at(deg - 1), a));
    for (std::size_t t = deg - 1; t >= 1; --t)
        m.set(t, ctx.sub(m.at(t - 1), ctx.mul(a, m.at(t))));
    m.set(0, ctx.neg(ctx.mul(a, m.at(0))));
}

// Newton divided differences over a value buffer, expanded to the monomial
// basis in out.  Quadratic; the dense path for small instances and for the
// per-group interpolations.
void interp_smalldense(FieldCtx& ctx, const PointView& pts, const PointView& vals,
                       RegionMut out, Workspace& ws) {
    const std::size_t n = pts.size();
    assert(out.size() == n);
    if (n == 0) return;
    Scratch dd = ws.acquire(n);
    RegionMut d = dd.view();
    for (std::size_t i = 0; i < n; ++i) d.set(i, vals.at(i));
    for (std::size_t lev = 1; lev < n; ++lev) {
        for (std::size_t i = n; i-- > lev;) {
            Fe den = ctx.sub(pts.at(i), pts.at(i - lev));
            if (den.v == 0)
                throw DuplicatePoint("interpolation: coincident points");
            d.set(i, ctx.mul(ctx.sub(d.at(i), d.at(i - 1)), ctx.inv(den)));
        }
    }
    out.fill_zero();
    out.set(0, d.at(n - 1));
    std::size_t sz = 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        mul_linear_add(ctx, out, sz, pts.at(i), d.at(i));
        ++sz;
    }
}

// Numerator ascent of the rational sum sum_i c_i / (X - a_i) over a
// subproduct tree: N at a node is N_L*M_R + N_R*M_L, written into ndest.
void uptree_numerator(FieldCtx& ctx, const Engine& e, const SubproductTree& tree,
                      Region cvals, std::size_t level, std::size_t idx,
                      RegionMut ndest, Workspace& ws) {
    if (level == 0) {
        ndest.set(0, cvals.at(idx));
        return;
    }
    const std::size_t width = std::size_t{1} << level;
    const std::size_t half = width / 2;
    if (ndest.size() <= half) {
        uptree_numerator(ctx, e, tree, cvals, level - 1, 2 * idx, ndest, ws);
        return;
    }
    Region ml = tree.node(level - 1, 2 * idx);
    Region mr = tree.node(level - 1, 2 * idx + 1);
    const std::size_t wl = ml.size(), wr = mr.size();
    uptree_numerator(ctx, e, tree, cvals, level - 1, 2 * idx,
                     ndest.slice(0, wl), ws);
    uptree_numerator(ctx, e, tree, cvals, level - 1, 2 * idx + 1,
                     ndest.slice(wl, wl + wr), ws);
    Scratch buf = ws.acquire(wl + wr);
    mul_by_monic(ctx, e, Region(ndest).slice(0, wl), mr, buf.view(), ws);
    short_mul_by_monic(ctx, e, Region(ndest).slice(wl, wl + wr), ml, buf.view(),
                       ws, true);
    copy_region(buf, ndest);
}

}  // namespace

std::vector<Fe> lagrange(FieldCtx& ctx, const PointView& pts, const PointView& vals) {
    const std::size_t n = pts.size();
    if (n != vals.size()) throw LengthMismatch("lagrange: point/value sizes differ");
    std::vector<Fe> out(n, Fe{0});
    if (n == 0) return out;
    if (n == 1) {
        out[0] = vals.at(0);
        return out;
    }
    // Master product (implicit monic), then one synthetic division per point.
    std::vector<Fe> m(n, Fe{0});
    for (std::size_t i = 0; i < n; ++i)
        monic_mul_linear(ctx, region_of(m), i, pts.at(i));
    std::vector<Fe> q(n, Fe{0});
    for (std::size_t i = 0; i < n; ++i) {
        Fe a = pts.at(i);
        q[n - 1] = ctx.one();
        for (std::size_t t = n - 1; t >= 1; --t)
            q[t - 1] = ctx.add(m[t], ctx.mul(a, q[t]));
        Fe den = horner(ctx, region_of(q), a);
        if (den.v == 0) throw DuplicatePoint("lagrange: coincident points");
        Fe c = ctx.mul(vals.at(i), ctx.inv(den));
        for (std::size_t j = 0; j < n; ++j)
            out[j] = ctx.add(out[j], ctx.mul(c, q[j]));
    }
    return out;
}

void derivative_inplace(FieldCtx& ctx, RegionMut f) {
    const std::size_t m = f.size();
    if (m == 0) return;
    for (std::size_t i = 1; i < m; ++i)
        f.set(i - 1, ctx.mul(ctx.from_uint(static_cast<u64>(i)), f.at(i)));
    f.set(m - 1, ctx.zero());
}

std::size_t interp_fulltree_ws(const EngineProfile& p, std::size_t n) {
    return SubproductTree::storage(n) + 6 * n + iceil(p.c_f * static_cast<double>(n)) +
           kConstBudget;
}

void interp_fulltree(FieldCtx& ctx, const Engine& e, const PointView& pts,
                     const PointView& vals, RegionMut out, Workspace& ws) {
    const std::size_t n = pts.size();
    assert(out.size() == n && vals.size() == n);
    if (n == 0) return;
    if (n == 1) {
        out.set(0, vals.at(0));
        return;
    }
    SubproductTree tree(ctx, e, pts, ws);
    Scratch mp = ws.acquire(n);
    {
        // Derivative of the implicit-monic root.
        Region root = tree.root();
        RegionMut mv = mp.view();
        for (std::size_t i = 0; i + 1 < n; ++i)
            mv.set(i, ctx.mul(ctx.from_uint(static_cast<u64>(i + 1)), root.at(i + 1)));
        mv.set(n - 1, ctx.from_uint(static_cast<u64>(n)));
    }
    Scratch cv = ws.acquire(n);
    eval_fulltree(ctx, e, mp, tree, cv.view(), ws);
    {
        RegionMut c = cv.view();
        for (std::size_t i = 0; i < n; ++i) {
            if (c.at(i).v == 0)
                throw DuplicatePoint("interp_fulltree: coincident points");
            c.set(i, ctx.mul(vals.at(i), ctx.inv(c.at(i))));
        }
    }
    uptree_numerator(ctx, e, tree, cv, tree.levels() - 1, 0, out, ws);
}

std::size_t interp_linear_ws(const EngineProfile& p, std::size_t n) {
    if (n <= kSmallDense) return n + kConstBudget;
    const std::size_t g = std::max<std::size_t>(1, ceil_log2(n));
    const std::size_t b = (n + g - 1) / g;
    std::size_t need = 2 * n + 1 +
                       std::max(3 * (b + 1) + iceil(p.c_s * double(b + 1)),
                                3 * b + 16 + iceil(p.c_f * double(b)));
    return std::max(need, iceil(2.5 * static_cast<double>(n))) + kConstBudget;
}

void interp_linear(FieldCtx& ctx, const Engine& e, const PointView& pts,
                   const PointView& vals, RegionMut out, Workspace& ws) {
    const std::size_t n = pts.size();
    assert(out.size() == n && vals.size() == n);
    if (n == 0) return;
    if (n <= kSmallDense) {
        interp_smalldense(ctx, pts, vals, out, ws);
        return;
    }
    const std::size_t g = ceil_log2(n);
    const std::size_t b = (n + g - 1) / g;
    const std::size_t q = (n + b - 1) / b;
    const Engine& sch = schoolbook_engine();

    // (1) group subproduct roots, packed.
    Scratch ms = ws.acquire(n);
    for (std::size_t i = 0; i < q; ++i) {
        const std::size_t lo = i * b, hi = std::min(lo + b, n);
        product_root(ctx, e, pts.subrange(lo, hi), ms.view().slice(lo, hi), ws);
    }
    // (2) master product in the output space, constant-space merges.
    copy_region(ms, out);
    {
        std::size_t width = b;
        while (width < n) {
            for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
                const std::size_t hi = std::min(lo + 2 * width, n);
                monic_merge(ctx, sch, out.slice(lo, hi), width, ws);
            }
            width *= 2;
        }
    }
    // (3) derivative of the implicit-monic master product, in place.
    for (std::size_t i = 1; i < n; ++i)
        out.set(i - 1, ctx.mul(ctx.from_uint(static_cast<u64>(i)), out.at(i)));
    out.set(n - 1, ctx.from_uint(static_cast<u64>(n)));

    // (4) remainders of M' modulo every group root, reduced against the
    // implicit-monic roots straight out of the root slab.
    Scratch rems = ws.acquire(n);
    for (std::size_t i = 0; i < q; ++i) {
        const std::size_t lo = i * b, hi = std::min(lo + b, n);
        const std::size_t bg = hi - lo;
        Scratch win = ws.acquire(bg + 1);
        Scratch inv = ws.acquire(bg + 1);
        Scratch qc = ws.acquire(bg + 1);
        reduce_by_monic_chunked(ctx, e, Region(out), Region(ms).slice(lo, hi),
                                win.view(), inv.view(), qc.view(), ws);
        copy_region(Region(win).slice(0, bg), rems.view().slice(lo, hi));
    }
    // (5) per group: subproduct tree in the (now dead) output space,
    // evaluate M' mod M_i, then ascend the rational partial sum into the
    // remainder slot.
    for (std::size_t i = 0; i < q; ++i) {
        const std::size_t lo = i * b, hi = std::min(lo + b, n);
        const std::size_t bg = hi - lo;
        Scratch cvbuf = ws.acquire(bg);
        Scratch spare = ws.acquire(2 * bg + 8);
        Workspace sub = Workspace::over({out, spare.view()});
        SubproductTree tree(ctx, e, pts.subrange(lo, hi), sub);
        eval_fulltree(ctx, e, Region(rems).slice(lo, hi), tree, cvbuf.view(), sub);
        RegionMut c = cvbuf.view();
        for (std::size_t j = 0; j < bg; ++j) {
            if (c.at(j).v == 0)
                throw DuplicatePoint("interp_linear: coincident points");
            c.set(j, ctx.mul(vals.at(lo + j), ctx.inv(c.at(j))));
        }
        uptree_numerator(ctx, e, tree, cvbuf, tree.levels() - 1, 0,
                         rems.view().slice(lo, hi), sub);
    }
    // (6) combine the group fractions divide-and-conquer; numerators live in
    // the remainder slab, denominators in the root slab, products through
    // the constant-space engine with the output as staging.
    struct Combine {
        FieldCtx& ctx;
        const Engine& sch;
        RegionMut out;
        RegionMut ns;
        RegionMut msl;
        std::size_t b, n, q;
        Workspace& ws;

        void run(std::size_t glo, std::size_t ghi, bool top) {
            if (ghi - glo == 1) {
                if (top) {
                    const std::size_t lo = glo * b;
                    copy_region(Region(ns).slice(lo, std::min(lo + b, n)), out);
                }
                return;
            }
            const std::size_t gmid = glo + (ghi - glo + 1) / 2;
            run(glo, gmid, false);
            run(gmid, ghi, false);
            const std::size_t lo = glo * b;
            const std::size_t mid = gmid * b;
            const std::size_t hi = std::min(ghi * b, n);
            const std::size_t wl = mid - lo, wr = hi - mid;
            Workspace none = Workspace::over(RegionMut());
            RegionMut stage = top ? out : out.slice(0, wl + wr);
            // N = N_L*(X^{wr}+M_R) + N_R*(X^{wl}+M_L), accumulated with the
            // constant-space engine so no product buffer is needed.
            Region nl = Region(ns).slice(lo, mid), nr = Region(ns).slice(mid, hi);
            Region ml = Region(msl).slice(lo, mid), mr = Region(msl).slice(mid, hi);
            sch.full_product(ctx, nl, mr, stage.slice(0, wl + wr - 1), none);
            stage.set(wl + wr - 1, ctx.zero());
            for (std::size_t t = 0; t < wl; ++t)
                stage.set(wr + t, ctx.add(stage.at(wr + t), nl.at(t)));
            sch.full_product(ctx, nr, ml, stage.slice(0, wl + wr - 1), none, true);
            for (std::size_t t = 0; t < wr; ++t)
                stage.set(wl + t, ctx.add(stage.at(wl + t), nr.at(t)));
            if (!top) {
                copy_region(stage, ns.slice(lo, hi));
                // out is free again after the copy; its registers stage the
                // denominator merge.
                Workspace mws = Workspace::over(out);
                monic_merge(ctx, sch, msl.slice(lo, hi), wl, mws);
            }
        }
    };
    Combine comb{ctx, sch, out, rems.view().slice(0, n), ms.view(), b, n, q, ws};
    comb.run(0, q, true);
}

double cpi_constant(const EngineProfile& p) {
    return 6.0 + std::ceil(p.c_s - 1e-9);
}

std::size_t part_interpol_ws(const EngineProfile& p, std::size_t k) {
    return iceil(cpi_constant(p) * static_cast<double>(k)) + kConstBudget;
}

void part_interpol(FieldCtx& ctx, const Engine& e, Region g,
                   const PointView& pts, const PointView& vals, std::size_t k,
                   RegionMut h_out, Workspace& ws) {
    const std::size_t ns = pts.size();
    const std::size_t s = g.size();
    assert(k >= 1 && k <= ns && h_out.size() == k && vals.size() == ns);

    // Whole-tail instances small enough for the dense method run straight
    // out of the constant allowance.
    if (k == ns && k <= 16) {
        Scratch bv = ws.acquire(k);
        RegionMut b = bv.view();
        for (std::size_t j = 0; j < ns; ++j) {
            Fe a = pts.at(j);
            Fe z = horner(ctx, g, a);
            Fe corr = ctx.sub(vals.at(j), z);
            if (s > 0) {
                if (a.v == 0)
                    throw ZeroInverse("part_interpol: zero point past the first chunk");
                corr = ctx.mul(corr, ctx.inv(ctx.pow(a, static_cast<u64>(s))));
            }
            b.set(j, corr);
        }
        // Values already corrected: interpolate H directly.
        interp_smalldense(ctx, pts, PointView(Region(b)), h_out, ws);
        return;
    }

    const std::size_t q = (ns + k - 1) / k;
    const std::size_t cs = iceil(e.profile().c_s);

    Scratch sa = ws.acquire(k);  // T_i, later the corrected values
    Scratch sb = ws.acquire(k);  // T_j, later z
    Scratch sc = ws.acquire(k);  // S_i mod X^k
    Scratch sd = ws.acquire(k);  // S_i mod T_i, later N_i
    Scratch se = ws.acquire(k);  // G mod T_i; also the low product half
    Scratch sf = ws.acquire(k);  // floating scratch; the high product half
    Scratch sg = cs > 0 ? ws.acquire(cs * k) : ws.acquire(0);
    const bool ef_adjacent = se.data() + k == sf.data();
    (void)ef_adjacent;

    h_out.fill_zero();
    for (std::size_t i = 0; i < q; ++i) {
        const std::size_t lo = i * k, hi = std::min(lo + k, ns);
        const std::size_t ki = hi - lo;
        {
            Workspace sub = Workspace::over({se.view(), sf.view(), sg.view()});
            product_root(ctx, e, pts.subrange(lo, hi), sa.view().slice(0, ki), sub);
        }
        // S_i^k = prod_{j != i} T_j mod X^k and S_i^T = same mod T_i.
        RegionMut sik = sc.view();
        sik.fill_zero();
        sik.set(0, ctx.one());
        RegionMut sit = sd.view();
        sit.set(0, ctx.one());
        std::size_t szT = 1;
        for (std::size_t j = 0; j < q; ++j) {
            if (j == i) continue;
            const std::size_t jlo = j * k, jhi = std::min(jlo + k, ns);
            const std::size_t kj = jhi - jlo;
            {
                Workspace sub = Workspace::over({se.view(), sf.view(), sg.view()});
                product_root(ctx, e, pts.subrange(jlo, jhi),
                             sb.view().slice(0, kj), sub);
            }
            {
                // S_i^k update through a staging half, then copy back.  A
                // short trailing group multiplies in by the plain quadratic
                // loop, which needs no scratch at all.
                RegionMut dst = se.view();
                if (kj == k) {
                    Workspace sub = Workspace::over({sf.view(), sg.view()});
                    e.short_product(ctx, Region(sik), Region(sb).slice(0, k),
                                    dst, sub);
                } else {
                    for (std::size_t t = 0; t < k; ++t) {
                        Fe sum = ctx.zero();
                        for (std::size_t j = 0; j <= t && j < kj; ++j)
                            sum = ctx.mul_add(sb.view().at(j), sik.at(t - j), sum);
                        if (t >= kj) sum = ctx.add(sum, sik.at(t - kj));
                        dst.set(t, sum);
                    }
                }
                copy_region(Region(dst), sik);
            }
            {
                // S_i^T * \hat T_j as a full product across the adjacent
                // halves, reduced mod T_i by in-place long division.
                assert(ef_adjacent);
                RegionMut prod(se.data(), szT + kj);
                Workspace sub = Workspace::over(sg.view());
                mul_by_monic(ctx, e, Region(sit).slice(0, szT),
                             Region(sb).slice(0, kj), prod, sub);
                if (szT + kj > ki) {
                    rem_by_monic(ctx, prod, Region(sa).slice(0, ki));
                    szT = ki;
                } else {
                    szT = szT + kj;
                }
                copy_region(Region(prod).slice(0, szT), sit.slice(0, szT));
            }
        }
        for (std::size_t t = szT; t < k; ++t) sit.set(t, ctx.zero());
        // G mod T_i by streaming long division, then both evaluations and
        // the corrected values of Eq.(6).
        {
            RegionMut gt = se.view().slice(0, ki);
            auto gat = [&](std::size_t t) { return g.at(t); };
            rem_streaming(ctx, gat, s, Region(sa).slice(0, ki), gt);
            RegionMut z = sb.view();
            RegionMut bcorr = sa.view();  // overwrites T_i, dead from here
            for (std::size_t j = 0; j < ki; ++j) {
                Fe a = pts.at(lo + j);
                z.set(j, s > 0 ? horner(ctx, Region(gt), a) : ctx.zero());
                Fe sit_a = horner(ctx, Region(sit).slice(0, ki), a);
                if (sit_a.v == 0)
                    throw DuplicatePoint("part_interpol: coincident points");
                Fe corr = ctx.sub(vals.at(lo + j), z.at(j));
                if (s > 0) {
                    if (a.v == 0)
                        throw ZeroInverse(
                            "part_interpol: zero point past the first chunk");
                    corr = ctx.mul(corr, ctx.inv(ctx.pow(a, static_cast<u64>(s))));
                }
                bcorr.set(j, ctx.mul(corr, ctx.inv(sit_a)));
            }
        }
        // N_i interpolates the corrected values on the group's points.
        {
            Workspace sub = Workspace::over({sb.view(), se.view(), sf.view(), sg.view()});
            PointView bvals = PointView(Region(sa.view().slice(0, ki)));
            interp_linear(ctx, e, pts.subrange(lo, hi), bvals,
                          sd.view().slice(0, ki), sub);
        }
        // H += N_i * S_i^k mod X^k.
        if (q == 1) {
            copy_region(Region(sd).slice(0, ki), h_out.slice(0, ki));
        } else {
            RegionMut pairbuf(se.data(), 2 * k);
            Workspace sub = Workspace::over({pairbuf, sb.view(), sg.view()});
            short_product_any(ctx, e, Region(sd).slice(0, ki), Region(sik),
                              h_out, sub, true);
        }
    }
}

void interp_inplace(FieldCtx& ctx, const Engine& e, Region pts, Region vals,
                    RegionMut f, Workspace& aux) {
    const std::size_t n = pts.size();
    assert(f.size() == n && vals.size() == n);
    if (n == 0) return;
    Scratch file = aux.acquire(kInterpFile);

    PointView pv(pts);
    PointView vv(vals);
    for (std::size_t i = 0; i < n; ++i) {
        if (pts.at(i).v == 0) {
            // Push the zero point to the end so later rounds, which use a
            // shrinking prefix, never raise it to a positive power.
            pv = pv.with_swap(i, n - 1);
            vv = vv.with_swap(i, n - 1);
            break;
        }
    }

    const double cpi = cpi_constant(e.profile());
    std::size_t s = 0;
    while (s < n) {
        std::size_t k = static_cast<std::size_t>((n - s) / (cpi + 1.0));
        if (k == 0) k = n - s;
        Workspace sub = Workspace::over({f.slice(s + k, n), file.view()});
        part_interpol(ctx, e, Region(f).slice(0, s), pv.subrange(0, n - s),
                      vv.subrange(0, n - s), k, f.slice(s, s + k), sub);
        s += k;
    }
}

}  // namespace ipoly
