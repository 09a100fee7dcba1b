#include <ipoly/series.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>

#include <ipoly/errors.hpp>

namespace ipoly {

namespace {

// Fixed auxiliary register files of the in-place drivers.  Constant by
// construction so the measured peak of every in-place run is identical
// across sizes.
constexpr std::size_t kInvFile = 8;
constexpr std::size_t kDivFile = 16;

std::size_t iceil(double x) { return static_cast<std::size_t>(std::ceil(x - 1e-9)); }

void negate(FieldCtx& ctx, RegionMut r) {
    for (std::size_t i = 0; i < r.size(); ++i) r.set(i, ctx.neg(r.at(i)));
}

// r <- minuend - r, elementwise.
void sub_from(FieldCtx& ctx, Region minuend, RegionMut r) {
    for (std::size_t i = 0; i < r.size(); ++i)
        r.set(i, ctx.sub(minuend.at(i), r.at(i)));
}

void copy(Region src, RegionMut dst) {
    assert(src.size() == dst.size());
    for (std::size_t i = 0; i < src.size(); ++i) dst.set(i, src.at(i));
}

// Short product written over its second operand, descending so each cell is
// read for the last time exactly when it is overwritten.  Quadratic; serves
// as the in-place tail for engines whose short product is constant-space.
void sp_overwrite_second(FieldCtx& ctx, Region x, RegionMut w) {
    const std::size_t n = w.size();
    for (std::size_t t = n; t-- > 0;) {
        Fe s = ctx.zero();
        for (std::size_t i = 0; i <= t; ++i)
            s = ctx.mul_add(x.at(i), w.at(t - i), s);
        w.set(t, s);
    }
}

// In-place triangular recurrence for sizes below the schedule thresholds.
void tiny_divide(FieldCtx& ctx, Region f, Region g, RegionMut q) {
    const std::size_t n = q.size();
    Fe g0 = ctx.inv(g.at(0));
    for (std::size_t i = 0; i < n; ++i) {
        Fe conv = ctx.zero();
        for (std::size_t j = 1; j <= i && j < g.size(); ++j)
            conv = ctx.mul_add(g.at(j), q.at(i - j), conv);
        Fe fi = i < f.size() ? f.at(i) : ctx.zero();
        q.set(i, ctx.mul(g0, ctx.sub(fi, conv)));
    }
}

// Initial precision of the in-place division schedule.
std::size_t divide_initial_precision(const EngineProfile& p, std::size_t n) {
    const double ci = std::max(p.c_m, p.c_s + 1.0) / 2.0;
    const double d = std::max(ci + 1.0, p.c_s + 2.0);
    return static_cast<std::size_t>(static_cast<double>(n) / d);
}

}  // namespace

std::size_t invert_step_constant(const EngineProfile& p) {
    return 2 + std::max(iceil(p.c_m), iceil(p.c_s));
}

std::size_t divide_step_constant(const EngineProfile& p) {
    return 3 + std::max(iceil(p.c_m), iceil(p.c_s));
}

std::size_t erase_step_constant(const EngineProfile& p) {
    return std::max(iceil(p.c_m) + 3, iceil(p.c_s) + 2);
}

std::size_t series_invert_ws(const EngineProfile& p, std::size_t n) {
    const double c = std::max(p.c_m, p.c_s + 1.0) / 2.0;
    return iceil(c * static_cast<double>(n)) + kConstBudget;
}

std::size_t series_divide_ws(const EngineProfile& p, std::size_t n) {
    const double c = std::max(p.c_m + 1.0, p.c_s + 1.0) / 2.0;
    std::size_t grant = iceil(c * static_cast<double>(n));
    // Engines whose short product needs a disjoint output stage the
    // Karp-Markstein tail through scratch.
    if (p.c_s > 0.0) grant += (n + 1) / 2;
    return grant + kConstBudget;
}

std::size_t series_divide_linear_ws(double alpha, std::size_t n) {
    return iceil(alpha * static_cast<double>(n)) + kConstBudget;
}

void series_invert_step(FieldCtx& ctx, const Engine& e, Region f, RegionMut g,
                        std::size_t k, std::size_t ell, Workspace& ws) {
    assert(ell > 0 && ell <= k);
    assert(f.size() >= k + ell && g.size() >= k + ell);
    Scratch buf = ws.acquire(ell);
    middle_product(ctx, e, f.slice(1, k + ell), Region(g).slice(0, k), buf.view(), ws);
    negate(ctx, buf.view());
    e.short_product(ctx, Region(g).slice(0, ell), buf, g.slice(k, k + ell), ws);
}

void series_invert(FieldCtx& ctx, const Engine& e, Region f, RegionMut g,
                   Workspace& ws) {
    const std::size_t n = g.size();
    if (n == 0) return;
    if (f.size() == 0 || f.at(0).v == 0)
        throw ZeroInverse("series_invert: constant term is zero");
    g.set(0, ctx.inv(f.at(0)));
    std::size_t k = 1;
    while (k < n) {
        const std::size_t ell = std::min(k, n - k);
        series_invert_step(ctx, e, f, g, k, ell, ws);
        k += ell;
    }
}

void series_invert_inplace(FieldCtx& ctx, const Engine& e, Region f,
                           RegionMut g, Workspace& aux) {
    const std::size_t n = g.size();
    if (n == 0) return;
    if (f.size() == 0 || f.at(0).v == 0)
        throw ZeroInverse("series_invert_inplace: constant term is zero");
    Scratch file = aux.acquire(kInvFile);

    const std::size_t c = invert_step_constant(e.profile());
    g.set(0, ctx.inv(f.at(0)));
    std::size_t k = 1;
    std::size_t ell = std::min(k, (n - k) / c);
    while (ell > 0) {
        assert(c * ell <= n - k);
        {
            Workspace mid = Workspace::over(g.slice(k, n - ell));
            middle_product(ctx, e, f.slice(1, k + ell), Region(g).slice(0, k),
                           g.slice(n - ell, n), mid);
        }
        negate(ctx, g.slice(n - ell, n));
        {
            Workspace tail = Workspace::over(g.slice(k + ell, n - ell));
            e.short_product(ctx, Region(g).slice(0, ell), Region(g).slice(n - ell, n),
                            g.slice(k, k + ell), tail);
        }
        k += ell;
        ell = std::min(k, (n - k) / c);
    }
    // Fewer than c coefficients remain; the quadratic engine finishes them
    // through the register file.
    const Engine& sch = schoolbook_engine();
    RegionMut fv = file.view();
    while (k < n) {
        const std::size_t r = std::min(k, n - k);
        assert(r < fv.size());
        RegionMut buf = fv.slice(0, r);
        Workspace none = Workspace::over(fv.slice(r, fv.size()));
        middle_product(ctx, sch, f.slice(1, k + r), Region(g).slice(0, k), buf, none);
        negate(ctx, buf);
        sch.short_product(ctx, Region(g).slice(0, r), buf, g.slice(k, k + r), none);
        k += r;
    }
}

void series_divide(FieldCtx& ctx, const Engine& e, Region f, Region g,
                   RegionMut q, Workspace& ws) {
    const std::size_t n = q.size();
    if (n == 0) return;
    if (g.size() == 0 || g.at(0).v == 0)
        throw ZeroInverse("series_divide: divisor constant term is zero");
    assert(f.size() >= n && g.size() >= n);
    if (n == 1) {
        q.set(0, ctx.mul(f.at(0), ctx.inv(g.at(0))));
        return;
    }
    const std::size_t h = n / 2;
    // Inverse prefix of the divisor, reversed in the top of q; the quotient
    // prefix lands below it and the remaining coefficients come from
    // Karp-Markstein correction steps.
    series_invert(ctx, e, g, q.slice(n - h, n).rev(), ws);
    e.short_product(ctx, f.slice(0, h), Region(q).slice(n - h, n).rev(),
                    q.slice(0, h), ws);
    std::size_t k = h;
    while (k < n) {
        const std::size_t ell = std::min(k, n - k);
        Scratch diff = ws.acquire(ell);
        middle_product(ctx, e, g.slice(1, k + ell), Region(q).slice(0, k),
                       diff.view(), ws);
        sub_from(ctx, f.slice(k, k + ell), diff.view());
        Region inv_prefix = Region(q).slice(n - ell, n).rev();
        RegionMut out = q.slice(k, k + ell);
        if (k + ell <= n - ell) {
            e.short_product(ctx, diff, inv_prefix, out, ws);
        } else if (e.profile().c_s == 0.0) {
            sp_overwrite_second(ctx, inv_prefix, diff.view());
            copy(diff, out);
        } else {
            Scratch stage = ws.acquire(ell);
            e.short_product(ctx, diff, inv_prefix, stage.view(), ws);
            copy(stage, out);
        }
        k += ell;
    }
}

void series_divide_inplace(FieldCtx& ctx, const Engine& e, Region f, Region g,
                           RegionMut q, Workspace& aux) {
    const std::size_t n = q.size();
    if (n == 0) return;
    if (g.size() == 0 || g.at(0).v == 0)
        throw ZeroInverse("series_divide_inplace: divisor constant term is zero");
    Scratch file = aux.acquire(kDivFile);

    const EngineProfile& p = e.profile();
    const std::size_t c2 = divide_step_constant(p);
    const std::size_t k0 = divide_initial_precision(p, n);
    if (k0 < c2 - 1 || k0 < 1) {
        tiny_divide(ctx, f, g, q);
        return;
    }

    {
        Workspace sub = Workspace::over(q.slice(0, n - k0));
        series_invert(ctx, e, g, q.slice(n - k0, n).rev(), sub);
    }
    {
        Workspace sub = Workspace::over(q.slice(k0, n - k0));
        e.short_product(ctx, f.slice(0, k0), Region(q).slice(n - k0, n).rev(),
                        q.slice(0, k0), sub);
    }
    // The loop's staging overwrites all but the top ell inverse coefficients
    // while the terminal phase may need up to c2-1 of them: keep a copy.
    RegionMut fv = file.view();
    const std::size_t keep = std::min(k0, c2);
    RegionMut inv_copy = fv.slice(0, keep);
    copy(Region(q).slice(n - keep, n).rev(), inv_copy);

    std::size_t k = k0;
    std::size_t ell = (n - k) / c2;
    while (ell > 0) {
        assert(c2 * ell <= n - k);
        RegionMut diff = q.slice(n - 2 * ell, n - ell);
        {
            Workspace mid = Workspace::over(q.slice(k, n - 2 * ell));
            middle_product(ctx, e, g.slice(1, k + ell), Region(q).slice(0, k), diff, mid);
        }
        sub_from(ctx, f.slice(k, k + ell), diff);
        {
            Workspace tail = Workspace::over(q.slice(k + ell, n - 2 * ell));
            e.short_product(ctx, Region(diff), Region(q).slice(n - ell, n).rev(),
                            q.slice(k, k + ell), tail);
        }
        k += ell;
        ell = (n - k) / c2;
    }
    // Terminal phase: fewer than c2 coefficients left, inverse prefix from
    // the saved copy, quadratic engine through the file.
    const Engine& sch = schoolbook_engine();
    while (k < n) {
        const std::size_t r = std::min(k, n - k);
        assert(keep + 2 * r <= fv.size() && r <= keep);
        RegionMut tmp = fv.slice(keep, keep + r);
        RegionMut stage = fv.slice(keep + r, keep + 2 * r);
        Workspace none = Workspace::over(fv.slice(keep + 2 * r, fv.size()));
        middle_product(ctx, sch, g.slice(1, k + r), Region(q).slice(0, k), tmp, none);
        sub_from(ctx, f.slice(k, k + r), tmp);
        sch.short_product(ctx, Region(tmp), Region(inv_copy).slice(0, r), stage, none);
        copy(stage, q.slice(k, k + r));
        k += r;
    }
}

namespace {

void divide_erase_core(FieldCtx& ctx, const Engine& e, Fe* head,
                       RegionMut frest, Region fwhole, bool split, Region g,
                       RegionMut q, Workspace& aux) {
    const std::size_t n = q.size();
    if (n == 0) return;
    if (g.size() == 0 || g.at(0).v == 0)
        throw ZeroInverse("series_divide_erase: divisor constant term is zero");
    Scratch file = aux.acquire(kDivFile);

    auto fat = [&](std::size_t i) -> Fe {
        if (!split) return fwhole.at(i);
        return i == 0 ? *head : frest.at(i - 1);
    };
    // Dividend slice [a, b), a >= 1: contiguous in both layouts.
    auto fslice = [&](std::size_t a, std::size_t b) -> Region {
        if (!split) return fwhole.slice(a, b);
        return Region(frest).slice(a - 1, b - 1);
    };
    // Consumed dividend cells below index `upto`, usable as scratch.
    auto scavenge = [&](std::size_t upto) -> RegionMut {
        if (!split) return frest.slice(0, upto);
        return frest.slice(0, upto - 1);
    };

    const std::size_t c3 = erase_step_constant(e.profile());
    const std::size_t ell0 = n / c3;
    if (ell0 < 1 || (split && ell0 < 2)) {
        // Fewer than c3 coefficients in total: quadratic, nothing erased.
        Fe g0 = ctx.inv(g.at(0));
        for (std::size_t i = 0; i < n; ++i) {
            Fe conv = ctx.zero();
            for (std::size_t j = 1; j <= i && j < g.size(); ++j)
                conv = ctx.mul_add(g.at(j), q.at(i - j), conv);
            q.set(i, ctx.mul(g0, ctx.sub(fat(i), conv)));
        }
        return;
    }

    const std::size_t k0 = ell0;
    {
        Workspace sub = Workspace::over(q.slice(0, n - k0));
        series_invert(ctx, e, g, q.slice(n - k0, n).rev(), sub);
    }
    {
        // q[0..k0) = SP(F[0..k0), inv); the dividend's head cell is folded in
        // by hand so the engine sees contiguous operands.
        Workspace sub = Workspace::over(q.slice(k0, n - k0));
        Region inv_prefix = Region(q).slice(n - k0, n).rev();
        if (k0 > 1)
            e.short_product(ctx, fslice(1, k0), Region(q).slice(n - k0 + 1, n).rev(),
                            q.slice(1, k0), sub);
        Fe c0 = fat(0);
        q.set(0, ctx.mul(c0, inv_prefix.at(0)));
        for (std::size_t t = 1; t < k0; ++t)
            q.set(t, ctx.mul_add(c0, inv_prefix.at(t), q.at(t)));
    }

    RegionMut fv = file.view();
    std::size_t k = k0;
    while (k < n) {
        std::size_t ell = std::min(ell0, n - k);
        // In the split layout the dividend's head register is not part of
        // the scavengeable prefix; trim the first step so the staging block
        // still fits a single extent.
        if (split && k == k0 && ell >= k) ell = k - 1;
        // Free space: the consumed dividend prefix, the not-yet-written part
        // of q strictly above this chunk's output window and below the
        // protected inverse home, and the file against boundary
        // fragmentation.
        const std::size_t hi_free = n - std::min(n - k, k0);
        RegionMut qfree = q.slice(std::min(k + ell, hi_free), hi_free);
        RegionMut eaten = scavenge(k);
        Workspace ws = Workspace::over({eaten, qfree, fv});
        Scratch diff = ws.acquire(ell);
        middle_product(ctx, e, g.slice(1, k + ell), Region(q).slice(0, k),
                       diff.view(), ws);
        sub_from(ctx, fslice(k, k + ell), diff.view());
        Region inv_prefix = Region(q).slice(n - ell, n).rev();
        RegionMut out = q.slice(k, k + ell);
        if (k + ell <= n - ell) {
            e.short_product(ctx, diff, inv_prefix, out, ws);
        } else if (e.profile().c_s == 0.0) {
            sp_overwrite_second(ctx, inv_prefix, diff.view());
            copy(diff, out);
        } else {
            Scratch stage = ws.acquire(ell);
            e.short_product(ctx, diff, inv_prefix, stage.view(), ws);
            copy(stage, out);
        }
        k += ell;
    }
}

}  // namespace

void series_divide_erase(FieldCtx& ctx, const Engine& e, RegionMut f, Region g,
                         RegionMut q, Workspace& aux) {
    divide_erase_core(ctx, e, nullptr, f, Region(f), false, g, q, aux);
}

void series_divide_erase_split(FieldCtx& ctx, const Engine& e, Fe& d0,
                               RegionMut frest, Region g, RegionMut q,
                               Workspace& aux) {
    assert(frest.size() + 1 == q.size() || frest.size() + 1 >= q.size());
    divide_erase_core(ctx, e, &d0, frest, Region(), true, g, q, aux);
}

std::size_t series_divide_linear(FieldCtx& ctx, const Engine& e, Region f,
                                 Region g, RegionMut q, Workspace& ws,
                                 double alpha) {
    const std::size_t n = q.size();
    if (n == 0) return 0;
    if (g.size() == 0 || g.at(0).v == 0)
        throw ZeroInverse("series_divide_linear: divisor constant term is zero");
    assert(alpha > 0.0);

    const EngineProfile& p = e.profile();
    const std::size_t cm = iceil(p.c_m), cs = iceil(p.c_s);
    // Per-step auxiliary footprint factor: the diff buffer plus the wider of
    // the middle-product and staged-short-product needs.
    const std::size_t cw = 1 + std::max(cm, cs + 1);
    const std::size_t c2 = divide_step_constant(p);
    const std::size_t k0 = divide_initial_precision(p, n);
    const std::size_t grant = iceil(alpha * static_cast<double>(n));

    if (k0 < c2 - 1 || k0 < 1) {
        tiny_divide(ctx, f, g, q);
        return 0;
    }

    {
        Workspace sub = Workspace::over(q.slice(0, n - k0));
        series_invert(ctx, e, g, q.slice(n - k0, n).rev(), sub);
    }
    {
        Workspace sub = Workspace::over(q.slice(k0, n - k0));
        e.short_product(ctx, f.slice(0, k0), Region(q).slice(n - k0, n).rev(),
                        q.slice(0, k0), sub);
    }
    Scratch keep = ws.acquire(std::min(k0, c2));
    copy(Region(q).slice(n - keep.size(), n).rev(), keep.view());

    std::size_t iterations = 0;
    std::size_t k = k0;
    while (k < n) {
        const std::size_t ell =
            std::min({k, k0, n - k, std::max<std::size_t>(1, grant / cw)});
        ++iterations;
        Scratch diff = ws.acquire(ell);
        middle_product(ctx, e, g.slice(1, k + ell), Region(q).slice(0, k),
                       diff.view(), ws);
        sub_from(ctx, f.slice(k, k + ell), diff.view());
        // The stored inverse prefix shrinks only from below as k advances,
        // so cells [k+ell, n) keep every coefficient later steps need.
        Region inv_prefix = ell <= keep.size() && k + ell > n - ell
                                ? Region(keep).slice(0, ell)
                                : Region(q).slice(n - ell, n).rev();
        RegionMut out = q.slice(k, k + ell);
        if (k + ell <= n - ell || (ell <= keep.size() && k + ell > n - ell)) {
            if (overlaps(Region(out), inv_prefix)) {
                Scratch stage = ws.acquire(ell);
                e.short_product(ctx, diff, inv_prefix, stage.view(), ws);
                copy(stage, out);
            } else {
                e.short_product(ctx, diff, inv_prefix, out, ws);
            }
        } else if (p.c_s == 0.0) {
            sp_overwrite_second(ctx, inv_prefix, diff.view());
            copy(diff, out);
        } else {
            Scratch stage = ws.acquire(ell);
            e.short_product(ctx, diff, inv_prefix, stage.view(), ws);
            copy(stage, out);
        }
        k += ell;
    }
    return iterations;
}

}  // namespace ipoly
