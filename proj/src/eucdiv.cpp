#include <ipoly/eucdiv.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>

#include <ipoly/errors.hpp>
#include <ipoly/series.hpp>

namespace ipoly {

namespace {

constexpr std::size_t kEucFile = 8;

std::size_t iceil(double x) { return static_cast<std::size_t>(std::ceil(x - 1e-9)); }

// The top-n window of the running dividend: n-1 cells in the remainder
// space plus one head register for the top coefficient.
struct Window {
    RegionMut rest;  // cells 0..n-2
    Fe* head;        // cell n-1

    std::size_t size() const { return rest.size() + 1; }
    Fe at(std::size_t i) const { return i == rest.size() ? *head : rest.at(i); }
    void set(std::size_t i, Fe x) {
        if (i == rest.size()) *head = x; else rest.set(i, x);
    }
};

// qc_rev (s cells, reversed quotient chunk) = SP_s(rev(window top s), inv).
// The window's head is the first coefficient of the reversed dividend and is
// folded in by hand so the engine sees contiguous operands.
void chunk_quotient(FieldCtx& ctx, const Engine& e, const Window& w, Region inv,
                    std::size_t s, RegionMut qc_rev, Workspace& ws) {
    const std::size_t n1 = w.rest.size();
    if (s > 1) {
        Region body = Region(w.rest).slice(n1 - (s - 1), n1).rev();
        e.short_product(ctx, body, inv.slice(0, s - 1), qc_rev.slice(1, s), ws);
    }
    Fe h = *w.head;
    qc_rev.set(0, ctx.mul(h, inv.at(0)));
    for (std::size_t t = 1; t < s; ++t)
        qc_rev.set(t, ctx.mul_add(h, inv.at(t), qc_rev.at(t)));
}

// Slide the window down by n after the chunk at quotient positions
// [k-n, k): subtract the chunk's low product contribution and pull in the
// next original dividend coefficients.  low holds SP_{n-1}(qc_low, b_low)
// in w.rest already; a_at(i) reads dividend coefficient i.
template <class AAt>
void slide_window(FieldCtx& ctx, Window& w, AAt&& a_at, std::size_t k) {
    const std::size_t n1 = w.rest.size();
    for (std::size_t i = n1 + 1; i-- > 1;)
        w.set(i, ctx.sub(a_at(k - n1 - 2 + i), w.at(i - 1)));
    w.set(0, a_at(k - n1 - 2));
}

}  // namespace

void long_division(FieldCtx& ctx, Region a, Region b, RegionMut q, RegionMut r) {
    const std::size_t la = a.size(), lb = b.size();
    assert(lb >= 1 && la >= lb);
    assert(q.size() == la - lb + 1 && r.size() == lb - 1);
    if (b.at(lb - 1).v == 0)
        throw ZeroInverse("long_division: divisor leading coefficient is zero");
    const Fe lead_inv = ctx.inv(b.at(lb - 1));

    // Working image of the dividend across remainder and quotient cells; the
    // division leaves quotient coefficients in the high part and the
    // remainder in the low part, no extra registers.
    auto wat = [&](std::size_t i) -> Fe {
        return i < lb - 1 ? r.at(i) : q.at(i - (lb - 1));
    };
    auto wset = [&](std::size_t i, Fe x) {
        if (i < lb - 1) r.set(i, x); else q.set(i - (lb - 1), x);
    };
    for (std::size_t i = 0; i < la; ++i) wset(i, a.at(i));

    for (std::size_t j = la - lb + 1; j-- > 0;) {
        Fe qc = ctx.mul(wat(j + lb - 1), lead_inv);
        wset(j + lb - 1, qc);
        if (qc.v == 0) continue;
        for (std::size_t i = 0; i < lb - 1; ++i)
            wset(j + i, ctx.sub(wat(j + i), ctx.mul(qc, b.at(i))));
    }
}

std::size_t rem_only_ws(const EngineProfile& p, std::size_t n) {
    return iceil((p.c_s + 2.0) * static_cast<double>(n)) + kConstBudget;
}

std::size_t chunked_division_ws(const EngineProfile& p, std::size_t n) {
    const double c = 1.0 + std::max({p.c_m / 2.0, (p.c_s + 1.0) / 2.0, p.c_s});
    return iceil(c * static_cast<double>(n)) + kConstBudget;
}

void rem_only(FieldCtx& ctx, const Engine& e, Region a, Region b, RegionMut r,
              Workspace& ws) {
    const std::size_t la = a.size(), n = b.size();
    assert(r.size() == n);
    if (b.at(n - 1).v == 0)
        throw ZeroInverse("rem_only: divisor leading coefficient is zero");
    if (la < n) {
        for (std::size_t i = 0; i < n; ++i)
            r.set(i, i < la ? a.at(i) : ctx.zero());
        return;
    }
    if (n == 1) {
        r.set(0, ctx.zero());
        return;
    }

    const std::size_t mq = la - n + 1;  // quotient length
    Scratch inv = ws.acquire(n);
    series_invert(ctx, e, b.rev(), inv.view(), ws);
    Scratch hbuf = ws.acquire(n);
    Window w{hbuf.view().slice(0, n - 1), nullptr};
    Fe head;
    w.head = &head;
    for (std::size_t i = 0; i < n; ++i) w.set(i, a.at(la - n + i));
    auto a_at = [&](std::size_t i) { return a.at(i); };

    // Quotient chunks live transiently in the output registers; only the
    // final chunk's low part feeds the remainder.
    std::size_t k = mq;
    while (k > n) {
        chunk_quotient(ctx, e, w, inv, n, r.rev(), ws);
        e.short_product(ctx, Region(r).slice(0, n - 1), b.slice(0, n - 1),
                        w.rest, ws);
        slide_window(ctx, w, a_at, k);
        k -= n;
    }
    // Final chunk of size k against the top k coefficients of b.
    chunk_quotient(ctx, e, w, inv, k, r.slice(0, k).rev(), ws);
    // Remainder = pre-chunk dividend minus the chunk's contribution; the
    // contribution goes into the inverse's registers, which are done.
    RegionMut contrib = inv.view().slice(0, n - 1);
    for (std::size_t t = 0; t < n - 1; ++t) {
        Fe s = ctx.zero();
        for (std::size_t i = 0; i <= t && i < k; ++i)
            s = ctx.mul_add(r.at(i), b.at(t - i), s);
        contrib.set(t, s);
    }
    for (std::size_t j = 0; j < n - 1; ++j) {
        Fe base = j + 1 < k ? a.at(j) : w.at(j - (k - 1));
        r.set(j, ctx.sub(base, contrib.at(j)));
    }
    r.set(n - 1, ctx.zero());
}

void chunked_division(FieldCtx& ctx, const Engine& e, Region a, Region b,
                      RegionMut q, RegionMut r, Workspace& ws) {
    const std::size_t n = b.size(), m = q.size();
    assert(a.size() == m + n - 1 && r.size() == n - 1);
    if (b.at(n - 1).v == 0)
        throw ZeroInverse("chunked_division: divisor leading coefficient is zero");
    if (n == 1) {
        Fe li = ctx.inv(b.at(0));
        for (std::size_t i = 0; i < m; ++i) q.set(i, ctx.mul(a.at(i), li));
        return;
    }

    Scratch inv = ws.acquire(n);
    series_invert(ctx, e, b.rev(), inv.view(), ws);
    Window w{r, nullptr};
    Fe head;
    w.head = &head;
    for (std::size_t i = 0; i < n; ++i) w.set(i, a.at(m - 1 + i));
    auto a_at = [&](std::size_t i) { return a.at(i); };

    std::size_t k = m;
    while (k > n) {
        chunk_quotient(ctx, e, w, inv, n, q.slice(k - n, k).rev(), ws);
        e.short_product(ctx, Region(q).slice(k - n, k - 1), b.slice(0, n - 1),
                        w.rest, ws);
        slide_window(ctx, w, a_at, k);
        k -= n;
    }
    chunk_quotient(ctx, e, w, inv, k, q.slice(0, k).rev(), ws);
    RegionMut contrib = inv.view().slice(0, n - 1);
    for (std::size_t t = 0; t < n - 1; ++t) {
        Fe s = ctx.zero();
        for (std::size_t i = 0; i <= t && i < k; ++i)
            s = ctx.mul_add(q.at(i), b.at(t - i), s);
        contrib.set(t, s);
    }
    // Remainder from the window and untouched dividend cells.  The window
    // shares the remainder registers, so run top-down: cell j reads window
    // index j-k+1, which lives at or below cell j.
    for (std::size_t j = n - 1; j-- > 0;) {
        Fe base = j + 1 < k ? a.at(j) : w.at(j - (k - 1));
        r.set(j, ctx.sub(base, contrib.at(j)));
    }
}

void eucdiv_inplace(FieldCtx& ctx, const Engine& e, Region a, Region b,
                    RegionMut q, RegionMut r, Workspace& aux) {
    const std::size_t n = b.size();
    assert(a.size() >= 2 * n && q.size() == a.size() - n + 1);
    const std::size_t m = a.size() - n;
    assert(m >= n && r.size() == n - 1);
    if (b.at(n - 1).v == 0)
        throw ZeroInverse("eucdiv_inplace: divisor leading coefficient is zero");

    Scratch file = aux.acquire(kEucFile);
    Window w{r, file.data()};
    for (std::size_t i = 0; i < n; ++i) w.set(i, a.at(m + i));

    auto a_at = [&](std::size_t i) { return a.at(i); };
    std::size_t k = m + 1;
    while (k > n) {
        // Quotient chunk by an erasing division on the reversed window; the
        // window is rebuilt afterwards so its destruction is free.
        series_divide_erase_split(ctx, e, *w.head, r.rev(), b.rev(),
                                  q.slice(k - n, k).rev(), aux);
        {
            // In-place short product for the window update: free quotient
            // space while it lasts, the quadratic engine once it runs out.
            RegionMut qfree = q.slice(0, k - n);
            if (qfree.size() >= e.profile().ws_short(n - 1)) {
                Workspace sub = Workspace::over(qfree);
                e.short_product(ctx, Region(q).slice(k - n, k - 1),
                                b.slice(0, n - 1), w.rest, sub);
            } else {
                Workspace none = Workspace::over(RegionMut());
                schoolbook_engine().short_product(ctx, Region(q).slice(k - n, k - 1),
                                                  b.slice(0, n - 1), w.rest, none);
            }
        }
        slide_window(ctx, w, a_at, k);
        k -= n;
    }
    // Final chunk of size k <= n against the top k coefficients of b.
    {
        RegionMut body = r.slice(n - k, n - 1).rev();
        series_divide_erase_split(ctx, e, *w.head, body, b.slice(n - k, n).rev(),
                                  q.slice(0, k).rev(), aux);
    }
    // Remainder = a_low - (b*q) mod X^{n-1}, straight into r with the
    // constant-space product.
    {
        Workspace none = Workspace::over(RegionMut());
        schoolbook_engine().short_product(ctx, Region(q).slice(0, n - 1),
                                          b.slice(0, n - 1), r, none);
    }
    for (std::size_t i = 0; i < n - 1; ++i)
        r.set(i, ctx.sub(a.at(i), r.at(i)));
}

}  // namespace ipoly
