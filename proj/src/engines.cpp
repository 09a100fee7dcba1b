#include <ipoly/engines.hpp>

#include <algorithm>
#include <cassert>

namespace ipoly {

namespace {

constexpr std::size_t kKaratsubaCutoff = 16;

void check_disjoint(Region f, Region g, RegionMut out) {
    assert(!overlaps(out, f) && "product output overlaps first input");
    assert(!overlaps(out, g) && "product output overlaps second input");
    (void)f; (void)g; (void)out;
}

// ---------------------------------------------------------------- schoolbook

void school_full(FieldCtx& ctx, Region f, Region g, RegionMut out, bool acc) {
    const std::size_t a = f.size(), b = g.size();
    assert(out.size() == (a && b ? a + b - 1 : 0) || (a == 0 || b == 0));
    if (!acc) out.fill_zero();
    for (std::size_t i = 0; i < a; ++i) {
        Fe fi = f.at(i);
        for (std::size_t j = 0; j < b; ++j)
            out.set(i + j, ctx.mul_add(fi, g.at(j), out.at(i + j)));
    }
}

void school_short(FieldCtx& ctx, Region f, Region g, RegionMut out, bool acc) {
    const std::size_t n = out.size();
    assert(f.size() >= n && g.size() >= n);
    for (std::size_t t = 0; t < n; ++t) {
        Fe s = acc ? out.at(t) : ctx.zero();
        for (std::size_t i = 0; i <= t; ++i)
            s = ctx.mul_add(f.at(i), g.at(t - i), s);
        out.set(t, s);
    }
}

// out (m) = slice [n-1, n-1+m) of F (m+n-1) * G (n); every output is a full
// length-n dot product.
void school_middle(FieldCtx& ctx, Region f, Region g, RegionMut out, bool acc) {
    const std::size_t n = g.size(), m = out.size();
    assert(f.size() == m + n - 1);
    for (std::size_t t = 0; t < m; ++t) {
        Fe s = acc ? out.at(t) : ctx.zero();
        for (std::size_t j = 0; j < n; ++j)
            s = ctx.mul_add(g.at(j), f.at(n - 1 + t - j), s);
        out.set(t, s);
    }
}

struct SchoolbookEngine final : Engine {
    struct Profile final : EngineProfile {
        Profile() {
            name = "schoolbook";
            lambda_f = lambda_s = lambda_m = 1.0;
            c_f = c_s = c_m = 0.0;
        }
        double model_cost(std::size_t n) const override {
            return static_cast<double>(n) * static_cast<double>(n);
        }
    };

    const EngineProfile& profile() const override {
        static const Profile p;
        return p;
    }

    void full_product(FieldCtx& ctx, Region f, Region g, RegionMut out,
                      Workspace&, bool acc) const override {
        check_disjoint(f, g, out);
        school_full(ctx, f, g, out, acc);
    }
    void short_product(FieldCtx& ctx, Region f, Region g, RegionMut out,
                       Workspace&, bool acc) const override {
        check_disjoint(f, g, out);
        school_short(ctx, f, g, out, acc);
    }
    void middle_product(FieldCtx& ctx, Region f, Region g, RegionMut out,
                        Workspace&, bool acc) const override {
        check_disjoint(f, g, out);
        assert(out.size() == g.size());
        school_middle(ctx, f, g, out, acc);
    }
};

// ----------------------------------------------------------------- karatsuba

void kara_full(FieldCtx& ctx, Region f, Region g, RegionMut out, Workspace& ws);

// out (a+b-1) += F (a) * G (b)
void kara_full_acc(FieldCtx& ctx, Region f, Region g, RegionMut out, Workspace& ws) {
    if (f.size() == 0 || g.size() == 0) return;
    if (std::min(f.size(), g.size()) <= kKaratsubaCutoff) {
        school_full(ctx, f, g, out, true);
        return;
    }
    Scratch buf = ws.acquire(f.size() + g.size() - 1);
    kara_full(ctx, f, g, buf.view(), ws);
    RegionMut bv = buf.view();
    for (std::size_t i = 0; i < bv.size(); ++i)
        out.set(i, ctx.add(out.at(i), bv.at(i)));
}

void kara_full(FieldCtx& ctx, Region f, Region g, RegionMut out, Workspace& ws) {
    std::size_t a = f.size(), b = g.size();
    if (a == 0 || b == 0) return;
    if (a < b) { std::swap(a, b); std::swap(f, g); }
    if (b <= kKaratsubaCutoff) {
        school_full(ctx, f, g, out, false);
        return;
    }
    const std::size_t h = (a + 1) / 2;
    if (b <= h) {
        // Uneven shape: F = F_lo + X^h F_hi against the whole of G.
        kara_full(ctx, f.slice(0, h), g, out.slice(0, h + b - 1), ws);
        for (std::size_t i = h + b - 1; i < a + b - 1; ++i) out.set(i, Fe{0});
        kara_full_acc(ctx, f.slice(h, a), g, out.slice(h, a + b - 1), ws);
        return;
    }
    // Balanced split at h.  The half-sums live in the output cells until the
    // cross product has consumed them.
    Region f0 = f.slice(0, h), f1 = f.slice(h, a);
    Region g0 = g.slice(0, h), g1 = g.slice(h, b);
    RegionMut sa = out.slice(0, h), sb = out.slice(h, 2 * h);
    for (std::size_t i = 0; i < h; ++i) sa.set(i, f0.at(i));
    for (std::size_t i = 0; i < f1.size(); ++i) sa.set(i, ctx.add(sa.at(i), f1.at(i)));
    for (std::size_t i = 0; i < h; ++i) sb.set(i, g0.at(i));
    for (std::size_t i = 0; i < g1.size(); ++i) sb.set(i, ctx.add(sb.at(i), g1.at(i)));

    Scratch mid = ws.acquire(2 * h - 1);
    kara_full(ctx, Region(sa), Region(sb), mid.view(), ws);

    kara_full(ctx, f0, g0, out.slice(0, 2 * h - 1), ws);
    out.set(2 * h - 1, Fe{0});
    RegionMut hi = out.slice(2 * h, a + b - 1);
    kara_full(ctx, f1, g1, hi, ws);

    // mid -= lo + hi, then out[h..3h-1) += mid.
    RegionMut mv = mid.view();
    for (std::size_t i = 0; i < 2 * h - 1; ++i)
        mv.set(i, ctx.sub(mv.at(i), out.at(i)));
    for (std::size_t i = 0; i < hi.size(); ++i)
        mv.set(i, ctx.sub(mv.at(i), hi.at(i)));
    for (std::size_t i = 0; i < 2 * h - 1; ++i)
        out.set(h + i, ctx.add(out.at(h + i), mv.at(i)));
}

void kara_short(FieldCtx& ctx, Region f, Region g, RegionMut out, Workspace& ws, bool acc) {
    const std::size_t n = out.size();
    if (n == 0) return;
    if (n <= kKaratsubaCutoff) {
        school_short(ctx, f, g, out, acc);
        return;
    }
    const std::size_t h = (n + 1) / 2, r = n - h;
    {
        Scratch buf = ws.acquire(2 * h - 1);
        kara_full(ctx, f.slice(0, h), g.slice(0, h), buf.view(), ws);
        RegionMut bv = buf.view();
        const std::size_t c = std::min(n, 2 * h - 1);
        if (!acc) {
            for (std::size_t i = 0; i < c; ++i) out.set(i, bv.at(i));
            for (std::size_t i = c; i < n; ++i) out.set(i, Fe{0});
        } else {
            for (std::size_t i = 0; i < c; ++i) out.set(i, ctx.add(out.at(i), bv.at(i)));
        }
    }
    kara_short(ctx, f.slice(h, n), g.slice(0, r), out.slice(h, n), ws, true);
    kara_short(ctx, g.slice(h, n), f.slice(0, r), out.slice(h, n), ws, true);
}

// Balanced middle product via two short products: the slice splits as the
// high part of F_lo * G (a short product on reversed operands) plus the low
// part of F_hi * G.
void kara_middle(FieldCtx& ctx, Region f, Region g, RegionMut out, Workspace& ws, bool acc) {
    const std::size_t n = g.size();
    assert(f.size() == 2 * n - 1 && out.size() == n);
    if (n <= kKaratsubaCutoff) {
        school_middle(ctx, f, g, out, acc);
        return;
    }
    Region f_lo = f.slice(0, n - 1);
    Region f_hi = f.slice(n - 1, 2 * n - 1);
    if (!acc) out.set(n - 1, Fe{0});
    kara_short(ctx, f_lo.rev(), g.slice(1, n).rev(), out.slice(0, n - 1).rev(), ws, acc);
    kara_short(ctx, f_hi, g, out, ws, true);
}

struct KaratsubaEngine final : Engine {
    struct Profile final : EngineProfile {
        Profile() {
            name = "karatsuba";
            lambda_f = 1.0;
            lambda_s = 1.0;
            lambda_m = 2.0;
            c_f = c_s = c_m = 2.0;
        }
        double model_cost(std::size_t n) const override {
            double m = 1.0;
            std::size_t t = 1;
            while (t < n) { t <<= 1; m *= 3.0; }
            return m;
        }
    };

    const EngineProfile& profile() const override {
        static const Profile p;
        return p;
    }

    void full_product(FieldCtx& ctx, Region f, Region g, RegionMut out,
                      Workspace& ws, bool acc) const override {
        check_disjoint(f, g, out);
        if (acc)
            kara_full_acc(ctx, f, g, out, ws);
        else
            kara_full(ctx, f, g, out, ws);
    }
    void short_product(FieldCtx& ctx, Region f, Region g, RegionMut out,
                       Workspace& ws, bool acc) const override {
        check_disjoint(f, g, out);
        assert(f.size() >= out.size() && g.size() >= out.size());
        kara_short(ctx, f, g, out, ws, acc);
    }
    void middle_product(FieldCtx& ctx, Region f, Region g, RegionMut out,
                        Workspace& ws, bool acc) const override {
        check_disjoint(f, g, out);
        kara_middle(ctx, f, g, out, ws, acc);
    }
};

}  // namespace

const Engine& schoolbook_engine() {
    static const SchoolbookEngine e;
    return e;
}

const Engine& karatsuba_engine() {
    static const KaratsubaEngine e;
    return e;
}

const Engine* engine_by_name(const std::string& name) {
    if (name == "schoolbook") return &schoolbook_engine();
    if (name == "karatsuba") return &karatsuba_engine();
    return nullptr;
}

void middle_product(FieldCtx& ctx, const Engine& e, Region f, Region g,
                    RegionMut out, Workspace& ws, bool accumulate) {
    const std::size_t m = out.size(), n = g.size();
    if (m == 0) return;
    assert(f.size() == m + n - 1);
    if (n == 0) {
        if (!accumulate) out.fill_zero();
        return;
    }
    if (m == n) {
        e.middle_product(ctx, f, g, out, ws, accumulate);
        return;
    }
    if (m < n) {
        // Tile G into floor(n/m) balanced blocks plus a short tail, all
        // accumulated onto the same m outputs.  Block j of size s covers
        // G[j0..j0+s): its contribution is the middle product of the F
        // window [n-1-j0-s+1, n-1-j0+m) against that block.
        std::size_t j0 = 0;
        bool acc = accumulate;
        while (j0 < n) {
            const std::size_t s = std::min(m, n - j0);
            Region window = f.slice(n - j0 - s, n - j0 + m - 1);
            middle_product(ctx, e, window, g.slice(j0, j0 + s), out, ws, acc);
            acc = true;
            j0 += s;
        }
        return;
    }
    // m > n: independent output slices of size <= n.
    std::size_t c0 = 0;
    while (c0 < m) {
        const std::size_t w = std::min(n, m - c0);
        Region window = f.slice(c0, c0 + w + n - 1);
        middle_product(ctx, e, window, g, out.slice(c0, c0 + w), ws, accumulate);
        c0 += w;
    }
}

void short_product_any(FieldCtx& ctx, const Engine& e, Region f, Region g,
                       RegionMut out, Workspace& ws, bool accumulate) {
    const std::size_t n = out.size();
    if (n == 0) return;
    if (f.size() >= n && g.size() >= n) {
        e.short_product(ctx, f.slice(0, n), g.slice(0, n), out, ws, accumulate);
        return;
    }
    if (f.empty() || g.empty()) {
        if (!accumulate) out.fill_zero();
        return;
    }
    Scratch buf = ws.acquire(f.size() + g.size() - 1);
    e.full_product(ctx, f, g, buf.view(), ws);
    RegionMut bv = buf.view();
    const std::size_t c = std::min(n, bv.size());
    if (!accumulate) {
        for (std::size_t i = 0; i < c; ++i) out.set(i, bv.at(i));
        for (std::size_t i = c; i < n; ++i) out.set(i, Fe{0});
    } else {
        for (std::size_t i = 0; i < c; ++i) out.set(i, ctx.add(out.at(i), bv.at(i)));
    }
}

}  // namespace ipoly
