#include <ipoly/oracles.hpp>

#include <ipoly/errors.hpp>

namespace ipoly::oracles {

namespace {

u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }
u64 addm(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

u64 invm(u64 a, u64 p) {
    if (a == 0) throw ZeroInverse("oracle: inverse of zero");
    u64 r = 1, x = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = mulm(r, x, p);
        x = mulm(x, x, p);
        e >>= 1;
    }
    return r;
}

}  // namespace

OracleReport compare(const std::vector<Fe>& a, const std::vector<Fe>& b) {
    if (a.size() != b.size()) throw LengthMismatch("oracle compare: sizes differ");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].v != b[i].v) return OracleReport{false, i};
    return OracleReport{true, std::nullopt};
}

std::vector<Fe> convolve(u64 p, const std::vector<Fe>& a, const std::vector<Fe>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Fe> out(a.size() + b.size() - 1, Fe{0});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j].v = addm(out[i + j].v, mulm(a[i].v, b[j].v, p), p);
    return out;
}

std::vector<Fe> series_inverse_solve(u64 p, Region f, std::size_t n) {
    if (f.size() == 0 || f.at(0).v == 0)
        throw ZeroInverse("oracle: series with zero constant term");
    std::vector<Fe> g(n, Fe{0});
    const u64 f0inv = invm(f.at(0).v, p);
    for (std::size_t i = 0; i < n; ++i) {
        u64 conv = 0;
        for (std::size_t j = 1; j <= i && j < f.size(); ++j)
            conv = addm(conv, mulm(f.at(j).v, g[i - j].v, p), p);
        u64 target = (i == 0) ? 1 : 0;
        g[i].v = mulm(subm(target, conv, p), f0inv, p);
    }
    return g;
}

std::vector<Fe> series_divide_solve(u64 p, Region f, Region g, std::size_t n) {
    if (g.size() == 0 || g.at(0).v == 0)
        throw ZeroInverse("oracle: divisor with zero constant term");
    std::vector<Fe> q(n, Fe{0});
    const u64 g0inv = invm(g.at(0).v, p);
    for (std::size_t i = 0; i < n; ++i) {
        u64 conv = 0;
        for (std::size_t j = 1; j <= i && j < g.size(); ++j)
            conv = addm(conv, mulm(g.at(j).v, q[i - j].v, p), p);
        u64 fi = i < f.size() ? f.at(i).v : 0;
        q[i].v = mulm(subm(fi, conv, p), g0inv, p);
    }
    return q;
}

Fe horner_ref(u64 p, Region f, Fe a) {
    u64 acc = 0;
    for (std::size_t i = f.size(); i-- > 0;)
        acc = addm(mulm(acc, a.v, p), f.at(i).v, p);
    return Fe{acc};
}

}  // namespace ipoly::oracles
