#include <ipoly/eucdiv.hpp>
#include <ipoly/oracles.hpp>
#include <ipoly/series.hpp>

#include <random>

#include "test_util.hpp"

using namespace ipoly;

namespace {

// A = B*Q + R over the oracle convolution, remainder shorter than B.
void check_division_identity(u64 p, const std::vector<Fe>& a,
                             const std::vector<Fe>& b, const std::vector<Fe>& q,
                             const std::vector<Fe>& r) {
    auto bq = oracles::convolve(p, b, q);
    bq.resize(std::max(bq.size(), a.size()), Fe{0});
    for (std::size_t i = 0; i < r.size(); ++i)
        bq[i].v = (bq[i].v + r[i].v) % p;
    for (std::size_t i = 0; i < a.size(); ++i) CHECK_EQ(bq[i].v, a[i].v);
    for (std::size_t i = a.size(); i < bq.size(); ++i) CHECK_EQ(bq[i].v, 0u);
}

}  // namespace

static void test_long_division_examples() {
    FieldCtx F(13);
    // X^3 - 1 = (X - 1)(X^2 + X + 1)
    auto a = tu::fes({12, 0, 0, 1});
    auto b = tu::fes({12, 1});
    std::vector<Fe> q(3), r(1);
    long_division(F, region_of(a), region_of(b), region_of(q), region_of(r));
    CHECK(tu::eq(q, tu::fes({1, 1, 1})));
    CHECK_EQ(r[0].v, 0u);

    // constant divisor
    auto c = tu::fes({4});
    std::vector<Fe> qc(4), rc(0);
    long_division(F, region_of(a), region_of(c), region_of(qc), region_of(rc));
    for (std::size_t i = 0; i < 4; ++i)
        CHECK_EQ(qc[i].v, (a[i].v * 10) % 13);  // inv(4) = 10

    bool thrown = false;
    auto z = tu::fes({1, 0});
    try {
        std::vector<Fe> qq(3), rr(1);
        long_division(F, region_of(a), region_of(z), region_of(qq), region_of(rr));
    } catch (const ZeroInverse&) {
        thrown = true;
    }
    CHECK(thrown);
}

static void test_long_division_random() {
    std::mt19937_64 rng(7);
    for (u64 p : {13ull, 65537ull}) {
        FieldCtx F(p);
        for (int t = 0; t < 60; ++t) {
            std::size_t lb = 1 + rng() % 24;
            std::size_t la = lb + rng() % 64;
            auto a = tu::random_poly(rng, p, la);
            auto b = tu::random_poly(rng, p, lb, false, true);
            std::vector<Fe> q(la - lb + 1), r(lb - 1);
            long_division(F, region_of(a), region_of(b), region_of(q), region_of(r));
            check_division_identity(p, a, b, q, r);
        }
    }
}

static void test_rem_only() {
    FieldCtx F(13);
    // X^3 mod (X - 1) = 1
    auto a = tu::fes({0, 0, 0, 1});
    auto b = tu::fes({12, 1});
    std::vector<Fe> r(2);
    Workspace ws = Workspace::metered(
        F.counters(), rem_only_ws(schoolbook_engine().profile(), 2));
    rem_only(F, schoolbook_engine(), region_of(a), region_of(b), region_of(r), ws);
    CHECK_EQ(r[0].v, 1u);
    CHECK_EQ(r[1].v, 0u);

    // deg A < deg B: remainder is A
    auto small = tu::fes({5, 6});
    auto big = tu::fes({1, 2, 3, 1});
    std::vector<Fe> rr(4);
    Workspace ws2 = Workspace::metered(
        F.counters(), rem_only_ws(schoolbook_engine().profile(), 4));
    rem_only(F, schoolbook_engine(), region_of(small), region_of(big),
             region_of(rr), ws2);
    CHECK(tu::eq(rr, tu::fes({5, 6, 0, 0})));
}

static void test_rem_only_random() {
    std::mt19937_64 rng(11);
    for (u64 p : {13ull, 65537ull}) {
        FieldCtx F(p);
        for (const Engine* e : {&schoolbook_engine(), &karatsuba_engine()}) {
            for (int t = 0; t < 50; ++t) {
                std::size_t n = 2 + rng() % 15;
                std::size_t m = 1 + rng() % 64;
                auto a = tu::random_poly(rng, p, m);
                auto b = tu::random_poly(rng, p, n);
                b[n - 1] = Fe{1};  // monic
                std::vector<Fe> r(n);
                Workspace ws = Workspace::metered(F.counters(),
                                                  rem_only_ws(e->profile(), n));
                rem_only(F, *e, region_of(a), region_of(b), region_of(r), ws);
                // against the quadratic reference
                if (m >= n) {
                    std::vector<Fe> q(m - n + 1), rr(n - 1);
                    long_division(F, region_of(a), region_of(b), region_of(q),
                                  region_of(rr));
                    for (std::size_t i = 0; i < n - 1; ++i)
                        CHECK_EQ(r[i].v, rr[i].v);
                    CHECK_EQ(r[n - 1].v, 0u);
                } else {
                    for (std::size_t i = 0; i < n; ++i)
                        CHECK_EQ(r[i].v, i < m ? a[i].v : 0u);
                }
            }
        }
    }
}

static void test_chunked_division() {
    std::mt19937_64 rng(13);
    for (u64 p : {13ull, 65537ull}) {
        FieldCtx F(p);
        for (const Engine* e : {&schoolbook_engine(), &karatsuba_engine()}) {
            for (int t = 0; t < 50; ++t) {
                std::size_t n = 1 + rng() % 24;
                std::size_t m = 1 + rng() % (8 * n);
                auto a = tu::random_poly(rng, p, m + n - 1);
                auto b = tu::random_poly(rng, p, n, false, true);
                std::vector<Fe> q(m), r(n - 1);
                Workspace ws = Workspace::metered(
                    F.counters(), chunked_division_ws(e->profile(), n));
                chunked_division(F, *e, region_of(a), region_of(b), region_of(q),
                                 region_of(r), ws);
                check_division_identity(p, a, b, q, r);
            }
        }
    }
    // exact division: A = B * X^k
    FieldCtx F(13);
    std::size_t n = 5, k = 3;
    std::mt19937_64 rng2(1);
    auto b = tu::random_poly(rng2, 13, n, false, true);
    std::vector<Fe> a(n + k, Fe{0});
    for (std::size_t i = 0; i < n; ++i) a[k + i] = b[i];
    std::size_t m = a.size() - n + 1;
    std::vector<Fe> q(m), r(n - 1);
    Workspace ws = Workspace::metered(
        F.counters(), chunked_division_ws(schoolbook_engine().profile(), n));
    chunked_division(F, schoolbook_engine(), region_of(a), region_of(b),
                     region_of(q), region_of(r), ws);
    for (std::size_t i = 0; i < m; ++i) CHECK_EQ(q[i].v, i == k ? 1u : 0u);
    for (auto x : r) CHECK_EQ(x.v, 0u);
}

static void test_inplace_examples() {
    FieldCtx F(13);
    // X^3 - 1 divided by X - 1 in the (m+n, n) = (4, 2) shape
    auto a = tu::fes({12, 0, 0, 1});
    auto b = tu::fes({12, 1});
    std::vector<Fe> q(3), r(1);
    Workspace aux = Workspace::metered(F.counters(), kConstBudget);
    eucdiv_inplace(F, schoolbook_engine(), region_of(a), region_of(b),
                   region_of(q), region_of(r), aux);
    CHECK(tu::eq(q, tu::fes({1, 1, 1})));
    CHECK_EQ(r[0].v, 0u);
}

static void test_inplace_self_division() {
    std::mt19937_64 rng(19);
    FieldCtx F(65537);
    std::size_t n = 12;
    auto b = tu::random_poly(rng, 65537, n, false, true);
    // dividend b * X^n so shapes are (m+n, n) with m = n
    std::vector<Fe> a(2 * n, Fe{0});
    for (std::size_t i = 0; i < n; ++i) a[n + i] = b[i];
    std::vector<Fe> q(n + 1), r(n - 1);
    Workspace aux = Workspace::metered(F.counters(), kConstBudget);
    eucdiv_inplace(F, karatsuba_engine(), region_of(a), region_of(b),
                   region_of(q), region_of(r), aux);
    for (std::size_t i = 0; i <= n; ++i) CHECK_EQ(q[i].v, i == n ? 1u : 0u);
    for (auto x : r) CHECK_EQ(x.v, 0u);
}

static void test_inplace_random_vs_long_division() {
    std::mt19937_64 rng(23);
    for (u64 p : {13ull, 65537ull}) {
        FieldCtx F(p);
        for (const Engine* e : {&schoolbook_engine(), &karatsuba_engine()}) {
            for (int t = 0; t < 40; ++t) {
                std::size_t n = 1 + rng() % 40;
                std::size_t m = n + rng() % (3 * n + 1);
                auto a = tu::random_poly(rng, p, m + n);
                auto b = tu::random_poly(rng, p, n, false, true);
                std::vector<Fe> q(m + 1), r(n - 1);
                Workspace aux = Workspace::metered(F.counters(), kConstBudget);
                eucdiv_inplace(F, *e, region_of(a), region_of(b), region_of(q),
                               region_of(r), aux);
                std::vector<Fe> qw(m + 1), rw(n - 1);
                long_division(F, region_of(a), region_of(b), region_of(qw),
                              region_of(rw));
                CHECK(tu::eq(q, qw));
                CHECK(tu::eq(r, rw));
            }
        }
    }
}

static void test_inplace_space() {
    std::mt19937_64 rng(29);
    FieldCtx F(65537);
    for (const Engine* e : {&schoolbook_engine(), &karatsuba_engine()}) {
        std::size_t last_peak = 0;
        for (std::size_t n : {8u, 32u, 128u, 512u}) {
            for (std::size_t m : {n, 2 * n, 4 * n}) {
                auto a = tu::random_poly(rng, 65537, m + n);
                auto b = tu::random_poly(rng, 65537, n, false, true);
                OpCounters d = measure(F, [&] {
                    std::vector<Fe> q(m + 1), r(n - 1);
                    Workspace aux = Workspace::metered(F.counters(), kConstBudget);
                    eucdiv_inplace(F, *e, region_of(a), region_of(b), region_of(q),
                                   region_of(r), aux);
                });
                CHECK(d.peak_aux <= kConstBudget);
                if (last_peak) CHECK_EQ(d.peak_aux, last_peak);
                last_peak = d.peak_aux;
            }
        }
    }
}

static void test_quotient_matches_series_route() {
    // Q of the Euclidean division equals rev(rev(A)/rev(B)) at precision m+1.
    std::mt19937_64 rng(31);
    FieldCtx F(65537);
    std::size_t n = 20, m = 50;
    auto a = tu::random_poly(rng, 65537, m + n, false, true);
    auto b = tu::random_poly(rng, 65537, n, false, true);
    std::vector<Fe> q(m + 1), r(n - 1);
    Workspace aux = Workspace::metered(F.counters(), kConstBudget);
    eucdiv_inplace(F, schoolbook_engine(), region_of(a), region_of(b),
                   region_of(q), region_of(r), aux);

    std::vector<Fe> ra(m + 1), rb(m + 1, Fe{0});
    for (std::size_t i = 0; i <= m; ++i) ra[i] = a[m + n - 1 - i];
    for (std::size_t i = 0; i < n && i <= m; ++i) rb[i] = b[n - 1 - i];
    auto qs = oracles::series_divide_solve(65537, region_of(ra), region_of(rb), m + 1);
    for (std::size_t i = 0; i <= m; ++i) CHECK_EQ(q[i].v, qs[m - i].v);
}

int main() {
    test_long_division_examples();
    test_long_division_random();
    test_rem_only();
    test_rem_only_random();
    test_chunked_division();
    test_inplace_examples();
    test_inplace_self_division();
    test_inplace_random_vs_long_division();
    test_inplace_space();
    test_quotient_matches_series_route();
    std::puts("eucdiv_test: ok");
    return 0;
}
