#include <ipoly/engines.hpp>
#include <ipoly/oracles.hpp>

#include <random>

#include "test_util.hpp"

using namespace ipoly;

namespace {

std::vector<Fe> run_fp(FieldCtx& F, const Engine& e, const std::vector<Fe>& a,
                       const std::vector<Fe>& b) {
    std::vector<Fe> out(a.size() + b.size() - 1);
    Workspace ws = Workspace::metered(F.counters(), 1 << 16);
    e.full_product(F, region_of(a), region_of(b), region_of(out), ws);
    return out;
}

std::vector<Fe> run_sp(FieldCtx& F, const Engine& e, const std::vector<Fe>& a,
                       const std::vector<Fe>& b, std::size_t n) {
    std::vector<Fe> out(n);
    Workspace ws = Workspace::metered(F.counters(), 1 << 16);
    e.short_product(F, region_of(a), region_of(b), region_of(out), ws);
    return out;
}

std::vector<Fe> run_mp(FieldCtx& F, const Engine& e, const std::vector<Fe>& a,
                       const std::vector<Fe>& b, std::size_t m) {
    std::vector<Fe> out(m);
    Workspace ws = Workspace::metered(F.counters(), 1 << 16);
    middle_product(F, e, region_of(a), region_of(b), region_of(out), ws);
    return out;
}

}  // namespace

static void test_fp_examples() {
    FieldCtx F(13);
    auto r = run_fp(F, schoolbook_engine(), tu::fes({1, 2}), tu::fes({3, 4}));
    CHECK(tu::eq(r, tu::fes({3, 10, 8})));

    auto g = tu::fes({5, 6, 7});
    auto id = run_fp(F, schoolbook_engine(), tu::fes({1}), g);
    CHECK(tu::eq(id, g));

    auto z = run_fp(F, schoolbook_engine(), tu::fes({0, 0, 0}), g);
    for (auto x : z) CHECK_EQ(x.v, 0u);
}

static void test_sp_examples() {
    FieldCtx F(13);
    auto r = run_sp(F, schoolbook_engine(), tu::fes({1, 2}), tu::fes({3, 4}), 2);
    CHECK(tu::eq(r, tu::fes({3, 10})));

    auto f = tu::fes({4, 7, 9});
    auto one = run_sp(F, schoolbook_engine(), f, tu::fes({1, 0, 0}), 3);
    CHECK(tu::eq(one, f));

    auto s1 = run_sp(F, schoolbook_engine(), tu::fes({4}), tu::fes({5}), 1);
    CHECK(tu::eq(s1, tu::fes({7})));
}

static void test_mp_examples() {
    FieldCtx F(13);
    // full product of [1,2,3] and [1,1] is [1,3,5,3]; the (m=2,n=2) middle
    // slice is [3,5]
    auto r = run_mp(F, schoolbook_engine(), tu::fes({1, 2, 3}), tu::fes({1, 1}), 2);
    CHECK(tu::eq(r, tu::fes({3, 5})));

    auto f = tu::fes({4, 7, 9, 2});
    auto id = run_mp(F, schoolbook_engine(), f, tu::fes({1}), 4);
    CHECK(tu::eq(id, f));

    // m=1 balanced: a single inner product
    auto dot = run_mp(F, schoolbook_engine(), tu::fes({2, 3, 4}), tu::fes({5, 6, 7}), 1);
    CHECK_EQ(dot[0].v, (2 * 7 + 3 * 6 + 4 * 5) % 13);
}

static void test_mp_unbalanced() {
    FieldCtx F(13);
    std::mt19937_64 rng(7);
    // m = 1: inner product against the whole of G
    for (int t = 0; t < 20; ++t) {
        std::size_t n = 1 + rng() % 24;
        auto f = tu::random_poly(rng, 13, n);
        auto g = tu::random_poly(rng, 13, n);
        auto mp = run_mp(F, schoolbook_engine(), f, g, 1);
        auto full = oracles::convolve(13, f, g);
        CHECK_EQ(mp[0].v, full[n - 1].v);
    }
    // zero G annihilates
    auto z = run_mp(F, schoolbook_engine(), tu::fes({1, 2, 3, 4, 5}),
                    tu::fes({0, 0, 0}), 3);
    for (auto x : z) CHECK_EQ(x.v, 0u);
}

static void test_oracle_equivalence() {
    std::mt19937_64 rng(12345);
    for (u64 p : {13ull, 65537ull}) {
        FieldCtx F(p);
        for (const Engine* e : {&schoolbook_engine(), &karatsuba_engine()}) {
            for (int t = 0; t < 120; ++t) {
                std::size_t a = 1 + rng() % 64;
                std::size_t b = 1 + rng() % 64;
                auto f = tu::random_poly(rng, p, a);
                auto g = tu::random_poly(rng, p, b);
                auto full = oracles::convolve(p, f, g);
                CHECK(tu::eq(run_fp(F, *e, f, g), full));
                if (a == b) {
                    auto sp = run_sp(F, *e, f, g, a);
                    for (std::size_t i = 0; i < a; ++i)
                        CHECK_EQ(sp[i].v, full[i].v);
                }
                // middle products of every shape against the convolution
                std::size_t n = b;
                std::size_t m = a >= n ? a - n + 1 : 1;
                if (a + 1 >= n) {
                    auto f2 = f;
                    f2.resize(m + n - 1, Fe{0});
                    auto mp = run_mp(F, *e, f2, g, m);
                    for (std::size_t i = 0; i < m; ++i) {
                        u64 want = (n - 1 + i) < full.size() ? full[n - 1 + i].v : 0;
                        CHECK_EQ(mp[i].v, want);
                    }
                }
            }
        }
    }
}

static void test_consistency_slices() {
    std::mt19937_64 rng(99);
    FieldCtx F(65537);
    for (const Engine* e : {&schoolbook_engine(), &karatsuba_engine()}) {
        for (std::size_t n : {1u, 2u, 3u, 17u, 31u, 64u}) {
            auto f = tu::random_poly(rng, 65537, 2 * n - 1);
            auto g = tu::random_poly(rng, 65537, n);
            auto full = oracles::convolve(65537, f, g);
            auto sp = run_sp(F, *e, f, g, n);
            auto mp = run_mp(F, *e, f, g, n);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK_EQ(sp[i].v, full[i].v);
                CHECK_EQ(mp[i].v, full[n - 1 + i].v);
            }
        }
    }
}

static void test_accumulate_mode() {
    std::mt19937_64 rng(5);
    FieldCtx F(65537);
    for (const Engine* e : {&schoolbook_engine(), &karatsuba_engine()}) {
        for (std::size_t n : {8u, 33u, 64u}) {
            auto f = tu::random_poly(rng, 65537, n);
            auto g = tu::random_poly(rng, 65537, n);
            std::vector<Fe> out(n, Fe{17});
            Workspace ws = Workspace::metered(F.counters(), 1 << 16);
            e->short_product(F, region_of(f), region_of(g), region_of(out), ws, true);
            auto plain = run_sp(F, *e, f, g, n);
            for (std::size_t i = 0; i < n; ++i)
                CHECK_EQ(out[i].v, (plain[i].v + 17) % 65537);
        }
    }
}

static void test_engine_honesty_quick() {
    std::mt19937_64 rng(8);
    FieldCtx F(65537);
    for (const Engine* e : {&schoolbook_engine(), &karatsuba_engine()}) {
        const EngineProfile& pr = e->profile();
        std::size_t n = 64;
        auto f = tu::random_poly(rng, 65537, n);
        auto g = tu::random_poly(rng, 65537, n);
        std::vector<Fe> out(2 * n - 1);
        Workspace ws = Workspace::metered(F.counters(), 1 << 20);
        e->full_product(F, region_of(f), region_of(g), region_of(out), ws);
        CHECK(ws.peak() <= pr.ws_full(n) + kConstBudget);
    }
}

int main() {
    test_fp_examples();
    test_sp_examples();
    test_mp_examples();
    test_mp_unbalanced();
    test_oracle_equivalence();
    test_consistency_slices();
    test_accumulate_mode();
    test_engine_honesty_quick();
    std::puts("engines_test: ok");
    return 0;
}
