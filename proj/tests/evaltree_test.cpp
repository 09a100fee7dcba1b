#include <ipoly/evaltree.hpp>
#include <ipoly/oracles.hpp>

#include <random>

#include "test_util.hpp"

using namespace ipoly;

namespace {

Workspace big_ws(FieldCtx& F) {
    return Workspace::metered(F.counters(), 1 << 20);
}

}  // namespace

static void test_horner() {
    FieldCtx F(13);
    auto f = tu::fes({1, 0, 1});
    CHECK_EQ(horner(F, region_of(f), Fe{2}).v, 5u);
    auto c = tu::fes({9});
    CHECK_EQ(horner(F, region_of(c), Fe{7}).v, 9u);
    auto x = tu::fes({0, 1});
    CHECK_EQ(horner(F, region_of(x), Fe{11}).v, 11u);
}

static void test_product_root() {
    FieldCtx F(13);
    // (X-1)(X-2) = X^2 + 10X + 2 mod 13
    auto pts = tu::fes({1, 2});
    std::vector<Fe> dest(2);
    Workspace ws = big_ws(F);
    product_root(F, schoolbook_engine(), PointView(region_of(pts)),
                 region_of(dest), ws);
    CHECK(tu::eq(dest, tu::fes({2, 10})));

    auto one = tu::fes({5});
    std::vector<Fe> d1(1);
    product_root(F, schoolbook_engine(), PointView(region_of(one)), region_of(d1), ws);
    CHECK_EQ(d1[0].v, 8u);  // -5 mod 13
}

static void test_tree_structure() {
    std::mt19937_64 rng(3);
    FieldCtx F(65537);
    for (const Engine* e : {&schoolbook_engine(), &karatsuba_engine()}) {
        for (std::size_t k : {1u, 2u, 3u, 5u, 8u, 13u, 21u, 33u, 64u}) {
            auto pts = tu::random_distinct_points(rng, 65537, k);
            Workspace ws = big_ws(F);
            SubproductTree tree(F, *e, PointView(region_of(pts)), ws);
            CHECK_EQ(tree.count(), k);
            // root equals the left-fold of the leaves by full products
            std::vector<Fe> acc = {Fe{(65537 - pts[0].v) % 65537}};
            for (std::size_t i = 1; i < k; ++i) {
                std::vector<Fe> lin = {Fe{(65537 - pts[i].v) % 65537}, Fe{1}};
                std::vector<Fe> acc_exp = acc;
                acc_exp.push_back(Fe{1});
                auto prod = oracles::convolve(65537, acc_exp, lin);
                acc.assign(prod.begin(), prod.end() - 1);
            }
            Region root = tree.root();
            CHECK_EQ(root.size(), k);
            for (std::size_t i = 0; i < k; ++i) CHECK_EQ(root.at(i).v, acc[i].v);
            // every node annihilates its own points
            for (std::size_t lev = 0; lev < tree.levels(); ++lev)
                for (std::size_t t = 0; t < tree.nodes(lev); ++t) {
                    Region nd = tree.node(lev, t);
                    std::size_t lo = t << lev;
                    for (std::size_t i = lo; i < lo + nd.size(); ++i)
                        CHECK_EQ(eval_monic(F, nd, pts[i]).v, 0u);
                }
        }
    }
}

static void test_eval_fulltree() {
    FieldCtx F(13);
    auto f = tu::fes({1, 0, 1});
    auto pts = tu::fes({0, 1, 2});
    Workspace ws = big_ws(F);
    SubproductTree tree(F, schoolbook_engine(), PointView(region_of(pts)), ws);
    std::vector<Fe> out(3);
    eval_fulltree(F, schoolbook_engine(), region_of(f), tree, region_of(out), ws);
    CHECK(tu::eq(out, tu::fes({1, 2, 5})));

    // constant polynomial
    auto c = tu::fes({7});
    eval_fulltree(F, schoolbook_engine(), region_of(c), tree, region_of(out), ws);
    CHECK(tu::eq(out, tu::fes({7, 7, 7})));
}

static void test_eval_variants_match_horner() {
    std::mt19937_64 rng(5);
    const u64 p = 65537;
    FieldCtx F(p);
    for (const Engine* e : {&schoolbook_engine(), &karatsuba_engine()}) {
        for (int t = 0; t < 25; ++t) {
            std::size_t n = 1 + rng() % 128;
            auto f = tu::random_poly(rng, p, n);
            auto pts = tu::random_distinct_points(rng, p, n);
            std::vector<Fe> want(n);
            for (std::size_t i = 0; i < n; ++i)
                want[i] = oracles::horner_ref(p, region_of(f), pts[i]);

            Workspace ws = big_ws(F);
            SubproductTree tree(F, *e, PointView(region_of(pts)), ws);
            std::vector<Fe> out(n);
            eval_fulltree(F, *e, region_of(f), tree, region_of(out), ws);
            CHECK(tu::eq(out, want));

            std::vector<Fe> out2(n);
            Workspace ws2 = Workspace::metered(
                F.counters(), eval_linear_balanced_ws(e->profile(), n));
            eval_linear_balanced(F, *e, region_of(f), PointView(region_of(pts)),
                                 region_of(out2), ws2);
            CHECK(tu::eq(out2, want));

            std::size_t k = 1 + rng() % n;
            std::vector<Fe> out3(k);
            Workspace ws3 = Workspace::metered(
                F.counters(), eval_linear_unbalanced_ws(e->profile(), k));
            eval_linear_unbalanced(F, *e, region_of(f),
                                   PointView(region_of(pts)).subrange(0, k),
                                   region_of(out3), ws3);
            for (std::size_t i = 0; i < k; ++i) CHECK_EQ(out3[i].v, want[i].v);

            std::vector<Fe> out4(n);
            Workspace aux = Workspace::metered(F.counters(), kConstBudget);
            eval_inplace(F, *e, region_of(f), PointView(region_of(pts)),
                         region_of(out4), aux);
            CHECK(tu::eq(out4, want));
        }
    }
}

static void test_eval_with_duplicates_allowed() {
    FieldCtx F(13);
    auto f = tu::fes({3, 1, 4});
    auto pts = tu::fes({5, 5, 5, 7});
    std::vector<Fe> out(4);
    Workspace aux = Workspace::metered(F.counters(), kConstBudget);
    eval_inplace(F, schoolbook_engine(), region_of(f), PointView(region_of(pts)),
                 region_of(out), aux);
    CHECK_EQ(out[0].v, out[1].v);
    CHECK_EQ(out[1].v, out[2].v);
    CHECK_EQ(out[0].v, oracles::horner_ref(13, region_of(f), Fe{5}).v);
}

static void test_eval_at_product_roots() {
    std::mt19937_64 rng(9);
    FieldCtx F(65537);
    std::size_t n = 48;
    auto pts = tu::random_distinct_points(rng, 65537, n);
    // explicit monic root polynomial of the first n-1 points: evaluating at
    // those points gives zero
    std::vector<Fe> root(n - 1);
    Workspace ws = big_ws(F);
    product_root(F, schoolbook_engine(),
                 PointView(region_of(pts)).subrange(0, n - 1), region_of(root), ws);
    std::vector<Fe> f(n, Fe{0});
    for (std::size_t i = 0; i < n - 1; ++i) f[i] = root[i];
    f[n - 1] = Fe{1};
    std::vector<Fe> out(n);
    Workspace aux = Workspace::metered(F.counters(), kConstBudget);
    eval_inplace(F, schoolbook_engine(), region_of(f), PointView(region_of(pts)),
                 region_of(out), aux);
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK_EQ(out[i].v, 0u);
}

static void test_inplace_space_and_schedule() {
    std::mt19937_64 rng(11);
    FieldCtx F(65537);
    for (const Engine* e : {&schoolbook_engine(), &karatsuba_engine()}) {
        std::size_t last_peak = 0;
        for (std::size_t n : {16u, 64u, 256u, 1024u}) {
            auto f = tu::random_poly(rng, 65537, n);
            auto pts = tu::random_distinct_points(rng, 65537, n);
            OpCounters d = measure(F, [&] {
                std::vector<Fe> out(n);
                Workspace aux = Workspace::metered(F.counters(), kConstBudget);
                eval_inplace(F, *e, region_of(f), PointView(region_of(pts)),
                             region_of(out), aux);
            });
            CHECK(d.peak_aux <= kConstBudget);
            if (last_peak) CHECK_EQ(d.peak_aux, last_peak);
            last_peak = d.peak_aux;
        }
        // round schedule: k_i = floor((n-s)/(c_s+3)) tiles n and stays below
        // the geometric envelope (c_s+2)^{i-1}/(c_s+3)^i * n, up to the
        // rounding the integer schedule accumulates
        const std::size_t cs = static_cast<std::size_t>(e->profile().c_s);
        const double a = static_cast<double>(cs) + 2.0, b = a + 1.0;
        std::size_t n = 4096, s = 0;
        double cap = static_cast<double>(n) / b;
        while (true) {
            std::size_t k = (n - s) / (cs + 3);
            if (k == 0) break;
            CHECK(static_cast<double>(k) <= cap + 1.0);
            s += k;
            cap *= a / b;
        }
        CHECK(s <= n && n - s < cs + 3);
    }
}

static void test_linear_balanced_space() {
    std::mt19937_64 rng(13);
    FieldCtx F(65537);
    for (std::size_t n : {256u, 1024u}) {
        auto f = tu::random_poly(rng, 65537, n);
        auto pts = tu::random_distinct_points(rng, 65537, n);
        OpCounters d = measure(F, [&] {
            std::vector<Fe> out(n);
            Workspace ws = Workspace::metered(
                F.counters(),
                eval_linear_balanced_ws(schoolbook_engine().profile(), n));
            eval_linear_balanced(F, schoolbook_engine(), region_of(f),
                                 PointView(region_of(pts)), region_of(out), ws);
        });
        CHECK(d.peak_aux <= (3 * n) / 2);
    }
}

int main() {
    test_horner();
    test_product_root();
    test_tree_structure();
    test_eval_fulltree();
    test_eval_variants_match_horner();
    test_eval_with_duplicates_allowed();
    test_eval_at_product_roots();
    test_inplace_space_and_schedule();
    test_linear_balanced_space();
    std::puts("evaltree_test: ok");
    return 0;
}
