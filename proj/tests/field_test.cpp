#include <ipoly/errors.hpp>
#include <ipoly/field.hpp>

#include <random>

#include "test_util.hpp"

using namespace ipoly;

static void test_basic_ops_mod_13() {
    FieldCtx F(13);
    CHECK_EQ(F.add(Fe{7}, Fe{8}).v, 2u);
    CHECK_EQ(F.add(Fe{0}, Fe{5}).v, 5u);
    CHECK_EQ(F.add(Fe{12}, Fe{1}).v, 0u);

    CHECK_EQ(F.mul(Fe{7}, Fe{2}).v, 1u);
    CHECK_EQ(F.mul(Fe{1}, Fe{9}).v, 9u);
    CHECK_EQ(F.mul(Fe{5}, Fe{5}).v, 12u);

    CHECK_EQ(F.inv(Fe{2}).v, 7u);
    CHECK_EQ(F.inv(Fe{1}).v, 1u);
    bool thrown = false;
    try {
        F.inv(Fe{0});
    } catch (const ZeroInverse&) {
        thrown = true;
    }
    CHECK(thrown);

    CHECK_EQ(F.pow(Fe{2}, 6).v, 12u);
    CHECK_EQ(F.pow(Fe{5}, 0).v, 1u);
    CHECK_EQ(F.pow(Fe{3}, 3).v, 1u);
    CHECK_EQ(F.pow(Fe{0}, 0).v, 1u);
}

static void test_field_axioms_random() {
    FieldCtx F(65537);
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<u64> d(0, 65536);
    for (int t = 0; t < 2000; ++t) {
        Fe a{d(rng)}, b{d(rng)}, c{d(rng)};
        CHECK_EQ(F.mul(F.mul(a, b), c).v, F.mul(a, F.mul(b, c)).v);
        CHECK_EQ(F.mul(a, F.add(b, c)).v, F.add(F.mul(a, b), F.mul(a, c)).v);
        if (a.v != 0) CHECK_EQ(F.mul(a, F.inv(a)).v, 1u);
    }
}

static void test_counter_exactness() {
    FieldCtx F(65537);
    u64 before = F.counters().mul;
    for (int i = 0; i < 1234; ++i) F.mul(Fe{3}, Fe{5});
    CHECK_EQ(F.counters().mul - before, 1234u);

    u64 adds = F.counters().add;
    F.add(Fe{1}, Fe{2});
    F.sub(Fe{1}, Fe{2});
    F.neg(Fe{3});
    CHECK_EQ(F.counters().add - adds, 3u);

    u64 invs = F.counters().inv;
    u64 muls = F.counters().mul;
    F.inv(Fe{17});
    CHECK_EQ(F.counters().inv - invs, 1u);
    CHECK_EQ(F.counters().mul - muls, 0u);
}

static void test_pow_mul_budget() {
    FieldCtx F(65537);
    for (u64 e : {0ull, 1ull, 2ull, 5ull, 63ull, 64ull, 65535ull}) {
        u64 muls = F.counters().mul;
        F.pow(Fe{3}, e);
        u64 used = F.counters().mul - muls;
        u64 lg = 0;
        while ((1ull << lg) < e + 1) ++lg;
        CHECK(used <= 2 * (lg + 1));
    }
}

static void test_rejects_bad_modulus() {
    for (u64 p : {0ull, 1ull, 2ull, 4ull, 9ull, 65536ull}) {
        bool thrown = false;
        try {
            FieldCtx F(p);
        } catch (const std::invalid_argument&) {
            thrown = true;
        }
        CHECK(thrown);
    }
    FieldCtx ok(13);
    CHECK_EQ(ok.modulus(), 13u);
}

int main() {
    test_basic_ops_mod_13();
    test_field_axioms_random();
    test_counter_exactness();
    test_pow_mul_budget();
    test_rejects_bad_modulus();
    std::puts("field_test: ok");
    return 0;
}
