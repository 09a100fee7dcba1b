#ifndef IPOLY_TEST_UTIL_HPP
#define IPOLY_TEST_UTIL_HPP

#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include <ipoly/field.hpp>
#include <ipoly/regions.hpp>

#define CHECK(cond)                                                        \
    do {                                                                   \
        if (!(cond)) {                                                     \
            std::fprintf(stderr, "%s:%d: CHECK failed: %s\n", __FILE__,    \
                         __LINE__, #cond);                                 \
            std::exit(1);                                                  \
        }                                                                  \
    } while (0)

#define CHECK_EQ(a, b)                                                     \
    do {                                                                   \
        auto va = (a);                                                     \
        auto vb = (b);                                                     \
        if (!((unsigned long long)va == (unsigned long long)vb)) {                                                 \
            std::fprintf(stderr,                                           \
                         "%s:%d: CHECK_EQ failed: %s = %llu vs %s = %llu\n", \
                         __FILE__, __LINE__, #a,                           \
                         (unsigned long long)va, #b, (unsigned long long)vb); \
            std::exit(1);                                                  \
        }                                                                  \
    } while (0)

namespace tu {

using ipoly::Fe;
using ipoly::u64;

inline std::vector<Fe> fes(std::initializer_list<u64> xs) {
    std::vector<Fe> v;
    for (u64 x : xs) v.push_back(Fe{x});
    return v;
}

inline std::vector<Fe> random_poly(std::mt19937_64& rng, u64 p, std::size_t n,
                                   bool unit_low = false, bool unit_high = false) {
    std::uniform_int_distribution<u64> d(0, p - 1);
    std::vector<Fe> v(n);
    for (auto& x : v) x.v = d(rng);
    if (unit_low && n > 0 && v[0].v == 0) v[0].v = 1 + d(rng) % (p - 1);
    if (unit_high && n > 0 && v[n - 1].v == 0) v[n - 1].v = 1 + d(rng) % (p - 1);
    return v;
}

inline std::vector<Fe> random_distinct_points(std::mt19937_64& rng, u64 p,
                                              std::size_t n) {
    // Sample without replacement from a shifted stride so duplicates cannot
    // occur; jitter the start for variety.
    std::uniform_int_distribution<u64> d(0, p - 1);
    u64 start = d(rng);
    std::vector<Fe> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i].v = (start + i) % p;
    std::shuffle(v.begin(), v.end(), rng);
    return v;
}

inline bool eq(const std::vector<Fe>& a, const std::vector<Fe>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].v != b[i].v) return false;
    return true;
}

}  // namespace tu

#endif
