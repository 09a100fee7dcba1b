#ifndef IPOLY_FIELD_HPP
#define IPOLY_FIELD_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include <ipoly/errors.hpp>

namespace ipoly {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// One coefficient of Z/pZ, always a reduced residue in [0, p).
struct Fe {
    u64 v = 0;
};

inline bool operator==(Fe a, Fe b) { return a.v == b.v; }
inline bool operator!=(Fe a, Fe b) { return a.v != b.v; }

// Operation counters for one field context.  mul/add/inv count field
// operations; peak_aux is the high-water mark of simultaneously live
// metered auxiliary registers (maintained by Workspace).
struct OpCounters {
    u64 mul = 0;
    u64 add = 0;
    u64 inv = 0;
    std::size_t peak_aux = 0;
};

namespace detail {

inline u64 mulmod_raw(u64 a, u64 b, u64 p) {
    return static_cast<u64>((u128)a * b % p);
}

inline u64 powmod_raw(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    u64 x = a % p;
    while (e) {
        if (e & 1) r = mulmod_raw(r, x, p);
        x = mulmod_raw(x, x, p);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_raw(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_raw(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace detail

constexpr u64 kDefaultPrime = 65537;

// Arithmetic in Z/pZ for an odd word-size prime p.  Every add/sub/mul/inv
// goes through here and ticks the corresponding counter; pow is metered as
// the square-and-multiply chain of muls it performs.  A context and its
// counters are single-threaded.
class FieldCtx {
  public:
    explicit FieldCtx(u64 p = kDefaultPrime) : p_(p) {
        if (p < 3 || (p & 1) == 0 || p >= (1ull << 62))
            throw std::invalid_argument("FieldCtx: modulus must be an odd word-size prime");
        if (!detail::is_prime_u64(p))
            throw std::invalid_argument("FieldCtx: modulus fails primality test");
    }

    u64 modulus() const { return p_; }

    OpCounters& counters() { return ctrs_; }
    const OpCounters& counters() const { return ctrs_; }

    Fe zero() const { return Fe{0}; }
    Fe one() const { return Fe{1}; }
    Fe from_uint(u64 x) const { return Fe{x % p_}; }

    Fe add(Fe a, Fe b) {
        ++ctrs_.add;
        u64 s = a.v + b.v;
        if (s >= p_) s -= p_;
        return Fe{s};
    }

    Fe sub(Fe a, Fe b) {
        ++ctrs_.add;
        return Fe{a.v >= b.v ? a.v - b.v : a.v + p_ - b.v};
    }

    Fe neg(Fe a) {
        ++ctrs_.add;
        return Fe{a.v == 0 ? 0 : p_ - a.v};
    }

    Fe mul(Fe a, Fe b) {
        ++ctrs_.mul;
        return Fe{detail::mulmod_raw(a.v, b.v, p_)};
    }

    // a * b + c in one metered mul + one metered add.
    Fe mul_add(Fe a, Fe b, Fe c) { return add(mul(a, b), c); }

    // Modular inverse via Fermat.  Counts one inversion; the internal
    // exponentiation chain is bookkeeping of the inversion itself, not
    // separate field multiplications.
    Fe inv(Fe a) {
        if (a.v == 0) throw ZeroInverse("FieldCtx::inv of zero");
        ++ctrs_.inv;
        return Fe{detail::powmod_raw(a.v, p_ - 2, p_)};
    }

    // Square-and-multiply; at most 2*ceil(log2(e+1)) metered muls.
    // 0^0 is defined as 1.
    Fe pow(Fe a, u64 e) {
        Fe r = one();
        Fe x = a;
        while (e) {
            if (e & 1) r = mul(r, x);
            e >>= 1;
            if (e) x = mul(x, x);
        }
        return r;
    }

  private:
    u64 p_;
    OpCounters ctrs_;
};

}  // namespace ipoly

#endif
