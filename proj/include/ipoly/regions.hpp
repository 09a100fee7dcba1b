#ifndef IPOLY_REGIONS_HPP
#define IPOLY_REGIONS_HPP

#include <array>
#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

#include <ipoly/errors.hpp>
#include <ipoly/field.hpp>

namespace ipoly {

// The memory model: algorithms see their inputs as read-only Regions, their
// pre-allocated outputs as RegionMuts (freely usable as scratch), and obtain
// any further registers from a Workspace.  A Region is a view into a bank of
// field elements; the reversed flag implements rev(F) as pure indexing, with
// no field operations and no data movement.

class Region {
  public:
    Region() = default;
    Region(const Fe* base, std::size_t len, bool reversed = false)
        : base_(base), len_(len), rev_(reversed) {}

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }
    bool is_reversed() const { return rev_; }

    Fe at(std::size_t i) const {
        assert(i < len_);
        return base_[rev_ ? len_ - 1 - i : i];
    }

    // Logical subrange [a, b).
    Region slice(std::size_t a, std::size_t b) const {
        if (a > b || b > len_) throw OutOfRange("Region::slice");
        if (!rev_) return Region(base_ + a, b - a, false);
        return Region(base_ + (len_ - b), b - a, true);
    }

    Region rev() const { return Region(base_, len_, !rev_); }

    const Fe* raw_lo() const { return base_; }
    const Fe* raw_hi() const { return base_ + len_; }

  private:
    const Fe* base_ = nullptr;
    std::size_t len_ = 0;
    bool rev_ = false;
};

class RegionMut {
  public:
    RegionMut() = default;
    RegionMut(Fe* base, std::size_t len, bool reversed = false)
        : base_(base), len_(len), rev_(reversed) {}

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }
    bool is_reversed() const { return rev_; }

    Fe at(std::size_t i) const {
        assert(i < len_);
        return base_[rev_ ? len_ - 1 - i : i];
    }
    void set(std::size_t i, Fe x) {
        assert(i < len_);
        base_[rev_ ? len_ - 1 - i : i] = x;
    }

    RegionMut slice(std::size_t a, std::size_t b) const {
        if (a > b || b > len_) throw OutOfRange("RegionMut::slice");
        if (!rev_) return RegionMut(base_ + a, b - a, false);
        return RegionMut(base_ + (len_ - b), b - a, true);
    }

    RegionMut rev() const { return RegionMut(base_, len_, !rev_); }

    // Two disjoint writable views covering this region; the original view is
    // consumed by convention.
    std::pair<RegionMut, RegionMut> split(std::size_t at) const {
        if (at > len_) throw OutOfRange("RegionMut::split");
        return {slice(0, at), slice(at, len_)};
    }

    operator Region() const { return Region(base_, len_, rev_); }

    void fill_zero() const {
        for (std::size_t i = 0; i < len_; ++i) base_[i] = Fe{0};
    }

    Fe* raw_lo() const { return base_; }
    Fe* raw_hi() const { return base_ + len_; }

  private:
    Fe* base_ = nullptr;
    std::size_t len_ = 0;
    bool rev_ = false;
};

inline Region region_of(const std::vector<Fe>& v) { return Region(v.data(), v.size()); }
inline RegionMut region_of(std::vector<Fe>& v) { return RegionMut(v.data(), v.size()); }

inline bool overlaps(Region a, Region b) {
    if (a.empty() || b.empty()) return false;
    return a.raw_lo() < b.raw_hi() && b.raw_lo() < a.raw_hi();
}

class Workspace;

// RAII handle for a block of workspace registers; releases on destruction in
// LIFO order.
class Scratch {
  public:
    Scratch(Scratch&& o) noexcept { move_from(o); }
    Scratch& operator=(Scratch&& o) noexcept {
        if (this != &o) { release(); move_from(o); }
        return *this;
    }
    Scratch(const Scratch&) = delete;
    Scratch& operator=(const Scratch&) = delete;
    ~Scratch() { release(); }

    RegionMut view() const { return RegionMut(base_, len_); }
    operator RegionMut() const { return view(); }
    operator Region() const { return Region(base_, len_); }
    Fe* data() const { return base_; }
    std::size_t size() const { return len_; }

  private:
    friend class Workspace;
    Scratch(Workspace* ws, Fe* base, std::size_t len, std::size_t extent)
        : ws_(ws), base_(base), len_(len), extent_(extent) {}
    void release();
    void move_from(Scratch& o) {
        ws_ = o.ws_; base_ = o.base_; len_ = o.len_; extent_ = o.extent_;
        o.ws_ = nullptr;
    }

    Workspace* ws_ = nullptr;
    Fe* base_ = nullptr;
    std::size_t len_ = 0;
    std::size_t extent_ = 0;
};

// A stack-discipline register arena.  Two flavours share the interface:
//
//   metered   — owns its storage, enforces a hard budget, and pushes the
//               high-water mark of live registers into OpCounters.peak_aux.
//               This is true *auxiliary* space: exceeding the budget throws
//               BudgetExceeded, the falsifier of a space claim.
//
//   region-backed — carves scratch out of free output space handed over by
//               the caller (possibly several disjoint extents).  Free output
//               registers are not auxiliary space and are not metered.
//
// Acquired blocks are zero-initialized; zeroing is bookkeeping, not a field
// operation.
class Workspace {
  public:
    static Workspace metered(OpCounters& ctrs, std::size_t budget) {
        Workspace ws;
        ws.meter_ = &ctrs;
        ws.budget_ = budget;
        ws.storage_.resize(budget);
        if (budget > 0) ws.push_extent(ws.storage_.data(), budget);
        return ws;
    }

    static Workspace over(RegionMut r) {
        Workspace ws;
        if (!r.empty()) ws.push_extent(r.raw_lo(), r.size());
        return ws;
    }

    static Workspace over(std::initializer_list<RegionMut> rs) {
        Workspace ws;
        for (const RegionMut& r : rs)
            if (!r.empty()) ws.push_extent(r.raw_lo(), r.size());
        return ws;
    }

    Workspace(Workspace&&) = default;
    Workspace& operator=(Workspace&&) = delete;
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

    Scratch acquire(std::size_t n) {
        if (n == 0) return Scratch(this, nullptr, 0, kNoExtent);
        if (live_ + n > budget_)
            throw BudgetExceeded("Workspace: budget exceeded");
        for (std::size_t e = 0; e < n_extents_; ++e) {
            Extent& x = extents_[e];
            if (x.cap - x.top >= n) {
                Fe* base = x.base + x.top;
                x.top += n;
                live_ += n;
                if (live_ > peak_) peak_ = live_;
                if (meter_ && live_ > meter_->peak_aux) meter_->peak_aux = live_;
                for (std::size_t i = 0; i < n; ++i) base[i] = Fe{0};
                return Scratch(this, base, n, e);
            }
        }
        throw BudgetExceeded("Workspace: no extent has room");
    }

    std::size_t live() const { return live_; }
    std::size_t peak() const { return peak_; }
    std::size_t budget() const { return budget_; }
    std::size_t capacity() const {
        std::size_t c = 0;
        for (std::size_t e = 0; e < n_extents_; ++e) c += extents_[e].cap;
        return c;
    }
    bool metered() const { return meter_ != nullptr; }

  private:
    friend class Scratch;
    static constexpr std::size_t kNoExtent = static_cast<std::size_t>(-1);

    Workspace() = default;

    struct Extent {
        Fe* base = nullptr;
        std::size_t cap = 0;
        std::size_t top = 0;
    };

    void push_extent(Fe* base, std::size_t cap) {
        assert(n_extents_ < extents_.size());
        extents_[n_extents_++] = Extent{base, cap, 0};
    }

    void release_block(std::size_t extent, Fe* base, std::size_t len) {
        if (len == 0) return;
        Extent& x = extents_[extent];
        assert(x.base + x.top == base + len && "workspace release out of LIFO order");
        (void)base;
        x.top -= len;
        live_ -= len;
    }

    std::vector<Fe> storage_;
    std::array<Extent, 4> extents_{};
    std::size_t n_extents_ = 0;
    OpCounters* meter_ = nullptr;
    std::size_t budget_ = static_cast<std::size_t>(-1);
    std::size_t live_ = 0;
    std::size_t peak_ = 0;
};

inline void Scratch::release() {
    if (ws_) {
        ws_->release_block(extent_, base_, len_);
        ws_ = nullptr;
    }
}

// Counter snapshot delta around a call.  Counters seen by f start from zero
// (including peak_aux) and the previous totals are restored afterwards, so
// the returned value is exactly f's footprint.  Errors from f propagate.
template <class F>
OpCounters measure(FieldCtx& ctx, F&& f) {
    OpCounters saved = ctx.counters();
    ctx.counters() = OpCounters{};
    OpCounters delta;
    try {
        f();
    } catch (...) {
        delta = ctx.counters();
        ctx.counters() = saved;
        ctx.counters().mul += delta.mul;
        ctx.counters().add += delta.add;
        ctx.counters().inv += delta.inv;
        if (delta.peak_aux > ctx.counters().peak_aux) ctx.counters().peak_aux = delta.peak_aux;
        throw;
    }
    delta = ctx.counters();
    ctx.counters() = saved;
    ctx.counters().mul += delta.mul;
    ctx.counters().add += delta.add;
    ctx.counters().inv += delta.inv;
    if (delta.peak_aux > ctx.counters().peak_aux) ctx.counters().peak_aux = delta.peak_aux;
    return delta;
}

// The constant-register allowance: loop indices, region descriptors and a
// bounded number of scalar temporaries are free in this model; anything
// array-shaped must come from a Workspace.  In-place algorithms get exactly
// this many metered registers and no more.
constexpr std::size_t kConstBudget = 32;

}  // namespace ipoly

#endif
