#pragma once

#include <bit>
#include <cstdint>

namespace hgs::bits {

using Word = std::uint64_t;

constexpr int popcount(Word w) noexcept { return std::popcount(w); }

constexpr int lowest(Word w) noexcept { return std::countr_zero(w); }

constexpr Word low_mask(int n) noexcept
{
    return n >= 64 ? ~Word{0} : (Word{1} << n) - 1;
}

constexpr bool test(Word w, int i) noexcept { return (w >> i) & 1u; }

/// Calls f(i) for every set bit i of w, in increasing order.
template <class F>
constexpr void for_each_bit(Word w, F&& f)
{
    while (w) {
        f(lowest(w));
        w &= w - 1;
    }
}

/// Next word with the same popcount (Gosper's hack). Enumerates k-subsets in colex order.
constexpr Word next_same_popcount(Word w) noexcept
{
    Word c = w & (~w + 1);
    Word r = w + c;
    return (((r ^ w) >> 2) / c) | r;
}

/// Packs the bits of w selected by mask into the low popcount(mask) bits (software pext).
constexpr Word compress(Word w, Word mask) noexcept
{
    Word out = 0;
    int pos = 0;
    while (mask) {
        int i = lowest(mask);
        if (test(w, i))
            out |= Word{1} << pos;
        ++pos;
        mask &= mask - 1;
    }
    return out;
}

/// Inverse of compress: scatters the low bits of w onto the set positions of mask.
constexpr Word expand(Word w, Word mask) noexcept
{
    Word out = 0;
    int pos = 0;
    while (mask) {
        int i = lowest(mask);
        if (test(w, pos))
            out |= Word{1} << i;
        ++pos;
        mask &= mask - 1;
    }
    return out;
}

/// Visits every k-subset of ground (as a mask) in colex order of the compressed
/// representation. Stops early and returns true if f returns true.
template <class F>
bool for_each_k_subset(Word ground, int k, F&& f)
{
    int g = popcount(ground);
    if (k < 0 || k > g)
        return false;
    if (k == 0)
        return f(Word{0});
    Word local = low_mask(k);
    const Word last = low_mask(k) << (g - k);
    for (;;) {
        if (f(expand(local, ground)))
            return true;
        if (local == last)
            return false;
        local = next_same_popcount(local);
    }
}

/// Exact binomial coefficient; saturates at UINT64_MAX.
constexpr std::uint64_t binomial(int n, int k) noexcept
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (r > UINT64_MAX)
            return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(r);
}

} // namespace hgs::bits
