#include "hgs/pattern.hpp"

#include "hgs/error.hpp"

#include <algorithm>

namespace hgs {

VPattern::VPattern(std::vector<int> bits) : bits_(std::move(bits))
{
    if (bits_.empty() || bits_.size() > static_cast<std::size_t>(max_pattern_length))
        throw InvalidArgument("VPattern", "length must be in [1, 8]");
    for (int b : bits_)
        if (b != 0 && b != 1)
            throw InvalidArgument("VPattern", "entries must be 0 or 1");
}

VPattern VPattern::parse(std::string_view text)
{
    std::vector<int> bits;
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '(' || c == ')')
            continue;
        if (c != '0' && c != '1')
            throw InvalidArgument("VPattern::parse", std::string("unexpected character '") + c + "'");
        bits.push_back(c - '0');
    }
    return VPattern(std::move(bits));
}

VPattern VPattern::sorted(int zeros, int ones)
{
    std::vector<int> bits(static_cast<std::size_t>(zeros), 0);
    bits.insert(bits.end(), static_cast<std::size_t>(ones), 1);
    return VPattern(std::move(bits));
}

VPattern VPattern::from_code(int r, unsigned code)
{
    std::vector<int> bits(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j)
        bits[static_cast<std::size_t>(j)] = static_cast<int>((code >> (r - 1 - j)) & 1u);
    return VPattern(std::move(bits));
}

int VPattern::ones() const noexcept
{
    return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1));
}

std::string VPattern::to_string() const
{
    std::string s;
    for (int b : bits_)
        s.push_back(static_cast<char>('0' + b));
    return s;
}

} // namespace hgs
