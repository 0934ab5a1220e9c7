#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hgs {

inline constexpr int max_pattern_length = 8;

/// v in {0,1}^r: part j of an (r,v)-partition is a clique iff v[j] == 1,
/// otherwise an independent set.
class VPattern {
public:
    VPattern() = default;
    explicit VPattern(std::vector<int> bits);
    /// Parses "0110" style strings.
    static VPattern parse(std::string_view text);
    /// The pattern with `zeros` zeros followed by `ones` ones.
    static VPattern sorted(int zeros, int ones);
    /// Pattern of length r whose j-th entry is bit (r-1-j) of code, so that
    /// codes 0..2^r-1 visit {0,1}^r in lexicographic order.
    static VPattern from_code(int r, unsigned code);

    int length() const noexcept { return static_cast<int>(bits_.size()); }
    int operator[](int j) const { return bits_.at(static_cast<std::size_t>(j)); }
    int ones() const noexcept;
    const std::vector<int>& bits() const noexcept { return bits_; }
    std::string to_string() const;

    friend bool operator==(const VPattern&, const VPattern&) = default;

private:
    std::vector<int> bits_;
};

} // namespace hgs
