#include "hgs/hereditary.hpp"

#include "hgs/enumerate.hpp"
#include "hgs/error.hpp"
#include "hgs/graph6.hpp"

#include <algorithm>
#include <cmath>

namespace hgs {

PropertySpec::PropertySpec(std::vector<Graph> forbidden)
{
    for (const Graph& f : forbidden)
        if (f.order() > max_forbidden_order)
            throw InvalidArgument("PropertySpec", "forbidden graph of order " + std::to_string(f.order()) + " exceeds 10");
    // Smallest first, so a graph is dropped when an earlier kept one embeds in it.
    std::stable_sort(forbidden.begin(), forbidden.end(), [](const Graph& a, const Graph& b) {
        return a.order() != b.order() ? a.order() < b.order() : a.edge_count() < b.edge_count();
    });
    for (Graph& f : forbidden) {
        const bool redundant = std::any_of(forbidden_.begin(), forbidden_.end(),
            [&](const Graph& kept) { return contains_induced(f, kept).has_value(); });
        if (!redundant)
            forbidden_.push_back(std::move(f));
    }
}

PropertySpec PropertySpec::from_graph6(std::string_view text)
{
    return PropertySpec(graph6_decode_lines(text));
}

bool is_member(const PropertySpec& spec, const Graph& g)
{
    for (const Graph& f : spec.forbidden())
        if (contains_induced(g, f))
            return false;
    return true;
}

SpeedRow speed(const PropertySpec& spec, int n, int threads)
{
    SpeedRow row;
    row.n = n;
    row.count = count_labeled(n, [&](const Graph& g) { return is_member(spec, g); }, threads);
    if (row.count > 0 && n >= 2)
        row.entropy = std::log2(static_cast<double>(row.count)) / pair_count(n);
    return row;
}

std::optional<PartLabeling> hrv_member(const Graph& g, const VPattern& v)
{
    const int n = g.order();
    const int r = v.length();
    std::vector<bits::Word> parts(static_cast<std::size_t>(r), 0);
    std::vector<int> label(static_cast<std::size_t>(n), -1);

    auto place = [&](auto&& self, int u) -> bool {
        if (u == n)
            return true;
        const bits::Word row = g.row(u);
        // Parts of the same type are interchangeable, so only the first empty
        // part of each type is worth trying.
        bool tried_empty[2] = {false, false};
        for (int j = 0; j < r; ++j) {
            const auto js = static_cast<std::size_t>(j);
            const int type = v[j];
            if (parts[js] == 0) {
                if (tried_empty[type])
                    continue;
                tried_empty[type] = true;
            }
            const bool fits = type == 1 ? (parts[js] & ~row) == 0 : (parts[js] & row) == 0;
            if (!fits)
                continue;
            parts[js] |= bits::Word{1} << u;
            label[static_cast<std::size_t>(u)] = j;
            if (self(self, u + 1))
                return true;
            parts[js] &= ~(bits::Word{1} << u);
        }
        return false;
    };
    if (!place(place, 0))
        return std::nullopt;
    return PartLabeling(r, std::move(label));
}

std::optional<PartLabeling> hrv_member(const Graph& g, int r, const VPattern& v)
{
    if (r != v.length())
        throw InvalidArgument("hrv_member", "r must equal |v|");
    return hrv_member(g, v);
}

bool hrv_inside(const PropertySpec& spec, const VPattern& v)
{
    for (const Graph& f : spec.forbidden())
        if (hrv_member(f, v))
            return false;
    return true;
}

ColouringNumber colouring_number(const PropertySpec& spec, int r_max)
{
    if (spec.empty())
        throw InvalidArgument("colouring_number", "unbounded colouring number");
    if (r_max < 1 || r_max > max_colouring_cap)
        throw InvalidArgument("colouring_number", "r_max must be in [1, 8]");
    ColouringNumber out;
    for (int r = 1; r <= r_max; ++r) {
        for (int ones = 0; ones <= r; ++ones) {
            VPattern v = VPattern::sorted(r - ones, ones);
            if (hrv_inside(spec, v)) {
                out.r = r;
                out.witness = v;
                break;
            }
        }
    }
    out.at_cap = out.r == r_max;
    out.degenerate = out.r == 0;
    return out;
}

std::uint64_t count_hrv(int n, int r, const VPattern& v, int threads)
{
    if (r != v.length())
        throw InvalidArgument("count_hrv", "r must equal |v|");
    return count_labeled(n, [&](const Graph& g) { return hrv_member(g, v).has_value(); }, threads);
}

AbtBounds abt_bounds(int n, int r, double eps)
{
    if (r < 1)
        throw InvalidArgument("abt_bounds", "r must be at least 1");
    if (!(eps > 0 && eps <= 1))
        throw InvalidArgument("abt_bounds", "eps must be in (0, 1]");
    const double nn = static_cast<double>(n);
    const double lower = (1.0 - 1.0 / r) * nn * nn / 2.0;
    return {lower, lower + std::pow(nn, 2.0 - eps)};
}

} // namespace hgs
