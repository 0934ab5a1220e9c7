#pragma once

#include "hgs/bits.hpp"

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hgs {

inline constexpr int max_order = 64;

/// A subset of [n] stored as one machine word.
class VertexSet {
public:
    constexpr VertexSet() noexcept = default;
    constexpr explicit VertexSet(bits::Word mask) noexcept : mask_(mask) {}

    static VertexSet of(std::initializer_list<int> vertices);
    static VertexSet of(std::span<const int> vertices);
    static constexpr VertexSet prefix(int n) noexcept { return VertexSet(bits::low_mask(n)); }
    /// Vertices first, first+1, ..., first+count-1.
    static constexpr VertexSet interval(int first, int count) noexcept
    {
        return VertexSet(bits::low_mask(count) << first);
    }

    constexpr bits::Word mask() const noexcept { return mask_; }
    constexpr int size() const noexcept { return bits::popcount(mask_); }
    constexpr bool empty() const noexcept { return mask_ == 0; }
    constexpr bool contains(int v) const noexcept { return v >= 0 && v < 64 && bits::test(mask_, v); }
    constexpr bool subset_of(VertexSet other) const noexcept { return (mask_ & ~other.mask_) == 0; }
    constexpr bool disjoint(VertexSet other) const noexcept { return (mask_ & other.mask_) == 0; }
    constexpr int front() const noexcept { return bits::lowest(mask_); }

    constexpr VertexSet with(int v) const noexcept { return VertexSet(mask_ | (bits::Word{1} << v)); }
    constexpr VertexSet without(int v) const noexcept { return VertexSet(mask_ & ~(bits::Word{1} << v)); }

    std::vector<int> vertices() const;

    template <class F>
    constexpr void for_each(F&& f) const
    {
        bits::for_each_bit(mask_, std::forward<F>(f));
    }

    friend constexpr VertexSet operator|(VertexSet a, VertexSet b) noexcept { return VertexSet(a.mask_ | b.mask_); }
    friend constexpr VertexSet operator&(VertexSet a, VertexSet b) noexcept { return VertexSet(a.mask_ & b.mask_); }
    friend constexpr VertexSet operator-(VertexSet a, VertexSet b) noexcept { return VertexSet(a.mask_ & ~b.mask_); }
    friend constexpr VertexSet operator^(VertexSet a, VertexSet b) noexcept { return VertexSet(a.mask_ ^ b.mask_); }
    VertexSet& operator|=(VertexSet o) noexcept { mask_ |= o.mask_; return *this; }
    VertexSet& operator&=(VertexSet o) noexcept { mask_ &= o.mask_; return *this; }
    VertexSet& operator-=(VertexSet o) noexcept { mask_ &= ~o.mask_; return *this; }
    friend constexpr bool operator==(VertexSet, VertexSet) noexcept = default;

private:
    bits::Word mask_ = 0;
};

std::string to_string(VertexSet s);

/// Labeled simple graph on [n], n <= 64; row i is the neighbourhood of i.
class Graph {
public:
    Graph() noexcept = default;
    /// Edgeless graph on n vertices.
    explicit Graph(int n);

    /// Builds the graph on [n] whose edge bits follow the graph6 order:
    /// pair (i, j) with i < j has index j(j-1)/2 + i. Requires C(n,2) <= 64.
    static Graph from_edge_mask(int n, std::uint64_t mask);

    int order() const noexcept { return n_; }
    VertexSet vertices() const noexcept { return VertexSet::prefix(n_); }
    bits::Word row(int v) const noexcept { return adj_[static_cast<std::size_t>(v)]; }
    VertexSet neighbours(int v) const noexcept { return VertexSet(row(v)); }
    bool adjacent(int u, int v) const noexcept { return bits::test(row(u), v); }
    int degree(int v) const noexcept { return bits::popcount(row(v)); }
    int edge_count() const noexcept;
    std::vector<std::pair<int, int>> edges() const;

    /// Edge mask in the order of from_edge_mask. Requires C(n,2) <= 64.
    std::uint64_t edge_mask() const;

    void add_edge(int u, int v);
    void remove_edge(int u, int v);

    Graph complement() const;

    friend bool operator==(const Graph& a, const Graph& b) noexcept;

private:
    int n_ = 0;
    std::array<bits::Word, max_order> adj_{};
};

/// Position of pair (i, j), i < j, in the edge-mask order.
constexpr int edge_index(int i, int j) noexcept
{
    if (i > j)
        std::swap(i, j);
    return j * (j - 1) / 2 + i;
}

constexpr int pair_count(int n) noexcept { return n * (n - 1) / 2; }

/// Throws InvalidArgument on out-of-range endpoints or self-loops; duplicate
/// edges are accepted.
Graph graph_from_edges(int n, std::span<const std::pair<int, int>> edges);
Graph graph_from_edges(int n, std::initializer_list<std::pair<int, int>> edges);

/// Subgraph induced by s, relabeled by increasing original index.
Graph induced_subgraph(const Graph& g, VertexSet s);

/// An injective map phi: V(h) -> V(g) with uv in E(h) iff phi(u)phi(v) in E(g).
/// The search is exhaustive.
std::optional<std::vector<int>> contains_induced(const Graph& g, const Graph& h);

/// True when g and h have the same order and are isomorphic.
bool isomorphic(const Graph& g, const Graph& h);

inline Graph complete_graph(int n)
{
    return Graph(n).complement();
}
Graph path_graph(int n);
Graph cycle_graph(int n);

/// Plain text "n\nu v\nu v\n...". Blank lines and lines starting with '#' are skipped.
Graph parse_edge_list(const std::string& text);
std::string format_edge_list(const Graph& g);

/// Assignment of the vertices of [n] to parts 0..r-1. Parts may be empty.
class PartLabeling {
public:
    PartLabeling() = default;
    PartLabeling(int part_count, std::vector<int> part_of);

    /// Builds from r disjoint sets covering [n].
    static PartLabeling from_sets(int n, std::span<const VertexSet> parts);

    int part_count() const noexcept { return parts_; }
    int order() const noexcept { return static_cast<int>(part_of_.size()); }
    int part_of(int v) const { return part_of_.at(static_cast<std::size_t>(v)); }
    const std::vector<int>& labels() const noexcept { return part_of_; }
    VertexSet part(int j) const;
    std::vector<VertexSet> parts() const;

    friend bool operator==(const PartLabeling&, const PartLabeling&) = default;

private:
    int parts_ = 0;
    std::vector<int> part_of_;
};

} // namespace hgs
