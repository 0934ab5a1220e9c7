#pragma once

#include "hgs/graph.hpp"
#include "hgs/pattern.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hgs {

/// U(k): A = vertices 0..2^k-1, B = vertices 2^k..2^k+k-1; vertex a of A is
/// adjacent to the i-th vertex of B iff bit i of a is set.
struct UniversalGraph {
    Graph graph;
    VertexSet a;
    VertexSet b;
};

UniversalGraph construct_universal(int k);

/// U(r,k) and U*_v(r,k). Layers occupy consecutive vertex ranges in order;
/// the s-th vertex of layer j+1 is adjacent to prefix vertex p iff bit p of s
/// is set, so layer j+1 shatters the union of layers 1..j.
struct LayeredUniversal {
    std::vector<VertexSet> layers;
    Graph graph;
    int k = 0;
    std::optional<VPattern> pattern;

    int order() const noexcept { return graph.order(); }
};

/// Layer sizes of U(r,k), or nullopt when the total exceeds 64 vertices.
std::optional<std::vector<int>> universal_layer_sizes(int r, int k);

LayeredUniversal construct_generalized_universal(int r, int k);
LayeredUniversal construct_universal_star(int r, int k, const VPattern& v);

/// Evidence that A shatters B: realizers[s] is a vertex of A whose trace on B
/// is the subset s, with s written in the coordinates of `shattered` (bit i
/// stands for the i-th smallest vertex of the shattered set).
struct ShatterWitness {
    VertexSet shattered;
    std::vector<int> realizers;

    /// Realizer of an actual subset of `shattered`.
    int realizer_for(VertexSet subset) const;
};

inline constexpr int max_shatter_target = 20;

/// Exhaustive shattering test; the smallest-index realizer is used per trace.
/// Throws InvalidArgument if A and B overlap, LimitExceeded if |B| > 20.
std::optional<ShatterWitness> shatters(const Graph& g, VertexSet a, VertexSet b);

/// Re-checks every invariant of a witness against g.
bool witness_valid(const Graph& g, const ShatterWitness& w);

/// A set system over a ground set of at most 30 elements; traces are
/// deduplicated at construction.
class TraceFamily {
public:
    TraceFamily(VertexSet ground, std::vector<bits::Word> traces);

    VertexSet ground() const noexcept { return ground_; }
    const std::vector<bits::Word>& traces() const noexcept { return traces_; }
    int ground_size() const noexcept { return ground_.size(); }
    std::size_t size() const noexcept { return traces_.size(); }

    /// True if every subset of x is of the form trace & x.
    bool shatters(VertexSet x) const;

private:
    VertexSet ground_;
    std::vector<bits::Word> traces_;
};

inline constexpr int max_trace_ground = 30;

/// sum_{i<k} C(g, i); a family larger than this shatters some k-set.
std::uint64_t sauer_bound(int ground_size, int k);

/// First k-subset of the ground set (colex order) shattered by the family.
/// Throws PreconditionFailed("Sauer bound not met") unless |F| > sauer_bound.
VertexSet sauer_find_shattered(const TraceFamily& family, int k);

/// Same search without the precondition; nullopt when nothing is shattered.
std::optional<VertexSet> find_shattered_subset(const TraceFamily& family, int k);

/// a_prime has size t; b_prime (2^t vertices of B) shatters a_prime.
struct ReverseShatter {
    VertexSet a_prime;
    VertexSet b_prime;
};

/// Given A -> B and |B| >= 2^t: the first 2^t vertices of B get hypercube
/// labels 0..2^t-1 in increasing order, F_j is the face {label bit j = 0}, and
/// A' collects the vertices of A whose traces are F_1..F_t.
ReverseShatter reverse_shatter(const Graph& g, VertexSet a, VertexSet b, int t);

struct AlignedReverseShatter {
    std::vector<VertexSet> a_prime;
    VertexSet b_prime;
};

/// Shared-labelling version over r disjoint sets A_j, each shattering B, with
/// |B| >= 2^(r t). b_prime shatters the union of the a_prime sets.
AlignedReverseShatter aligned_reverse_shatter(const Graph& g, std::span<const VertexSet> a_list, VertexSet b, int t);

struct StarEmbedding {
    VPattern pattern;
    std::vector<int> map; // vertex of U*_v(r,k) -> vertex of g
};

inline constexpr int max_star_order = 12;

/// Exhaustive induced search for U*_v(r,k) over v in lexicographic order.
/// Throws LimitExceeded if |U(r,k)| > 12.
std::optional<StarEmbedding> find_universal_star_embedding(const Graph& g, int r, int k);

} // namespace hgs
