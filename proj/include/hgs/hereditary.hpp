#pragma once

#include "hgs/graph.hpp"
#include "hgs/pattern.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace hgs {

inline constexpr int max_forbidden_order = 10;

/// A hereditary property given by finitely many forbidden induced subgraphs.
/// Construction removes isomorphic duplicates and every graph that contains
/// another forbidden graph, which leaves the property unchanged.
class PropertySpec {
public:
    PropertySpec() = default;
    explicit PropertySpec(std::vector<Graph> forbidden);

    /// One graph6 string per line.
    static PropertySpec from_graph6(std::string_view text);

    const std::vector<Graph>& forbidden() const noexcept { return forbidden_; }
    bool empty() const noexcept { return forbidden_.empty(); }

private:
    std::vector<Graph> forbidden_;
};

bool is_member(const PropertySpec& spec, const Graph& g);

struct SpeedRow {
    int n = 0;
    std::uint64_t count = 0;
    /// log2(count) / C(n,2); absent when count is 0 or n < 2.
    std::optional<double> entropy;
};

/// Exact labeled count |P_n| for n <= 8 (threads = 0 picks thread_count()).
SpeedRow speed(const PropertySpec& spec, int n, int threads = 0);

/// An (r,v)-partition of g: part j is a clique if v[j] = 1, else independent.
/// Parts may be empty. Exhaustive search.
std::optional<PartLabeling> hrv_member(const Graph& g, const VPattern& v);

/// hrv_member with the redundant r argument checked against |v|.
std::optional<PartLabeling> hrv_member(const Graph& g, int r, const VPattern& v);

inline constexpr int max_colouring_cap = 8;

struct ColouringNumber {
    int r = 0;
    /// r equals the cap, so the true value may be larger.
    bool at_cap = false;
    /// Even r = 1 fails for both patterns (the property is finite).
    bool degenerate = false;
    /// A pattern of length r with H(r,v) inside the property, if r >= 1.
    std::optional<VPattern> witness;
};

/// Largest r <= r_max such that H(r,v) lies in the property for some v.
/// Patterns are tried up to permutation. Throws InvalidArgument on an empty
/// family ("unbounded colouring number").
ColouringNumber colouring_number(const PropertySpec& spec, int r_max = max_colouring_cap);

/// True if no forbidden graph admits an (r,v)-partition.
bool hrv_inside(const PropertySpec& spec, const VPattern& v);

/// Labeled graphs on [n] admitting an (r,v)-partition, n <= 8.
std::uint64_t count_hrv(int n, int r, const VPattern& v, int threads = 0);

struct AbtBounds {
    double log2_lower = 0;
    double log2_upper = 0;
};

/// (1 - 1/r) n^2 / 2 and that plus n^(2 - eps).
AbtBounds abt_bounds(int n, int r, double eps);

} // namespace hgs
