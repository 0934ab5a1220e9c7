#pragma once

#include "hgs/graph.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hgs {

/// Exact parameter values for the regularity predicates; no floating point
/// enters a comparison.
using Rational = boost::rational<std::int64_t>;

/// Accepts "3", "0.25", "1/4". Throws InvalidArgument otherwise.
Rational parse_rational(const std::string& text);
std::string to_string(Rational q);
double to_double(Rational q);

/// Exhaustive regularity checks enumerate subsets of both sides.
inline constexpr int max_regularity_side = 12;

/// e(A,B) / (|A||B|). A and B must be disjoint and nonempty.
Rational pair_density(const Graph& g, VertexSet a, VertexSet b);

/// (A,B) is eps-regular when |d(A,B) - d(X,Y)| < eps for all X in A, Y in B
/// with |X| >= eps|A| and |Y| >= eps|B|. Exact; |A|,|B| <= 12.
bool is_epsilon_regular(const Graph& g, VertexSet a, VertexSet b, Rational eps);

/// eps-regular and delta <= d(A,B) <= 1 - delta.
bool is_grey(const Graph& g, VertexSet a, VertexSet b, Rational eps, Rational delta);

struct PairStats {
    Rational density;
    /// Smallest k/grid (k = 1..grid) at which the pair is regular; absent
    /// when a side exceeds the exhaustive cap.
    std::optional<Rational> regular_eps;
};

PairStats pair_stats(const Graph& g, VertexSet a, VertexSet b, int grid = 20);

struct BBSPartition {
    PartLabeling parts;
    /// The finer partition; every block should sit inside one part.
    std::vector<VertexSet> blocks;
    Rational eps;
    Rational delta;
    Rational gamma;
};

struct BlockPair {
    int first;
    int second;
    friend bool operator==(const BlockPair&, const BlockPair&) = default;
};

struct PartGreyCount {
    int part;
    std::vector<BlockPair> grey_pairs;
    Rational limit; // gamma * m^2
    bool within() const { return Rational(static_cast<std::int64_t>(grey_pairs.size())) <= limit; }
};

struct BBSReport {
    /// Empty when blocks partition V(G), each block lies in one part, block
    /// sizes differ by at most one and per-part block counts differ by at most one.
    std::vector<std::string> structural_issues;
    /// part_of_block[i] is the part containing block i, or -1 if it straddles.
    std::vector<int> part_of_block;
    std::vector<PartGreyCount> grey;
    // Informational: the Szemeredi-partition side conditions.
    int irregular_pairs = 0;
    bool irregular_within = true; // irregular unordered pairs <= eps m^2
    bool block_count_above = true; // m > 1/eps

    bool structural_ok() const { return structural_issues.empty(); }
    bool grey_ok() const;
    bool pass() const { return structural_ok() && grey_ok(); }
};

/// Checks the two BBS conditions on a supplied partition. Grey pairs are
/// counted as unordered pairs of blocks inside the same part. Block sizes <= 12.
BBSReport verify_bbs_partition(const Graph& g, const BBSPartition& bbs);

/// Labeled plumbing for fixtures: for n <= 12 exhaustively picks the balanced
/// r-partition minimising sum over parts of min(edges, non-edges) inside the
/// part; beyond that a swap local search from round-robin. Each part is then
/// cut into blocks_per_part consecutive chunks. Not a regularity partition finder.
BBSPartition toy_bbs_partition(const Graph& g, int r, int blocks_per_part,
    Rational eps, Rational delta, Rational gamma);

struct TuranTransversal {
    bool feasible = false;     // e(F) >= (1-eps) C(r,2) n^2 and eps r^3 t^3 < 1
    std::string feasibility_note;
    bool found = false;
    bool relaxed = false;      // some pick broke the |B|/(rt) loss rule
    /// vertices[j * t + i] is the vertex chosen from block i of part j.
    std::vector<int> vertices;
    std::string failure;
};

/// Greedy search for a K_r(t) meeting every block B_j(i) in exactly one
/// vertex. blocks[j] lists the t blocks of part A_j; all parts must have the
/// same size n and the same block count t. Only edges between different parts
/// are counted. A found transversal is checked to be complete across parts.
TuranTransversal greedy_turan_transversal(const Graph& g,
    const std::vector<std::vector<VertexSet>>& blocks, Rational eps);

} // namespace hgs
