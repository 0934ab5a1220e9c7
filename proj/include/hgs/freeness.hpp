#pragma once

#include "hgs/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hgs {

inline constexpr int max_bip_side = 64;

/// Bipartite graph with parts A = {0..m-1} and B = {0..n-1}; rows[a] is the
/// set of B-neighbours of a, so only cross edges are representable.
class BipGraph {
public:
    BipGraph() = default;
    BipGraph(int m, int n);
    BipGraph(int m, int n, std::vector<bits::Word> rows);

    /// Cross edges of g between a (rows, in increasing order) and b (columns).
    static BipGraph from_graph(const Graph& g, VertexSet a, VertexSet b);
    /// Text format: "m n" then m lines of n characters in {0,1}.
    static BipGraph parse(const std::string& text);
    std::string format() const;

    int m() const noexcept { return m_; }
    int n() const noexcept { return n_; }
    bits::Word row(int a) const { return rows_.at(static_cast<std::size_t>(a)); }
    const std::vector<bits::Word>& rows() const noexcept { return rows_; }
    bool adjacent(int a, int b) const { return bits::test(row(a), b); }
    void set_edge(int a, int b, bool present);
    int edge_count() const noexcept;

    BipGraph transpose() const;
    /// The bipartite graph as a Graph: A first (0..m-1), then B (m..m+n-1).
    /// Requires m + n <= 64.
    Graph to_graph() const;
    VertexSet a_side() const { return VertexSet::prefix(m_); }
    VertexSet b_side() const { return VertexSet::interval(m_, n_); }

    friend bool operator==(const BipGraph&, const BipGraph&) = default;

private:
    int m_ = 0;
    int n_ = 0;
    std::vector<bits::Word> rows_;
};

enum class Side { a, b };

/// Pairwise distances |N(u) xor N(v)| within one side.
class SeparationProfile {
public:
    SeparationProfile(const BipGraph& g, Side side);

    int size() const noexcept { return size_; }
    int delta(int u, int v) const { return delta_.at(static_cast<std::size_t>(u * size_ + v)); }
    /// Smallest distance among distinct members of s (INT_MAX if |s| < 2).
    int min_delta(VertexSet s) const;

private:
    int size_ = 0;
    std::vector<int> delta_;
};

/// Whole: any disjoint A, B of the host graph. Cross: B inside the given
/// B-part and A inside the A-part, so the A-part shatters a k-subset of the
/// B-part.
enum class UkMode { whole, cross };

struct UkCopy {
    VertexSet a; // 2^k vertices realizing every subset of b
    VertexSet b; // k vertices
};

inline constexpr int max_uk_level = 4;
inline constexpr int max_uk_whole_order = 24;

/// First copy of U(k) across disjoint (A, B) of g: k-subsets B in colex
/// order, and for each trace on B the smallest vertex realizing it.
/// Throws LimitExceeded if k > 4 or |V(g)| > 24.
std::optional<UkCopy> find_uk_copy(const Graph& g, int k);

/// Whole-mode search inside G[within]; A and B are disjoint subsets of
/// `within`. No order cap beyond the 64-vertex word.
std::optional<UkCopy> find_uk_copy_within(const Graph& g, int k, VertexSet within);

/// Cross-only search with B inside b_part and A inside a_part.
std::optional<UkCopy> find_uk_copy(const Graph& g, int k, VertexSet a_part, VertexSet b_part);

/// Either mode on a bipartite host, using the layout of BipGraph::to_graph.
std::optional<UkCopy> find_uk_copy(const BipGraph& g, int k, UkMode mode);

inline constexpr int max_counted_cells = 25;

/// Number of the 2^(mn) cross-edge patterns between parts of sizes m and n
/// that are U(k)-free in the given mode (m n <= 25).
std::uint64_t count_uk_free_bipartite(int m, int n, int k, UkMode mode, int threads = 0);

struct BlockTraceCount {
    VertexSet block;
    std::uint64_t traces = 0;
    /// sum_{i<k} C(|block|, i)
    std::uint64_t sauer_ceiling = 0;
    /// k * C(|block|, k-1), as stated in the counting argument.
    std::uint64_t loose_ceiling = 0;
    bool within = false;
};

/// Per-block counts |{N(a) & B_j}| for a cross-only U(k)-free g. Blocks must
/// partition B. Throws PreconditionFailed if g contains a cross copy of U(k).
std::vector<BlockTraceCount> trace_count_check(const BipGraph& g, const std::vector<VertexSet>& blocks, int k);

struct AttachmentCount {
    std::uint64_t exact = 0;
    std::uint64_t printed_bound = 0;   // (2^a - 1)^n
    std::uint64_t corrected_bound = 0; // 2^a (2^a - 1)^n
};

/// Bipartite graphs between A (size a) and B (size n) in which no subset of
/// B shatters A, i.e. the B-traces on A miss some subset. a <= 3, n <= 6.
AttachmentCount count_nonshattering_attachments(int a, int n);

struct SparseCount {
    std::uint64_t exact = 0; // sum_{j <= delta^2 n^2} C(n^2, j)
    double log2_bound = 0;   // delta n^2
    std::uint64_t edge_limit = 0;
};

/// Bipartite graphs on n + n vertices with at most delta^2 n^2 edges (n <= 5).
SparseCount count_sparse_bipartite(int n, double delta);

struct SeparatedSubset {
    VertexSet members; // local indices on the chosen side
    bool exact = false;
};

inline constexpr int max_exact_separated = 20;

/// Largest subset of one side with pairwise distance >= x: exact (maximum
/// clique) when the side has at most 20 vertices, greedy and maximal otherwise.
SeparatedSubset max_separated_subset(const BipGraph& g, Side side, int x);

/// (n/x)^(k-1) 3^k (ln m)^(k-1): the ceiling on separated subsets of a
/// cross-only U(k)-free graph with |A| = m, |B| = n.
double separated_subset_bound(int m, int n, int x, int k);

struct DistinguishingSet {
    VertexSet x; // subset of B
    int attempts = 0;
    int sample_size = 0;
};

inline constexpr int default_distinguishing_attempts = 1000;

/// Samples ceil(p n) vertices of B without replacement, p = 5 ln c / (alpha n),
/// until the rows in u_sub have pairwise different traces on the sample.
/// Requires |u_sub| >= 2, pairwise distance >= alpha n, and alpha n >= 1.
DistinguishingSet distinguishing_set(const BipGraph& g, VertexSet u_sub, double alpha, std::uint64_t seed,
    int max_attempts = default_distinguishing_attempts);

/// Size of one sample: min(n, ceil(5 ln c / alpha)).
int distinguishing_sample_size(int c, int n, double alpha);

enum class SparseningForm {
    classes, // 2^t classes per part, indexed by their trace on b_prime
    flipped, // t classes per part; b_prime shatters every transversal
};

struct SparseningStep {
    int part = 0;
    int target = 0;     // size of the set kept from the previous stage
    int source = 0;     // size of that previous set
    bool degenerate = false; // source == target: classes are plain trace groups
    int iterations = 0;
    int removed = 0;
    int distinguishing_attempts = 0;
    bool size_bound_met = true; // Sauer precondition held at every iteration
};

struct SparseningOutput {
    SparseningForm form = SparseningForm::classes;
    VertexSet b_prime;
    /// classes[i][j] lies in part i.
    std::vector<std::vector<VertexSet>> classes;
    double alpha = 0;
    int t = 0;
    /// Smallest class size divided by |V(G)|.
    double delta = 0;
    std::vector<int> chain;
    std::vector<SparseningStep> steps;
    /// |B| >= 2^(2^s) for the first stage target s (needed to shatter 2^s vertices).
    std::uint64_t declared_threshold = 0;
    /// |B| >= (5 ln |B| / alpha)^(2^t), the asymptotic size requirement.
    bool asymptotic_size_met = false;
    bool condition_a = false;
    bool condition_b = false;
};

struct SparseningOptions {
    SparseningForm form = SparseningForm::classes;
    /// Stage targets, one per part, non-increasing; default all t.
    std::vector<int> chain;
    int max_attempts = default_distinguishing_attempts;
};

/// Selects b_prime inside B and per-part vertex classes with identical traces
/// on b_prime such that every transversal and b_prime shatter one another in
/// the direction given by the form. Requires every pair of B to differ on at
/// least alpha n vertices of every part, n = |V(G)|. Throws StepFailed naming
/// the step that could not be carried out.
SparseningOutput extract_clone_classes(const Graph& g, const PartLabeling& parts, VertexSet b, double alpha, int t,
    std::uint64_t seed, const SparseningOptions& options = {});

/// Re-checks disjointness, non-emptiness and conditions (a) and (b).
bool verify_sparsening(const Graph& g, const PartLabeling& parts, const SparseningOutput& out, std::string* why = nullptr);

} // namespace hgs
