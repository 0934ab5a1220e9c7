#pragma once

#include "hgs/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hgs {

struct CloneParams {
    double alpha = 0.25;  // separation threshold, in (0, 1)
    int k = 1;            // universal level
    int r = 1;            // part count
    double eps_out = 0.5; // exceptional-set budget |A| <= n^(1 - eps_out)
};

/// floor(alpha n): u is an alpha-clone of v when their traces differ in at
/// most this many vertices.
int clone_threshold(int n, double alpha);
/// ceil(alpha n): a bad pair differs in at least this many vertices in every part.
int bad_threshold(int n, double alpha);

/// |(N(u) & A) xor (N(v) & A)|.
int trace_distance(const Graph& g, int u, int v, VertexSet a);

bool is_alpha_clone(const Graph& g, int u, int v, VertexSet a, double alpha);

enum class BadSetMode { exact, greedy };

struct BadSet {
    VertexSet set;
    bool maximum = false; // false: maximal only, a lower bound on B(G,P,alpha)
};

inline constexpr int max_exact_bad_set_order = 24;

/// Largest (exact) or a maximal (greedy) set whose pairs all differ by at
/// least ceil(alpha n) inside every part. Exact mode needs n <= 24.
BadSet max_bad_set(const Graph& g, const PartLabeling& parts, double alpha, BadSetMode mode);

bool is_bad_set(const Graph& g, const PartLabeling& parts, VertexSet b, double alpha);

/// j(v): the smallest part index j such that v is an alpha-clone of some
/// b in B with respect to S_j. Throws PreconditionFailed if there is none,
/// which means B is not a maximal bad set.
int clone_index(const Graph& g, const PartLabeling& parts, VertexSet b, double alpha, int v);

struct Adjustment {
    PartLabeling labeling;        // S'_j = {v : j(v) = j}, j computed at 2 alpha
    std::vector<int> moved;       // vertices with j(v) different from their part
    std::vector<int> symmetric_difference; // |S_j xor S'_j| per part
    bool within_budget = false;   // every |S_j xor S'_j| <= floor(alpha n)
    bool clones_ok = false;       // every v in S'_j is a 3 alpha-clone of some b wrt S'_j
    std::string diagnosis;        // empty when the labeling is an alpha-adjustment

    bool valid() const { return within_budget && clones_ok; }
};

/// B should be a maximal (2 alpha)-bad set. A labeling is always returned;
/// when it fails the adjustment conditions the diagnosis says which.
Adjustment alpha_adjust(const Graph& g, const PartLabeling& parts, VertexSet b, double alpha);

struct PackingPiece {
    VertexSet vertices;
    int level = 0;                 // t: the piece is a copy of U(t,k)
    std::vector<VertexSet> layers; // A_1..A_t, each layer shattering the union of earlier ones
    std::vector<int> placement;    // i(j): part containing layer j
};

struct PackingReport {
    int k = 0;
    std::vector<PackingPiece> pieces;    // in the order found, levels non-increasing
    VertexSet excluded;                  // vertices no piece may use (X at the start)
    std::vector<VertexSet> residual;     // S_j minus every piece and the excluded set
    std::vector<int> skipped_levels;     // U(t,k) larger than the graph or than 64 vertices
    std::string search_order = "canonical: placements, then layers, in increasing vertex order";

    VertexSet covered() const;
};

inline constexpr int max_packing_order = 40;

/// Greedy packing of vertex-disjoint layered universal graphs U(t,k) for t
/// from r+1 down to 2. Layers 1 and 2 lie in one part, layers 2..t in
/// distinct parts. Within-layer edges are unconstrained. The search starts
/// from X = excluded (empty gives the plain algorithm). n <= 40.
PackingReport extract_universal_packing(const Graph& g, const PartLabeling& parts, int k,
    VertexSet excluded = {});

/// Disjointness, layer sizes, the shattering chain and the placement rules.
bool check_packing_structure(const Graph& g, const PartLabeling& parts, const PackingReport& report,
    std::string* why = nullptr);

/// For each piece U_l and each part S_j missing U_l, S_j minus the excluded
/// set and pieces 1..l does not shatter U_l; and no placeable copy of any
/// level is left outside the excluded set and the pieces.
bool verify_packing_maximality(const Graph& g, const PartLabeling& parts, const PackingReport& report,
    std::string* why = nullptr);

struct DecompositionProvenance {
    std::string parts_source; // "hint" or "toy partitioner"
    PartLabeling initial_parts;
    BadSet bad_set;           // computed at 2 alpha
    Adjustment adjustment;
    PackingReport packing;
};

struct DecompositionCertificate {
    int k = 0;
    int r = 0;
    double alpha = 0;
    VertexSet a;                 // exceptional set B plus every packed piece
    std::vector<VertexSet> parts; // S'_j minus A
    DecompositionProvenance provenance;
    double eps_out = 0;
    double budget = 0;           // n^(1 - eps_out)
    bool budget_met = false;     // reported, never required
};

struct DecomposeOptions {
    std::optional<PartLabeling> parts_hint;
    double eps_out = 0.5;
};

/// Bad set, adjustment, packing (started with X = B, so pieces avoid the
/// bad set), then A = B + pieces and S_j = S'_j - A.
/// The certificate is verified (partition, every part U(k)-free) before it
/// is returned.
DecompositionCertificate decompose(const Graph& g, int r, int k, double alpha, const DecomposeOptions& options = {});

/// Re-checks the partition and U(k)-freeness of every part; with budget_eps
/// also requires |A| <= n^(1 - budget_eps).
bool verify_decomposition(const Graph& g, const DecompositionCertificate& cert, std::optional<double> budget_eps,
    std::string* why = nullptr);

} // namespace hgs
