#include "hgs/freeness.hpp"

#include "hgs/clique.hpp"
#include "hgs/enumerate.hpp"
#include "hgs/error.hpp"
#include "hgs/universal.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace hgs {

// ---- BipGraph ----------------------------------------------------------

BipGraph::BipGraph(int m, int n) : BipGraph(m, n, std::vector<bits::Word>(static_cast<std::size_t>(std::max(m, 0)), 0)) {}

BipGraph::BipGraph(int m, int n, std::vector<bits::Word> rows)
    : m_(m)
    , n_(n)
    , rows_(std::move(rows))
{
    if (m < 0 || n < 0 || m > max_bip_side || n > max_bip_side)
        throw InvalidArgument("BipGraph", "part sizes must be in [0, 64]");
    if (rows_.size() != static_cast<std::size_t>(m))
        throw InvalidArgument("BipGraph", "expected " + std::to_string(m) + " rows");
    for (auto r : rows_)
        if (r & ~bits::low_mask(n))
            throw InvalidArgument("BipGraph", "row has a neighbour outside B");
}

BipGraph BipGraph::from_graph(const Graph& g, VertexSet a, VertexSet b)
{
    if (!a.disjoint(b))
        throw InvalidArgument("BipGraph::from_graph", "parts overlap");
    if (!(a | b).subset_of(g.vertices()))
        throw InvalidArgument("BipGraph::from_graph", "part outside V(G)");
    std::vector<bits::Word> rows;
    a.for_each([&](int v) { rows.push_back(bits::compress(g.row(v), b.mask())); });
    return BipGraph(a.size(), b.size(), std::move(rows));
}

BipGraph BipGraph::parse(const std::string& text)
{
    std::istringstream in(text);
    int m = -1, n = -1;
    if (!(in >> m >> n))
        throw InvalidArgument("BipGraph::parse", "missing \"m n\" header");
    BipGraph g(m, n);
    for (int a = 0; a < m; ++a) {
        std::string line;
        if (!(in >> line))
            throw InvalidArgument("BipGraph::parse", "expected " + std::to_string(m) + " rows, got " + std::to_string(a));
        if (static_cast<int>(line.size()) != n)
            throw InvalidArgument("BipGraph::parse", "row " + std::to_string(a) + " has length " + std::to_string(line.size()));
        for (int b = 0; b < n; ++b) {
            const char c = line[static_cast<std::size_t>(b)];
            if (c != '0' && c != '1')
                throw InvalidArgument("BipGraph::parse", std::string("unexpected character '") + c + "'");
            g.set_edge(a, b, c == '1');
        }
    }
    std::string extra;
    if (in >> extra)
        throw InvalidArgument("BipGraph::parse", "trailing data after the last row");
    return g;
}

std::string BipGraph::format() const
{
    std::string out = std::to_string(m_) + " " + std::to_string(n_) + "\n";
    for (int a = 0; a < m_; ++a) {
        for (int b = 0; b < n_; ++b)
            out += adjacent(a, b) ? '1' : '0';
        out += '\n';
    }
    return out;
}

void BipGraph::set_edge(int a, int b, bool present)
{
    if (a < 0 || a >= m_ || b < 0 || b >= n_)
        throw InvalidArgument("BipGraph::set_edge", "endpoint out of range");
    auto& r = rows_[static_cast<std::size_t>(a)];
    if (present)
        r |= bits::Word{1} << b;
    else
        r &= ~(bits::Word{1} << b);
}

int BipGraph::edge_count() const noexcept
{
    int e = 0;
    for (auto r : rows_)
        e += bits::popcount(r);
    return e;
}

BipGraph BipGraph::transpose() const
{
    BipGraph t(n_, m_);
    for (int a = 0; a < m_; ++a)
        bits::for_each_bit(row(a), [&](int b) { t.set_edge(b, a, true); });
    return t;
}

Graph BipGraph::to_graph() const
{
    if (m_ + n_ > max_order)
        throw LimitExceeded("BipGraph::to_graph", "m + n exceeds 64");
    Graph g(m_ + n_);
    for (int a = 0; a < m_; ++a)
        bits::for_each_bit(row(a), [&](int b) { g.add_edge(a, m_ + b); });
    return g;
}

namespace {

std::vector<bits::Word> side_rows(const BipGraph& g, Side side)
{
    return side == Side::a ? g.rows() : g.transpose().rows();
}

} // namespace

SeparationProfile::SeparationProfile(const BipGraph& g, Side side)
{
    const auto rows = side_rows(g, side);
    size_ = static_cast<int>(rows.size());
    delta_.assign(static_cast<std::size_t>(size_ * size_), 0);
    for (int u = 0; u < size_; ++u)
        for (int v = 0; v < size_; ++v)
            delta_[static_cast<std::size_t>(u * size_ + v)] =
                bits::popcount(rows[static_cast<std::size_t>(u)] ^ rows[static_cast<std::size_t>(v)]);
}

int SeparationProfile::min_delta(VertexSet s) const
{
    int best = INT_MAX;
    const auto members = s.vertices();
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            best = std::min(best, delta(members[i], members[j]));
    return best;
}

// ---- U(k) search ------------------------------------------------------------

namespace {

// First k-subset S of s_domain (colex) such that realizers in pool \ S show
// all 2^k traces on S. adj has one row per vertex.
std::optional<UkCopy> uk_search(const bits::Word* adj, int k, bits::Word s_domain, bits::Word pool)
{
    std::optional<UkCopy> hit;
    const std::size_t traces = std::size_t{1} << k;
    int s_members[max_uk_level];
    bits::for_each_k_subset(s_domain, k, [&](bits::Word s) {
        int idx = 0;
        bits::for_each_bit(s, [&](int v) { s_members[idx++] = v; });
        const bits::Word avail = pool & ~s;
        if (static_cast<std::size_t>(bits::popcount(avail)) < traces)
            return false;
        bits::Word a = 0;
        for (std::size_t t = 0; t < traces; ++t) {
            bits::Word cand = avail;
            for (int i = 0; i < k && cand; ++i)
                cand &= ((t >> i) & 1u) ? adj[s_members[i]] : ~adj[s_members[i]];
            if (!cand)
                return false;
            a |= bits::Word{1} << bits::lowest(cand);
        }
        hit = UkCopy{VertexSet(a), VertexSet(s)};
        return true;
    });
    return hit;
}

void check_level(int k, const char* where)
{
    if (k < 1 || k > max_uk_level)
        throw LimitExceeded(where, "k must be in [1, 4]");
}

std::array<bits::Word, max_order> rows_of(const Graph& g)
{
    std::array<bits::Word, max_order> adj{};
    for (int v = 0; v < g.order(); ++v)
        adj[static_cast<std::size_t>(v)] = g.row(v);
    return adj;
}

} // namespace

std::optional<UkCopy> find_uk_copy(const Graph& g, int k)
{
    check_level(k, "find_uk_copy");
    if (g.order() > max_uk_whole_order)
        throw LimitExceeded("find_uk_copy", "whole-graph search is limited to 24 vertices");
    const auto adj = rows_of(g);
    return uk_search(adj.data(), k, g.vertices().mask(), g.vertices().mask());
}

std::optional<UkCopy> find_uk_copy_within(const Graph& g, int k, VertexSet within)
{
    check_level(k, "find_uk_copy_within");
    if (!within.subset_of(g.vertices()))
        throw InvalidArgument("find_uk_copy_within", "set outside V(G)");
    const auto adj = rows_of(g);
    return uk_search(adj.data(), k, within.mask(), within.mask());
}

std::optional<UkCopy> find_uk_copy(const Graph& g, int k, VertexSet a_part, VertexSet b_part)
{
    check_level(k, "find_uk_copy");
    if (!a_part.disjoint(b_part))
        throw InvalidArgument("find_uk_copy", "parts overlap");
    if (!(a_part | b_part).subset_of(g.vertices()))
        throw InvalidArgument("find_uk_copy", "part outside V(G)");
    const auto adj = rows_of(g);
    return uk_search(adj.data(), k, b_part.mask(), a_part.mask());
}

std::optional<UkCopy> find_uk_copy(const BipGraph& g, int k, UkMode mode)
{
    const Graph host = g.to_graph();
    if (mode == UkMode::whole)
        return find_uk_copy(host, k);
    return find_uk_copy(host, k, g.a_side(), g.b_side());
}

namespace {

// Cross-only test directly on rows, for hosts too large for to_graph.
bool rows_shatter_some_k_subset(const std::vector<bits::Word>& rows, int n, int k)
{
    const std::uint32_t full = k >= 5 ? ~0u : (1u << (1u << k)) - 1;
    return bits::for_each_k_subset(bits::low_mask(n), k, [&](bits::Word s) {
        std::uint32_t seen = 0;
        for (auto r : rows) {
            seen |= 1u << bits::compress(r, s);
            if (seen == full)
                return true;
        }
        return false;
    });
}

} // namespace

std::uint64_t count_uk_free_bipartite(int m, int n, int k, UkMode mode, int threads)
{
    check_level(k, "count_uk_free_bipartite");
    if (m < 0 || n < 0)
        throw InvalidArgument("count_uk_free_bipartite", "negative part size");
    if (m * n > max_counted_cells)
        throw LimitExceeded("count_uk_free_bipartite", "m*n = " + std::to_string(m * n) + " exceeds 25");
    const std::uint64_t total = std::uint64_t{1} << (m * n);
    const int needed_a = 1 << k;
    if (mode == UkMode::cross && (m < needed_a || n < k))
        return total;
    if (mode == UkMode::whole && m + n < needed_a + k)
        return total;
    // Whole-graph freeness does not care which part is which; branch on the
    // narrower rows.
    if (mode == UkMode::whole && n > m)
        std::swap(m, n);

    const bits::Word b_mask = bits::low_mask(n) << m;
    const bits::Word row_values = bits::Word{1} << n;
    std::atomic<std::uint64_t> count{0};

    parallel_ranges(row_values, threads, [&](int, std::uint64_t begin, std::uint64_t end) {
        std::array<bits::Word, max_order> adj{};
        std::uint64_t local = 0;

        auto set_row = [&](int a, bits::Word pattern, bool on) {
            const bits::Word cols = pattern << m;
            if (on)
                adj[static_cast<std::size_t>(a)] = cols;
            else
                adj[static_cast<std::size_t>(a)] = 0;
            bits::for_each_bit(cols, [&](int b) {
                if (on)
                    adj[static_cast<std::size_t>(b)] |= bits::Word{1} << a;
                else
                    adj[static_cast<std::size_t>(b)] &= ~(bits::Word{1} << a);
            });
        };
        auto contains = [&](int placed) {
            const bits::Word rows_mask = bits::low_mask(placed);
            if (mode == UkMode::whole) {
                const bits::Word active = rows_mask | b_mask;
                return uk_search(adj.data(), k, active, active).has_value();
            }
            return uk_search(adj.data(), k, b_mask, rows_mask).has_value();
        };
        auto place = [&](auto&& self, int a) -> void {
            if (a == m) {
                ++local;
                return;
            }
            for (bits::Word p = 0; p < row_values; ++p) {
                set_row(a, p, true);
                if (!contains(a + 1))
                    self(self, a + 1);
                set_row(a, p, false);
            }
        };
        if (m == 0) {
            if (begin == 0)
                local = 1;
        } else {
            for (std::uint64_t p = begin; p < end; ++p) {
                set_row(0, p, true);
                if (!contains(1))
                    place(place, 1);
                set_row(0, p, false);
            }
        }
        count += local;
    });
    return count.load();
}

std::vector<BlockTraceCount> trace_count_check(const BipGraph& g, const std::vector<VertexSet>& blocks, int k)
{
    check_level(k, "trace_count_check");
    VertexSet covered;
    for (VertexSet block : blocks) {
        if (!block.subset_of(VertexSet::prefix(g.n())))
            throw InvalidArgument("trace_count_check", "block " + to_string(block) + " not inside B");
        if (!block.disjoint(covered))
            throw InvalidArgument("trace_count_check", "blocks overlap");
        covered |= block;
    }
    if (covered != VertexSet::prefix(g.n()))
        throw InvalidArgument("trace_count_check", "blocks do not cover B");
    if (g.n() >= k && rows_shatter_some_k_subset(g.rows(), g.n(), k))
        throw PreconditionFailed("trace_count_check", "graph contains a cross copy of U(" + std::to_string(k) + ")");

    std::vector<BlockTraceCount> out;
    for (VertexSet block : blocks) {
        std::vector<bits::Word> traces;
        for (auto r : g.rows())
            traces.push_back(r & block.mask());
        std::sort(traces.begin(), traces.end());
        traces.erase(std::unique(traces.begin(), traces.end()), traces.end());
        BlockTraceCount c;
        c.block = block;
        c.traces = traces.size();
        c.sauer_ceiling = sauer_bound(block.size(), k);
        c.loose_ceiling = static_cast<std::uint64_t>(k) * bits::binomial(block.size(), k - 1);
        c.within = c.traces <= c.sauer_ceiling;
        out.push_back(c);
    }
    return out;
}

AttachmentCount count_nonshattering_attachments(int a, int n)
{
    if (a < 0 || a > 3 || n < 0 || n > 6)
        throw LimitExceeded("count_nonshattering_attachments", "requires a <= 3 and n <= 6");
    const unsigned traces = 1u << a;
    const unsigned full = traces == 32 ? ~0u : (1u << traces) - 1;
    AttachmentCount out;
    // A graph is the list of traces of the n vertices of B on A.
    std::vector<unsigned> digits(static_cast<std::size_t>(n), 0);
    for (;;) {
        unsigned seen = 0;
        for (unsigned d : digits)
            seen |= 1u << d;
        if (seen != full)
            ++out.exact;
        int pos = 0;
        while (pos < n && ++digits[static_cast<std::size_t>(pos)] == traces)
            digits[static_cast<std::size_t>(pos++)] = 0;
        if (pos == n)
            break;
    }
    std::uint64_t printed = 1;
    for (int i = 0; i < n; ++i)
        printed *= traces - 1;
    out.printed_bound = printed;
    out.corrected_bound = printed * traces;
    return out;
}

SparseCount count_sparse_bipartite(int n, double delta)
{
    if (n < 0 || n > 5)
        throw LimitExceeded("count_sparse_bipartite", "requires n <= 5");
    if (!(delta >= 0))
        throw InvalidArgument("count_sparse_bipartite", "delta must be non-negative");
    const int cells = n * n;
    const double limit = delta * delta * cells;
    SparseCount out;
    out.edge_limit = static_cast<std::uint64_t>(std::min<double>(cells, std::floor(limit + 1e-9)));
    for (std::uint64_t j = 0; j <= out.edge_limit; ++j)
        out.exact += bits::binomial(cells, static_cast<int>(j));
    out.log2_bound = delta * cells;
    return out;
}

SeparatedSubset max_separated_subset(const BipGraph& g, Side side, int x)
{
    const auto rows = side_rows(g, side);
    const int size = static_cast<int>(rows.size());
    std::vector<bits::Word> far(static_cast<std::size_t>(size), 0);
    for (int u = 0; u < size; ++u)
        for (int v = 0; v < size; ++v)
            if (u != v && bits::popcount(rows[static_cast<std::size_t>(u)] ^ rows[static_cast<std::size_t>(v)]) >= x)
                far[static_cast<std::size_t>(u)] |= bits::Word{1} << v;
    const bits::Word all = bits::low_mask(size);
    if (size <= max_exact_separated)
        return {VertexSet(max_clique(far, all)), true};
    return {VertexSet(greedy_clique(far, all)), false};
}

double separated_subset_bound(int m, int n, int x, int k)
{
    if (x < 1 || k < 1 || m < 1)
        throw InvalidArgument("separated_subset_bound", "requires m, x, k >= 1");
    const double ratio = static_cast<double>(n) / x;
    return std::pow(ratio, k - 1) * std::pow(3.0, k) * std::pow(std::log(static_cast<double>(m)), k - 1);
}

// ---- distinguishing sets -------------------------------------------------

int distinguishing_sample_size(int c, int n, double alpha)
{
    const double pn = 5.0 * std::log(static_cast<double>(c)) / alpha;
    const double size = std::ceil(pn - 1e-9);
    return static_cast<int>(std::min<double>(n, std::max(0.0, size)));
}

namespace {

bool traces_distinct(const BipGraph& g, const std::vector<int>& members, bits::Word x)
{
    std::vector<bits::Word> traces;
    traces.reserve(members.size());
    for (int u : members)
        traces.push_back(g.row(u) & x);
    std::sort(traces.begin(), traces.end());
    return std::adjacent_find(traces.begin(), traces.end()) == traces.end();
}

int min_threshold(double value)
{
    return static_cast<int>(std::ceil(value - 1e-9));
}

} // namespace

DistinguishingSet distinguishing_set(const BipGraph& g, VertexSet u_sub, double alpha, std::uint64_t seed, int max_attempts)
{
    const char* where = "distinguishing_set";
    if (!u_sub.subset_of(VertexSet::prefix(g.m())))
        throw InvalidArgument(where, "U_sub is not inside A");
    const int c = u_sub.size();
    if (c < 2)
        throw InvalidArgument(where, "U_sub needs at least two vertices");
    const int n = g.n();
    if (!(alpha > 0) || alpha * n < 1)
        throw InvalidArgument(where, "alpha * n < 1, the separation is vacuous");
    const int need = min_threshold(alpha * n);
    const std::vector<int> members = u_sub.vertices();
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            const int d = bits::popcount(g.row(members[i]) ^ g.row(members[j]));
            if (d < need)
                throw PreconditionFailed(where, "rows " + std::to_string(members[i]) + " and " + std::to_string(members[j]) +
                        " differ on " + std::to_string(d) + " < alpha*n vertices");
        }

    DistinguishingSet out;
    out.sample_size = distinguishing_sample_size(c, n, alpha);
    std::mt19937_64 rng(seed);
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        // partial Fisher-Yates: the first sample_size entries are the sample
        bits::Word x = 0;
        for (int i = 0; i < out.sample_size; ++i) {
            std::uniform_int_distribution<int> pick(i, n - 1);
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
            x |= bits::Word{1} << pool[static_cast<std::size_t>(i)];
        }
        if (traces_distinct(g, members, x)) {
            out.x = VertexSet(x);
            out.attempts = attempt;
            return out;
        }
        if (out.sample_size == n)
            break;
    }
    throw StepFailed(where, "no distinguishing sample of size " + std::to_string(out.sample_size) + " in " +
            std::to_string(max_attempts) + " attempts (c = " + std::to_string(c) + ", n = " + std::to_string(n) + ")");
}

// ---- sparsening -----------------------------------------------------------------

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a * 0x10001ULL + b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

bits::Word trace_key(const Graph& g, int v, VertexSet core)
{
    return bits::compress(g.row(v), core.mask());
}

// Vertices of v grouped by their trace on u (2^|u| groups).
std::vector<VertexSet> trace_groups(const Graph& g, VertexSet v, VertexSet u)
{
    std::vector<VertexSet> groups(std::size_t{1} << u.size());
    v.for_each([&](int x) { groups[static_cast<std::size_t>(trace_key(g, x, u))] |= VertexSet::of({x}); });
    return groups;
}

int min_pair_delta(const Graph& g, VertexSet u, VertexSet over)
{
    int best = INT_MAX;
    const auto members = u.vertices();
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            best = std::min(best, bits::popcount((g.row(members[i]) ^ g.row(members[j])) & over.mask()));
    return best;
}

struct StageResult {
    VertexSet kept;
    std::vector<VertexSet> classes; // indexed by trace on kept
};

std::string stage_where(int part)
{
    return "extract_clone_classes/part " + std::to_string(part);
}

// One application of the sparsening step to (U, V): keeps s vertices of U
// and collects, for each trace on them, the vertices of the removed sets X_i.
StageResult sparsen_stage(const Graph& g, VertexSet u, VertexSet v, int s, int budget, std::uint64_t seed,
    int max_attempts, SparseningStep& step)
{
    const std::string where = stage_where(step.part);
    const int cube = 1 << s;
    struct Record {
        VertexSet kept;
        VertexSet removed;
    };
    std::vector<Record> records;
    VertexSet remaining = v;
    while (step.removed + cube <= budget) {
        const int separation = min_pair_delta(g, u, remaining);
        if (separation < 1 || remaining.size() == 0)
            break;
        const BipGraph bip = BipGraph::from_graph(g, u, remaining);
        const double local_alpha = static_cast<double>(separation) / remaining.size();
        DistinguishingSet ds;
        try {
            ds = distinguishing_set(bip, VertexSet::prefix(u.size()), local_alpha,
                mix_seed(seed, static_cast<std::uint64_t>(step.part), static_cast<std::uint64_t>(step.iterations)),
                max_attempts);
        } catch (const Error& e) {
            if (records.empty())
                throw StepFailed(where, std::string("distinguishing set: ") + e.what());
            break;
        }
        step.distinguishing_attempts += ds.attempts;
        const VertexSet x(bits::expand(ds.x.mask(), remaining.mask()));
        if (x.size() > max_trace_ground)
            throw LimitExceeded(where, "distinguishing set larger than 30 vertices");
        std::vector<bits::Word> traces;
        u.for_each([&](int w) { traces.push_back(g.row(w) & x.mask()); });
        const TraceFamily family(x, traces);
        if (family.size() <= sauer_bound(x.size(), cube))
            step.size_bound_met = false;
        const auto shattered = find_shattered_subset(family, cube);
        if (!shattered) {
            if (records.empty())
                throw StepFailed(where, "shattered-subset search: no " + std::to_string(cube) +
                        "-subset of the distinguishing set is shattered by " + std::to_string(u.size()) + " vertices");
            break;
        }
        ReverseShatter rs;
        try {
            rs = reverse_shatter(g, u, *shattered, s);
        } catch (const Error& e) {
            throw StepFailed(where, std::string("reverse shattering: ") + e.what());
        }
        records.push_back({rs.a_prime, rs.b_prime});
        remaining -= rs.b_prime;
        step.removed += cube;
        ++step.iterations;
    }
    if (records.empty())
        throw StepFailed(where, "removal budget " + std::to_string(budget) + " is smaller than one set of " +
                std::to_string(cube) + " vertices");

    // pigeonhole: the most frequent kept set, smallest mask on ties
    std::map<bits::Word, int> frequency;
    for (const auto& rec : records)
        ++frequency[rec.kept.mask()];
    bits::Word best = 0;
    int best_count = 0;
    for (const auto& [mask, count] : frequency)
        if (count > best_count) {
            best = mask;
            best_count = count;
        }
    StageResult out;
    out.kept = VertexSet(best);
    out.classes.assign(std::size_t{1} << s, VertexSet());
    for (const auto& rec : records) {
        if (!shatters(g, rec.removed, out.kept))
            continue;
        rec.removed.for_each([&](int w) {
            out.classes[static_cast<std::size_t>(trace_key(g, w, out.kept))] |= VertexSet::of({w});
        });
    }
    return out;
}

bool fail(std::string* why, std::string message)
{
    if (why)
        *why = std::move(message);
    return false;
}

} // namespace

SparseningOutput extract_clone_classes(const Graph& g, const PartLabeling& parts, VertexSet b, double alpha, int t,
    std::uint64_t seed, const SparseningOptions& options)
{
    const char* where = "extract_clone_classes";
    const int n = g.order();
    const int r = parts.part_count();
    if (parts.order() != n)
        throw InvalidArgument(where, "partition does not cover V(G)");
    if (b.empty() || !b.subset_of(g.vertices()))
        throw InvalidArgument(where, "B must be a non-empty subset of V(G)");
    if (!(alpha > 0 && alpha <= 1))
        throw InvalidArgument(where, "alpha must be in (0, 1]");
    if (t < 0)
        throw InvalidArgument(where, "t must be non-negative");

    SparseningOutput out;
    out.form = options.form;
    out.alpha = alpha;
    out.t = t;

    const std::vector<VertexSet> part_sets = parts.parts();
    const int need = min_threshold(alpha * n);
    for (int j = 0; j < r; ++j) {
        const int d = min_pair_delta(g, b, part_sets[static_cast<std::size_t>(j)]);
        if (d < need)
            throw PreconditionFailed(where, "two vertices of B differ on only " + std::to_string(d) + " vertices of part " +
                    std::to_string(j) + ", need alpha*n = " + std::to_string(need));
    }

    if (t == 0) {
        // Nothing to shatter: B' = B and every part is a single class.
        out.b_prime = b;
        for (VertexSet p : part_sets)
            out.classes.push_back({p - b});
        out.chain.assign(static_cast<std::size_t>(r), 0);
        out.asymptotic_size_met = true;
        out.declared_threshold = 1;
    } else {
        const int stage_target = options.form == SparseningForm::classes ? t : (1 << std::min(r * t, 6));
        if (options.form == SparseningForm::flipped && r * t > 5)
            throw LimitExceeded(where, "flipped form needs r*t <= 5");
        out.chain = options.chain.empty() ? std::vector<int>(static_cast<std::size_t>(r), stage_target) : options.chain;
        if (static_cast<int>(out.chain.size()) != r)
            throw InvalidArgument(where, "chain must have one entry per part");
        for (std::size_t q = 0; q < out.chain.size(); ++q)
            if (out.chain[q] < 1 || out.chain[q] > 5 || (q > 0 && out.chain[q] > out.chain[q - 1]))
                throw InvalidArgument(where, "chain entries must be non-increasing and in [1, 5]");
        if (out.chain.back() != stage_target)
            throw InvalidArgument(where, "the last chain entry must be " + std::to_string(stage_target));

        const int first = out.chain.front();
        out.declared_threshold = b.size() == first ? static_cast<std::uint64_t>(first)
                                                   : (first >= 6 ? UINT64_MAX : std::uint64_t{1} << (1 << first));
        if (b.size() != first && static_cast<std::uint64_t>(b.size()) < out.declared_threshold)
            throw PreconditionFailed(where, "|B| = " + std::to_string(b.size()) + " is below the declared threshold " +
                    std::to_string(out.declared_threshold) + " for a first stage of size " + std::to_string(first));
        const double c = b.size();
        out.asymptotic_size_met = c >= std::pow(5.0 * std::log(c) / alpha, std::pow(2.0, t));

        const int budget = static_cast<int>(std::floor(alpha * n / 2 + 1e-9));
        VertexSet current = b;
        std::vector<StageResult> stages;
        for (int q = 0; q < r; ++q) {
            SparseningStep step;
            step.part = q;
            step.target = out.chain[static_cast<std::size_t>(q)];
            step.source = current.size();
            const VertexSet v = part_sets[static_cast<std::size_t>(q)] - b;
            StageResult stage;
            if (step.source < step.target)
                throw StepFailed(stage_where(q), "only " + std::to_string(step.source) + " vertices left, need " +
                        std::to_string(step.target));
            if (step.source == step.target) {
                step.degenerate = true;
                stage.kept = current;
                stage.classes = trace_groups(g, v, current);
            } else {
                stage = sparsen_stage(g, current, v, step.target, budget, seed, options.max_attempts, step);
            }
            out.steps.push_back(step);
            stages.push_back(std::move(stage));
            current = stages.back().kept;
        }
        const VertexSet core = current;

        // Re-index every part's classes by their trace on the final set.
        std::vector<std::vector<VertexSet>> by_core(static_cast<std::size_t>(r));
        for (int q = 0; q < r; ++q) {
            auto& dest = by_core[static_cast<std::size_t>(q)];
            dest.assign(std::size_t{1} << core.size(), VertexSet());
            const auto& stage = stages[static_cast<std::size_t>(q)];
            for (const VertexSet cls : stage.classes)
                cls.for_each([&](int w) { dest[static_cast<std::size_t>(trace_key(g, w, core))] |= VertexSet::of({w}); });
        }
        for (int q = 0; q < r; ++q)
            for (std::size_t k = 0; k < by_core[static_cast<std::size_t>(q)].size(); ++k)
                if (by_core[static_cast<std::size_t>(q)][k].empty())
                    throw StepFailed(stage_where(q), "trace classes: no vertex has trace " +
                            to_string(VertexSet(bits::expand(k, core.mask()))) + " on " + to_string(core));

        if (options.form == SparseningForm::classes) {
            out.b_prime = core;
            out.classes = std::move(by_core);
        } else {
            // One representative per class shatters the core; flip the direction.
            std::vector<VertexSet> reps;
            for (const auto& part_classes : by_core) {
                VertexSet rep;
                for (VertexSet cls : part_classes)
                    rep |= VertexSet::of({cls.front()});
                reps.push_back(rep);
            }
            AlignedReverseShatter flipped;
            try {
                flipped = aligned_reverse_shatter(g, reps, core, t);
            } catch (const Error& e) {
                throw StepFailed(where, std::string("alignment: ") + e.what());
            }
            out.b_prime = flipped.b_prime;
            for (int q = 0; q < r; ++q) {
                std::vector<VertexSet> chosen;
                flipped.a_prime[static_cast<std::size_t>(q)].for_each([&](int w) {
                    chosen.push_back(by_core[static_cast<std::size_t>(q)][static_cast<std::size_t>(trace_key(g, w, core))]);
                });
                out.classes.push_back(std::move(chosen));
            }
        }
    }

    std::size_t smallest = static_cast<std::size_t>(n);
    for (const auto& part_classes : out.classes)
        for (VertexSet cls : part_classes)
            smallest = std::min(smallest, static_cast<std::size_t>(cls.size()));
    out.delta = n > 0 ? static_cast<double>(smallest) / n : 0;

    std::string why;
    if (!verify_sparsening(g, parts, out, &why))
        throw StepFailed(where, "verification: " + why);
    out.condition_a = true;
    out.condition_b = true;
    return out;
}

bool verify_sparsening(const Graph& g, const PartLabeling& parts, const SparseningOutput& out, std::string* why)
{
    const int r = parts.part_count();
    if (static_cast<int>(out.classes.size()) != r)
        return fail(why, "expected classes for every part");
    VertexSet used;
    for (int q = 0; q < r; ++q)
        for (VertexSet cls : out.classes[static_cast<std::size_t>(q)]) {
            if (cls.empty())
                return fail(why, "empty class in part " + std::to_string(q));
            if (!cls.subset_of(parts.part(q)))
                return fail(why, "class " + to_string(cls) + " leaves part " + std::to_string(q));
            if (!cls.disjoint(used))
                return fail(why, "classes overlap");
            if (!cls.disjoint(out.b_prime))
                return fail(why, "class meets B'");
            used |= cls;
        }
    if (out.t == 0) {
        for (const auto& part_classes : out.classes)
            if (part_classes.size() != 1)
                return fail(why, "t = 0 expects one class per part");
        return true;
    }

    const VertexSet core = out.b_prime;
    // (a) identical traces on B' inside every class
    for (const auto& part_classes : out.classes)
        for (VertexSet cls : part_classes) {
            const bits::Word key = trace_key(g, cls.front(), core);
            bool same = true;
            cls.for_each([&](int w) { same = same && trace_key(g, w, core) == key; });
            if (!same)
                return fail(why, "condition (a): class " + to_string(cls) + " has mixed traces on B'");
        }

    if (out.form == SparseningForm::classes) {
        const std::size_t keys = std::size_t{1} << out.t;
        if (core.size() != out.t)
            return fail(why, "|B'| must equal t");
        for (const auto& part_classes : out.classes) {
            if (part_classes.size() != keys)
                return fail(why, "expected 2^t classes per part");
            for (std::size_t k = 0; k < keys; ++k)
                if (trace_key(g, part_classes[k].front(), core) != k)
                    return fail(why, "condition (b): class " + std::to_string(k) + " has the wrong trace");
        }
        return true;
    }

    if (core.size() != (1 << (r * out.t)))
        return fail(why, "|B'| must equal 2^(r t)");
    VertexSet w;
    for (const auto& part_classes : out.classes) {
        if (static_cast<int>(part_classes.size()) != out.t)
            return fail(why, "expected t classes per part");
        for (VertexSet cls : part_classes)
            w |= VertexSet::of({cls.front()});
    }
    if (!shatters(g, core, w))
        return fail(why, "condition (b): B' does not shatter a transversal");
    return true;
}

} // namespace hgs
