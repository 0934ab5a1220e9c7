#include "hgs/regularity.hpp"

#include "hgs/error.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>

namespace hgs {

namespace {

using i128 = __int128;

std::int64_t checked_pow10(int digits, const std::string& text)
{
    std::int64_t p = 1;
    for (int i = 0; i < digits; ++i) {
        if (p > std::numeric_limits<std::int64_t>::max() / 10)
            throw InvalidArgument("parse_rational", "too many digits in '" + text + "'");
        p *= 10;
    }
    return p;
}

std::int64_t parse_int(const std::string& s, const std::string& text)
{
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw InvalidArgument("parse_rational", "not a number: '" + text + "'");
    if (s.size() > 18)
        throw InvalidArgument("parse_rational", "too many digits in '" + text + "'");
    return std::stoll(s);
}

void check_pair(const char* where, const Graph& g, VertexSet a, VertexSet b)
{
    if (a.empty() || b.empty())
        throw InvalidArgument(where, "empty side");
    if (!a.disjoint(b))
        throw InvalidArgument(where, "sides overlap");
    if (!(a | b).subset_of(g.vertices()))
        throw InvalidArgument(where, "vertex outside the graph");
}

void check_cap(const char* where, VertexSet a, VertexSet b)
{
    if (a.size() > max_regularity_side || b.size() > max_regularity_side)
        throw LimitExceeded(where, "sides are limited to " + std::to_string(max_regularity_side) + " vertices");
}

std::int64_t cross_edges(const Graph& g, VertexSet a, VertexSet b)
{
    std::int64_t e = 0;
    a.for_each([&](int v) { e += (g.neighbours(v) & b).size(); });
    return e;
}

bool regular_unchecked(const Graph& g, VertexSet a, VertexSet b, Rational eps)
{
    const std::vector<int> av = a.vertices();
    const std::vector<int> bv = b.vertices();
    const int sa = static_cast<int>(av.size());
    const int sb = static_cast<int>(bv.size());
    const i128 p = eps.numerator();
    const i128 q = eps.denominator();
    const i128 total = cross_edges(g, a, b);
    const i128 ab = static_cast<i128>(sa) * sb;

    int min_y = sb + 1;
    for (int s = 1; s <= sb; ++s)
        if (static_cast<i128>(s) * q >= p * sb) {
            min_y = s;
            break;
        }
    if (min_y > sb)
        return true;

    std::vector<int> c(static_cast<std::size_t>(sb));
    std::vector<i128> prefix(static_cast<std::size_t>(sb) + 1);
    for (std::uint32_t sub = 1; sub < (1u << sa); ++sub) {
        const int x = std::popcount(sub);
        if (static_cast<i128>(x) * q < p * sa)
            continue;
        bits::Word xmask = 0;
        for (int i = 0; i < sa; ++i)
            if (sub >> i & 1)
                xmask |= bits::Word{1} << av[static_cast<std::size_t>(i)];
        for (int i = 0; i < sb; ++i)
            c[static_cast<std::size_t>(i)] = bits::popcount(g.row(bv[static_cast<std::size_t>(i)]) & xmask);
        std::sort(c.begin(), c.end());
        prefix[0] = 0;
        for (int i = 0; i < sb; ++i)
            prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + c[static_cast<std::size_t>(i)];
        // For |Y| = s the achievable e(X,Y) lie between the s smallest and
        // the s largest column counts, so the extremes decide.
        for (int s = min_y; s <= sb; ++s) {
            const i128 lo = prefix[static_cast<std::size_t>(s)];
            const i128 hi = prefix[static_cast<std::size_t>(sb)] - prefix[static_cast<std::size_t>(sb - s)];
            const i128 xs = static_cast<i128>(x) * s;
            for (const i128 e : {lo, hi}) {
                i128 diff = e * ab - total * xs;
                if (diff < 0)
                    diff = -diff;
                if (diff * q >= p * xs * ab)
                    return false;
            }
        }
    }
    return true;
}

int part_cost(const Graph& g, bits::Word part)
{
    int e = 0;
    bits::for_each_bit(part, [&](int v) { e += bits::popcount(g.row(v) & part); });
    e /= 2;
    const int s = bits::popcount(part);
    return std::min(e, s * (s - 1) / 2 - e);
}

int partition_cost(const Graph& g, const std::vector<bits::Word>& parts)
{
    int c = 0;
    for (bits::Word p : parts)
        c += part_cost(g, p);
    return c;
}

struct ExhaustivePartition {
    const Graph& g;
    int r;
    int small; // floor(n / r)
    std::vector<bits::Word> current;
    std::vector<bits::Word> best;
    int best_cost = std::numeric_limits<int>::max();

    void run(int v)
    {
        const int n = g.order();
        if (v == n) {
            for (bits::Word p : current)
                if (bits::popcount(p) < small)
                    return;
            const int c = partition_cost(g, current);
            if (c < best_cost) {
                best_cost = c;
                best = current;
            }
            return;
        }
        for (int j = 0; j < r; ++j) {
            const bool empty = current[static_cast<std::size_t>(j)] == 0;
            if (bits::popcount(current[static_cast<std::size_t>(j)]) < small + ((n % r) ? 1 : 0)) {
                current[static_cast<std::size_t>(j)] |= bits::Word{1} << v;
                run(v + 1);
                current[static_cast<std::size_t>(j)] &= ~(bits::Word{1} << v);
            }
            if (empty)
                break; // parts are unlabeled: open at most one new part
        }
    }
};

std::vector<bits::Word> local_search_partition(const Graph& g, int r)
{
    const int n = g.order();
    std::vector<bits::Word> parts(static_cast<std::size_t>(r), 0);
    std::vector<int> label(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        label[static_cast<std::size_t>(v)] = v % r;
        parts[static_cast<std::size_t>(v % r)] |= bits::Word{1} << v;
    }
    for (bool improved = true; improved;) {
        improved = false;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                const int ju = label[static_cast<std::size_t>(u)];
                const int jv = label[static_cast<std::size_t>(v)];
                if (ju == jv)
                    continue;
                const bits::Word bu = bits::Word{1} << u;
                const bits::Word bv = bits::Word{1} << v;
                auto& pu = parts[static_cast<std::size_t>(ju)];
                auto& pv = parts[static_cast<std::size_t>(jv)];
                const int before = part_cost(g, pu) + part_cost(g, pv);
                const bits::Word nu = (pu & ~bu) | bv;
                const bits::Word nv = (pv & ~bv) | bu;
                const int after = part_cost(g, nu) + part_cost(g, nv);
                if (after < before) {
                    pu = nu;
                    pv = nv;
                    label[static_cast<std::size_t>(u)] = jv;
                    label[static_cast<std::size_t>(v)] = ju;
                    improved = true;
                }
            }
    }
    return parts;
}

} // namespace

Rational parse_rational(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.empty())
        throw InvalidArgument("parse_rational", "empty value");
    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const std::int64_t num = parse_int(s.substr(0, slash), text);
        const std::int64_t den = parse_int(s.substr(slash + 1), text);
        if (den == 0)
            throw InvalidArgument("parse_rational", "zero denominator in '" + text + "'");
        return Rational(num, den);
    }
    if (const auto dot = s.find('.'); dot != std::string::npos) {
        const std::string whole = s.substr(0, dot);
        const std::string frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty())
            throw InvalidArgument("parse_rational", "not a number: '" + text + "'");
        const std::int64_t w = whole.empty() ? 0 : parse_int(whole, text);
        const std::int64_t f = frac.empty() ? 0 : parse_int(frac, text);
        const std::int64_t scale = checked_pow10(static_cast<int>(frac.size()), text);
        if (w > (std::numeric_limits<std::int64_t>::max() - f) / scale)
            throw InvalidArgument("parse_rational", "value out of range: '" + text + "'");
        return Rational(w * scale + f, scale);
    }
    return Rational(parse_int(s, text));
}

std::string to_string(Rational q)
{
    if (q.denominator() == 1)
        return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

double to_double(Rational q)
{
    return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

Rational pair_density(const Graph& g, VertexSet a, VertexSet b)
{
    check_pair("pair_density", g, a, b);
    return Rational(cross_edges(g, a, b), static_cast<std::int64_t>(a.size()) * b.size());
}

bool is_epsilon_regular(const Graph& g, VertexSet a, VertexSet b, Rational eps)
{
    check_pair("is_epsilon_regular", g, a, b);
    check_cap("is_epsilon_regular", a, b);
    if (eps <= 0)
        throw InvalidArgument("is_epsilon_regular", "eps must be positive");
    return regular_unchecked(g, a, b, eps);
}

bool is_grey(const Graph& g, VertexSet a, VertexSet b, Rational eps, Rational delta)
{
    check_pair("is_grey", g, a, b);
    check_cap("is_grey", a, b);
    if (eps <= 0)
        throw InvalidArgument("is_grey", "eps must be positive");
    const Rational d = pair_density(g, a, b);
    if (d < delta || d > 1 - delta)
        return false;
    return regular_unchecked(g, a, b, eps);
}

PairStats pair_stats(const Graph& g, VertexSet a, VertexSet b, int grid)
{
    if (grid < 1)
        throw InvalidArgument("pair_stats", "grid must be positive");
    PairStats st{pair_density(g, a, b), std::nullopt};
    if (a.size() > max_regularity_side || b.size() > max_regularity_side)
        return st;
    // Regularity is monotone in eps, and every pair is 1-regular.
    for (int k = 1; k <= grid; ++k) {
        const Rational eps(k, grid);
        if (regular_unchecked(g, a, b, eps)) {
            st.regular_eps = eps;
            break;
        }
    }
    return st;
}

bool BBSReport::grey_ok() const
{
    return std::all_of(grey.begin(), grey.end(), [](const PartGreyCount& c) { return c.within(); });
}

BBSReport verify_bbs_partition(const Graph& g, const BBSPartition& bbs)
{
    const char* where = "verify_bbs_partition";
    const int n = g.order();
    if (bbs.parts.order() != n)
        throw InvalidArgument(where, "part labeling does not match the graph order");
    if (bbs.eps <= 0 || bbs.delta < 0 || bbs.gamma < 0)
        throw InvalidArgument(where, "eps must be positive, delta and gamma nonnegative");
    for (VertexSet blk : bbs.blocks)
        if (blk.size() > max_regularity_side)
            throw LimitExceeded(where, "blocks are limited to " + std::to_string(max_regularity_side) + " vertices");

    BBSReport rep;
    const int m = static_cast<int>(bbs.blocks.size());
    const int r = bbs.parts.part_count();

    VertexSet seen;
    bool cover_ok = true;
    for (int i = 0; i < m; ++i) {
        const VertexSet blk = bbs.blocks[static_cast<std::size_t>(i)];
        if (blk.empty() || !blk.subset_of(g.vertices()) || !blk.disjoint(seen))
            cover_ok = false;
        seen |= blk;
    }
    if (!cover_ok || seen != g.vertices())
        rep.structural_issues.push_back("blocks do not partition the vertex set");

    std::vector<int> per_part(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < m; ++i) {
        const VertexSet blk = bbs.blocks[static_cast<std::size_t>(i)];
        int home = -1;
        for (int j = 0; j < r && !blk.empty(); ++j)
            if (blk.subset_of(bbs.parts.part(j)))
                home = j;
        rep.part_of_block.push_back(home);
        if (home < 0)
            rep.structural_issues.push_back("block " + std::to_string(i) + " straddles a part boundary");
        else
            ++per_part[static_cast<std::size_t>(home)];
    }
    if (m > 0) {
        const auto [lo, hi] = std::minmax_element(bbs.blocks.begin(), bbs.blocks.end(),
            [](VertexSet x, VertexSet y) { return x.size() < y.size(); });
        if (hi->size() - lo->size() > 1)
            rep.structural_issues.push_back("block sizes differ by more than one");
    }
    if (r > 0) {
        const auto [lo, hi] = std::minmax_element(per_part.begin(), per_part.end());
        if (*hi - *lo > 1)
            rep.structural_issues.push_back("parts contain unequal numbers of blocks");
    }

    const Rational limit = bbs.gamma * Rational(static_cast<std::int64_t>(m) * m);
    for (int j = 0; j < r; ++j)
        rep.grey.push_back({j, {}, limit});
    for (int i = 0; i < m; ++i)
        for (int i2 = i + 1; i2 < m; ++i2) {
            const VertexSet x = bbs.blocks[static_cast<std::size_t>(i)];
            const VertexSet y = bbs.blocks[static_cast<std::size_t>(i2)];
            if (x.empty() || y.empty() || !x.disjoint(y))
                continue;
            const bool regular = regular_unchecked(g, x, y, bbs.eps);
            if (!regular)
                ++rep.irregular_pairs;
            const int home = rep.part_of_block[static_cast<std::size_t>(i)];
            if (home < 0 || home != rep.part_of_block[static_cast<std::size_t>(i2)] || !regular)
                continue;
            const Rational d = Rational(cross_edges(g, x, y), static_cast<std::int64_t>(x.size()) * y.size());
            if (d >= bbs.delta && d <= 1 - bbs.delta)
                rep.grey[static_cast<std::size_t>(home)].grey_pairs.push_back({i, i2});
        }
    rep.irregular_within = Rational(rep.irregular_pairs) <= bbs.eps * Rational(static_cast<std::int64_t>(m) * m);
    rep.block_count_above = Rational(m) * bbs.eps > 1;
    return rep;
}

BBSPartition toy_bbs_partition(const Graph& g, int r, int blocks_per_part,
    Rational eps, Rational delta, Rational gamma)
{
    const char* where = "toy_bbs_partition";
    const int n = g.order();
    if (r < 1 || r > n)
        throw InvalidArgument(where, "need 1 <= r <= n");
    if (blocks_per_part < 1 || blocks_per_part > n / r)
        throw InvalidArgument(where, "each part must hold blocks_per_part nonempty blocks");

    std::vector<bits::Word> parts;
    if (n <= 12) {
        ExhaustivePartition search{g, r, n / r, std::vector<bits::Word>(static_cast<std::size_t>(r), 0), {}};
        search.run(0);
        parts = search.best;
    } else {
        parts = local_search_partition(g, r);
    }

    std::vector<VertexSet> sets;
    for (bits::Word p : parts)
        sets.emplace_back(p);
    BBSPartition out{PartLabeling::from_sets(n, sets), {}, eps, delta, gamma};
    for (VertexSet part : sets) {
        const std::vector<int> vs = part.vertices();
        const int s = static_cast<int>(vs.size());
        int pos = 0;
        for (int i = 0; i < blocks_per_part; ++i) {
            const int len = s / blocks_per_part + (i < s % blocks_per_part ? 1 : 0);
            out.blocks.push_back(VertexSet::of(std::span<const int>(vs.data() + pos, static_cast<std::size_t>(len))));
            pos += len;
        }
    }
    return out;
}

TuranTransversal greedy_turan_transversal(const Graph& g,
    const std::vector<std::vector<VertexSet>>& blocks, Rational eps)
{
    const char* where = "greedy_turan_transversal";
    const int r = static_cast<int>(blocks.size());
    if (r < 1 || blocks[0].empty())
        throw InvalidArgument(where, "need at least one part with at least one block");
    const int t = static_cast<int>(blocks[0].size());
    std::vector<VertexSet> part_sets;
    VertexSet used;
    for (const auto& part : blocks) {
        if (static_cast<int>(part.size()) != t)
            throw InvalidArgument(where, "every part needs the same number of blocks");
        VertexSet ps;
        for (VertexSet blk : part) {
            if (blk.empty() || !blk.subset_of(g.vertices()) || !blk.disjoint(used))
                throw InvalidArgument(where, "blocks must be nonempty, disjoint and inside the graph");
            used |= blk;
            ps |= blk;
        }
        part_sets.push_back(ps);
    }
    const int n = part_sets[0].size();
    for (VertexSet ps : part_sets)
        if (ps.size() != n)
            throw InvalidArgument(where, "parts must have equal sizes");
    if (eps <= 0)
        throw InvalidArgument(where, "eps must be positive");

    TuranTransversal out;
    std::int64_t e = 0;
    for (int j = 0; j < r; ++j)
        for (int j2 = j + 1; j2 < r; ++j2)
            e += cross_edges(g, part_sets[static_cast<std::size_t>(j)], part_sets[static_cast<std::size_t>(j2)]);
    const std::int64_t pairs = static_cast<std::int64_t>(r) * (r - 1) / 2;
    const bool dense = Rational(e) >= (1 - eps) * Rational(pairs * n * n);
    const bool small_eps = eps * Rational(static_cast<std::int64_t>(r) * r * r * t * t * t) < 1;
    out.feasible = dense && small_eps;
    if (!dense)
        out.feasibility_note = "e(F) = " + std::to_string(e) + " is below (1-eps) C(r,2) n^2";
    else if (!small_eps)
        out.feasibility_note = "eps r^3 t^3 >= 1";

    const int rt = r * t;
    std::vector<bits::Word> cand(static_cast<std::size_t>(rt));
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < t; ++i)
            cand[static_cast<std::size_t>(j * t + i)] = blocks[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].mask();
    auto block_size = [&](int idx) {
        return blocks[static_cast<std::size_t>(idx / t)][static_cast<std::size_t>(idx % t)].size();
    };

    std::vector<int> chosen;
    for (int idx = 0; idx < rt; ++idx) {
        const int j = idx / t;
        int strict = -1;
        int fallback = -1;
        int fallback_score = 0;
        bits::for_each_bit(cand[static_cast<std::size_t>(idx)], [&](int v) {
            if (strict >= 0)
                return;
            bool ok = true;
            int worst = std::numeric_limits<int>::max();
            for (int later = idx + 1; later < rt; ++later) {
                if (later / t == j)
                    continue;
                const bits::Word c = cand[static_cast<std::size_t>(later)];
                const int lost = bits::popcount(c & ~g.row(v));
                worst = std::min(worst, bits::popcount(c & g.row(v)));
                if (lost * rt > block_size(later))
                    ok = false;
            }
            if (ok && worst > 0)
                strict = v;
            else if (worst > fallback_score) {
                fallback_score = worst;
                fallback = v;
            }
        });
        int pick = strict;
        if (pick < 0 && fallback >= 0) {
            pick = fallback;
            out.relaxed = true;
        }
        if (pick < 0) {
            out.failure = "no vertex of block " + std::to_string(idx % t) + " in part " + std::to_string(j)
                + " keeps every later block reachable";
            return out;
        }
        chosen.push_back(pick);
        for (int later = idx + 1; later < rt; ++later)
            if (later / t != j)
                cand[static_cast<std::size_t>(later)] &= g.row(pick);
    }

    for (int x = 0; x < rt; ++x)
        for (int y = x + 1; y < rt; ++y)
            if (x / t != y / t && !g.adjacent(chosen[static_cast<std::size_t>(x)], chosen[static_cast<std::size_t>(y)]))
                throw StepFailed(where, "selected vertices are not complete across parts");
    out.found = true;
    out.vertices = std::move(chosen);
    return out;
}

} // namespace hgs
