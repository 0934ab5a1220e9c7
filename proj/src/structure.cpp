#include "hgs/structure.hpp"

#include "hgs/clique.hpp"
#include "hgs/error.hpp"
#include "hgs/freeness.hpp"
#include "hgs/regularity.hpp"
#include "hgs/universal.hpp"

#include <cmath>
#include <functional>

namespace hgs {

namespace {

// alpha n is compared after rounding; the slack absorbs binary fractions
// like 0.1 * 30.
constexpr double slack = 1e-9;

void check_alpha(const char* where, double alpha)
{
    if (!(alpha > 0) || !std::isfinite(alpha))
        throw InvalidArgument(where, "alpha must be positive");
}

void check_parts(const char* where, const Graph& g, const PartLabeling& parts)
{
    if (parts.order() != g.order())
        throw InvalidArgument(where, "part labeling does not match the graph order");
    if (parts.part_count() < 1)
        throw InvalidArgument(where, "need at least one part");
}

int total_size(const std::vector<int>& sizes)
{
    int t = 0;
    for (int s : sizes)
        t += s;
    return t;
}

// Searches for one copy of U(t,k) with a fixed placement; layers[j] must lie
// in pools[j] and avoid everything used so far.
struct LayerSearch {
    const Graph& g;
    std::vector<int> sizes;
    std::vector<bits::Word> pools;
    std::vector<bits::Word> layers;

    bool run(int j, bits::Word used)
    {
        const int t = static_cast<int>(sizes.size());
        if (j == t)
            return true;
        const bits::Word pool = pools[static_cast<std::size_t>(j)] & ~used;
        if (j == 0) {
            return bits::for_each_k_subset(pool, sizes[0], [&](bits::Word a1) {
                layers[0] = a1;
                return run(1, a1);
            });
        }
        // used is exactly the union of layers 0..j-1 here.
        const std::size_t traces = std::size_t{1} << bits::popcount(used);
        std::vector<bits::Word> bucket(traces, 0);
        bits::for_each_bit(pool, [&](int v) { bucket[bits::compress(g.row(v), used)] |= bits::Word{1} << v; });
        for (bits::Word b : bucket)
            if (!b)
                return false;
        if (j == t - 1) {
            bits::Word layer = 0;
            for (bits::Word b : bucket)
                layer |= bits::Word{1} << bits::lowest(b);
            layers[static_cast<std::size_t>(j)] = layer;
            return true;
        }
        // An inner layer becomes part of the next target, so every choice of
        // realizers has to be tried.
        std::function<bool(std::size_t, bits::Word)> choose = [&](std::size_t s, bits::Word layer) {
            if (s == traces) {
                layers[static_cast<std::size_t>(j)] = layer;
                return run(j + 1, used | layer);
            }
            bool hit = false;
            bits::for_each_bit(bucket[s], [&](int v) {
                if (!hit)
                    hit = choose(s + 1, layer | (bits::Word{1} << v));
            });
            return hit;
        };
        return choose(0, 0);
    }
};

// Placements i: [t] -> [r] with i(1) = i(2) and i injective on 2..t, in
// lexicographic order.
void for_each_placement(int t, int r, const std::function<bool(const std::vector<int>&)>& f)
{
    std::vector<int> place(static_cast<std::size_t>(t), 0);
    std::vector<bool> taken(static_cast<std::size_t>(r), false);
    std::function<bool(int)> rec = [&](int j) {
        if (j == t)
            return f(place);
        for (int p = 0; p < r; ++p) {
            if (taken[static_cast<std::size_t>(p)])
                continue;
            place[static_cast<std::size_t>(j)] = p;
            taken[static_cast<std::size_t>(p)] = true;
            if (j == 1) {
                place[0] = p;
            }
            const bool stop = rec(j + 1);
            taken[static_cast<std::size_t>(p)] = false;
            if (stop)
                return true;
        }
        return false;
    };
    if (t >= 2)
        rec(1);
}

std::optional<PackingPiece> find_piece(const Graph& g, const PartLabeling& parts, int t,
    const std::vector<int>& sizes, bits::Word excluded)
{
    std::optional<PackingPiece> found;
    for_each_placement(t, parts.part_count(), [&](const std::vector<int>& place) {
        LayerSearch s{g, sizes, {}, std::vector<bits::Word>(sizes.size(), 0)};
        for (int p : place)
            s.pools.push_back(parts.part(p).mask() & ~excluded);
        if (!s.run(0, 0))
            return false;
        PackingPiece piece;
        piece.level = t;
        piece.placement = place;
        for (bits::Word l : s.layers) {
            piece.layers.emplace_back(l);
            piece.vertices |= VertexSet(l);
        }
        found = std::move(piece);
        return true;
    });
    return found;
}

bool fail(std::string* why, std::string msg)
{
    if (why)
        *why = std::move(msg);
    return false;
}

} // namespace

int clone_threshold(int n, double alpha)
{
    return static_cast<int>(std::floor(alpha * n + slack));
}

int bad_threshold(int n, double alpha)
{
    return static_cast<int>(std::ceil(alpha * n - slack));
}

int trace_distance(const Graph& g, int u, int v, VertexSet a)
{
    return bits::popcount((g.row(u) ^ g.row(v)) & a.mask());
}

bool is_alpha_clone(const Graph& g, int u, int v, VertexSet a, double alpha)
{
    return trace_distance(g, u, v, a) <= clone_threshold(g.order(), alpha);
}

bool is_bad_set(const Graph& g, const PartLabeling& parts, VertexSet b, double alpha)
{
    check_parts("is_bad_set", g, parts);
    const int need = bad_threshold(g.order(), alpha);
    const auto sets = parts.parts();
    const auto bv = b.vertices();
    for (std::size_t x = 0; x < bv.size(); ++x)
        for (std::size_t y = x + 1; y < bv.size(); ++y)
            for (VertexSet s : sets)
                if (trace_distance(g, bv[x], bv[y], s) < need)
                    return false;
    return true;
}

BadSet max_bad_set(const Graph& g, const PartLabeling& parts, double alpha, BadSetMode mode)
{
    const char* where = "max_bad_set";
    check_parts(where, g, parts);
    check_alpha(where, alpha);
    const int n = g.order();
    if (n == 0)
        return {};
    if (mode == BadSetMode::exact && n > max_exact_bad_set_order)
        throw LimitExceeded(where, "exact mode is limited to 24 vertices");
    const int need = bad_threshold(n, alpha);
    const auto sets = parts.parts();
    std::vector<bits::Word> far(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool bad = true;
            for (VertexSet s : sets)
                bad = bad && trace_distance(g, u, v, s) >= need;
            if (bad) {
                far[static_cast<std::size_t>(u)] |= bits::Word{1} << v;
                far[static_cast<std::size_t>(v)] |= bits::Word{1} << u;
            }
        }
    if (mode == BadSetMode::exact)
        return {VertexSet(max_clique(far, g.vertices().mask())), true};
    return {VertexSet(greedy_clique(far, g.vertices().mask())), false};
}

int clone_index(const Graph& g, const PartLabeling& parts, VertexSet b, double alpha, int v)
{
    const char* where = "clone_index";
    check_parts(where, g, parts);
    if (v < 0 || v >= g.order())
        throw InvalidArgument(where, "vertex out of range");
    const int limit = clone_threshold(g.order(), alpha);
    for (int j = 0; j < parts.part_count(); ++j) {
        const VertexSet s = parts.part(j);
        bool hit = false;
        b.for_each([&](int x) { hit = hit || trace_distance(g, v, x, s) <= limit; });
        if (hit)
            return j;
    }
    throw PreconditionFailed(where, "vertex " + std::to_string(v) + " has no clone in B in any part; B is not a maximal bad set");
}

Adjustment alpha_adjust(const Graph& g, const PartLabeling& parts, VertexSet b, double alpha)
{
    const char* where = "alpha_adjust";
    check_parts(where, g, parts);
    check_alpha(where, alpha);
    const int n = g.order();
    const int r = parts.part_count();
    std::vector<int> label(static_cast<std::size_t>(n));
    Adjustment adj;
    for (int v = 0; v < n; ++v) {
        label[static_cast<std::size_t>(v)] = clone_index(g, parts, b, 2 * alpha, v);
        if (label[static_cast<std::size_t>(v)] != parts.part_of(v))
            adj.moved.push_back(v);
    }
    adj.labeling = PartLabeling(r, label);

    const int budget = clone_threshold(n, alpha);
    adj.within_budget = true;
    for (int j = 0; j < r; ++j) {
        const int d = (parts.part(j) ^ adj.labeling.part(j)).size();
        adj.symmetric_difference.push_back(d);
        if (d > budget)
            adj.within_budget = false;
    }
    const int clone_limit = clone_threshold(n, 3 * alpha);
    adj.clones_ok = true;
    int first_bad = -1;
    for (int v = 0; v < n && adj.clones_ok; ++v) {
        const VertexSet s = adj.labeling.part(adj.labeling.part_of(v));
        bool hit = false;
        b.for_each([&](int x) { hit = hit || trace_distance(g, v, x, s) <= clone_limit; });
        if (!hit) {
            adj.clones_ok = false;
            first_bad = v;
        }
    }
    if (!adj.within_budget)
        adj.diagnosis = "not an alpha-adjustment: some |S_j xor S'_j| exceeds floor(alpha n) = " + std::to_string(budget);
    else if (!adj.clones_ok)
        adj.diagnosis = "not an alpha-adjustment: vertex " + std::to_string(first_bad)
            + " is not a 3 alpha-clone of any b in B within its new part";
    return adj;
}

VertexSet PackingReport::covered() const
{
    VertexSet c;
    for (const auto& p : pieces)
        c |= p.vertices;
    return c;
}

PackingReport extract_universal_packing(const Graph& g, const PartLabeling& parts, int k, VertexSet excluded)
{
    const char* where = "extract_universal_packing";
    check_parts(where, g, parts);
    if (g.order() > max_packing_order)
        throw LimitExceeded(where, "packing search is limited to 40 vertices");
    if (k < 1)
        throw InvalidArgument(where, "k must be positive");
    const int r = parts.part_count();
    PackingReport rep;
    rep.k = k;
    rep.excluded = excluded & g.vertices();
    bits::Word x = rep.excluded.mask();
    for (int t = r + 1; t >= 2; --t) {
        const auto sizes = universal_layer_sizes(t, k);
        if (!sizes || total_size(*sizes) > g.order()) {
            rep.skipped_levels.push_back(t);
            continue;
        }
        while (auto piece = find_piece(g, parts, t, *sizes, x)) {
            x |= piece->vertices.mask();
            rep.pieces.push_back(std::move(*piece));
        }
    }
    for (int j = 0; j < r; ++j)
        rep.residual.push_back(parts.part(j) - VertexSet(x));
    return rep;
}

bool check_packing_structure(const Graph& g, const PartLabeling& parts, const PackingReport& report, std::string* why)
{
    check_parts("check_packing_structure", g, parts);
    const int r = parts.part_count();
    VertexSet seen;
    int prev_level = r + 1;
    const VertexSet excluded = report.excluded;
    for (std::size_t l = 0; l < report.pieces.size(); ++l) {
        const PackingPiece& p = report.pieces[l];
        const std::string tag = "piece " + std::to_string(l) + ": ";
        if (p.level < 2 || p.level > r + 1)
            return fail(why, tag + "level out of range");
        if (p.level > prev_level)
            return fail(why, tag + "levels are not non-increasing");
        prev_level = p.level;
        const auto sizes = universal_layer_sizes(p.level, report.k);
        if (!sizes || p.layers.size() != sizes->size() || p.placement.size() != sizes->size())
            return fail(why, tag + "wrong number of layers");
        VertexSet onion;
        for (std::size_t j = 0; j < p.layers.size(); ++j) {
            const VertexSet layer = p.layers[j];
            if (layer.size() != (*sizes)[j])
                return fail(why, tag + "layer " + std::to_string(j) + " has the wrong size");
            if (!layer.disjoint(onion))
                return fail(why, tag + "layers overlap");
            const int part = p.placement[j];
            if (part < 0 || part >= r || !layer.subset_of(parts.part(part)))
                return fail(why, tag + "layer " + std::to_string(j) + " is not inside its part");
            if (j > 0 && !shatters(g, layer, onion))
                return fail(why, tag + "layer " + std::to_string(j) + " does not shatter the earlier layers");
            onion |= layer;
        }
        if (onion != p.vertices)
            return fail(why, tag + "layers do not make up the piece");
        if (p.placement[0] != p.placement[1])
            return fail(why, tag + "the first two layers lie in different parts");
        for (std::size_t j = 1; j < p.placement.size(); ++j)
            for (std::size_t j2 = j + 1; j2 < p.placement.size(); ++j2)
                if (p.placement[j] == p.placement[j2])
                    return fail(why, tag + "two outer layers share a part");
        if (!p.vertices.disjoint(seen))
            return fail(why, tag + "overlaps an earlier piece");
        if (!p.vertices.disjoint(excluded))
            return fail(why, tag + "uses an excluded vertex");
        seen |= p.vertices;
    }
    if (static_cast<int>(report.residual.size()) != r)
        return fail(why, "residual has the wrong number of parts");
    for (int j = 0; j < r; ++j)
        if (report.residual[static_cast<std::size_t>(j)] != parts.part(j) - seen - excluded)
            return fail(why, "residual of part " + std::to_string(j) + " is wrong");
    return true;
}

bool verify_packing_maximality(const Graph& g, const PartLabeling& parts, const PackingReport& report, std::string* why)
{
    check_parts("verify_packing_maximality", g, parts);
    const int r = parts.part_count();
    VertexSet prefix = report.excluded;
    for (std::size_t l = 0; l < report.pieces.size(); ++l) {
        const VertexSet u = report.pieces[l].vertices;
        prefix |= u;
        for (int j = 0; j < r; ++j) {
            const VertexSet s = parts.part(j);
            if (!s.disjoint(u))
                continue;
            const VertexSet pool = s - prefix;
            if (u.size() >= 7 || pool.size() < (1 << u.size()))
                continue; // too few vertices to realize every trace
            if (shatters(g, pool, u))
                return fail(why, "part " + std::to_string(j) + " still shatters piece " + std::to_string(l));
        }
    }
    for (int t = r + 1; t >= 2; --t) {
        const auto sizes = universal_layer_sizes(t, report.k);
        if (!sizes || total_size(*sizes) > g.order())
            continue;
        if (find_piece(g, parts, t, *sizes, prefix.mask()))
            return fail(why, "a placeable copy of U(" + std::to_string(t) + "," + std::to_string(report.k)
                    + ") avoids every piece");
    }
    return true;
}

DecompositionCertificate decompose(const Graph& g, int r, int k, double alpha, const DecomposeOptions& options)
{
    const char* where = "decompose";
    check_alpha(where, alpha);
    const int n = g.order();
    if (r < 1 || r > n)
        throw InvalidArgument(where, "need 1 <= r <= n");
    if (k < 1 || k > max_uk_level)
        throw InvalidArgument(where, "k must be in [1, 4]");

    DecompositionCertificate cert;
    cert.k = k;
    cert.r = r;
    cert.alpha = alpha;
    cert.eps_out = options.eps_out;
    DecompositionProvenance& prov = cert.provenance;
    if (options.parts_hint) {
        if (options.parts_hint->order() != n || options.parts_hint->part_count() != r)
            throw InvalidArgument(where, "parts hint does not match the graph and r");
        prov.parts_source = "hint";
        prov.initial_parts = *options.parts_hint;
    } else {
        prov.parts_source = "toy partitioner";
        prov.initial_parts = toy_bbs_partition(g, r, 1, Rational(1, 4), Rational(1, 10), Rational(1, 10)).parts;
    }

    try {
        prov.bad_set = max_bad_set(g, prov.initial_parts, 2 * alpha,
            n <= max_exact_bad_set_order ? BadSetMode::exact : BadSetMode::greedy);
    } catch (const Error& e) {
        throw StepFailed("decompose/bad set", e.what());
    }
    try {
        prov.adjustment = alpha_adjust(g, prov.initial_parts, prov.bad_set.set, alpha);
    } catch (const Error& e) {
        throw StepFailed("decompose/adjustment", e.what());
    }
    try {
        prov.packing = extract_universal_packing(g, prov.adjustment.labeling, k, prov.bad_set.set);
    } catch (const LimitExceeded& e) {
        throw LimitExceeded("decompose/packing", e.what());
    } catch (const Error& e) {
        throw StepFailed("decompose/packing", e.what());
    }

    cert.a = prov.bad_set.set | prov.packing.covered();
    for (int j = 0; j < r; ++j)
        cert.parts.push_back(prov.adjustment.labeling.part(j) - cert.a);
    cert.budget = std::pow(static_cast<double>(n), 1.0 - options.eps_out);
    cert.budget_met = cert.a.size() <= cert.budget + slack;

    std::string why;
    if (!verify_decomposition(g, cert, std::nullopt, &why))
        throw StepFailed("decompose/verification", why);
    return cert;
}

bool verify_decomposition(const Graph& g, const DecompositionCertificate& cert, std::optional<double> budget_eps,
    std::string* why)
{
    if (static_cast<int>(cert.parts.size()) != cert.r)
        return fail(why, "certificate lists the wrong number of parts");
    if (cert.k < 1 || cert.k > max_uk_level)
        return fail(why, "k out of range");
    VertexSet seen = cert.a;
    for (std::size_t j = 0; j < cert.parts.size(); ++j) {
        if (!cert.parts[j].disjoint(seen))
            return fail(why, "part " + std::to_string(j) + " overlaps A or another part");
        seen |= cert.parts[j];
    }
    if (seen != g.vertices())
        return fail(why, "A and the parts do not cover V(G) exactly");
    for (std::size_t j = 0; j < cert.parts.size(); ++j)
        if (auto copy = find_uk_copy_within(g, cert.k, cert.parts[j]))
            return fail(why, "part " + std::to_string(j) + " contains U(" + std::to_string(cert.k) + ") on "
                    + to_string(copy->b) + " realized by " + to_string(copy->a));
    if (budget_eps) {
        const double budget = std::pow(static_cast<double>(g.order()), 1.0 - *budget_eps);
        if (cert.a.size() > budget + slack)
            return fail(why, "|A| = " + std::to_string(cert.a.size()) + " exceeds n^(1-eps)");
    }
    return true;
}

} // namespace hgs
