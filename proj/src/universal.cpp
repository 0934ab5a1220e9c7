#include "hgs/universal.hpp"

#include "hgs/error.hpp"

#include <algorithm>

namespace hgs {

UniversalGraph construct_universal(int k)
{
    if (k < 1 || k > 5)
        throw InvalidArgument("construct_universal", "k must be in [1, 5]");
    const int na = 1 << k;
    Graph g(na + k);
    for (int a = 0; a < na; ++a)
        for (int i = 0; i < k; ++i)
            if ((a >> i) & 1)
                g.add_edge(a, na + i);
    return {g, VertexSet::prefix(na), VertexSet::interval(na, k)};
}

std::optional<std::vector<int>> universal_layer_sizes(int r, int k)
{
    if (r < 1 || k < 1)
        throw InvalidArgument("universal_layer_sizes", "need r >= 1 and k >= 1");
    std::vector<int> sizes{k};
    int total = k;
    if (total > max_order)
        return std::nullopt;
    for (int j = 1; j < r; ++j) {
        if (total >= 7) // 2^7 already exceeds the vertex cap
            return std::nullopt;
        const int next = 1 << total;
        if (total + next > max_order)
            return std::nullopt;
        sizes.push_back(next);
        total += next;
    }
    return sizes;
}

namespace {

LayeredUniversal build_layers(int r, int k, const char* where)
{
    auto sizes = universal_layer_sizes(r, k);
    if (!sizes)
        throw LimitExceeded(where, "U(" + std::to_string(r) + "," + std::to_string(k) + ") exceeds 64 vertices");
    int total = 0;
    for (int s : *sizes)
        total += s;
    LayeredUniversal u;
    u.k = k;
    u.graph = Graph(total);
    int start = 0;
    for (int s : *sizes) {
        u.layers.push_back(VertexSet::interval(start, s));
        start += s;
    }
    int prefix = k;
    for (std::size_t j = 1; j < u.layers.size(); ++j) {
        const int first = u.layers[j].front();
        for (int s = 0; s < (*sizes)[j]; ++s)
            for (int p = 0; p < prefix; ++p)
                if ((s >> p) & 1)
                    u.graph.add_edge(first + s, p);
        prefix += (*sizes)[j];
    }
    return u;
}

} // namespace

LayeredUniversal construct_generalized_universal(int r, int k)
{
    return build_layers(r, k, "construct_generalized_universal");
}

LayeredUniversal construct_universal_star(int r, int k, const VPattern& v)
{
    if (v.length() != r)
        throw InvalidArgument("construct_universal_star", "|v| must equal r");
    LayeredUniversal u = build_layers(r, k, "construct_universal_star");
    for (int j = 0; j < r; ++j) {
        if (v[j] != 1)
            continue;
        auto members = u.layers[static_cast<std::size_t>(j)].vertices();
        for (std::size_t x = 0; x < members.size(); ++x)
            for (std::size_t y = x + 1; y < members.size(); ++y)
                u.graph.add_edge(members[x], members[y]);
    }
    u.pattern = v;
    return u;
}

int ShatterWitness::realizer_for(VertexSet subset) const
{
    if (!subset.subset_of(shattered))
        throw InvalidArgument("ShatterWitness::realizer_for", "subset outside the shattered set");
    return realizers.at(static_cast<std::size_t>(bits::compress(subset.mask(), shattered.mask())));
}

std::optional<ShatterWitness> shatters(const Graph& g, VertexSet a, VertexSet b)
{
    if (!a.disjoint(b))
        throw InvalidArgument("shatters", "A and B overlap");
    if (!(a | b).subset_of(g.vertices()))
        throw InvalidArgument("shatters", "vertex set outside [n]");
    const int k = b.size();
    if (k > max_shatter_target)
        throw LimitExceeded("shatters", "|B| = " + std::to_string(k) + " exceeds 20");
    const std::size_t need = std::size_t{1} << k;
    if (static_cast<std::size_t>(a.size()) < need)
        return std::nullopt;
    std::vector<int> realizers(need, -1);
    std::size_t found = 0;
    a.for_each([&](int v) {
        if (found == need)
            return;
        const auto trace = static_cast<std::size_t>(bits::compress(g.row(v), b.mask()));
        if (realizers[trace] == -1) {
            realizers[trace] = v;
            ++found;
        }
    });
    if (found != need)
        return std::nullopt;
    return ShatterWitness{b, std::move(realizers)};
}

bool witness_valid(const Graph& g, const ShatterWitness& w)
{
    const int k = w.shattered.size();
    if (k > max_shatter_target || w.realizers.size() != (std::size_t{1} << k))
        return false;
    VertexSet used;
    for (std::size_t s = 0; s < w.realizers.size(); ++s) {
        const int v = w.realizers[s];
        if (v < 0 || v >= g.order() || w.shattered.contains(v) || used.contains(v))
            return false;
        used = used.with(v);
        if (bits::compress(g.row(v), w.shattered.mask()) != s)
            return false;
    }
    return true;
}

TraceFamily::TraceFamily(VertexSet ground, std::vector<bits::Word> traces)
    : ground_(ground)
    , traces_(std::move(traces))
{
    if (ground.size() > max_trace_ground)
        throw LimitExceeded("TraceFamily", "ground set larger than 30");
    for (auto t : traces_)
        if (!VertexSet(t).subset_of(ground))
            throw InvalidArgument("TraceFamily", "trace " + to_string(VertexSet(t)) + " not inside ground");
    std::sort(traces_.begin(), traces_.end());
    traces_.erase(std::unique(traces_.begin(), traces_.end()), traces_.end());
}

bool TraceFamily::shatters(VertexSet x) const
{
    const int k = x.size();
    if (k > max_trace_ground)
        return false;
    const std::size_t need = std::size_t{1} << k;
    if (traces_.size() < need)
        return false;
    std::vector<bool> seen(need, false);
    std::size_t found = 0;
    for (auto t : traces_) {
        const auto s = static_cast<std::size_t>(bits::compress(t, x.mask()));
        if (!seen[s]) {
            seen[s] = true;
            if (++found == need)
                return true;
        }
    }
    return false;
}

std::uint64_t sauer_bound(int ground_size, int k)
{
    std::uint64_t sum = 0;
    for (int i = 0; i < k; ++i)
        sum += bits::binomial(ground_size, i);
    return sum;
}

std::optional<VertexSet> find_shattered_subset(const TraceFamily& family, int k)
{
    if (k < 0)
        throw InvalidArgument("find_shattered_subset", "negative k");
    std::optional<VertexSet> hit;
    bits::for_each_k_subset(family.ground().mask(), k, [&](bits::Word x) {
        if (family.shatters(VertexSet(x))) {
            hit = VertexSet(x);
            return true;
        }
        return false;
    });
    return hit;
}

VertexSet sauer_find_shattered(const TraceFamily& family, int k)
{
    if (k < 0 || k > family.ground_size())
        throw InvalidArgument("sauer_find_shattered", "k outside [0, |ground|]");
    if (family.size() <= sauer_bound(family.ground_size(), k))
        throw PreconditionFailed("sauer_find_shattered", "Sauer bound not met");
    auto hit = find_shattered_subset(family, k);
    if (!hit)
        throw std::logic_error("sauer_find_shattered: no shattered set despite the Sauer bound");
    return *hit;
}

namespace {

// First 2^(count) vertices of b, in increasing order.
std::vector<int> first_vertices(VertexSet b, int count)
{
    std::vector<int> all = b.vertices();
    all.resize(static_cast<std::size_t>(count));
    return all;
}

// Vertex of `pool` whose trace on `cube` equals `face`, preferring the smallest index.
int trace_realizer(const Graph& g, VertexSet pool, VertexSet cube, VertexSet face)
{
    int found = -1;
    pool.for_each([&](int v) {
        if (found == -1 && (g.neighbours(v) & cube) == face)
            found = v;
    });
    return found;
}

// Faces through the origin of the labelled cube: F_j = {labels with bit j clear}.
std::vector<VertexSet> origin_faces(const std::vector<int>& labelled, int dimension)
{
    std::vector<VertexSet> faces(static_cast<std::size_t>(dimension));
    for (std::size_t label = 0; label < labelled.size(); ++label)
        for (int j = 0; j < dimension; ++j)
            if (((label >> j) & 1u) == 0)
                faces[static_cast<std::size_t>(j)] = faces[static_cast<std::size_t>(j)].with(labelled[label]);
    return faces;
}

void require_shatters(const Graph& g, VertexSet a, VertexSet b, const char* where)
{
    if (!a.disjoint(b))
        throw InvalidArgument(where, "A and B overlap");
    if (b.size() > max_shatter_target || !shatters(g, a, b))
        throw PreconditionFailed(where, "A does not shatter B");
}

} // namespace

ReverseShatter reverse_shatter(const Graph& g, VertexSet a, VertexSet b, int t)
{
    if (t < 0 || t > 5)
        throw InvalidArgument("reverse_shatter", "t must be in [0, 5]");
    const int cube_size = 1 << t;
    if (b.size() < cube_size)
        throw PreconditionFailed("reverse_shatter", "|B| < 2^t");
    require_shatters(g, a, b, "reverse_shatter");

    const std::vector<int> labelled = first_vertices(b, cube_size);
    const VertexSet cube = VertexSet::of(labelled);
    VertexSet a_prime;
    for (VertexSet face : origin_faces(labelled, t)) {
        const int v = trace_realizer(g, a, cube, face);
        if (v < 0)
            throw std::logic_error("reverse_shatter: face without realizer");
        a_prime = a_prime.with(v);
    }
    ReverseShatter out{a_prime, cube};
    if (!shatters(g, out.b_prime, out.a_prime))
        throw std::logic_error("reverse_shatter: B' does not shatter A'");
    return out;
}

AlignedReverseShatter aligned_reverse_shatter(const Graph& g, std::span<const VertexSet> a_list, VertexSet b, int t)
{
    const int r = static_cast<int>(a_list.size());
    if (r < 1)
        throw InvalidArgument("aligned_reverse_shatter", "need at least one set A_j");
    if (t < 0 || r * t > 5)
        throw InvalidArgument("aligned_reverse_shatter", "r*t must be in [0, 5]");
    const int dimension = r * t;
    const int cube_size = 1 << dimension;
    if (b.size() < cube_size)
        throw PreconditionFailed("aligned_reverse_shatter", "|B| < 2^(r t)");
    for (int j = 0; j < r; ++j) {
        if (!a_list[static_cast<std::size_t>(j)].disjoint(b))
            throw InvalidArgument("aligned_reverse_shatter", "A_j meets B");
        for (int i = 0; i < j; ++i)
            if (!a_list[static_cast<std::size_t>(i)].disjoint(a_list[static_cast<std::size_t>(j)]))
                throw InvalidArgument("aligned_reverse_shatter", "the sets A_j are not disjoint");
        require_shatters(g, a_list[static_cast<std::size_t>(j)], b, "aligned_reverse_shatter");
    }

    const std::vector<int> labelled = first_vertices(b, cube_size);
    const VertexSet cube = VertexSet::of(labelled);
    const std::vector<VertexSet> faces = origin_faces(labelled, dimension);
    AlignedReverseShatter out;
    out.b_prime = cube;
    // A_j contributes the realizers of faces (j-1)t+1 .. jt under the shared labelling.
    for (int j = 0; j < r; ++j) {
        VertexSet chosen;
        for (int i = j * t; i < (j + 1) * t; ++i) {
            const int v = trace_realizer(g, a_list[static_cast<std::size_t>(j)], cube, faces[static_cast<std::size_t>(i)]);
            if (v < 0)
                throw std::logic_error("aligned_reverse_shatter: face without realizer");
            chosen = chosen.with(v);
        }
        out.a_prime.push_back(chosen);
    }
    VertexSet all;
    for (auto s : out.a_prime)
        all |= s;
    if (!shatters(g, out.b_prime, all))
        throw std::logic_error("aligned_reverse_shatter: B' does not shatter the union");
    return out;
}

std::optional<StarEmbedding> find_universal_star_embedding(const Graph& g, int r, int k)
{
    auto sizes = universal_layer_sizes(r, k);
    int total = 0;
    if (sizes)
        for (int s : *sizes)
            total += s;
    if (!sizes || total > max_star_order)
        throw LimitExceeded("find_universal_star_embedding", "|U(r,k)| exceeds 12");
    if (r > max_pattern_length)
        throw InvalidArgument("find_universal_star_embedding", "r exceeds 8");
    for (unsigned code = 0; code < (1u << r); ++code) {
        const VPattern v = VPattern::from_code(r, code);
        const LayeredUniversal star = construct_universal_star(r, k, v);
        if (auto map = contains_induced(g, star.graph))
            return StarEmbedding{v, std::move(*map)};
    }
    return std::nullopt;
}

} // namespace hgs
