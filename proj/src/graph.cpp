#include "hgs/graph.hpp"

#include "hgs/error.hpp"

#include <algorithm>
#include <sstream>

namespace hgs {

VertexSet VertexSet::of(std::initializer_list<int> vertices)
{
    return of(std::span<const int>(vertices.begin(), vertices.size()));
}

VertexSet VertexSet::of(std::span<const int> vertices)
{
    bits::Word m = 0;
    for (int v : vertices) {
        if (v < 0 || v >= max_order)
            throw InvalidArgument("VertexSet", "vertex " + std::to_string(v) + " out of range");
        m |= bits::Word{1} << v;
    }
    return VertexSet(m);
}

std::vector<int> VertexSet::vertices() const
{
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](int v) { out.push_back(v); });
    return out;
}

std::string to_string(VertexSet s)
{
    std::string out = "{";
    bool first = true;
    s.for_each([&](int v) {
        if (!first)
            out += ',';
        out += std::to_string(v);
        first = false;
    });
    return out + "}";
}

Graph::Graph(int n) : n_(n)
{
    if (n < 0 || n > max_order)
        throw InvalidArgument("Graph", "order " + std::to_string(n) + " outside [0, 64]");
}

Graph Graph::from_edge_mask(int n, std::uint64_t mask)
{
    if (pair_count(n) > 64)
        throw InvalidArgument("Graph::from_edge_mask", "C(n,2) exceeds 64 bits");
    Graph g(n);
    int idx = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++idx)
            if (bits::test(mask, idx)) {
                g.adj_[static_cast<std::size_t>(i)] |= bits::Word{1} << j;
                g.adj_[static_cast<std::size_t>(j)] |= bits::Word{1} << i;
            }
    return g;
}

int Graph::edge_count() const noexcept
{
    int twice = 0;
    for (int v = 0; v < n_; ++v)
        twice += degree(v);
    return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (int j = 1; j < n_; ++j)
        for (int i = 0; i < j; ++i)
            if (adjacent(i, j))
                out.emplace_back(i, j);
    return out;
}

std::uint64_t Graph::edge_mask() const
{
    if (pair_count(n_) > 64)
        throw InvalidArgument("Graph::edge_mask", "C(n,2) exceeds 64 bits");
    std::uint64_t mask = 0;
    int idx = 0;
    for (int j = 1; j < n_; ++j)
        for (int i = 0; i < j; ++i, ++idx)
            if (adjacent(i, j))
                mask |= std::uint64_t{1} << idx;
    return mask;
}

void Graph::add_edge(int u, int v)
{
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw InvalidArgument("Graph::add_edge", "endpoint out of range");
    if (u == v)
        throw InvalidArgument("Graph::add_edge", "self-loop at " + std::to_string(u));
    adj_[static_cast<std::size_t>(u)] |= bits::Word{1} << v;
    adj_[static_cast<std::size_t>(v)] |= bits::Word{1} << u;
}

void Graph::remove_edge(int u, int v)
{
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw InvalidArgument("Graph::remove_edge", "endpoint out of range");
    adj_[static_cast<std::size_t>(u)] &= ~(bits::Word{1} << v);
    adj_[static_cast<std::size_t>(v)] &= ~(bits::Word{1} << u);
}

Graph Graph::complement() const
{
    Graph c(n_);
    const bits::Word all = bits::low_mask(n_);
    for (int v = 0; v < n_; ++v)
        c.adj_[static_cast<std::size_t>(v)] = all & ~adj_[static_cast<std::size_t>(v)] & ~(bits::Word{1} << v);
    return c;
}

bool operator==(const Graph& a, const Graph& b) noexcept
{
    if (a.n_ != b.n_)
        return false;
    return std::equal(a.adj_.begin(), a.adj_.begin() + a.n_, b.adj_.begin());
}

Graph graph_from_edges(int n, std::span<const std::pair<int, int>> edges)
{
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw InvalidArgument("graph_from_edges",
                "edge (" + std::to_string(u) + "," + std::to_string(v) + ") endpoint out of range");
        if (u == v)
            throw InvalidArgument("graph_from_edges", "self-loop at " + std::to_string(u));
        g.add_edge(u, v);
    }
    return g;
}

Graph graph_from_edges(int n, std::initializer_list<std::pair<int, int>> edges)
{
    return graph_from_edges(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
}

Graph induced_subgraph(const Graph& g, VertexSet s)
{
    if (!s.subset_of(g.vertices()))
        throw InvalidArgument("induced_subgraph", "vertex set " + to_string(s) + " not inside [n]");
    Graph h(s.size());
    int i = 0;
    s.for_each([&](int v) {
        bits::Word local = bits::compress(g.row(v), s.mask());
        bits::for_each_bit(local, [&](int j) {
            if (j > i)
                h.add_edge(i, j);
        });
        ++i;
    });
    return h;
}

namespace {

// Orders the pattern vertices so that each one has as many already-placed
// neighbours (or, failing that, non-neighbours) as possible, which keeps the
// candidate sets small early in the search.
std::vector<int> search_order(const Graph& h)
{
    const int n = h.order();
    std::vector<int> order;
    std::vector<bool> placed(static_cast<std::size_t>(n), false);
    bits::Word placed_mask = 0;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        int best_links = -1;
        int best_degree = -1;
        for (int u = 0; u < n; ++u) {
            if (placed[static_cast<std::size_t>(u)])
                continue;
            int links = bits::popcount(h.row(u) & placed_mask);
            if (links > best_links || (links == best_links && h.degree(u) > best_degree)) {
                best = u;
                best_links = links;
                best_degree = h.degree(u);
            }
        }
        placed[static_cast<std::size_t>(best)] = true;
        placed_mask |= bits::Word{1} << best;
        order.push_back(best);
    }
    return order;
}

} // namespace

std::optional<std::vector<int>> contains_induced(const Graph& g, const Graph& h)
{
    const int ng = g.order();
    const int nh = h.order();
    if (nh > ng)
        return std::nullopt;
    std::vector<int> phi(static_cast<std::size_t>(nh), -1);
    if (nh == 0)
        return phi;

    const std::vector<int> order = search_order(h);

    // Degree pruning: phi(u) needs at least deg_h(u) neighbours and
    // n_h - 1 - deg_h(u) non-neighbours.
    std::vector<bits::Word> initial(static_cast<std::size_t>(nh), 0);
    for (int u = 0; u < nh; ++u) {
        const int du = h.degree(u);
        const int nu = nh - 1 - du;
        bits::Word c = 0;
        for (int v = 0; v < ng; ++v)
            if (g.degree(v) >= du && ng - 1 - g.degree(v) >= nu)
                c |= bits::Word{1} << v;
        initial[static_cast<std::size_t>(u)] = c;
    }

    const bits::Word all = bits::low_mask(ng);
    auto extend = [&](auto&& self, int pos, bits::Word used) -> bool {
        if (pos == nh)
            return true;
        const int u = order[static_cast<std::size_t>(pos)];
        bits::Word cand = initial[static_cast<std::size_t>(u)] & ~used;
        for (int p = 0; p < pos && cand; ++p) {
            const int w = order[static_cast<std::size_t>(p)];
            const bits::Word r = g.row(phi[static_cast<std::size_t>(w)]);
            cand &= h.adjacent(u, w) ? r : (all & ~r);
        }
        while (cand) {
            const int v = bits::lowest(cand);
            cand &= cand - 1;
            phi[static_cast<std::size_t>(u)] = v;
            if (self(self, pos + 1, used | (bits::Word{1} << v)))
                return true;
        }
        phi[static_cast<std::size_t>(u)] = -1;
        return false;
    };
    if (extend(extend, 0, 0))
        return phi;
    return std::nullopt;
}

bool isomorphic(const Graph& g, const Graph& h)
{
    return g.order() == h.order() && g.edge_count() == h.edge_count() && contains_induced(g, h).has_value();
}

Graph path_graph(int n)
{
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i)
        g.add_edge(i, i + 1);
    return g;
}

Graph cycle_graph(int n)
{
    Graph g = path_graph(n);
    if (n >= 3)
        g.add_edge(n - 1, 0);
    return g;
}

Graph parse_edge_list(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream fields(line);
        if (n < 0) {
            if (!(fields >> n) || n < 0 || n > max_order)
                throw InvalidArgument("parse_edge_list", "line " + std::to_string(line_no) + ": bad vertex count");
            continue;
        }
        int u = 0;
        int v = 0;
        if (!(fields >> u >> v))
            throw InvalidArgument("parse_edge_list", "line " + std::to_string(line_no) + ": expected 'u v'");
        edges.emplace_back(u, v);
    }
    if (n < 0)
        throw InvalidArgument("parse_edge_list", "missing vertex count");
    return graph_from_edges(n, edges);
}

std::string format_edge_list(const Graph& g)
{
    std::string out = std::to_string(g.order()) + "\n";
    for (auto [u, v] : g.edges())
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

PartLabeling::PartLabeling(int part_count, std::vector<int> part_of)
    : parts_(part_count)
    , part_of_(std::move(part_of))
{
    if (part_count < 1)
        throw InvalidArgument("PartLabeling", "need at least one part");
    if (part_of_.size() > static_cast<std::size_t>(max_order))
        throw InvalidArgument("PartLabeling", "more than 64 vertices");
    for (int p : part_of_)
        if (p < 0 || p >= part_count)
            throw InvalidArgument("PartLabeling", "part index " + std::to_string(p) + " out of range");
}

PartLabeling PartLabeling::from_sets(int n, std::span<const VertexSet> parts)
{
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    for (std::size_t j = 0; j < parts.size(); ++j)
        parts[j].for_each([&](int v) {
            if (v >= n)
                throw InvalidArgument("PartLabeling::from_sets", "vertex " + std::to_string(v) + " outside [n]");
            if (labels[static_cast<std::size_t>(v)] != -1)
                throw InvalidArgument("PartLabeling::from_sets", "vertex " + std::to_string(v) + " in two parts");
            labels[static_cast<std::size_t>(v)] = static_cast<int>(j);
        });
    for (int v = 0; v < n; ++v)
        if (labels[static_cast<std::size_t>(v)] == -1)
            throw InvalidArgument("PartLabeling::from_sets", "vertex " + std::to_string(v) + " in no part");
    return PartLabeling(static_cast<int>(parts.size()), std::move(labels));
}

VertexSet PartLabeling::part(int j) const
{
    bits::Word m = 0;
    for (std::size_t v = 0; v < part_of_.size(); ++v)
        if (part_of_[v] == j)
            m |= bits::Word{1} << v;
    return VertexSet(m);
}

std::vector<VertexSet> PartLabeling::parts() const
{
    std::vector<VertexSet> out(static_cast<std::size_t>(parts_));
    for (std::size_t v = 0; v < part_of_.size(); ++v)
        out[static_cast<std::size_t>(part_of_[v])] = out[static_cast<std::size_t>(part_of_[v])].with(static_cast<int>(v));
    return out;
}

} // namespace hgs
