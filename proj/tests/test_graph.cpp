#include "doctest.h"
#include "oracles.hpp"

#include "hgs/enumerate.hpp"
#include "hgs/error.hpp"
#include "hgs/graph.hpp"
#include "hgs/graph6.hpp"

#include <cstdlib>
#include <random>
#include <set>

using namespace hgs;

namespace {

bool symmetric(const Graph& g)
{
    for (int i = 0; i < g.order(); ++i) {
        if (g.adjacent(i, i))
            return false;
        if ((g.row(i) & ~bits::low_mask(g.order())) != 0)
            return false;
        for (int j = 0; j < g.order(); ++j)
            if (g.adjacent(i, j) != g.adjacent(j, i))
                return false;
    }
    return true;
}

} // namespace

TEST_CASE("graph_from_edges")
{
    Graph p3 = graph_from_edges(3, {{0, 1}, {1, 2}});
    CHECK(p3.neighbours(1) == VertexSet::of({0, 2}));
    CHECK(p3.edge_count() == 2);
    CHECK(graph_from_edges(2, {}).edge_count() == 0);

    Graph k4 = graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    for (int v = 0; v < 4; ++v)
        CHECK(k4.degree(v) == 3);
    CHECK(k4 == complete_graph(4));

    CHECK(graph_from_edges(3, {{0, 1}, {1, 0}, {0, 1}}).edge_count() == 1);
    CHECK_THROWS_AS(graph_from_edges(3, {{0, 3}}), InvalidArgument);
    CHECK_THROWS_AS(graph_from_edges(3, {{1, 1}}), InvalidArgument);
    CHECK_THROWS_AS(graph_from_edges(3, {{-1, 1}}), InvalidArgument);
    CHECK_THROWS_AS(Graph(65), InvalidArgument);
    CHECK_NOTHROW(Graph(64));
}

TEST_CASE("induced_subgraph")
{
    CHECK(induced_subgraph(complete_graph(4), VertexSet::of({0, 1, 2})) == complete_graph(3));
    CHECK(induced_subgraph(cycle_graph(4), VertexSet::of({0, 1, 2})) == path_graph(3));
    CHECK(induced_subgraph(cycle_graph(5), VertexSet()).order() == 0);
    CHECK_THROWS_AS(induced_subgraph(cycle_graph(4), VertexSet::of({4})), InvalidArgument);

    // composition: G[S][T'] == G[T] where T is T' translated back through S
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Graph g = oracle::random_graph(12, 0.5, rng);
        VertexSet s(rng() & bits::low_mask(12));
        Graph gs = induced_subgraph(g, s);
        VertexSet t_local(rng() & bits::low_mask(s.size()));
        VertexSet t(bits::expand(t_local.mask(), s.mask()));
        CHECK(induced_subgraph(gs, t_local) == induced_subgraph(g, t));
    }
}

TEST_CASE("contains_induced small cases")
{
    CHECK_FALSE(contains_induced(cycle_graph(5), complete_graph(3)));
    auto m = contains_induced(complete_graph(4), complete_graph(3));
    REQUIRE(m);
    CHECK(m->size() == 3);
    CHECK(contains_induced(cycle_graph(5), path_graph(4)));
    CHECK(contains_induced(cycle_graph(5), Graph(0)));
    CHECK_FALSE(contains_induced(Graph(2), Graph(3)));
}

TEST_CASE("contains_induced agrees with the all-injections oracle")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 7);
        const int k = 1 + static_cast<int>(rng() % 4);
        Graph g = oracle::random_graph(n, 0.5, rng);
        Graph h = oracle::random_graph(k, 0.5, rng);
        auto found = contains_induced(g, h);
        CHECK(found.has_value() == oracle::contains_induced(g, h));
        if (found) {
            std::set<int> image(found->begin(), found->end());
            CHECK(image.size() == static_cast<std::size_t>(k));
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b)
                    CHECK(h.adjacent(a, b) == g.adjacent((*found)[a], (*found)[b]));
        }
    }
}

TEST_CASE("isomorphic")
{
    CHECK(isomorphic(cycle_graph(4), graph_from_edges(4, {{0, 2}, {2, 1}, {1, 3}, {3, 0}})));
    CHECK_FALSE(isomorphic(cycle_graph(4), path_graph(4)));
    CHECK_FALSE(isomorphic(Graph(3), Graph(4)));
}

TEST_CASE("enumeration counts")
{
    CHECK(count_labeled(3, {}) == 8);
    auto triangle_free = [](const Graph& g) { return !contains_induced(g, complete_graph(3)); };
    CHECK(count_labeled(3, triangle_free) == 7);
    const Graph c4 = cycle_graph(4);
    CHECK(count_labeled(4, [&](const Graph& g) { return !contains_induced(g, c4); }) == 61);
    for (int n = 0; n <= 5; ++n)
        CHECK(count_labeled(n, {}) == (std::uint64_t{1} << pair_count(n)));
    CHECK_THROWS_AS(enumerate_labeled(9), LimitExceeded);
}

TEST_CASE("enumeration order and symmetry")
{
    auto stream = enumerate_labeled(4);
    std::uint64_t expected = 0;
    while (auto g = stream.next()) {
        CHECK(symmetric(*g));
        CHECK(g->edge_mask() == expected);
        ++expected;
    }
    CHECK(expected == 64);
}

TEST_CASE("stream split is a disjoint cover and counts are thread-independent")
{
    auto filter = [](const Graph& g) { return g.edge_count() % 3 == 1; };
    auto whole = enumerate_labeled(5, filter);
    std::vector<std::uint64_t> all;
    for (auto s = whole; auto g = s.next();)
        all.push_back(g->edge_mask());
    std::vector<std::uint64_t> pieces;
    for (auto part : whole.split(7))
        while (auto g = part.next())
            pieces.push_back(g->edge_mask());
    CHECK(pieces == all);

    // restart from a cursor midway
    auto s = enumerate_labeled(5, filter);
    for (int i = 0; i < 10; ++i)
        s.next();
    GraphStream resumed(5, filter, s.cursor(), s.end());
    auto a = s.next(), b = resumed.next();
    REQUIRE(a);
    REQUIRE(b);
    CHECK(*a == *b);

    const auto one = count_labeled(6, filter, 1);
    CHECK(count_labeled(6, filter, 3) == one);
    CHECK(count_labeled(6, filter, 8) == one);
}

TEST_CASE("graph6 reference encodings")
{
    CHECK(graph6_encode(complete_graph(3)) == "Bw");
    CHECK(graph6_encode(Graph(1)) == "@");
    CHECK(graph6_encode(Graph(0)) == "?");
    // Petersen graph, as published in the nauty documentation
    Graph petersen = graph6_decode("IheA@GUAo");
    CHECK(petersen.order() == 10);
    CHECK(petersen.edge_count() == 15);
    for (int v = 0; v < 10; ++v)
        CHECK(petersen.degree(v) == 3);
    CHECK_FALSE(contains_induced(petersen, complete_graph(3)));
    CHECK_FALSE(contains_induced(petersen, cycle_graph(4)));
    CHECK(graph6_decode(">>graph6<<Bw") == complete_graph(3));
}

TEST_CASE("graph6 round trip")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = static_cast<int>(rng() % 21);
        Graph g = oracle::random_graph(n, 0.4, rng);
        CHECK(graph6_decode(graph6_encode(g)) == g);
    }
    for (int n : {62, 63, 64}) {
        Graph g = oracle::random_graph(n, 0.3, rng);
        const std::string s = graph6_encode(g);
        CHECK(s[0] == (n <= 62 ? char(n + 63) : '~'));
        CHECK(graph6_decode(s) == g);
    }
}

TEST_CASE("graph6 malformed input")
{
    CHECK_THROWS_AS(graph6_decode(""), InvalidArgument);
    CHECK_THROWS_AS(graph6_decode("B"), InvalidArgument);
    CHECK_THROWS_AS(graph6_decode("Bww"), InvalidArgument);
    CHECK_THROWS_AS(graph6_decode("B "), InvalidArgument);
    CHECK_THROWS_AS(graph6_decode("~?"), InvalidArgument);
    auto lines = graph6_decode_lines("# comment\nBw\n\n@\n");
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].order() == 1);
}

TEST_CASE("edge list text format")
{
    Graph g = parse_edge_list("# c5\n5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    CHECK(g == cycle_graph(5));
    CHECK(parse_edge_list(format_edge_list(g)) == g);
    CHECK_THROWS_AS(parse_edge_list("3\n0 5\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_edge_list(""), InvalidArgument);
}

TEST_CASE("PartLabeling")
{
    std::vector<VertexSet> parts{VertexSet::of({0, 2}), VertexSet::of({1}), VertexSet()};
    auto p = PartLabeling::from_sets(3, parts);
    CHECK(p.part_count() == 3);
    CHECK(p.part_of(2) == 0);
    CHECK(p.part(2).empty());
    CHECK(p.parts() == parts);
    std::vector<VertexSet> overlapping{VertexSet::of({0, 1}), VertexSet::of({1, 2})};
    CHECK_THROWS_AS(PartLabeling::from_sets(3, overlapping), InvalidArgument);
    std::vector<VertexSet> missing{VertexSet::of({0})};
    CHECK_THROWS_AS(PartLabeling::from_sets(2, missing), InvalidArgument);
}
