#include "doctest.h"

#include <sstream>

#include "epp/bell.hpp"
#include "epp/graphs.hpp"

using namespace epp;

TEST_CASE("bell diagonal validates the simplex") {
    CHECK_NOTHROW(BellDiagonal(0.7, 0.1, 0.1, 0.1));
    CHECK_THROWS(BellDiagonal(0.7, 0.1, 0.1, 0.2));
    CHECK_THROWS(BellDiagonal(1.1, -0.1, 0.0, 0.0));
    BellDiagonal d;
    CHECK(d.fidelity() == 1.0);
}

TEST_CASE("werner expansion and round trip") {
    WernerParam w = WernerParam::from_fidelity(0.85);
    BellDiagonal s = w.expand();
    CHECK(s.fidelity() == doctest::Approx(0.85).epsilon(1e-12));
    CHECK(s[1] == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(s[2] == doctest::Approx(s[1]));
    CHECK(s[3] == doctest::Approx(s[1]));
    CHECK(werner_from_fidelity(0.85).fidelity() == doctest::Approx(0.85));
    CHECK(w.fidelity() == doctest::Approx(0.85));
}

TEST_CASE("werner twirl preserves fidelity and equalizes the rest") {
    BellDiagonal s(0.6, 0.3, 0.05, 0.05);
    BellDiagonal t = werner_twirl(s);
    CHECK(t[0] == doctest::Approx(0.6));
    CHECK(t[1] == doctest::Approx(0.4 / 3.0));
    CHECK(t[2] == doctest::Approx(0.4 / 3.0));
    CHECK(t[3] == doctest::Approx(0.4 / 3.0));
}

TEST_CASE("pauli channels are normalized") {
    PauliChannel d = PauliChannel::depolarizing(0.9);
    CHECK(d.p[0] == doctest::Approx(0.9 + 0.1 / 4.0));
    CHECK(d.p[1] == doctest::Approx(0.1 / 4.0));
    PauliChannel z = PauliChannel::dephasing(0.9);
    CHECK(z.p[3] == doctest::Approx(0.05));
    CHECK(z.p[1] == 0.0);
    PauliChannel x = PauliChannel::bitflip(0.9);
    CHECK(x.p[1] == doctest::Approx(0.05));
}

TEST_CASE("channel_to_state maps white noise to Werner weights") {
    BellDiagonal s = channel_to_state(PauliChannel::depolarizing(0.8));
    CHECK(s[0] == doctest::Approx(0.8 + 0.05));
    CHECK(s[1] == doctest::Approx(0.05));
    CHECK(s[2] == doctest::Approx(0.05));
    CHECK(s[3] == doctest::Approx(0.05));
}

TEST_CASE("entropy anchors") {
    CHECK(entropy(BellDiagonal()) == doctest::Approx(0.0));
    CHECK(entropy(BellDiagonal(0.25, 0.25, 0.25, 0.25)) == doctest::Approx(2.0));
    CHECK(s_of_F(0.9) == doctest::Approx(0.6274919).epsilon(1e-6));
}

TEST_CASE("canonical graphs") {
    Graph l = Graph::line(4);
    CHECK(l.edges().size() == 3);
    CHECK(l.has_edge(1, 2));
    Graph c = Graph::cycle(5);
    CHECK(c.edges().size() == 5);
    CHECK(c.has_edge(4, 0));
    Graph k = Graph::complete(4);
    CHECK(k.edges().size() == 6);
    Graph s = Graph::star(5);
    CHECK(s.edges().size() == 4);
    CHECK(s.neighborhood(0) == 0b11110ULL);
}

TEST_CASE("two coloring and greedy coloring") {
    auto parts = two_color(Graph::line(6));
    REQUIRE(parts.has_value());
    CHECK(parts->first.size() + parts->second.size() == 6);
    CHECK_FALSE(two_color(Graph::cycle(5)).has_value());
    auto classes = greedy_coloring(Graph::cycle(5));
    CHECK(classes.size() == 3);
    auto tri = greedy_coloring(Graph::complete(3));
    CHECK(tri.size() == 3);
}

TEST_CASE("correlation operator string") {
    CHECK(correlation_operator(Graph::line(3), 1) == "ZXZ");
    CHECK(correlation_operator(Graph::star(3), 0) == "XZZ");
}

TEST_CASE("edge list parsing with comments and colors") {
    std::string text =
        "# a square\n"
        "0 1\n1 2\n2 3\n3 0\n"
        "color 0 0\ncolor 2 0\ncolor 1 1\ncolor 3 1\n";
    Graph g = Graph::parse_edge_list(text);
    CHECK(g.num_vertices() == 4);
    CHECK(g.edges().size() == 4);
    REQUIRE(g.has_coloring());
    CHECK(g.coloring()[0] == std::vector<int>{0, 2});
    CHECK_THROWS(Graph::parse_edge_list("0 1\ncolor 0 0\ncolor 1 0\n"));
    CHECK_THROWS(Graph::parse_edge_list("0 zero\n"));
}

TEST_CASE("subgraph_gj keeps only edges incident to the class") {
    Graph tri = Graph::complete(3);
    tri.set_coloring({{0}, {1}, {2}});
    Graph g0 = subgraph_gj(tri, 0);
    CHECK(g0.has_edge(0, 1));
    CHECK(g0.has_edge(0, 2));
    CHECK_FALSE(g0.has_edge(1, 2));
}

TEST_CASE("set_coloring rejects improper colorings") {
    Graph g = Graph::line(3);
    CHECK_THROWS(g.set_coloring({{0, 1}, {2}}));
    CHECK_NOTHROW(g.set_coloring({{0, 2}, {1}}));
}
