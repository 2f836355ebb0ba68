#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "bipinf/io.hpp"
#include "bipinf/scoring.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace bipinf;
namespace bt = bipinf::testing;
using Catch::Matchers::WithinAbs;

TEST_CASE("degree centrality") {
    BipartiteGraph g = bt::toy_two_event_triangle();
    auto t = degree_centrality(g, Mode::B);
    CHECK(t.raw_of("a") == 3.0);
    CHECK(t.raw_of("c") == 2.0);

    SECTION("southern women degrees sum to twice the edges") {
        BipartiteGraph sw = southern_women();
        double total = 0.0;
        for (double d : degree_centrality(sw, Mode::A).raw) total += d;
        for (double d : degree_centrality(sw, Mode::B).raw) total += d;
        CHECK(total == 178.0);
    }
    SECTION("isolated node scores zero") {
        auto reduced = g.remove_nodes(Mode::B, {"a"});
        CHECK(degree_centrality(reduced, Mode::A).raw_of("1") == 0.0);
    }
}

TEST_CASE("betweenness centrality on small shapes") {
    SECTION("center of a three-node path") {
        BipartiteGraph g = bt::graph_of({{"a", "mid"}, {"b", "mid"}});
        CHECK_THAT(betweenness_centrality(g, Mode::B).raw_of("mid"), WithinAbs(1.0, 1e-12));
        CHECK_THAT(betweenness_centrality(g, Mode::A).raw_of("a"), WithinAbs(0.0, 1e-12));
    }
    SECTION("center of a four-leaf star routes all six leaf pairs") {
        BipartiteGraph g =
            bt::graph_of({{"l1", "hub"}, {"l2", "hub"}, {"l3", "hub"}, {"l4", "hub"}});
        CHECK_THAT(betweenness_centrality(g, Mode::B).raw_of("hub"), WithinAbs(6.0, 1e-12));
    }
}

TEST_CASE("closeness centrality on small shapes") {
    BipartiteGraph g = bt::graph_of({{"a", "mid"}, {"b", "mid"}});
    CHECK_THAT(closeness_centrality(g, Mode::B).raw_of("mid"), WithinAbs(0.5, 1e-12));
    CHECK_THAT(closeness_centrality(g, Mode::A).raw_of("a"), WithinAbs(1.0 / 3.0, 1e-12));

    SECTION("isolated node scores zero") {
        auto reduced = bt::toy_two_event_triangle().remove_nodes(Mode::B, {"a"});
        CHECK(closeness_centrality(reduced, Mode::A).raw_of("1") == 0.0);
    }
}

TEST_CASE("eigenvector centrality basics") {
    SECTION("complete 2x2 graph has all components at one half") {
        BipartiteGraph g = bt::graph_of({{"a", "x"}, {"a", "y"}, {"b", "x"}, {"b", "y"}});
        auto ta = eigenvector_centrality(g, Mode::A);
        auto tb = eigenvector_centrality(g, Mode::B);
        for (double v : ta.raw) CHECK_THAT(v, WithinAbs(0.5, 1e-9));
        for (double v : tb.raw) CHECK_THAT(v, WithinAbs(0.5, 1e-9));
    }
    SECTION("a single edge splits weight evenly") {
        BipartiteGraph g = bt::graph_of({{"x", "e"}});
        CHECK_THAT(eigenvector_centrality(g, Mode::A).raw_of("x"),
                   WithinAbs(1.0 / std::sqrt(2.0), 1e-9));
        CHECK_THAT(eigenvector_centrality(g, Mode::B).raw_of("e"),
                   WithinAbs(1.0 / std::sqrt(2.0), 1e-9));
    }
    SECTION("edgeless graph is undefined") {
        auto g = bt::graph_of({{"x", "e"}}).remove_nodes(Mode::B, {"e"});
        CHECK(g.edge_count() == 0);
        CHECK_THROWS_AS(eigenvector_centrality(g, Mode::A), input_error);
    }
}

TEST_CASE("southern women centralities match independent oracles") {
    BipartiteGraph g = southern_women();
    auto view = bt::combined_view(g);
    const std::size_t off = g.node_count(Mode::A);

    auto bw = betweenness_centrality(g, Mode::B);
    auto obw = bt::oracle_betweenness(view);
    auto cl = closeness_centrality(g, Mode::B);
    auto ocl = bt::oracle_closeness(view);
    auto ev = eigenvector_centrality(g, Mode::B);
    auto [oev, gap] = bt::oracle_dominant_eigenvector(view);
    REQUIRE(gap > 1e-6);
    for (std::size_t b = 0; b < g.node_count(Mode::B); ++b) {
        CHECK_THAT(bw.raw[b], WithinAbs(obw[off + b], 1e-9));
        CHECK_THAT(cl.raw[b], WithinAbs(ocl[off + b], 1e-12));
        CHECK_THAT(ev.raw[b], WithinAbs(oev[off + b], 1e-8));
    }
    // a couple of frozen spot values from the hand-checked script
    CHECK_THAT(bw.raw_of("E8"), WithinAbs(110.2063969820, 1e-9));
    CHECK_THAT(cl.raw_of("E8"), WithinAbs(1.0 / 52.0, 1e-12));
    CHECK_THAT(ev.raw_of("E8"), WithinAbs(0.3582434256, 1e-8));
}

TEST_CASE("centralities agree with brute-force oracles on random graphs") {
    std::mt19937 rng(20240814);
    int eigen_checked = 0;
    for (int round = 0; round < 120; ++round) {
        BipartiteGraph g = bt::random_bipartite(rng, 6, 6);
        auto view = bt::combined_view(g);
        const std::size_t na = g.node_count(Mode::A);

        auto obw = bt::oracle_betweenness(view);
        auto ocl = bt::oracle_closeness(view);
        for (Mode m : {Mode::A, Mode::B}) {
            auto bw = betweenness_centrality(g, m);
            auto cl = closeness_centrality(g, m);
            auto dg = degree_centrality(g, m);
            const std::size_t off = m == Mode::A ? 0 : na;
            for (std::size_t i = 0; i < g.node_count(m); ++i) {
                CHECK_THAT(bw.raw[i], WithinAbs(obw[off + i], 1e-9));
                CHECK_THAT(cl.raw[i], WithinAbs(ocl[off + i], 1e-12));
                CHECK(dg.raw[i] == static_cast<double>(g.degree(m, i)));
            }
        }
        if (bt::is_connected(g)) {
            // connected graphs have a simple dominant eigenvalue; skip the
            // near-degenerate ones where 1000 rounds cannot separate it
            auto [oev, gap] = bt::oracle_dominant_eigenvector(view);
            if (gap > 1e-3) {
                ++eigen_checked;
                auto ev_a = eigenvector_centrality(g, Mode::A);
                auto ev_b = eigenvector_centrality(g, Mode::B);
                for (std::size_t i = 0; i < na; ++i)
                    CHECK_THAT(ev_a.raw[i], WithinAbs(oev[i], 1e-6));
                for (std::size_t i = 0; i < g.node_count(Mode::B); ++i)
                    CHECK_THAT(ev_b.raw[i], WithinAbs(oev[na + i], 1e-6));
            }
        }
    }
    CHECK(eigen_checked > 20);
}
