#include "bz/error.hpp"
#include "bz/metric_graph.hpp"

#include "../support/generators.hpp"
#include "../support/oracles.hpp"

#include "doctest.h"

using namespace bz;

namespace {

MetricGraph triangle(int genus = 1) {
    return MetricGraph({{"v1", genus}, {"v2", genus}, {"v3", genus}},
                       {{"e1", "v1", "v2", Rational(1)}, {"e2", "v2", "v3", Rational(1)}, {"e3", "v3", "v1", Rational(1)}});
}

}  // namespace

TEST_SUITE("metric_graph") {

TEST_CASE("construction validates ids, endpoints, lengths and genera") {
    CHECK_THROWS_AS(MetricGraph({{"v", 0}, {"v", 0}}, {}), InvalidInput);
    CHECK_THROWS_AS(MetricGraph({{"v", 0}}, {{"e", "v", "w", Rational(1)}}), UnknownId);
    CHECK_THROWS_AS(MetricGraph({{"v", 0}}, {{"e", "v", "v", Rational(0)}}), InvalidInput);
    CHECK_THROWS_AS(MetricGraph({{"v", 0}}, {{"e", "v", "v", Rational(-1)}}), InvalidInput);
    CHECK_THROWS_AS(MetricGraph({{"v", -1}}, {}), InvalidInput);
    CHECK_THROWS_AS(MetricGraph({{"v", 0}}, {{"e", "v", "v", Rational(1)}, {"e", "v", "v", Rational(1)}}),
                    InvalidInput);
    const auto g = triangle();
    CHECK(g.vertex_index("v2") == 1);
    CHECK_THROWS_AS(g.edge_index("nope"), UnknownId);
}

TEST_CASE("first Betti number") {
    CHECK(first_betti(triangle()) == 1);
    const MetricGraph theta({{"a", 0}, {"b", 0}}, {{"e1", "a", "b", Rational(1)},
                                                  {"e2", "a", "b", Rational(2)},
                                                  {"e3", "a", "b", Rational(3)}});
    CHECK(first_betti(theta) == 2);
    const MetricGraph loop({{"v", 0}}, {{"e", "v", "v", Rational(1)}});
    CHECK(first_betti(loop) == 1);
    CHECK_THROWS_AS(first_betti(MetricGraph({{"a", 0}, {"b", 0}}, {})), DisconnectedGraph);
}

TEST_CASE("resistances on small graphs") {
    // unit triangle: the other two edges in series
    for (std::size_t e = 0; e < 3; ++e) CHECK(effective_resistance(triangle(), e) == ExtendedRational(Rational(2)));
    const MetricGraph parallel({{"a", 0}, {"b", 0}}, {{"e1", "a", "b", Rational(1)}, {"e2", "a", "b", Rational(2)}});
    CHECK(effective_resistance(parallel, "e1") == ExtendedRational(Rational(2)));
    CHECK(effective_resistance(parallel, "e2") == ExtendedRational(Rational(1)));
    CHECK(vertex_resistance(parallel, 0, 1) == ExtendedRational(Rational(2) / 3));
    const MetricGraph path({{"a", 0}, {"b", 0}}, {{"e", "a", "b", Rational(1)}});
    CHECK(effective_resistance(path, 0).is_infinite());
    CHECK(is_bridge(path, 0));
    const MetricGraph loop({{"v", 0}}, {{"e", "v", "v", Rational(5) / 2}});
    CHECK(effective_resistance(loop, 0) == ExtendedRational(Rational(0)));
    CHECK_FALSE(is_bridge(loop, 0));
}

TEST_CASE("resistance agrees with the Matrix-Tree ratio on random graphs") {
    testing::Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = testing::random_graph(rng, 5, 7);
        for (std::size_t e = 0; e < g.num_edges(); ++e) {
            const auto r = effective_resistance(g, e);
            const auto oracle = testing::matrix_tree_resistance(g, e);
            REQUIRE(r.is_infinite() == !oracle.has_value());
            if (oracle) CHECK(r.value() == *oracle);
            CHECK(is_bridge(g, e) == r.is_infinite());
        }
        CHECK(first_betti(g) == testing::betti_by_euler(g));
    }
}

TEST_CASE("scaling lengths scales resistances") {
    testing::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = testing::random_graph(rng);
        const auto h = scale_lengths(g, Rational(7) / 3);
        for (std::size_t e = 0; e < g.num_edges(); ++e) {
            const auto a = effective_resistance(g, e), b = effective_resistance(h, e);
            REQUIRE(a.is_infinite() == b.is_infinite());
            if (a.is_finite()) CHECK(b.value() == a.value() * Rational(7) / 3);
        }
    }
    CHECK_THROWS_AS(scale_lengths(triangle(), Rational(0)), InvalidInput);
}

TEST_CASE("subdivision keeps ids stable and lengths additive") {
    const auto g = subdivide_edge(triangle(), 0, Rational(1) / 3, "m");
    CHECK(g.num_vertices() == 4);
    CHECK(g.num_edges() == 4);
    CHECK(g.edge(0).id == "e1.0");
    CHECK(g.edge(0).length == Rational(1) / 3);
    CHECK(g.edge(3).id == "e1.1");
    CHECK(g.edge(3).length == Rational(2) / 3);
    CHECK(g.vertex(3).id == "m");
    CHECK(g.vertex(3).genus == 0);
    CHECK(first_betti(g) == 1);
    CHECK_THROWS_AS(subdivide_edge(triangle(), 0, Rational(1), "m"), InvalidInput);
    CHECK_THROWS_AS(subdivide_edge(triangle(), 0, Rational(1) / 2, "v1"), InvalidInput);
}

TEST_CASE("unique ids") {
    CHECK(unique_id("E1", {"E1", "E2"}) != "E1");
    CHECK(unique_id("E3", {"E1", "E2"}) == "E3");
}

}
