#include "bz/error.hpp"
#include "bz/measure.hpp"

#include "../support/generators.hpp"
#include "../support/oracles.hpp"

#include "doctest.h"

using namespace bz;

TEST_SUITE("measure") {

TEST_CASE("Zhang measure of the genus (1,1,1) unit triangle") {
    const MetricGraph g({{"v1", 1}, {"v2", 1}, {"v3", 1}},
                        {{"e1", "v1", "v2", Rational(1)}, {"e2", "v2", "v3", Rational(1)}, {"e3", "v3", "v1", Rational(1)}});
    const auto mu = zhang_measure(g);
    for (std::size_t v = 0; v < 3; ++v) CHECK(mu.vertex_mass(v) == 1);
    for (std::size_t e = 0; e < 3; ++e) {
        CHECK(mu.uniform_density(e) == Rational(1) / 3);
        CHECK(mu.edge_mass(e) == Rational(1) / 3);
    }
    CHECK(mu.total_mass() == 4);
}

TEST_CASE("bridges carry no mass, loops carry 1/l") {
    const MetricGraph path({{"a", 1}, {"b", 2}}, {{"e", "a", "b", Rational(3)}});
    const auto mu = zhang_measure(path);
    CHECK(mu.uniform_density(0) == Rational(0));
    CHECK(mu.total_mass() == 3);
    const MetricGraph loop({{"v", 0}}, {{"e", "v", "v", Rational(5) / 2}});
    CHECK(zhang_measure(loop).uniform_density(0) == Rational(2) / 5);
    CHECK(zhang_measure(loop).total_mass() == 1);
    CHECK_THROWS_AS(zhang_measure(MetricGraph({{"a", 0}, {"b", 0}}, {})), DisconnectedGraph);
}

TEST_CASE("Foster identity and total mass on random graphs") {
    testing::Rng rng(3);
    for (int trial = 0; trial < 80; ++trial) {
        const auto g = testing::random_graph(rng);
        Rational sum(0);
        for (const auto& c : foster_coefficients(g)) sum += c;
        CHECK(sum == Rational(static_cast<long long>(first_betti(g))));
        const auto mu = zhang_measure(g);
        CHECK(mu.total_mass() == Rational(static_cast<long long>(first_betti(g)) + g.total_vertex_genus()));
        CHECK(mu.is_nonnegative());
    }
}

TEST_CASE("canonical representation") {
    const MetricGraph g({{"a", 0}, {"b", 0}}, {{"e", "a", "b", Rational(2)}});
    Measure m(g);
    m.add_point_mass(0, Rational(0), Rational(1));  // lands on the tail
    m.add_point_mass(0, Rational(2), Rational(1));  // lands on the head
    m.add_point_mass(0, Rational(1), Rational(1) / 2);
    m.add_point_mass(0, Rational(1), Rational(-1) / 2);  // cancels
    m.add_density(0, Rational(0), Rational(1), Rational(1) / 4);
    m.add_density(0, Rational(1), Rational(2), Rational(1) / 4);  // merges
    CHECK(m.vertex_mass(0) == 1);
    CHECK(m.vertex_mass(1) == 1);
    CHECK(m.point_masses(0).empty());
    CHECK(m.uniform_density(0) == Rational(1) / 4);
    CHECK(m.density_pieces(0).size() == 1);
    Measure n(g);
    n.add_vertex_mass(0, Rational(1));
    n.add_vertex_mass(1, Rational(1));
    n.add_uniform_density(0, Rational(1) / 4);
    CHECK(m == n);
    m.add_density(0, Rational(1) / 2, Rational(1), Rational(1));
    CHECK_FALSE(m.uniform_density(0).has_value());
    CHECK(m.edge_mass(0) == Rational(1) / 2 + Rational(1) / 2);
    CHECK_THROWS_AS(m.add_density(0, Rational(1), Rational(3), Rational(1)), InvalidInput);
    CHECK(m.scaled(Rational(2)).total_mass() == 2 * m.total_mass());
}

TEST_CASE("subdivision retraction pushes Zhang forward to Zhang") {
    testing::Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = testing::random_graph(rng);
        std::uniform_int_distribution<std::size_t> pick(0, g.num_edges() - 1);
        if (g.num_edges() == 0) continue;
        const std::size_t e = pick(rng);
        const Rational offset = g.edge(e).length * Rational(1) / 3;
        const auto fine = subdivide_edge(g, e, offset, "m");
        const auto map = subdivision_retraction(g, e, offset);
        CHECK(pushforward(fine, g, map, zhang_measure(fine)) == zhang_measure(g));
    }
}

TEST_CASE("pushforward moves point masses to image points") {
    const MetricGraph g({{"a", 0}, {"b", 0}}, {{"e", "a", "b", Rational(1)}});
    const auto fine = subdivide_edge(g, 0, Rational(1) / 4, "m");
    Measure mu(fine);
    mu.add_vertex_mass(2, Rational(3));  // the subdivision vertex
    const auto out = pushforward(fine, g, subdivision_retraction(g, 0, Rational(1) / 4), mu);
    REQUIRE(out.point_masses(0).size() == 1);
    CHECK(out.point_masses(0).begin()->first == Rational(1) / 4);
    CHECK(out.point_masses(0).begin()->second == 3);
}

}
