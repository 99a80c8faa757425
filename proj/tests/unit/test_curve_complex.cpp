#include "bz/curve_complex.hpp"
#include "bz/error.hpp"

#include "../support/generators.hpp"

#include "doctest.h"

using namespace bz;

TEST_SUITE("curve_complex") {

TEST_CASE("triangle: three genus-1 curves of mass 1, segments of density 1/3") {
    const NCModel m({{"v1", 1, 1}, {"v2", 1, 1}, {"v3", 1, 1}},
                    {{"e1", "v1", "v2"}, {"e2", "v2", "v3"}, {"e3", "v3", "v1"}});
    const auto c = build_curve_complex(m);
    CHECK(c.curves().size() == 3);
    CHECK(c.segments().size() == 3);
    CHECK(c.marked_points().size() == 6);
    for (const auto& curve : c.curves()) CHECK(curve.marked_points.size() == 2);
    const auto mu = cc_measure(c, m);
    for (const auto& x : mu.curve_masses) CHECK(x == 1);
    for (const auto& d : mu.segment_densities) CHECK(d == Rational(1) / 3);
    CHECK(mu.total_mass(c) == 4);
    CHECK(c.collapse_curves() == m.graph());
    const auto nodes = c.collapse_segments();
    REQUIRE(nodes.size() == 3);
    CHECK(nodes[0].curve_a == 0);
    CHECK(nodes[0].curve_b == 1);
}

TEST_CASE("genus-0 cycle puts no mass on curves") {
    const NCModel m({{"a", 0, 1}, {"b", 0, 1}}, {{"e1", "a", "b"}, {"e2", "b", "a"}});
    const auto c = build_curve_complex(m);
    const auto mu = cc_measure(c, m);
    for (const auto& x : mu.curve_masses) CHECK(x == 0);
    CHECK(mu.total_mass(c) == 1);
    const auto fiber = pushforward_to_special_fiber(c, mu);
    CHECK(fiber.node_atoms[0] == Rational(1) / 2);
}

TEST_CASE("trees: no mass on segments") {
    const NCModel m({{"a", 1, 1}, {"b", 2, 1}}, {{"e", "a", "b"}});
    const auto c = build_curve_complex(m);
    const auto mu = cc_measure(c, m);
    CHECK(mu.segment_densities[0] == 0);
    CHECK(pushforward_to_special_fiber(c, mu).node_atoms[0] == 0);
}

TEST_CASE("self-nodes get two distinct marked points on the same curve") {
    const NCModel m({{"v", 0, 1}}, {{"e", "v", "v"}});
    const auto c = build_curve_complex(m);
    REQUIRE(c.marked_points().size() == 2);
    CHECK(c.marked_points()[0].id != c.marked_points()[1].id);
    CHECK(c.marked_points()[0].curve == c.marked_points()[1].curve);
    CHECK(c.curves()[0].marked_points.size() == 2);
}

TEST_CASE("pushforwards agree with the Zhang measure on random models") {
    testing::Rng rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = testing::random_model(rng);
        const auto c = build_curve_complex(m);
        const auto mu = cc_measure(c, m);
        const auto zhang = zhang_measure(m);
        CHECK(pushforward_to_graph(c, mu) == zhang);
        const auto fiber = pushforward_to_special_fiber(c, mu);
        for (std::size_t e = 0; e < m.graph().num_edges(); ++e) CHECK(fiber.node_atoms[e] == zhang.edge_mass(e));
        CHECK(fiber.total_mass() == zhang.total_mass());
        CHECK(mu.total_mass(c) == genus_decomposition(m).total);
    }
}

TEST_CASE("measures must match their curve complex") {
    const NCModel a({{"v", 0, 1}}, {{"e", "v", "v"}});
    const NCModel b({{"v", 1, 1}}, {});
    CHECK_THROWS_AS(cc_measure(build_curve_complex(a), b), InvalidInput);
}

}
