// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "bz/curve_complex.hpp"
#include "bz/degeneration.hpp"
#include "bz/measure.hpp"
#include "bz/nc_model.hpp"
#include "bz/one_forms.hpp"

#include "../support/generators.hpp"
#include "../support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace bz;
using namespace bz::degen;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

int failures = 0;

void criterion(int number, const char* title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << "exception: " << e.what() << "; ";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %d. %s -- %s(%.2f s)\n", o.pass ? "PASS" : "FAIL", number, title, o.detail.str().c_str(),
                seconds);
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

NCModel triangle_model() {
    return NCModel({{"v1", 1, 1}, {"v2", 1, 1}, {"v3", 1, 1}},
                   {{"e1", "v1", "v2"}, {"e2", "v2", "v3"}, {"e3", "v3", "v1"}});
}

// Every connected multigraph (loops and parallel edges allowed, vertices
// labelled) on at most 4 vertices with at most 6 edges, plus paths up to 7
// vertices; lengths cycle through a fixed list.
std::vector<MetricGraph> small_catalog() {
    const std::vector<Rational> lengths{Rational(1), Rational(1, 2), Rational(2), Rational(2, 3), Rational(3),
                                        Rational(5, 4)};
    std::vector<MetricGraph> out;
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
        std::vector<VertexSpec> vertices;
        for (std::size_t v = 0; v < n; ++v) vertices.push_back({"v" + std::to_string(v), 0});
        // multisets of pair indices, non-decreasing sequences of length m <= 6
        std::vector<std::size_t> seq;
        std::function<void(std::size_t)> extend = [&](std::size_t from) {
            std::vector<EdgeSpec> edges;
            for (std::size_t i = 0; i < seq.size(); ++i)
                edges.push_back({"e" + std::to_string(i), vertices[pairs[seq[i]].first].id,
                                 vertices[pairs[seq[i]].second].id, lengths[i % lengths.size()]});
            MetricGraph g(vertices, edges);
            if (g.is_connected()) out.push_back(std::move(g));
            if (seq.size() == 6) return;
            for (std::size_t p = from; p < pairs.size(); ++p) {
                seq.push_back(p);
                extend(p);
                seq.pop_back();
            }
        };
        extend(0);
    }
    for (std::size_t n = 5; n <= 7; ++n) {
        std::vector<VertexSpec> vertices;
        std::vector<EdgeSpec> edges;
        for (std::size_t v = 0; v < n; ++v) vertices.push_back({"v" + std::to_string(v), 0});
        for (std::size_t v = 1; v < n; ++v)
            edges.push_back({"e" + std::to_string(v), "v" + std::to_string(v - 1), "v" + std::to_string(v),
                             lengths[v % lengths.size()]});
        out.emplace_back(vertices, edges);
    }
    return out;
}

// The triangle surface with regular parts on every chart and O(1) coupling
// between the graph form and the holomorphic forms.
SyntheticSurface perturbed_triangle_surface() {
    const auto m = triangle_model();
    auto s = surface_from_model(m, orthonormal_basis(m.graph(), Orientation::natural(m.graph())));
    for (auto& c : s.nodal_charts) {
        c.forms[0].terms.push_back({0, 1, 0.3});
        c.forms[0].terms.push_back({1, 0, Complex(0.0, -0.2)});
    }
    for (auto& c : s.smooth_charts) c.forms[0].terms.push_back({0, 0, 0.4});
    s.remainder = Eigen::MatrixXcd::Zero(s.genus, s.genus);
    for (std::size_t k = 1; k < s.genus; ++k) {
        s.remainder(0, k) = 0.2;
        s.remainder(k, 0) = 0.2;
    }
    s.validate();
    return s;
}

}  // namespace

int main() {
    const QuadratureSpec quad = QuadratureSpec::from_environment();
    std::printf("quadrature grid %dx%d (doubled for error estimates)\n", quad.radial, quad.angular);

    criterion(1, "triangle golden test", [](Outcome& o) {
        const auto start = std::chrono::steady_clock::now();
        const MetricGraph g({{"v1", 1}, {"v2", 1}, {"v3", 1}}, {{"e1", "v1", "v2", Rational(1)},
                                                                {"e2", "v2", "v3", Rational(1)},
                                                                {"e3", "v3", "v1", Rational(1)}});
        const auto mu = zhang_measure(g);
        for (std::size_t v = 0; v < 3; ++v) o.require(mu.vertex_mass(v) == 1, "vertex atom is 1");
        for (std::size_t e = 0; e < 3; ++e) o.require(mu.edge_mass(e) == Rational(1, 3), "edge mass is 1/3");
        o.require(mu.total_mass() == 4, "total mass is 4");
        const double t = elapsed_since(start);
        o.require(t < 1.0, "runtime < 1 s");
        o.detail << "atoms 1, edge masses 1/3, total " << to_string(mu.total_mass()) << " exactly; ";
    });

    criterion(2, "Foster identity: one-forms vs resistances on 200+ random graphs", [](Outcome& o) {
        const auto start = std::chrono::steady_clock::now();
        testing::Rng rng(2024);
        double worst_rel = 0, worst_bridge = 0, worst_betti = 0;
        std::size_t graphs = 0;
        for (; graphs < 250; ++graphs) {
            const auto g = testing::random_graph(rng, 6, 8, 12);
            const auto o_ = Orientation::natural(g);
            const auto density = foster_densities(g, o_);
            double sum = 0;
            for (std::size_t e = 0; e < g.num_edges(); ++e) {
                const auto r = effective_resistance(g, e);
                if (r.is_infinite()) {
                    worst_bridge = std::max(worst_bridge, std::abs(density[e]));
                } else {
                    const double expected = to_double(inverse_sum(g.edge(e).length, r));
                    worst_rel = std::max(worst_rel, std::abs(density[e] - expected) / expected);
                }
                sum += to_double(g.edge(e).length) * density[e];
            }
            worst_betti = std::max(worst_betti, std::abs(sum - static_cast<double>(first_betti(g))));
        }
        o.require(worst_rel <= 1e-9, "relative error on non-bridges <= 1e-9");
        o.require(worst_bridge <= 1e-9, "absolute error on bridges <= 1e-9");
        o.require(worst_betti <= 1e-9, "sum l/(l+r) = first Betti within 1e-9");
        o.require(elapsed_since(start) < 30.0, "runtime < 30 s");
        o.detail << graphs << " graphs, max rel err " << worst_rel << ", max bridge " << worst_bridge
                 << ", max Betti err " << worst_betti << "; ";
    });

    criterion(3, "effective resistance equals the Matrix-Tree ratio (exact)", [](Outcome& o) {
        auto graphs = small_catalog();
        const std::size_t catalog = graphs.size();
        testing::Rng rng(99);
        for (int i = 0; i < 100; ++i) graphs.push_back(testing::random_graph(rng, 7, 6, 12));
        std::size_t edges = 0;
        for (const auto& g : graphs)
            for (std::size_t e = 0; e < g.num_edges(); ++e, ++edges) {
                const auto r = effective_resistance(g, e);
                const auto oracle = testing::matrix_tree_resistance(g, e);
                o.require(r.is_infinite() == !oracle.has_value(), "bridge status agrees");
                if (oracle && r.is_finite()) o.require(r.value() == *oracle, "exact resistance agrees");
            }
        o.detail << catalog << " catalog graphs + 100 random, " << edges << " edges compared; ";
    });

    criterion(4, "blowup and base-change invariance (exact)", [](Outcome& o) {
        testing::Rng rng(4242);
        std::size_t ops = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const auto coarse = testing::random_semistable_model(rng);
            auto fine = coarse;
            std::uniform_int_distribution<int> length(1, 4);
            for (int i = length(rng); i > 0; --i, ++ops) fine = testing::random_blowup(rng, fine);
            o.require(retract_measure(fine, coarse, zhang_measure(fine)) == zhang_measure(coarse),
                      "retracted Zhang equals Zhang");
            for (long n : {2L, 3L, 5L}) {
                const auto b = base_change(coarse, n);
                const auto before = zhang_measure(coarse), after = zhang_measure(b);
                for (std::size_t v = 0; v < coarse.graph().num_vertices(); ++v)
                    o.require(before.vertex_mass(v) == after.vertex_mass(v), "base change keeps atoms");
                for (std::size_t e = 0; e < coarse.graph().num_edges(); ++e)
                    o.require(before.edge_mass(e) == after.edge_mass(e), "base change keeps edge masses");
            }
        }
        for (int a = 1; a <= 50; ++a)
            for (int b = 1; b <= 50; ++b) {
                o.require(edge_length_l1(a, b) == edge_length_l1(a, a + b) + edge_length_l1(a + b, b),
                          "1/(ab) subdivision identity");
                o.require(edge_length_l2(a, b) == edge_length_l2(a, a + b) + edge_length_l2(a + b, b),
                          "lcm subdivision identity");
            }
        o.detail << "100 models, " << ops << " blowups, n in {2,3,5}, 2500 (a,b) pairs; ";
    });

    criterion(5, "Gram-matrix slopes against L", [&](Outcome& o) {
        const auto start = std::chrono::steady_clock::now();
        const std::vector<double> L{5, 10, 20, 40};
        const auto single = single_chart_surface(NodalChart{1, 1, {TruncatedForm{{{0, 0, 1.0}}}}});
        std::vector<double> a11;
        for (double l : L) a11.push_back(gram_matrix(single, std::exp(-l), quad).entries()(0, 0).real());
        const double slope = fit_line(L, a11).slope;
        o.require(std::abs(slope - 2 * kPi) <= 0.01 * 2 * kPi, "A11 slope within 1% of 2 pi");

        // theta graph: two orthonormalized residue forms over three nodes
        const NCModel theta({{"a", 0, 1}, {"b", 0, 1}}, {{"e1", "a", "b"}, {"e2", "a", "b"}, {"e3", "b", "a"}});
        auto s = surface_from_model(theta, orthonormal_basis(theta.graph(), Orientation::natural(theta.graph())));
        for (auto& c : s.nodal_charts) {  // regular parts do not change slopes
            c.forms[0].terms.push_back({0, 1, 0.25});
            c.forms[1].terms.push_back({1, 0, Complex(0.1, 0.3)});
        }
        std::vector<double> re, im, d0, d1;
        for (double l : L) {
            const auto g = gram_matrix(s, std::exp(-l), quad);
            o.require(g.hermitian_defect() <= g.quadrature_error + quad.abs_tol, "Hermitian within tolerance");
            re.push_back(g.entries()(0, 1).real());
            im.push_back(g.entries()(0, 1).imag());
            d0.push_back(g.entries()(0, 0).real());
            d1.push_back(g.entries()(1, 1).real());
        }
        const double off = std::hypot(fit_line(L, re).slope, fit_line(L, im).slope);
        o.require(off <= 0.01 * 2 * kPi, "off-diagonal slope within 1% of 2 pi scale");
        const double s0 = fit_line(L, d0).slope, s1 = fit_line(L, d1).slope;
        o.require(std::abs(s0 - 2 * kPi) <= 0.01 * 2 * kPi && std::abs(s1 - 2 * kPi) <= 0.01 * 2 * kPi,
                  "B diagonal slopes within 1% of 2 pi");
        o.require(elapsed_since(start) < 120.0, "runtime < 2 min");
        o.detail << "A11 slope " << slope << " (2 pi = " << 2 * kPi << "), orthonormal pair: diagonal slopes " << s0
                 << ", " << s1 << ", |off-diagonal slope| " << off << "; ";
    });

    criterion(6, "inverse asymptotics 2 pi L B'_11 -> 1", [&](Outcome& o) {
        const auto s = perturbed_triangle_surface();
        auto deviation = [&](double l) {
            const auto inv = invert_gram(gram_matrix(s, std::exp(-l), quad));
            return 2 * kPi * l * inv.B()(0, 0).real() - 1.0;
        };
        const double d10 = deviation(10), d20 = deviation(20), d40 = deviation(40);
        o.require(std::abs(d20) <= 0.02, "within 2% of 1 at L = 20");
        o.require(std::abs(d40) < std::abs(d10), "deviation at L = 40 below deviation at L = 10");
        o.detail << "deviation at L=10,20,40: " << d10 << ", " << d20 << ", " << d40 << "; ";
    });

    criterion(7, "weighted integral limits on a Tate-type chart", [&](Outcome& o) {
        const auto s = single_chart_surface(NodalChart{1, 1, {TruncatedForm{{{0, 0, 1.0}}}}});
        const auto chi = Cutoff::constant(1.0);
        const Complex t{std::exp(-40.0), 0.0};
        const double linear =
            weighted_integral(s, 0, ChartSide::w, chi, EdgeFunction([](double u) { return u; }, 0.0, 1.0), t, quad)
                .real();
        const double one = weighted_integral(s, 0, ChartSide::w, chi, EdgeFunction::constant(1.0, 1.0), t, quad).real();
        o.require(std::abs(linear - 0.125) <= 0.01 * 0.125, "f(u) = u within 1% of 1/8");
        o.require(std::abs(one - 0.5) <= 0.01 * 0.5, "f = 1 within 1% of 1/2");
        o.detail << "f=u: " << linear << ", f=1: " << one << "; ";
    });

    criterion(8, "Tate pushforward is exactly uniform", [&](Outcome& o) {
        double worst = 0, worst_total = 0;
        for (double q : {0.5, 0.1, 0.01}) {
            const auto h = tate_pushforward(q, uniform_bins(10), quad);
            for (double m : h.masses) worst = std::max(worst, std::abs(m - 0.1));
            worst_total = std::max(worst_total, std::abs(h.total - 1.0));
        }
        o.require(worst <= 1e-10, "bin masses 0.1 within 1e-10");
        o.require(worst_total <= 1e-12, "total mass 1 within 1e-12");
        o.detail << "max bin error " << worst << ", max total error " << worst_total << "; ";
    });

    criterion(9, "curve-complex pushforwards", [](Outcome& o) {
        testing::Rng rng(909);
        for (int trial = 0; trial < 100; ++trial) {
            const auto m = testing::random_model(rng);
            const auto c = build_curve_complex(m);
            const auto mu = cc_measure(c, m);
            const auto zhang = zhang_measure(m);
            o.require(pushforward_to_graph(c, mu) == zhang, "graph pushforward equals Zhang");
            const auto fiber = pushforward_to_special_fiber(c, mu);
            for (std::size_t e = 0; e < m.graph().num_edges(); ++e)
                o.require(fiber.node_atoms[e] == zhang.edge_mass(e), "node atom equals edge mass");
        }
        const auto t = triangle_model();
        const auto c = build_curve_complex(t);
        const auto mu = cc_measure(c, t);
        for (const auto& x : mu.curve_masses) o.require(x == 1, "triangle curve mass 1");
        for (const auto& d : mu.segment_densities) o.require(d == Rational(1, 3), "triangle density 1/3");
        o.detail << "100 random models exact; triangle: curve masses 1, densities 1/3; ";
    });

    std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
