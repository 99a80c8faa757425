#include "bz/one_forms.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace bz {

std::size_t initial_vertex(const MetricGraph& g, const Orientation& o, std::size_t e) {
    return o.reversed.at(e) ? g.edge(e).head : g.edge(e).tail;
}

std::size_t terminal_vertex(const MetricGraph& g, const Orientation& o, std::size_t e) {
    return o.reversed.at(e) ? g.edge(e).tail : g.edge(e).head;
}

Eigen::VectorXd edge_lengths(const MetricGraph& g) {
    Eigen::VectorXd l(static_cast<Eigen::Index>(g.num_edges()));
    for (std::size_t e = 0; e < g.num_edges(); ++e) l(static_cast<Eigen::Index>(e)) = to_double(g.edge(e).length);
    return l;
}

double harmonicity_defect(const MetricGraph& g, const Orientation& o, const OneForm& w) {
    if (static_cast<std::size_t>(w.size()) != g.num_edges() || o.reversed.size() != g.num_edges())
        throw InvalidInput("one-form or orientation does not match the graph");
    std::vector<std::complex<double>> balance(g.num_vertices());
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto value = w(static_cast<Eigen::Index>(e));
        balance[terminal_vertex(g, o, e)] += value;
        balance[initial_vertex(g, o, e)] -= value;
    }
    double worst = 0.0;
    for (const auto& b : balance) worst = std::max(worst, std::abs(b));
    return worst;
}

std::vector<OneForm> one_form_space_basis(const MetricGraph& g, const Orientation& o) {
    if (!g.is_connected()) throw DisconnectedGraph("one_form_space_basis: graph is not connected");
    if (o.reversed.size() != g.num_edges()) throw InvalidInput("orientation does not match the graph");

    std::size_t root = 0;
    for (std::size_t v = 1; v < g.num_vertices(); ++v)
        if (g.vertex(v).id < g.vertex(root).id) root = v;

    std::vector<std::vector<std::size_t>> incident(g.num_vertices());
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        incident[g.edge(e).tail].push_back(e);
        if (!g.edge(e).is_loop()) incident[g.edge(e).head].push_back(e);
    }

    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> parent_edge(g.num_vertices(), none);
    std::vector<std::size_t> depth(g.num_vertices(), none);
    std::vector<bool> in_tree(g.num_edges(), false);
    std::deque<std::size_t> queue{root};
    depth[root] = 0;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t e : incident[v]) {
            const std::size_t u = g.edge(e).other_end(v);
            if (depth[u] != none) continue;
            depth[u] = depth[v] + 1;
            parent_edge[u] = e;
            in_tree[e] = true;
            queue.push_back(u);
        }
    }

    // Signed contribution of traversing edge e starting at vertex from.
    auto step = [&](std::size_t e, std::size_t from) { return initial_vertex(g, o, e) == from ? 1.0 : -1.0; };

    std::vector<OneForm> basis;
    for (std::size_t f = 0; f < g.num_edges(); ++f) {
        if (in_tree[f]) continue;
        OneForm w = OneForm::Zero(static_cast<Eigen::Index>(g.num_edges()));
        w(static_cast<Eigen::Index>(f)) = 1.0;
        if (!g.edge(f).is_loop()) {
            // Close the cycle: walk from the terminal vertex of f back to
            // its initial vertex through the tree.
            std::size_t a = terminal_vertex(g, o, f);
            std::size_t b = initial_vertex(g, o, f);
            std::vector<std::pair<std::size_t, std::size_t>> down;  // traversed later, reversed
            while (a != b) {
                if (depth[a] >= depth[b]) {
                    const std::size_t e = parent_edge[a];
                    w(static_cast<Eigen::Index>(e)) += step(e, a);
                    a = g.edge(e).other_end(a);
                } else {
                    const std::size_t e = parent_edge[b];
                    const std::size_t up = g.edge(e).other_end(b);
                    down.emplace_back(e, up);
                    b = up;
                }
            }
            for (const auto& [e, from] : down) w(static_cast<Eigen::Index>(e)) += step(e, from);
        }
        basis.push_back(std::move(w));
    }
    return basis;
}

std::complex<double> pairing(const MetricGraph& g, const OneForm& w1, const OneForm& w2) {
    if (static_cast<std::size_t>(w1.size()) != g.num_edges() || w1.size() != w2.size())
        throw InvalidInput("pairing: one-forms do not match the graph");
    const Eigen::VectorXd l = edge_lengths(g);
    return (w1.array() * w2.conjugate().array() * l.array().cast<std::complex<double>>()).sum();
}

std::vector<OneForm> orthonormal_basis(const MetricGraph& g, const Orientation& o) {
    return gram_schmidt<std::complex<double>>(one_form_space_basis(g, o), edge_lengths(g));
}

std::vector<double> foster_densities(const std::vector<OneForm>& orthonormal, std::size_t num_edges) {
    std::vector<double> out(num_edges, 0.0);
    for (const auto& w : orthonormal)
        for (std::size_t e = 0; e < num_edges; ++e) out[e] += std::norm(w(static_cast<Eigen::Index>(e)));
    return out;
}

std::vector<double> foster_densities(const MetricGraph& g, const Orientation& o) {
    return foster_densities(orthonormal_basis(g, o), g.num_edges());
}

double foster_density(const MetricGraph& g, const Orientation& o, std::size_t e) {
    if (e >= g.num_edges()) throw UnknownId("foster_density: edge index out of range");
    return foster_densities(g, o)[e];
}

}  // namespace bz
