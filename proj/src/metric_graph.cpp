#include "bz/metric_graph.hpp"

#include "bz/error.hpp"
#include "bz/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace bz {

MetricGraph::MetricGraph(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges) {
    vertices_.reserve(vertices.size());
    for (auto& spec : vertices) {
        if (spec.id.empty()) throw InvalidInput("vertex with empty id");
        if (spec.genus < 0) throw InvalidInput("vertex '" + spec.id + "' has negative genus");
        if (!vertex_lookup_.emplace(spec.id, vertices_.size()).second)
            throw InvalidInput("duplicate vertex id '" + spec.id + "'");
        vertices_.push_back(Vertex{std::move(spec.id), spec.genus});
    }
    edges_.reserve(edges.size());
    for (auto& spec : edges) {
        if (spec.id.empty()) throw InvalidInput("edge with empty id");
        if (spec.length <= 0) throw InvalidInput("edge '" + spec.id + "' has non-positive length");
        const std::size_t tail = vertex_index(spec.tail);
        const std::size_t head = vertex_index(spec.head);
        if (!edge_lookup_.emplace(spec.id, edges_.size()).second)
            throw InvalidInput("duplicate edge id '" + spec.id + "'");
        edges_.push_back(Edge{std::move(spec.id), tail, head, std::move(spec.length)});
    }
}

std::size_t MetricGraph::vertex_index(std::string_view id) const {
    auto it = vertex_lookup_.find(std::string(id));
    if (it == vertex_lookup_.end()) throw UnknownId("unknown vertex id '" + std::string(id) + "'");
    return it->second;
}

std::size_t MetricGraph::edge_index(std::string_view id) const {
    auto it = edge_lookup_.find(std::string(id));
    if (it == edge_lookup_.end()) throw UnknownId("unknown edge id '" + std::string(id) + "'");
    return it->second;
}

bool MetricGraph::has_vertex(std::string_view id) const { return vertex_lookup_.count(std::string(id)) > 0; }
bool MetricGraph::has_edge(std::string_view id) const { return edge_lookup_.count(std::string(id)) > 0; }

bool MetricGraph::is_connected() const {
    if (vertices_.empty()) return false;
    const auto labels = component_labels(*this);
    return std::all_of(labels.begin(), labels.end(), [&](std::size_t l) { return l == labels.front(); });
}

int MetricGraph::total_vertex_genus() const {
    return std::accumulate(vertices_.begin(), vertices_.end(), 0,
                           [](int acc, const Vertex& v) { return acc + v.genus; });
}

std::vector<VertexSpec> MetricGraph::vertex_specs() const {
    std::vector<VertexSpec> out;
    out.reserve(vertices_.size());
    for (const auto& v : vertices_) out.push_back({v.id, v.genus});
    return out;
}

std::vector<EdgeSpec> MetricGraph::edge_specs() const {
    std::vector<EdgeSpec> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.push_back({e.id, vertices_[e.tail].id, vertices_[e.head].id, e.length});
    return out;
}

bool operator==(const MetricGraph& a, const MetricGraph& b) {
    if (a.vertices_.size() != b.vertices_.size() || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.vertices_.size(); ++i)
        if (a.vertices_[i].id != b.vertices_[i].id || a.vertices_[i].genus != b.vertices_[i].genus) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
        const auto& x = a.edges_[i];
        const auto& y = b.edges_[i];
        if (x.id != y.id || x.tail != y.tail || x.head != y.head || x.length != y.length) return false;
    }
    return true;
}

std::size_t first_betti(const MetricGraph& g) {
    if (!g.is_connected()) throw DisconnectedGraph("first_betti: graph is not connected");
    return g.num_edges() + 1 - g.num_vertices();
}

std::vector<std::size_t> component_labels(const MetricGraph& g, const std::vector<bool>& edge_mask) {
    std::vector<std::size_t> parent(g.num_vertices());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t k = 0; k < g.num_edges(); ++k) {
        if (!edge_mask.empty() && !edge_mask[k]) continue;
        const auto a = find(g.edge(k).tail);
        const auto b = find(g.edge(k).head);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::size_t> labels(g.num_vertices());
    for (std::size_t v = 0; v < g.num_vertices(); ++v) labels[v] = find(v);
    return labels;
}

bool is_bridge(const MetricGraph& g, std::size_t e) {
    const Edge& edge = g.edge(e);
    if (edge.is_loop()) return false;
    std::vector<bool> mask(g.num_edges(), true);
    mask[e] = false;
    const auto labels = component_labels(g, mask);
    return labels[edge.tail] != labels[edge.head];
}

ExtendedRational effective_resistance(const MetricGraph& g, std::size_t e) {
    if (e >= g.num_edges()) throw UnknownId("edge index out of range");
    const Edge& edge = g.edge(e);
    if (edge.is_loop()) return Rational(0);
    std::vector<bool> mask(g.num_edges(), true);
    mask[e] = false;
    auto r = grounded_resistance<Rational>(g, edge.tail, edge.head, mask);
    if (!r) return ExtendedRational::infinity();
    return *r;
}

ExtendedRational effective_resistance(const MetricGraph& g, std::string_view edge_id) {
    return effective_resistance(g, g.edge_index(edge_id));
}

std::vector<ExtendedRational> effective_resistances(const MetricGraph& g) {
    std::vector<ExtendedRational> out;
    out.reserve(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) out.push_back(effective_resistance(g, e));
    return out;
}

ExtendedRational vertex_resistance(const MetricGraph& g, std::size_t u, std::size_t v) {
    if (u >= g.num_vertices() || v >= g.num_vertices()) throw UnknownId("vertex index out of range");
    auto r = grounded_resistance<Rational>(g, u, v);
    if (!r) return ExtendedRational::infinity();
    return *r;
}

MetricGraph scale_lengths(const MetricGraph& g, const Rational& factor) {
    if (factor <= 0) throw InvalidInput("scale_lengths: factor must be positive");
    auto edges = g.edge_specs();
    for (auto& e : edges) e.length *= factor;
    return MetricGraph(g.vertex_specs(), std::move(edges));
}

std::string unique_id(const std::string& base, const std::vector<std::string>& taken) {
    auto used = [&](const std::string& id) { return std::find(taken.begin(), taken.end(), id) != taken.end(); };
    if (!used(base)) return base;
    for (int k = 1;; ++k) {
        std::string candidate = base + "_" + std::to_string(k);
        if (!used(candidate)) return candidate;
    }
}

MetricGraph subdivide_edge(const MetricGraph& g, std::size_t e, const Rational& offset,
                           const std::string& new_vertex_id) {
    const Edge& edge = g.edge(e);
    if (offset <= 0 || offset >= edge.length)
        throw InvalidInput("subdivide_edge: offset must lie strictly inside the edge");
    if (g.has_vertex(new_vertex_id)) throw InvalidInput("subdivide_edge: vertex id '" + new_vertex_id + "' exists");
    auto vertices = g.vertex_specs();
    auto edges = g.edge_specs();
    vertices.push_back({new_vertex_id, 0});

    std::vector<std::string> edge_ids;
    for (const auto& s : edges) edge_ids.push_back(s.id);
    const std::string first_id = unique_id(edge.id + ".0", edge_ids);
    edge_ids.push_back(first_id);
    const std::string second_id = unique_id(edge.id + ".1", edge_ids);

    const EdgeSpec original = edges[e];
    edges[e] = EdgeSpec{first_id, original.tail, new_vertex_id, offset};
    edges.push_back(EdgeSpec{second_id, new_vertex_id, original.head, original.length - offset});
    return MetricGraph(std::move(vertices), std::move(edges));
}

}  // namespace bz
