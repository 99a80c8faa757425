#pragma once

#include "bz/rational.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bz {

struct VertexSpec {
    std::string id;
    int genus = 0;
};

struct EdgeSpec {
    std::string id;
    std::string tail;
    std::string head;
    Rational length{1};
};

struct Vertex {
    std::string id;
    int genus = 0;
};

struct Edge {
    std::string id;
    std::size_t tail = 0;
    std::size_t head = 0;
    Rational length{1};

    bool is_loop() const { return tail == head; }
    std::size_t other_end(std::size_t v) const { return v == tail ? head : tail; }
};

// A finite metric graph with a genus mark on every vertex. Loops and
// parallel edges are allowed. Vertices and edges keep the order in which
// they were given; all algorithms are index based and deterministic.
//
// Construction validates ids, endpoints, lengths (> 0) and genera (>= 0) but
// not connectivity: operations that need a connected graph check it
// themselves and throw DisconnectedGraph.
class MetricGraph {
public:
    MetricGraph() = default;
    MetricGraph(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges);

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Vertex& vertex(std::size_t v) const { return vertices_.at(v); }
    const Edge& edge(std::size_t e) const { return edges_.at(e); }

    // Throw UnknownId.
    std::size_t vertex_index(std::string_view id) const;
    std::size_t edge_index(std::string_view id) const;
    bool has_vertex(std::string_view id) const;
    bool has_edge(std::string_view id) const;

    bool is_connected() const;
    int total_vertex_genus() const;

    std::vector<VertexSpec> vertex_specs() const;
    std::vector<EdgeSpec> edge_specs() const;

    friend bool operator==(const MetricGraph& a, const MetricGraph& b);

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, std::size_t> vertex_lookup_;
    std::unordered_map<std::string, std::size_t> edge_lookup_;
};

/// |E| - |V| + 1. Throws DisconnectedGraph.
std::size_t first_betti(const MetricGraph& g);

/// Connected component label of every vertex, using only edges whose mask
/// entry is true (an empty mask means all edges).
std::vector<std::size_t> component_labels(const MetricGraph& g, const std::vector<bool>& edge_mask = {});

/// True when deleting the interior of edge e disconnects its endpoints.
bool is_bridge(const MetricGraph& g, std::size_t e);

/// Resistance between the endpoints of e in the network obtained by deleting
/// the interior of e, each remaining edge a resistor of its length. Infinite
/// exactly on bridges and zero on loops. Exact rational Gaussian elimination
/// on the grounded Laplacian.
ExtendedRational effective_resistance(const MetricGraph& g, std::size_t e);
ExtendedRational effective_resistance(const MetricGraph& g, std::string_view edge_id);
std::vector<ExtendedRational> effective_resistances(const MetricGraph& g);

/// Resistance between two vertices of g (all edges present). Infinite when
/// they lie in different components.
ExtendedRational vertex_resistance(const MetricGraph& g, std::size_t u, std::size_t v);

/// Every length multiplied by factor (> 0); genus marks unchanged.
MetricGraph scale_lengths(const MetricGraph& g, const Rational& factor);

/// Splits edge e at distance offset from its tail, inserting a genus-0
/// vertex. The first piece keeps index e (tail side, id "<e>.0"); the head
/// side piece is appended (id "<e>.1"); the new vertex is appended.
MetricGraph subdivide_edge(const MetricGraph& g, std::size_t e, const Rational& offset,
                           const std::string& new_vertex_id);

std::string unique_id(const std::string& base, const std::vector<std::string>& taken);

}  // namespace bz
