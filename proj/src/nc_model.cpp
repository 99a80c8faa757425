#include "bz/nc_model.hpp"

#include "bz/error.hpp"

#include <numeric>

namespace bz {

namespace {

void require_positive(int a, int b) {
    if (a < 1 || b < 1) throw InvalidInput("node multiplicities must be positive");
}

MetricGraph build_graph(const std::vector<ModelVertexSpec>& vertices, const std::vector<ModelEdgeSpec>& edges,
                        LengthFunction fn, long scale) {
    std::vector<VertexSpec> vs;
    std::unordered_map<std::string, int> mult;
    for (const auto& v : vertices) {
        vs.push_back({v.id, v.genus});
        mult[v.id] = v.multiplicity;
    }
    std::vector<EdgeSpec> es;
    for (const auto& e : edges) {
        auto a = mult.find(e.tail);
        auto b = mult.find(e.head);
        if (a == mult.end()) throw UnknownId("unknown vertex id '" + e.tail + "'");
        if (b == mult.end()) throw UnknownId("unknown vertex id '" + e.head + "'");
        es.push_back({e.id, e.tail, e.head, Rational(scale) * node_length(fn, a->second, b->second)});
    }
    return MetricGraph(std::move(vs), std::move(es));
}

}  // namespace

Rational edge_length_l1(int a, int b) {
    require_positive(a, b);
    return Rational(Integer(1), Integer(a) * Integer(b));
}

Rational edge_length_l2(int a, int b) {
    require_positive(a, b);
    return Rational(Integer(1), Integer(std::lcm(a, b)));
}

Rational node_length(LengthFunction fn, int a, int b) {
    return fn == LengthFunction::product ? edge_length_l1(a, b) : edge_length_l2(a, b);
}

const char* to_string(LengthFunction fn) { return fn == LengthFunction::product ? "l1" : "l2"; }

LengthFunction parse_length_function(const std::string& name) {
    if (name == "l1") return LengthFunction::product;
    if (name == "l2") return LengthFunction::lcm;
    throw InvalidInput("unknown length function '" + name + "' (expected l1 or l2)");
}

NCModel::NCModel(std::vector<ModelVertexSpec> vertices, std::vector<ModelEdgeSpec> edges, LengthFunction length_fn,
                 long scale, std::vector<BlowupOp> history)
    : length_fn_(length_fn), scale_(scale), history_(std::move(history)) {
    if (scale_ < 1) throw InvalidInput("model scale must be a positive integer");
    for (const auto& v : vertices) {
        if (v.multiplicity < 1) throw InvalidInput("component '" + v.id + "' has non-positive multiplicity");
        if (v.genus > 0 && v.multiplicity != 1)
            throw InvalidInput("component '" + v.id + "' has positive genus but multiplicity " +
                               std::to_string(v.multiplicity));
        multiplicity_.push_back(v.multiplicity);
    }
    graph_ = build_graph(vertices, edges, length_fn_, scale_);
    if (!graph_.is_connected()) throw DisconnectedGraph("dual graph of the model is not connected");
}

std::pair<int, int> NCModel::node_multiplicities(std::size_t e) const {
    const Edge& edge = graph_.edge(e);
    return {multiplicity_[edge.tail], multiplicity_[edge.head]};
}

bool NCModel::is_semistable() const {
    return std::all_of(multiplicity_.begin(), multiplicity_.end(), [](int m) { return m == 1; });
}

std::vector<ModelVertexSpec> NCModel::vertex_specs() const {
    std::vector<ModelVertexSpec> out;
    for (std::size_t v = 0; v < graph_.num_vertices(); ++v)
        out.push_back({graph_.vertex(v).id, graph_.vertex(v).genus, multiplicity_[v]});
    return out;
}

std::vector<ModelEdgeSpec> NCModel::edge_specs() const {
    std::vector<ModelEdgeSpec> out;
    for (const auto& e : graph_.edges())
        out.push_back({e.id, graph_.vertex(e.tail).id, graph_.vertex(e.head).id});
    return out;
}

NCModel NCModel::with_length_function(LengthFunction fn) const {
    return NCModel(vertex_specs(), edge_specs(), fn, scale_, history_);
}

bool operator==(const NCModel& a, const NCModel& b) {
    return a.graph_ == b.graph_ && a.multiplicity_ == b.multiplicity_ && a.length_fn_ == b.length_fn_ &&
           a.scale_ == b.scale_ && a.history_ == b.history_;
}

namespace {

std::vector<std::string> vertex_ids(const NCModel& m) {
    std::vector<std::string> ids;
    for (const auto& v : m.graph().vertices()) ids.push_back(v.id);
    return ids;
}

std::vector<std::string> edge_ids(const NCModel& m) {
    std::vector<std::string> ids;
    for (const auto& e : m.graph().edges()) ids.push_back(e.id);
    return ids;
}

}  // namespace

NCModel blowup_node(const NCModel& m, const std::string& edge_id) {
    const std::size_t e = m.graph().edge_index(edge_id);
    const auto [a, b] = m.node_multiplicities(e);
    auto vertices = m.vertex_specs();
    auto edges = m.edge_specs();

    BlowupOp op;
    op.kind = BlowupOp::Kind::node;
    op.target = edge_id;
    op.new_vertex = unique_id("E" + std::to_string(m.history().size() + 1), vertex_ids(m));
    auto taken = edge_ids(m);
    const std::string first = unique_id(edge_id + ".0", taken);
    taken.push_back(first);
    const std::string second = unique_id(edge_id + ".1", taken);
    op.new_edges = {first, second};

    vertices.push_back({op.new_vertex, 0, a + b});
    const ModelEdgeSpec original = edges[e];
    edges[e] = {first, original.tail, op.new_vertex};
    edges.push_back({second, op.new_vertex, original.head});

    auto history = m.history();
    history.push_back(op);
    return NCModel(std::move(vertices), std::move(edges), m.length_function(), m.scale(), std::move(history));
}

NCModel blowup_smooth(const NCModel& m, const std::string& vertex_id) {
    const std::size_t v = m.graph().vertex_index(vertex_id);
    auto vertices = m.vertex_specs();
    auto edges = m.edge_specs();

    BlowupOp op;
    op.kind = BlowupOp::Kind::smooth;
    op.target = vertex_id;
    const std::string tag = std::to_string(m.history().size() + 1);
    op.new_vertex = unique_id("E" + tag, vertex_ids(m));
    op.new_edges = {unique_id("L" + tag, edge_ids(m))};

    vertices.push_back({op.new_vertex, 0, m.multiplicity(v)});
    edges.push_back({op.new_edges[0], vertex_id, op.new_vertex});

    auto history = m.history();
    history.push_back(op);
    return NCModel(std::move(vertices), std::move(edges), m.length_function(), m.scale(), std::move(history));
}

NCModel apply_blowup(const NCModel& m, const BlowupOp& op) {
    return op.kind == BlowupOp::Kind::node ? blowup_node(m, op.target) : blowup_smooth(m, op.target);
}

GraphMap blowup_retraction(const NCModel& before, const NCModel& after, const BlowupOp& op) {
    const MetricGraph& coarse = before.graph();
    if (after.graph().num_vertices() != coarse.num_vertices() + 1)
        throw InvalidInput("blowup_retraction: models are not one blowup apart");
    if (op.kind == BlowupOp::Kind::node) {
        const std::size_t e = coarse.edge_index(op.target);
        return subdivision_retraction(coarse, e, after.graph().edge(e).length);
    }
    const std::size_t v = coarse.vertex_index(op.target);
    GraphMap map;
    for (std::size_t k = 0; k < coarse.num_vertices(); ++k) map.vertices.push_back({false, k, Rational(0)});
    map.vertices.push_back({false, v, Rational(0)});
    for (std::size_t k = 0; k < coarse.num_edges(); ++k) map.edges.push_back({false, k, Rational(0), false});
    map.edges.push_back({true, v, Rational(0), false});
    return map;
}

Measure retract_measure(const NCModel& fine, const NCModel& coarse, const Measure& mu) {
    const auto& fh = fine.history();
    const auto& ch = coarse.history();
    if (ch.size() > fh.size() || !std::equal(ch.begin(), ch.end(), fh.begin()))
        throw InvalidInput("retract_measure: coarse history is not a prefix of the fine history");
    if (fine.scale() != coarse.scale() || fine.length_function() != coarse.length_function())
        throw InvalidInput("retract_measure: models use different length conventions");

    std::vector<NCModel> chain{coarse};
    for (std::size_t k = ch.size(); k < fh.size(); ++k) {
        NCModel next = apply_blowup(chain.back(), fh[k]);
        if (!(next.history().back() == fh[k])) throw InvalidInput("retract_measure: blowup history does not replay");
        chain.push_back(std::move(next));
    }
    if (!(chain.back().graph() == fine.graph()) || chain.back().multiplicities() != fine.multiplicities())
        throw InvalidInput("retract_measure: fine model does not descend from the coarse model");

    Measure current = mu;
    for (std::size_t k = chain.size() - 1; k > 0; --k) {
        const GraphMap map = blowup_retraction(chain[k - 1], chain[k], fh[ch.size() + k - 1]);
        current = pushforward(chain[k].graph(), chain[k - 1].graph(), map, current);
    }
    return current;
}

NCModel base_change(const NCModel& m, long n) {
    if (n < 1) throw InvalidInput("base_change: degree must be a positive integer");
    if (!m.is_semistable()) throw InvalidInput("base_change: model is not semistable");
    return NCModel(m.vertex_specs(), m.edge_specs(), m.length_function(), m.scale() * n, m.history());
}

GenusDecomposition genus_decomposition(const NCModel& m) {
    GenusDecomposition d;
    d.graph = static_cast<int>(first_betti(m.graph()));
    d.vertices = m.graph().total_vertex_genus();
    d.total = d.graph + d.vertices;
    return d;
}

}  // namespace bz
