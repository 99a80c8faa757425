#include "bz/curve_complex.hpp"

#include "bz/error.hpp"

namespace bz {

CurveComplex build_curve_complex(const NCModel& m) {
    const MetricGraph& g = m.graph();
    CurveComplex c;
    for (const auto& v : g.vertices()) c.curves_.push_back({v.id, v.genus, {}});
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const Edge& edge = g.edge(e);
        CurveComplex::Segment seg{edge.id, {}, edge.length};
        const std::array<std::size_t, 2> curve_at{edge.tail, edge.head};
        for (int end = 0; end < 2; ++end) {
            const std::size_t mp = c.marked_points_.size();
            c.marked_points_.push_back({edge.id + (end == 0 ? "-" : "+"), curve_at[end], e, end});
            c.curves_[curve_at[end]].marked_points.push_back(mp);
            seg.ends[end] = mp;
        }
        c.segments_.push_back(std::move(seg));
    }
    return c;
}

MetricGraph CurveComplex::collapse_curves() const {
    std::vector<VertexSpec> vs;
    for (const auto& curve : curves_) vs.push_back({curve.id, curve.genus});
    std::vector<EdgeSpec> es;
    for (const auto& seg : segments_)
        es.push_back({seg.id, curves_[marked_points_[seg.ends[0]].curve].id,
                      curves_[marked_points_[seg.ends[1]].curve].id, seg.length});
    return MetricGraph(std::move(vs), std::move(es));
}

std::vector<CurveComplex::Node> CurveComplex::collapse_segments() const {
    std::vector<Node> nodes;
    for (const auto& seg : segments_)
        nodes.push_back({seg.id, marked_points_[seg.ends[0]].curve, marked_points_[seg.ends[1]].curve});
    return nodes;
}

Rational CCMeasure::total_mass(const CurveComplex& c) const {
    Rational total = 0;
    for (const auto& m : curve_masses) total += m;
    for (std::size_t e = 0; e < segment_densities.size(); ++e) {
        total += segment_densities[e] * c.segments()[e].length;
        for (const auto& [offset, mass] : segment_atoms[e]) total += mass;
    }
    return total;
}

CCMeasure cc_measure(const CurveComplex& c, const NCModel& m) {
    if (!(c.collapse_curves() == m.graph())) throw InvalidInput("cc_measure: curve complex does not match the model");
    const MetricGraph& g = m.graph();
    CCMeasure mu;
    for (const auto& curve : c.curves()) mu.curve_masses.emplace_back(curve.genus);
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        mu.segment_densities.push_back(inverse_sum(g.edge(e).length, effective_resistance(g, e)));
    mu.segment_atoms.resize(g.num_edges());
    return mu;
}

Measure pushforward_to_graph(const CurveComplex& c, const CCMeasure& mu) {
    const MetricGraph g = c.collapse_curves();
    if (mu.curve_masses.size() != g.num_vertices() || mu.segment_densities.size() != g.num_edges())
        throw InvalidInput("pushforward_to_graph: measure does not match the curve complex");
    Measure out(g);
    for (std::size_t v = 0; v < g.num_vertices(); ++v) out.add_vertex_mass(v, mu.curve_masses[v]);
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        out.add_uniform_density(e, mu.segment_densities[e]);
        for (const auto& [offset, mass] : mu.segment_atoms[e]) out.add_point_mass(e, offset, mass);
    }
    return out;
}

Rational FiberMeasure::total_mass() const {
    Rational total = 0;
    for (const auto& m : curve_masses) total += m;
    for (const auto& m : node_atoms) total += m;
    return total;
}

FiberMeasure pushforward_to_special_fiber(const CurveComplex& c, const CCMeasure& mu) {
    if (mu.curve_masses.size() != c.curves().size() || mu.segment_densities.size() != c.segments().size())
        throw InvalidInput("pushforward_to_special_fiber: measure does not match the curve complex");
    FiberMeasure out;
    out.curve_masses = mu.curve_masses;
    for (std::size_t e = 0; e < c.segments().size(); ++e) {
        Rational mass = mu.segment_densities[e] * c.segments()[e].length;
        for (const auto& [offset, m] : mu.segment_atoms[e]) mass += m;
        out.node_atoms.push_back(mass);
    }
    return out;
}

}  // namespace bz
