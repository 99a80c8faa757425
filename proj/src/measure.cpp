#include "bz/measure.hpp"

#include "bz/error.hpp"

#include <iterator>

namespace bz {

Measure::Measure(const MetricGraph& g)
    : vertex_mass_(g.num_vertices(), Rational(0)), density_(g.num_edges()), points_(g.num_edges()) {
    lengths_.reserve(g.num_edges());
    for (const auto& e : g.edges()) {
        lengths_.push_back(e.length);
        tails_.push_back(e.tail);
        heads_.push_back(e.head);
    }
    for (auto& pieces : density_) pieces.emplace(Rational(0), Rational(0));
}

void Measure::add_vertex_mass(std::size_t v, const Rational& mass) {
    if (v >= vertex_mass_.size()) throw UnknownId("measure: vertex index out of range");
    vertex_mass_[v] += mass;
}

void Measure::add_point_mass(std::size_t e, const Rational& offset, const Rational& mass) {
    if (e >= lengths_.size()) throw UnknownId("measure: edge index out of range");
    if (offset < 0 || offset > lengths_[e]) throw InvalidInput("measure: point offset outside the edge");
    if (offset == 0) return add_vertex_mass(tails_[e], mass);
    if (offset == lengths_[e]) return add_vertex_mass(heads_[e], mass);
    auto& slot = points_[e][offset];
    slot += mass;
    if (slot == 0) points_[e].erase(offset);
}

void Measure::cut(std::size_t e, const Rational& at) {
    auto& pieces = density_[e];
    if (at <= 0 || at >= lengths_[e] || pieces.count(at)) return;
    auto next = pieces.upper_bound(at);
    const Rational value = std::prev(next)->second;
    pieces.emplace_hint(next, at, value);
}

void Measure::merge(std::size_t e) {
    auto& pieces = density_[e];
    auto it = std::next(pieces.begin());
    while (it != pieces.end()) {
        if (it->second == std::prev(it)->second)
            it = pieces.erase(it);
        else
            ++it;
    }
}

void Measure::add_density(std::size_t e, const Rational& from, const Rational& to, const Rational& density) {
    if (e >= lengths_.size()) throw UnknownId("measure: edge index out of range");
    if (from < 0 || to > lengths_[e] || from >= to) throw InvalidInput("measure: bad density interval");
    cut(e, from);
    cut(e, to);
    auto& pieces = density_[e];
    for (auto it = pieces.find(from); it != pieces.end() && it->first < to; ++it) it->second += density;
    merge(e);
}

void Measure::add_uniform_density(std::size_t e, const Rational& density) {
    add_density(e, Rational(0), edge_length(e), density);
}

std::vector<Measure::Piece> Measure::density_pieces(std::size_t e) const {
    std::vector<Piece> out;
    const auto& pieces = density_.at(e);
    for (auto it = pieces.begin(); it != pieces.end(); ++it) {
        auto next = std::next(it);
        out.push_back({it->first, next == pieces.end() ? lengths_[e] : next->first, it->second});
    }
    return out;
}

std::optional<Rational> Measure::uniform_density(std::size_t e) const {
    const auto& pieces = density_.at(e);
    if (pieces.size() != 1) return std::nullopt;
    return pieces.begin()->second;
}

Rational Measure::edge_mass(std::size_t e) const {
    Rational mass = 0;
    for (const auto& p : density_pieces(e)) mass += (p.to - p.from) * p.density;
    for (const auto& [offset, m] : points_.at(e)) mass += m;
    return mass;
}

Rational Measure::continuous_mass() const {
    Rational mass = 0;
    for (std::size_t e = 0; e < lengths_.size(); ++e)
        for (const auto& p : density_pieces(e)) mass += (p.to - p.from) * p.density;
    return mass;
}

Rational Measure::total_mass() const {
    Rational mass = 0;
    for (const auto& m : vertex_mass_) mass += m;
    for (std::size_t e = 0; e < lengths_.size(); ++e) mass += edge_mass(e);
    return mass;
}

Measure Measure::scaled(const Rational& factor) const {
    Measure out = *this;
    for (auto& m : out.vertex_mass_) m *= factor;
    for (std::size_t e = 0; e < lengths_.size(); ++e) {
        for (auto& [k, d] : out.density_[e]) d *= factor;
        for (auto& [k, m] : out.points_[e]) m *= factor;
        if (factor == 0) {
            out.points_[e].clear();
            out.merge(e);
        }
    }
    return out;
}

bool Measure::is_nonnegative() const {
    for (const auto& m : vertex_mass_)
        if (m < 0) return false;
    for (std::size_t e = 0; e < lengths_.size(); ++e) {
        for (const auto& [k, d] : density_[e])
            if (d < 0) return false;
        for (const auto& [k, m] : points_[e])
            if (m < 0) return false;
    }
    return true;
}

bool operator==(const Measure& a, const Measure& b) {
    return a.vertex_mass_ == b.vertex_mass_ && a.lengths_ == b.lengths_ && a.tails_ == b.tails_ &&
           a.heads_ == b.heads_ && a.density_ == b.density_ && a.points_ == b.points_;
}

Measure zhang_measure(const MetricGraph& g) {
    if (!g.is_connected()) throw DisconnectedGraph("zhang_measure: graph is not connected");
    Measure mu(g);
    for (std::size_t v = 0; v < g.num_vertices(); ++v) mu.add_vertex_mass(v, Rational(g.vertex(v).genus));
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        mu.add_uniform_density(e, inverse_sum(g.edge(e).length, effective_resistance(g, e)));
    return mu;
}

std::vector<Rational> foster_coefficients(const MetricGraph& g) {
    std::vector<Rational> out;
    out.reserve(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        out.push_back(g.edge(e).length * inverse_sum(g.edge(e).length, effective_resistance(g, e)));
    return out;
}

Measure pushforward(const MetricGraph& fine, const MetricGraph& coarse, const GraphMap& map, const Measure& mu) {
    if (map.vertices.size() != fine.num_vertices() || map.edges.size() != fine.num_edges() ||
        mu.num_vertices() != fine.num_vertices() || mu.num_edges() != fine.num_edges())
        throw InvalidInput("pushforward: map or measure does not match the fine graph");
    Measure out(coarse);
    for (std::size_t v = 0; v < fine.num_vertices(); ++v) {
        const auto& p = map.vertices[v];
        if (p.on_edge)
            out.add_point_mass(p.index, p.offset, mu.vertex_mass(v));
        else
            out.add_vertex_mass(p.index, mu.vertex_mass(v));
    }
    for (std::size_t e = 0; e < fine.num_edges(); ++e) {
        const auto& img = map.edges[e];
        if (img.collapsed) {
            out.add_vertex_mass(img.index, mu.edge_mass(e));
            continue;
        }
        auto image_of = [&](const Rational& s) { return img.reversed ? img.start - s : img.start + s; };
        for (const auto& [offset, mass] : mu.point_masses(e)) out.add_point_mass(img.index, image_of(offset), mass);
        for (const auto& piece : mu.density_pieces(e)) {
            if (piece.density == 0) continue;
            Rational lo = image_of(piece.from);
            Rational hi = image_of(piece.to);
            if (lo > hi) std::swap(lo, hi);
            out.add_density(img.index, lo, hi, piece.density);
        }
    }
    return out;
}

GraphMap subdivision_retraction(const MetricGraph& coarse, std::size_t e, const Rational& offset) {
    GraphMap map;
    for (std::size_t v = 0; v < coarse.num_vertices(); ++v) map.vertices.push_back({false, v, Rational(0)});
    map.vertices.push_back({true, e, offset});
    for (std::size_t k = 0; k < coarse.num_edges(); ++k) map.edges.push_back({false, k, Rational(0), false});
    map.edges.push_back({false, e, offset, false});
    return map;
}

}  // namespace bz
