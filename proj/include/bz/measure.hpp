#pragma once

#include "bz/metric_graph.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace bz {

// A finite measure on a metric graph, exact over the rationals: point masses
// at vertices and at interior points of edges, plus piecewise constant
// densities with respect to arc length (so a constant density d on e has
// mass d * l_e). Bound to the shape of the graph it was created for.
//
// The representation is canonical: point masses at offset 0 or l_e are moved
// to the endpoint vertex, zero point masses are dropped and adjacent density
// pieces with equal values are merged. Equality is therefore structural.
class Measure {
public:
    struct Piece {
        Rational from;
        Rational to;
        Rational density;
    };

    Measure() = default;
    explicit Measure(const MetricGraph& g);

    std::size_t num_vertices() const { return vertex_mass_.size(); }
    std::size_t num_edges() const { return lengths_.size(); }
    const Rational& edge_length(std::size_t e) const { return lengths_.at(e); }

    void add_vertex_mass(std::size_t v, const Rational& mass);
    /// offset measured from the edge tail, in [0, l_e].
    void add_point_mass(std::size_t e, const Rational& offset, const Rational& mass);
    /// Adds density d on [from, to] of edge e.
    void add_density(std::size_t e, const Rational& from, const Rational& to, const Rational& density);
    void add_uniform_density(std::size_t e, const Rational& density);

    const Rational& vertex_mass(std::size_t v) const { return vertex_mass_.at(v); }
    const std::map<Rational, Rational>& point_masses(std::size_t e) const { return points_.at(e); }
    std::vector<Piece> density_pieces(std::size_t e) const;
    /// The density if it is constant along the whole edge.
    std::optional<Rational> uniform_density(std::size_t e) const;

    /// Integral of the density plus interior point masses on e.
    Rational edge_mass(std::size_t e) const;
    Rational continuous_mass() const;
    Rational total_mass() const;

    Measure scaled(const Rational& factor) const;
    bool is_nonnegative() const;

    friend bool operator==(const Measure& a, const Measure& b);

private:
    void cut(std::size_t e, const Rational& at);
    void merge(std::size_t e);

    std::vector<Rational> vertex_mass_;
    std::vector<Rational> lengths_;
    std::vector<std::size_t> tails_;
    std::vector<std::size_t> heads_;
    // Per edge: start offset of each density piece -> density on it. Key 0
    // is always present; a piece runs to the next key or to l_e.
    std::vector<std::map<Rational, Rational>> density_;
    std::vector<std::map<Rational, Rational>> points_;
};

/// Zhang measure: g(v) at every vertex and density 1/(l_e + r_e) on every
/// edge (0 on bridges). Throws DisconnectedGraph.
Measure zhang_measure(const MetricGraph& g);

/// Per-edge Zhang mass l_e/(l_e + r_e) (the Foster coefficient).
std::vector<Rational> foster_coefficients(const MetricGraph& g);

// A cellular map from a finer graph onto a coarser one, as produced by
// subdivisions, leaf attachments and their inverses. Each fine vertex goes
// to a coarse vertex or interior edge point; each fine edge either collapses
// to a coarse vertex or maps isometrically onto a segment of a coarse edge.
struct GraphMap {
    struct Point {
        bool on_edge = false;
        std::size_t index = 0;  // coarse vertex, or coarse edge if on_edge
        Rational offset{0};     // from the coarse edge tail
    };
    struct EdgeImage {
        bool collapsed = false;
        std::size_t index = 0;  // coarse vertex if collapsed, else coarse edge
        Rational start{0};      // coarse offset of the fine tail
        bool reversed = false;  // fine tail->head runs towards the coarse tail
    };
    std::vector<Point> vertices;
    std::vector<EdgeImage> edges;
};

/// Pushforward of a measure on `fine` along `map` into `coarse`.
Measure pushforward(const MetricGraph& fine, const MetricGraph& coarse, const GraphMap& map,
                    const Measure& mu);

/// The retraction that undoes subdivide_edge(coarse, e, offset, ...).
GraphMap subdivision_retraction(const MetricGraph& coarse, std::size_t e, const Rational& offset);

}  // namespace bz
