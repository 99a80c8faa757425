#pragma once

#include "bz/measure.hpp"
#include "bz/nc_model.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace bz {

// Metrized curve complex of a model: one abstract curve per component of
// the normalized special fiber, and for every node a segment [0, l_e] whose
// endpoints are glued to the two preimages of the node. Curves carry only
// their genus; the Bergman measure on a curve is represented by its mass.
class CurveComplex {
public:
    struct MarkedPoint {
        std::string id;
        std::size_t curve = 0;
        std::size_t edge = 0;
        int end = 0;  // 0: glued to offset 0 of the edge, 1: to offset l_e
    };
    struct Curve {
        std::string id;
        int genus = 0;
        std::vector<std::size_t> marked_points;
    };
    struct Segment {
        std::string id;
        std::array<std::size_t, 2> ends{};  // marked point at offset 0, at l_e
        Rational length{1};
    };
    // A node of the special fiber: the two branches that meet there.
    struct Node {
        std::string id;
        std::size_t curve_a = 0;
        std::size_t curve_b = 0;
    };

    const std::vector<Curve>& curves() const { return curves_; }
    const std::vector<Segment>& segments() const { return segments_; }
    const std::vector<MarkedPoint>& marked_points() const { return marked_points_; }

    /// Collapsing every curve to a point: the dual graph.
    MetricGraph collapse_curves() const;
    /// Collapsing every segment to a point: incidence of the special fiber.
    std::vector<Node> collapse_segments() const;

    friend CurveComplex build_curve_complex(const NCModel& m);

private:
    std::vector<Curve> curves_;
    std::vector<Segment> segments_;
    std::vector<MarkedPoint> marked_points_;
};

/// One curve per component, one segment per node, two marked points per
/// node (distinct even for self-nodes).
CurveComplex build_curve_complex(const NCModel& m);

struct CCMeasure {
    std::vector<Rational> curve_masses;
    std::vector<Rational> segment_densities;
    std::vector<std::map<Rational, Rational>> segment_atoms;  // interior point masses

    Rational total_mass(const CurveComplex& c) const;
};

/// Bergman mass g(curve) on every curve and the Zhang density on every
/// segment. Throws InvalidInput if c was not built from m.
CCMeasure cc_measure(const CurveComplex& c, const NCModel& m);

/// Curves collapse to vertices; equals the Zhang measure of the dual graph.
Measure pushforward_to_graph(const CurveComplex& c, const CCMeasure& mu);

// Limit measure on the special fiber: per-curve masses (supported on the
// curve) and an atom at every node.
struct FiberMeasure {
    std::vector<Rational> curve_masses;
    std::vector<Rational> node_atoms;

    Rational total_mass() const;
};

/// Segments collapse to their nodes; each node gets l_e/(l_e + r_e).
FiberMeasure pushforward_to_special_fiber(const CurveComplex& c, const CCMeasure& mu);

}  // namespace bz
