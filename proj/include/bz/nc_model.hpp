#pragma once

#include "bz/measure.hpp"
#include "bz/metric_graph.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bz {

/// l1(a, b) = 1/(ab).
Rational edge_length_l1(int a, int b);
/// l2(a, b) = 1/lcm(a, b).
Rational edge_length_l2(int a, int b);

enum class LengthFunction { product, lcm };

Rational node_length(LengthFunction fn, int a, int b);
const char* to_string(LengthFunction fn);
LengthFunction parse_length_function(const std::string& name);

struct BlowupOp {
    enum class Kind { node, smooth };
    Kind kind = Kind::node;
    std::string target;                  // edge id (node) or vertex id (smooth)
    std::string new_vertex;              // exceptional component
    std::vector<std::string> new_edges;  // node: {tail piece, head piece}; smooth: {leaf}

    friend bool operator==(const BlowupOp&, const BlowupOp&) = default;
};

struct ModelVertexSpec {
    std::string id;
    int genus = 0;
    int multiplicity = 1;
};

struct ModelEdgeSpec {
    std::string id;
    std::string tail;
    std::string head;
};

// Combinatorics of a normal crossing model: the dual graph with the
// multiplicity of each component of the special fiber. A node between
// components of multiplicities a (tail) and b (head) gets length
// scale * l(a, b) for the chosen length function, where `scale` is the
// accumulated base-change degree (1 for a model of the original family).
//
// Invariants checked on construction: connected dual graph, multiplicities
// >= 1, and multiplicity 1 on every component of positive genus (the family
// is assumed to have semistable reduction).
class NCModel {
public:
    NCModel(std::vector<ModelVertexSpec> vertices, std::vector<ModelEdgeSpec> edges,
            LengthFunction length_fn = LengthFunction::product, long scale = 1, std::vector<BlowupOp> history = {});

    const MetricGraph& graph() const { return graph_; }
    int multiplicity(std::size_t v) const { return multiplicity_.at(v); }
    const std::vector<int>& multiplicities() const { return multiplicity_; }
    /// (a, b) = multiplicities of the tail and head components.
    std::pair<int, int> node_multiplicities(std::size_t e) const;
    LengthFunction length_function() const { return length_fn_; }
    long scale() const { return scale_; }
    const std::vector<BlowupOp>& history() const { return history_; }
    bool is_semistable() const;

    std::vector<ModelVertexSpec> vertex_specs() const;
    std::vector<ModelEdgeSpec> edge_specs() const;
    NCModel with_length_function(LengthFunction fn) const;

    friend bool operator==(const NCModel& a, const NCModel& b);

private:
    MetricGraph graph_;
    std::vector<int> multiplicity_;
    LengthFunction length_fn_;
    long scale_;
    std::vector<BlowupOp> history_;
};

/// Blowup of the node e: a genus-0 component of multiplicity a+b subdivides
/// e into pieces of lengths l(a, a+b) and l(a+b, b).
NCModel blowup_node(const NCModel& m, const std::string& edge_id);
/// Blowup of a smooth point on component v of multiplicity a: a genus-0 leaf
/// of multiplicity a joined to v by an edge of length l(a, a).
NCModel blowup_smooth(const NCModel& m, const std::string& vertex_id);
NCModel apply_blowup(const NCModel& m, const BlowupOp& op);

/// Retraction of the dual graph of apply_blowup(before, op) onto that of before.
GraphMap blowup_retraction(const NCModel& before, const NCModel& after, const BlowupOp& op);

/// Pushes mu forward from the dual graph of `fine` to that of `coarse`.
/// `fine` must descend from `coarse` by the blowups recorded in its history
/// beyond coarse's own history; anything else throws InvalidInput.
Measure retract_measure(const NCModel& fine, const NCModel& coarse, const Measure& mu);

/// Ground field extension of degree n of a semistable model: all lengths
/// scaled by n. The blowup history is kept, so retractions between
/// base-changed models replay at the new scale.
NCModel base_change(const NCModel& m, long n);

struct GenusDecomposition {
    int graph = 0;     // first Betti number of the dual graph
    int vertices = 0;  // sum of component genera
    int total = 0;

    friend bool operator==(const GenusDecomposition&, const GenusDecomposition&) = default;
};

GenusDecomposition genus_decomposition(const NCModel& m);

inline Measure zhang_measure(const NCModel& m) { return zhang_measure(m.graph()); }

}  // namespace bz
