#include "io.hpp"

#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

namespace bz::io {

namespace {

void require_object(const json& j, const std::string& what, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) throw InvalidInput(what + " must be a JSON object");
    std::set<std::string> known;
    for (const char* k : required) {
        known.insert(k);
        if (!j.contains(k)) throw InvalidInput(what + ": missing field '" + k + "'");
    }
    for (const char* k : optional) known.insert(k);
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw InvalidInput(what + ": unknown field '" + key + "'");
}

std::string string_field(const json& j, const char* key, const std::string& what) {
    const auto& v = j.at(key);
    if (!v.is_string()) throw InvalidInput(what + ": '" + key + "' must be a string");
    return v.get<std::string>();
}

int int_field(const json& j, const char* key, const std::string& what) {
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw InvalidInput(what + ": '" + key + "' must be an integer");
    const auto x = v.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw InvalidInput(what + ": '" + key + "' is out of range");
    return static_cast<int>(x);
}

const json& array_field(const json& j, const char* key, const std::string& what) {
    const auto& v = j.at(key);
    if (!v.is_array()) throw InvalidInput(what + ": '" + key + "' must be an array");
    return v;
}

double number(const json& j, const std::string& what) {
    if (!j.is_number()) throw InvalidInput(what + " must be a number");
    return j.get<double>();
}

}  // namespace

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
    }
}

namespace {

bool is_flat(const json& j) {
    if (!j.is_array()) return false;
    for (const auto& x : j)
        if (x.is_structured()) return false;
    return true;
}

// Objects and nested arrays are indented; arrays of scalars stay on one line.
void write(std::string& out, const json& j, int depth) {
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close(2 * depth, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) out += ",\n";
            first = false;
            out += pad + json(key).dump() + ": ";
            write(out, value, depth + 1);
        }
        out += "\n" + close + "}";
    } else if (j.is_array() && !is_flat(j)) {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += pad;
            write(out, j[i], depth + 1);
        }
        out += "\n" + close + "]";
    } else if (j.is_array()) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
        out += "]";
    } else {
        out += j.dump();
    }
}

}  // namespace

std::string dump(const json& j) {
    std::string out;
    write(out, j, 0);
    return out + "\n";
}

Rational rational_from_json(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const InvalidInput& e) {
            throw InvalidInput(what + ": " + e.what());
        }
    }
    throw InvalidInput(what + " must be an integer or a \"p/q\" string");
}

json graph_to_json(const MetricGraph& g) {
    json vertices = json::array(), edges = json::array();
    for (const auto& v : g.vertex_specs()) vertices.push_back({{"id", v.id}, {"genus", v.genus}});
    for (const auto& e : g.edge_specs())
        edges.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}, {"length", to_string(e.length)}});
    return {{"vertices", vertices}, {"edges", edges}};
}

MetricGraph graph_from_json(const json& j) {
    require_object(j, "graph", {"vertices", "edges"});
    std::vector<VertexSpec> vertices;
    std::vector<EdgeSpec> edges;
    for (const auto& v : array_field(j, "vertices", "graph")) {
        require_object(v, "vertex", {"id"}, {"genus"});
        vertices.push_back({string_field(v, "id", "vertex"), v.contains("genus") ? int_field(v, "genus", "vertex") : 0});
    }
    for (const auto& e : array_field(j, "edges", "graph")) {
        require_object(e, "edge", {"id", "tail", "head", "length"});
        const auto id = string_field(e, "id", "edge");
        edges.push_back({id, string_field(e, "tail", "edge " + id), string_field(e, "head", "edge " + id),
                         rational_from_json(e.at("length"), "length of edge " + id)});
    }
    return MetricGraph(std::move(vertices), std::move(edges));
}

bool is_model_json(const json& j) {
    if (!j.is_object()) return false;
    if (j.contains("length_function") || j.contains("scale") || j.contains("history")) return true;
    if (j.contains("vertices") && j["vertices"].is_array())
        for (const auto& v : j["vertices"])
            if (v.is_object() && v.contains("multiplicity")) return true;
    return false;
}

json blowup_to_json(const BlowupOp& op) {
    return {{"kind", op.kind == BlowupOp::Kind::node ? "node" : "smooth"},
            {"target", op.target},
            {"new_vertex", op.new_vertex},
            {"new_edges", op.new_edges}};
}

BlowupOp blowup_from_json(const json& j) {
    require_object(j, "history entry", {"kind", "target", "new_vertex", "new_edges"});
    BlowupOp op;
    const auto kind = string_field(j, "kind", "history entry");
    if (kind == "node")
        op.kind = BlowupOp::Kind::node;
    else if (kind == "smooth")
        op.kind = BlowupOp::Kind::smooth;
    else
        throw InvalidInput("history entry: unknown kind '" + kind + "'");
    op.target = string_field(j, "target", "history entry");
    op.new_vertex = string_field(j, "new_vertex", "history entry");
    for (const auto& e : array_field(j, "new_edges", "history entry")) {
        if (!e.is_string()) throw InvalidInput("history entry: new_edges must be strings");
        op.new_edges.push_back(e.get<std::string>());
    }
    return op;
}

json model_to_json(const NCModel& m) {
    json vertices = json::array(), edges = json::array(), history = json::array();
    for (const auto& v : m.vertex_specs())
        vertices.push_back({{"id", v.id}, {"genus", v.genus}, {"multiplicity", v.multiplicity}});
    const auto& g = m.graph();
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto& edge = g.edge(e);
        edges.push_back({{"id", edge.id},
                         {"tail", g.vertex(edge.tail).id},
                         {"head", g.vertex(edge.head).id},
                         {"length", to_string(edge.length)}});
    }
    for (const auto& op : m.history()) history.push_back(blowup_to_json(op));
    return {{"vertices", vertices},
            {"edges", edges},
            {"length_function", to_string(m.length_function())},
            {"scale", m.scale()},
            {"history", history}};
}

NCModel model_from_json(const json& j) {
    require_object(j, "model", {"vertices", "edges"}, {"length_function", "scale", "history"});
    std::vector<ModelVertexSpec> vertices;
    std::vector<ModelEdgeSpec> edges;
    std::vector<std::optional<Rational>> lengths;
    std::vector<std::optional<std::pair<int, int>>> node_mults;
    for (const auto& v : array_field(j, "vertices", "model")) {
        require_object(v, "vertex", {"id"}, {"genus", "multiplicity"});
        vertices.push_back({string_field(v, "id", "vertex"), v.contains("genus") ? int_field(v, "genus", "vertex") : 0,
                            v.contains("multiplicity") ? int_field(v, "multiplicity", "vertex") : 1});
    }
    for (const auto& e : array_field(j, "edges", "model")) {
        require_object(e, "edge", {"id", "tail", "head"}, {"length", "node_mults"});
        const auto id = string_field(e, "id", "edge");
        edges.push_back({id, string_field(e, "tail", "edge " + id), string_field(e, "head", "edge " + id)});
        lengths.push_back(e.contains("length") ? std::optional(rational_from_json(e["length"], "length of edge " + id))
                                               : std::nullopt);
        if (e.contains("node_mults")) {
            const auto& nm = e["node_mults"];
            if (!nm.is_array() || nm.size() != 2 || !nm[0].is_number_integer() || !nm[1].is_number_integer())
                throw InvalidInput("edge " + id + ": 'node_mults' must be [a, b] with integer entries");
            node_mults.emplace_back(std::pair{nm[0].get<int>(), nm[1].get<int>()});
        } else {
            node_mults.emplace_back(std::nullopt);
        }
    }
    LengthFunction fn = LengthFunction::product;
    if (j.contains("length_function")) fn = parse_length_function(string_field(j, "length_function", "model"));
    long scale = 1;
    if (j.contains("scale")) {
        if (!j["scale"].is_number_integer()) throw InvalidInput("model: 'scale' must be an integer");
        scale = j["scale"].get<long>();
    }
    std::vector<BlowupOp> history;
    if (j.contains("history"))
        for (const auto& op : array_field(j, "history", "model")) history.push_back(blowup_from_json(op));
    NCModel m(std::move(vertices), std::move(edges), fn, scale, std::move(history));
    for (std::size_t e = 0; e < lengths.size(); ++e)
        if (lengths[e] && *lengths[e] != m.graph().edge(e).length)
            throw InvalidInput("edge " + m.graph().edge(e).id + ": length " + to_string(*lengths[e]) +
                               " does not match the model length " + to_string(m.graph().edge(e).length));
    // node multiplicities are those of the two branches, i.e. of the endpoint components
    const auto& specs = m.vertex_specs();
    for (std::size_t e = 0; e < node_mults.size(); ++e) {
        if (!node_mults[e]) continue;
        const auto& edge = m.graph().edge(e);
        const std::pair expected{specs[edge.tail].multiplicity, specs[edge.head].multiplicity};
        if (*node_mults[e] != expected)
            throw InvalidInput("edge " + edge.id + ": node_mults [" + std::to_string(node_mults[e]->first) + ", " +
                               std::to_string(node_mults[e]->second) + "] disagree with endpoint multiplicities [" +
                               std::to_string(expected.first) + ", " + std::to_string(expected.second) + "]");
    }
    return m;
}

json measure_to_json(const MetricGraph& g, const Measure& mu) {
    json atoms = json::array(), densities = json::array(), points = json::array();
    for (std::size_t v = 0; v < g.num_vertices(); ++v) atoms.push_back({g.vertex(v).id, to_string(mu.vertex_mass(v))});
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        if (auto d = mu.uniform_density(e)) {
            densities.push_back({g.edge(e).id, to_string(*d)});
        } else {
            for (const auto& p : mu.density_pieces(e))
                densities.push_back({g.edge(e).id, to_string(p.density), to_string(p.from), to_string(p.to)});
        }
        for (const auto& [offset, mass] : mu.point_masses(e))
            points.push_back({g.edge(e).id, to_string(offset), to_string(mass)});
    }
    json j = {{"atoms", atoms}, {"densities", densities}, {"total_mass", to_string(mu.total_mass())}};
    if (!points.empty()) j["point_atoms"] = points;
    return j;
}

json curve_complex_to_json(const CurveComplex& c) {
    json curves = json::array(), edges = json::array(), marked = json::array();
    for (const auto& curve : c.curves()) {
        json mp = json::array();
        for (auto p : curve.marked_points) mp.push_back(c.marked_points()[p].id);
        curves.push_back({{"id", curve.id}, {"genus", curve.genus}, {"marked_points", mp}});
    }
    for (const auto& s : c.segments())
        edges.push_back({{"id", s.id},
                         {"ends", {c.marked_points()[s.ends[0]].id, c.marked_points()[s.ends[1]].id}},
                         {"length", to_string(s.length)}});
    for (const auto& p : c.marked_points())
        marked.push_back({{"id", p.id}, {"curve", c.curves()[p.curve].id}, {"edge", c.segments()[p.edge].id}});
    return {{"curves", curves}, {"edges", edges}, {"marked_points", marked}};
}

json cc_measure_to_json(const CurveComplex& c, const CCMeasure& mu) {
    json curves = json::array(), densities = json::array(), atoms = json::array();
    for (std::size_t i = 0; i < c.curves().size(); ++i)
        curves.push_back({c.curves()[i].id, to_string(mu.curve_masses[i])});
    for (std::size_t e = 0; e < c.segments().size(); ++e) {
        densities.push_back({c.segments()[e].id, to_string(mu.segment_densities[e])});
        for (const auto& [offset, mass] : mu.segment_atoms[e])
            atoms.push_back({c.segments()[e].id, to_string(offset), to_string(mass)});
    }
    json j = {{"curve_masses", curves}, {"densities", densities}, {"total_mass", to_string(mu.total_mass(c))}};
    if (!atoms.empty()) j["point_atoms"] = atoms;
    return j;
}

json fiber_measure_to_json(const MetricGraph& g, const CurveComplex& c, const FiberMeasure& mu) {
    json curves = json::array(), nodes = json::array();
    for (std::size_t i = 0; i < c.curves().size(); ++i)
        curves.push_back({c.curves()[i].id, to_string(mu.curve_masses[i])});
    for (std::size_t e = 0; e < g.num_edges(); ++e) nodes.push_back({g.edge(e).id, to_string(mu.node_atoms[e])});
    return {{"curve_masses", curves}, {"node_atoms", nodes}, {"total_mass", to_string(mu.total_mass())}};
}

json chart_to_json(const degen::NodalChart& chart) {
    json forms = json::array();
    for (const auto& f : chart.forms) {
        json coeffs = json::array();
        for (const auto& m : f.terms) coeffs.push_back({m.alpha, m.beta, m.coeff.real(), m.coeff.imag()});
        forms.push_back({{"coeffs", coeffs}});
    }
    return {{"a", chart.a}, {"b", chart.b}, {"forms", forms}};
}

degen::NodalChart chart_from_json(const json& j) {
    require_object(j, "chart", {"a", "b", "forms"});
    degen::NodalChart chart;
    chart.a = int_field(j, "a", "chart");
    chart.b = int_field(j, "b", "chart");
    std::size_t index = 0;
    for (const auto& f : array_field(j, "forms", "chart")) {
        const std::string what = "form " + std::to_string(index++);
        require_object(f, what, {"coeffs"});
        degen::TruncatedForm form;
        for (const auto& c : array_field(f, "coeffs", what)) {
            if (!c.is_array() || c.size() != 4 || !c[0].is_number_integer() || !c[1].is_number_integer())
                throw InvalidInput(what + ": coefficients are [alpha, beta, re, im] with integer alpha, beta");
            form.terms.push_back({c[0].get<int>(), c[1].get<int>(),
                                  degen::Complex(number(c[2], what + " re"), number(c[3], what + " im"))});
        }
        chart.forms.push_back(std::move(form));
    }
    if (chart.forms.empty()) throw InvalidInput("chart must carry at least one form");
    chart.validate();
    return chart;
}

}  // namespace bz::io
