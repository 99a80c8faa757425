#include "commands.hpp"

#include "io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace bz::cli {

namespace {

using io::json;

struct Options {
    std::string input;
    std::string output;
    std::string format = "json";
    std::string length;
    bool normalize = false;
    std::string edge, vertex;
    long n = 1;
    std::string sweep = "5,10,20,40";
    std::string grid;
    double q_re = 0.0, q_im = 0.0;
    std::size_t bins = 10;
};

void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.output, std::ios::binary);
    if (!file) throw InvalidInput("cannot write '" + o.output + "'");
    file << text;
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (o.format == f) return;
    throw InvalidInput("format '" + o.format + "' is not available for this command");
}

NCModel apply_length_option(NCModel m, const Options& o) {
    if (o.length.empty()) return m;
    return m.with_length_function(parse_length_function(o.length));
}

NCModel load_model(const Options& o) { return apply_length_option(io::model_from_json(io::read_json_file(o.input)), o); }

// A graph file, or the dual graph of a model file.
MetricGraph load_graph(const Options& o) {
    const auto j = io::read_json_file(o.input);
    if (io::is_model_json(j)) return apply_length_option(io::model_from_json(j), o).graph();
    if (!o.length.empty()) throw InvalidInput("--length needs a model file");
    return io::graph_from_json(j);
}

Measure maybe_normalize(const Measure& mu, const Options& o) {
    if (!o.normalize) return mu;
    if (mu.total_mass() == 0) throw InvalidInput("cannot normalize a measure of total mass 0");
    return mu.scaled(Rational(1) / mu.total_mass());
}

std::string measure_csv(const MetricGraph& g, const Measure& mu) {
    std::ostringstream out;
    out << "kind,id,value,from,to\n";
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        out << "atom," << g.vertex(v).id << "," << to_string(mu.vertex_mass(v)) << ",,\n";
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        for (const auto& p : mu.density_pieces(e))
            out << "density," << g.edge(e).id << "," << to_string(p.density) << "," << to_string(p.from) << ","
                << to_string(p.to) << "\n";
        for (const auto& [offset, mass] : mu.point_masses(e))
            out << "point_atom," << g.edge(e).id << "," << to_string(mass) << "," << to_string(offset) << ","
                << to_string(offset) << "\n";
    }
    return out.str();
}

std::string format_double(double x) {
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

int cmd_zhang(const Options& o, std::ostream& out) {
    require_format(o, {"json", "csv"});
    const auto g = load_graph(o);
    const auto mu = maybe_normalize(zhang_measure(g), o);
    emit(o, out, o.format == "csv" ? measure_csv(g, mu) : io::dump(io::measure_to_json(g, mu)));
    return kOk;
}

int cmd_resistance(const Options& o, std::ostream& out) {
    require_format(o, {"json"});
    const auto g = load_graph(o);
    const auto r = effective_resistances(g);
    const auto foster = foster_coefficients(g);
    json edges = json::array();
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        edges.push_back({{"id", g.edge(e).id},
                         {"length", to_string(g.edge(e).length)},
                         {"resistance", to_string(r[e])},
                         {"bridge", is_bridge(g, e)},
                         {"foster", to_string(foster[e])}});
    emit(o, out, io::dump({{"edges", edges}, {"first_betti", first_betti(g)}}));
    return kOk;
}

int cmd_oneforms(const Options& o, std::ostream& out) {
    require_format(o, {"json"});
    const auto g = load_graph(o);
    const auto orientation = Orientation::natural(g);
    const auto basis = orthonormal_basis(g, orientation);
    const auto density = foster_densities(basis, g.num_edges());
    const auto r = effective_resistances(g);
    json forms = json::array(), foster = json::array();
    for (const auto& w : basis) {
        json form = json::object();
        for (std::size_t e = 0; e < g.num_edges(); ++e) form[g.edge(e).id] = {w(e).real(), w(e).imag()};
        forms.push_back(form);
    }
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        foster.push_back({{"id", g.edge(e).id},
                          {"sum_squares", density[e]},
                          {"inverse_length_plus_resistance", to_string(inverse_sum(g.edge(e).length, r[e]))}});
    emit(o, out, io::dump({{"first_betti", first_betti(g)}, {"basis", forms}, {"foster", foster}}));
    return kOk;
}

// The model goes to the output; the invariance report to `err`.
int finish_model_command(const Options& o, std::ostream& out, std::ostream& err, const NCModel& result, bool equal,
                         const std::string& check) {
    emit(o, out, io::dump(io::model_to_json(result)));
    err << json({{"check", check}, {"equal", equal}}).dump() << "\n";
    return equal ? kOk : kCheckFailed;
}

int cmd_blowup(const Options& o, std::ostream& out, std::ostream& err, BlowupOp::Kind kind) {
    require_format(o, {"json"});
    const auto m = load_model(o);
    const auto fine = kind == BlowupOp::Kind::node ? blowup_node(m, o.edge) : blowup_smooth(m, o.vertex);
    const bool equal = retract_measure(fine, m, zhang_measure(fine)) == zhang_measure(m);
    return finish_model_command(o, out, err, fine, equal, "retracted zhang measure equals zhang measure");
}

int cmd_base_change(const Options& o, std::ostream& out, std::ostream& err) {
    require_format(o, {"json"});
    const auto m = load_model(o);
    const auto changed = base_change(m, o.n);
    const auto before = zhang_measure(m);
    const auto after = zhang_measure(changed);
    bool equal = true;
    for (std::size_t v = 0; v < m.graph().num_vertices(); ++v) equal = equal && before.vertex_mass(v) == after.vertex_mass(v);
    for (std::size_t e = 0; e < m.graph().num_edges(); ++e) equal = equal && before.edge_mass(e) == after.edge_mass(e);
    return finish_model_command(o, out, err, changed, equal, "atoms and edge masses unchanged");
}

int cmd_curve_complex(const Options& o, std::ostream& out, std::ostream& err) {
    require_format(o, {"json"});
    const auto m = load_model(o);
    const auto c = build_curve_complex(m);
    const auto mu = cc_measure(c, m);
    const auto graph_mu = pushforward_to_graph(c, mu);
    const auto fiber_mu = pushforward_to_special_fiber(c, mu);
    const auto zhang = zhang_measure(m);
    bool equal = graph_mu == zhang;
    for (std::size_t e = 0; e < m.graph().num_edges(); ++e) equal = equal && fiber_mu.node_atoms[e] == zhang.edge_mass(e);
    json j = io::curve_complex_to_json(c);
    j["measure"] = io::cc_measure_to_json(c, mu);
    j["graph_pushforward"] = io::measure_to_json(m.graph(), maybe_normalize(graph_mu, o));
    j["fiber_pushforward"] = io::fiber_measure_to_json(m.graph(), c, fiber_mu);
    j["matches_zhang"] = equal;
    emit(o, out, io::dump(j));
    if (!equal) err << "pushforward of the curve-complex measure differs from the Zhang measure\n";
    return equal ? kOk : kCheckFailed;
}

degen::QuadratureSpec quadrature(const Options& o) {
    return o.grid.empty() ? degen::QuadratureSpec::from_environment() : degen::QuadratureSpec::parse_grid(o.grid);
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    require_format(o, {"csv", "json"});
    const auto chart = io::chart_from_json(io::read_json_file(o.input));
    const auto sweep = degen::SweepSchedule::parse(o.sweep);
    const auto report = degen::verify_gram_asymptotics(degen::single_chart_surface(chart), sweep, quadrature(o));
    std::ostringstream text;
    if (o.format == "csv") {
        text << "j,k,L,entry_jk_re,entry_jk_im,fitted_slope,fitted_slope_im,residual,expected_slope,"
                "expected_slope_im,check,pass\n";
        for (const auto& e : report.entries)
            for (std::size_t i = 0; i < report.L.size(); ++i)
                text << e.j << "," << e.k << "," << format_double(report.L[i]) << ","
                     << format_double(e.values[i].real()) << "," << format_double(e.values[i].imag()) << ","
                     << format_double(e.fit_re.slope) << "," << format_double(e.fit_im.slope) << ","
                     << format_double(e.residual()) << "," << format_double(e.expected.real()) << ","
                     << format_double(e.expected.imag()) << ","
                     << (e.kind == degen::EntryCheck::Kind::slope ? "slope" : "bounded") << ","
                     << (e.pass ? "pass" : "fail") << "\n";
    } else {
        json entries = json::array();
        for (const auto& e : report.entries) {
            json values = json::array();
            for (const auto& v : e.values) values.push_back({v.real(), v.imag()});
            entries.push_back({{"j", e.j},
                               {"k", e.k},
                               {"values", values},
                               {"fitted_slope", {e.fit_re.slope, e.fit_im.slope}},
                               {"expected_slope", {e.expected.real(), e.expected.imag()}},
                               {"check", e.kind == degen::EntryCheck::Kind::slope ? "slope" : "bounded"},
                               {"ratio", e.ratio},
                               {"pass", e.pass}});
        }
        text << io::dump({{"L", report.L},
                          {"entries", entries},
                          {"hermitian_defect", report.hermitian_defect},
                          {"pass", report.pass}});
    }
    emit(o, out, text.str());
    err << (report.pass ? "all checks passed" : "some checks failed") << " (hermitian defect "
        << report.hermitian_defect << ")\n";
    return report.pass ? kOk : kCheckFailed;
}

int cmd_tate(const Options& o, std::ostream& out, std::ostream& err) {
    require_format(o, {"csv", "json"});
    const degen::Complex q{o.q_re, o.q_im};
    const auto h = degen::tate_pushforward(q, degen::uniform_bins(o.bins), quadrature(o));
    double worst = 0.0;
    for (std::size_t i = 0; i < h.masses.size(); ++i)
        worst = std::max(worst, std::abs(h.masses[i] - (h.edges[i + 1] - h.edges[i])));
    const bool uniform = worst <= 1e-10 && std::abs(h.total - 1.0) <= 1e-12;
    std::ostringstream text;
    if (o.format == "csv") {
        text << "bin_lo,bin_hi,mass,width\n";
        for (std::size_t i = 0; i < h.masses.size(); ++i)
            text << format_double(h.edges[i]) << "," << format_double(h.edges[i + 1]) << ","
                 << format_double(h.masses[i]) << "," << format_double(h.edges[i + 1] - h.edges[i]) << "\n";
    } else {
        text << io::dump({{"edges", h.edges}, {"masses", h.masses}, {"total", h.total}, {"uniform", uniform}});
    }
    emit(o, out, text.str());
    err << (uniform ? "uniform" : "not uniform") << ": max |mass - width| = " << worst << ", total = "
        << format_double(h.total) << "\n";
    return uniform ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Canonical measures on dual graphs and Bergman measure degenerations", "bz"};
    app.require_subcommand(1);
    auto add_common = [&](CLI::App* sub, bool input = true) {
        if (input) sub->add_option("input", o.input, "input file")->required();
        sub->add_option("-o,--output", o.output, "output file (default: stdout)");
        sub->add_option("--format", o.format, "json or csv");
    };
    auto add_length = [&](CLI::App* sub) {
        sub->add_option("--length", o.length, "node length function for models: l1 (1/ab) or l2 (1/lcm)")
            ->check(CLI::IsMember({"l1", "l2"}));
    };
    auto* zhang = app.add_subcommand("zhang", "Zhang canonical measure");
    add_common(zhang);
    add_length(zhang);
    zhang->add_flag("--normalize", o.normalize, "divide by the total mass");
    auto* resistance = app.add_subcommand("resistance", "effective resistances across edges");
    add_common(resistance);
    add_length(resistance);
    auto* oneforms = app.add_subcommand("oneforms", "orthonormal harmonic one-forms and Foster densities");
    add_common(oneforms);
    add_length(oneforms);
    auto* bnode = app.add_subcommand("blowup-node", "blow up a node of a model");
    add_common(bnode);
    add_length(bnode);
    bnode->add_option("--edge", o.edge, "edge id")->required();
    auto* bsmooth = app.add_subcommand("blowup-smooth", "blow up a smooth point of a component");
    add_common(bsmooth);
    add_length(bsmooth);
    bsmooth->add_option("--vertex", o.vertex, "vertex id")->required();
    auto* bc = app.add_subcommand("base-change", "base change of degree n of a semistable model");
    add_common(bc);
    add_length(bc);
    bc->add_option("-n,--degree", o.n, "degree")->required();
    auto* cc = app.add_subcommand("curve-complex", "metrized curve complex and its measure");
    add_common(cc);
    add_length(cc);
    cc->add_flag("--normalize", o.normalize, "normalize the graph pushforward");
    auto* verify = app.add_subcommand("verify-asymptotics", "Gram matrix slope checks for a nodal chart");
    add_common(verify);
    verify->add_option("--sweep", o.sweep, "comma separated values of L = log(1/|t|)");
    verify->add_option("--grid", o.grid, "quadrature grid, e.g. 512x256");
    auto* tate = app.add_subcommand("tate", "Bergman measure of a Tate curve pushed to the circle");
    add_common(tate, false);
    tate->add_option("-q,--q", o.q_re, "real part of q")->required();
    tate->add_option("--q-im", o.q_im, "imaginary part of q");
    tate->add_option("--bins", o.bins, "number of bins")->check(CLI::PositiveNumber);
    tate->add_option("--grid", o.grid, "quadrature grid, e.g. 512x256");
    for (auto* sub : {verify, tate}) sub->get_option("--format")->default_str("csv");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }
    // verify-asymptotics and tate default to CSV.
    if ((app.got_subcommand(verify) || app.got_subcommand(tate)) && verify->count("--format") + tate->count("--format") == 0)
        o.format = "csv";

    try {
        if (app.got_subcommand(zhang)) return cmd_zhang(o, out);
        if (app.got_subcommand(resistance)) return cmd_resistance(o, out);
        if (app.got_subcommand(oneforms)) return cmd_oneforms(o, out);
        if (app.got_subcommand(bnode)) return cmd_blowup(o, out, err, BlowupOp::Kind::node);
        if (app.got_subcommand(bsmooth)) return cmd_blowup(o, out, err, BlowupOp::Kind::smooth);
        if (app.got_subcommand(bc)) return cmd_base_change(o, out, err);
        if (app.got_subcommand(cc)) return cmd_curve_complex(o, out, err);
        if (app.got_subcommand(verify)) return cmd_verify(o, out, err);
        if (app.got_subcommand(tate)) return cmd_tate(o, out, err);
    } catch (const DisconnectedGraph& e) {
        err << "error: " << e.what() << "\n";
        return kDisconnected;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumericalError;
    }
    return kInvalidInput;
}

}  // namespace bz::cli
