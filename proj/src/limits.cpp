#include "bz/degeneration/limits.hpp"

#include <algorithm>
#include <cmath>

namespace bz::degen {

namespace {

double smooth_step_kernel(double x) { return x <= 0.0 ? 0.0 : std::exp(-1.0 / x); }

Complex contract_complex(const Eigen::MatrixXcd& inverse, const Eigen::MatrixXcd& moments) {
    return (inverse.conjugate().array() * moments.array()).sum();
}

const NodalChart& nodal_chart(const SyntheticSurface& s, std::size_t chart) {
    if (chart >= s.nodal_charts.size()) throw InvalidInput("nodal chart index out of range");
    return s.nodal_charts[chart];
}

}  // namespace

Cutoff Cutoff::constant(double value) {
    Cutoff c;
    c.constant_ = true;
    c.value_ = value;
    return c;
}

Cutoff Cutoff::bump(Complex center_z, Complex center_w, double radius, double plateau) {
    if (!(radius > 0.0)) throw InvalidInput("cutoff radius must be positive");
    if (!(plateau >= 0.0 && plateau < 1.0)) throw InvalidInput("cutoff plateau must lie in [0, 1)");
    Cutoff c;
    c.constant_ = false;
    c.cz_ = center_z;
    c.cw_ = center_w;
    c.radius_ = radius;
    c.plateau_ = plateau;
    return c;
}

double Cutoff::operator()(Complex z, Complex w) const {
    if (constant_) return value_;
    const double rho = std::sqrt(std::norm(z - cz_) + std::norm(w - cw_)) / radius_;
    if (rho <= plateau_) return 1.0;
    if (rho >= 1.0) return 0.0;
    const double x = (1.0 - rho) / (1.0 - plateau_);
    const double p = smooth_step_kernel(x);
    return p / (p + smooth_step_kernel(1.0 - x));
}

ChartFunction Cutoff::complement() const {
    const Cutoff self = *this;
    return [self](Complex z, Complex w) { return 1.0 - self(z, w); };
}

std::vector<ChartFunction> partition_of_unity(const std::vector<ChartFunction>& bumps) {
    std::vector<ChartFunction> out;
    for (std::size_t i = 0; i < bumps.size(); ++i)
        out.push_back([bumps, i](Complex z, Complex w) {
            double sum = 0.0;
            for (const auto& b : bumps) sum += b(z, w);
            if (!(sum > 0.0)) throw NumericalError("partition of unity: no cutoff covers the point");
            return bumps[i](z, w) / sum;
        });
    return out;
}

EdgeFunction::EdgeFunction(std::function<double(double)> fn, double lo, double hi)
    : fn_(std::move(fn)), lo_(lo), hi_(hi) {
    if (!fn_) throw InvalidInput("edge function is empty");
    if (!(hi >= lo)) throw InvalidInput("edge function domain is empty");
}

EdgeFunction EdgeFunction::constant(double value, double length) {
    return EdgeFunction([value](double) { return value; }, 0.0, length);
}

EdgeFunction EdgeFunction::table(std::vector<double> values, double length) {
    if (values.size() < 2) throw InvalidInput("edge function table needs two or more values");
    if (!(length > 0.0)) throw InvalidInput("edge function table needs a positive length");
    const double h = length / static_cast<double>(values.size() - 1);
    return EdgeFunction(
        [values = std::move(values), h](double u) {
            const double x = u / h;
            const auto i = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(x))), values.size() - 2);
            const double f = x - static_cast<double>(i);
            return values[i] * (1.0 - f) + values[i + 1] * f;
        },
        0.0, length);
}

double EdgeFunction::operator()(double u) const {
    constexpr double slack = 1e-12;
    if (u < lo_ - slack || u > hi_ + slack) throw InvalidInput("edge function evaluated outside its domain");
    return fn_(std::clamp(u, lo_, hi_));
}

void EdgeFunction::require_domain(double length) const {
    constexpr double slack = 1e-12;
    if (lo_ > slack || hi_ < length - slack)
        throw InvalidInput("edge function must be defined on the whole edge [0, " + std::to_string(length) + "]");
}

double EdgeFunction::integrate(double a, double b, int n) const {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double sum = (*this)(a) + (*this)(b);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * (*this)(a + i * h);
    return sum * h / 3.0;
}

Complex weighted_integral(const SyntheticSurface& surface, std::size_t chart, ChartSide side, const ChartFunction& chi,
                          const EdgeFunction& f, Complex t, const QuadratureSpec& quad) {
    const auto& c = nodal_chart(surface, chart);
    f.require_domain(c.edge_length());
    if (!chi) throw InvalidInput("cutoff is empty");
    const auto inv = invert_gram(gram_matrix(surface, t, quad));
    const auto m = nodal_side_moments(c, t, side, quad, [&](const ChartPoint& p) { return chi(p.z, p.w) * f(p.u); });
    return contract_complex(inv.entries(), m.value);
}

double residue_density(const SyntheticSurface& surface, std::size_t chart) {
    const auto& c = nodal_chart(surface, chart);
    double sum = 0.0;
    for (std::size_t j = 0; j < surface.graph_genus; ++j) sum += std::norm(c.residue(j));
    return sum;
}

double limit_branch_integral(const SyntheticSurface& surface, const BranchRestriction& branch,
                             const std::function<double(Complex)>& weight, const QuadratureSpec& quad) {
    const std::size_t h = surface.genus - surface.graph_genus;
    if (h == 0) return 0.0;
    const Eigen::MatrixXcd f = limiting_holomorphic_block(surface, quad);
    Eigen::LLT<Eigen::MatrixXcd> llt(f);
    if (llt.info() != Eigen::Success) throw NumericalError("limiting holomorphic block is not positive definite");
    const Eigen::MatrixXcd inv = llt.solve(Eigen::MatrixXcd::Identity(h, h));
    const Eigen::MatrixXcd m = branch_moments(branch, quad, weight).bottomRightCorner(h, h);
    return contract(inv, m);
}

double weighted_integral_limit(const SyntheticSurface& surface, std::size_t chart, ChartSide side,
                               const ChartFunction& chi, const EdgeFunction& f, double edge_density,
                               const QuadratureSpec& quad) {
    const auto& c = nodal_chart(surface, chart);
    f.require_domain(c.edge_length());
    const double half = c.edge_length() / 2.0;
    const double edge_part = chi(0.0, 0.0) * edge_density * f.integrate(0.0, half);
    std::function<double(Complex)> weight;
    if (side == ChartSide::w)
        weight = [&](Complex w) { return chi(0.0, w); };
    else
        weight = [&](Complex z) { return chi(z, 0.0); };
    const double vertex_part = f(0.0) * limit_branch_integral(surface, branch_restriction(c, side, surface.graph_genus),
                                                              weight, quad);
    return edge_part + vertex_part;
}

VertexMassResult vertex_mass_limit(const SyntheticSurface& surface, std::size_t smooth_chart, const ChartFunction& chi,
                                   const SweepSchedule& sweep, const QuadratureSpec& quad) {
    surface.validate();
    sweep.validate();
    if (smooth_chart >= surface.smooth_charts.size()) throw InvalidInput("smooth chart index out of range");
    const auto& c = surface.smooth_charts[smooth_chart];
    const std::size_t gp = surface.graph_genus;
    const std::size_t h = surface.genus - gp;
    VertexMassResult result;
    std::vector<double> totals, graph;
    for (double L : sweep.L) {
        const Complex t{std::exp(-L), 0.0};
        const auto inv = invert_gram(gram_matrix(surface, t, quad));
        const auto m = smooth_chart_moments(c, t, quad, [&](const ChartPoint& p) { return chi(p.z, p.w); });
        VertexMassPoint p;
        p.L = L;
        p.total = contract(inv.entries(), m.value);
        p.holomorphic_part = h == 0 ? 0.0 : contract(inv.F(), m.value.bottomRightCorner(h, h));
        p.graph_part = p.total - p.holomorphic_part;
        totals.push_back(p.total);
        graph.push_back(p.graph_part);
        result.points.push_back(p);
    }
    result.limit = fit_decay(sweep.L, totals).limit;
    result.graph_exponent = fit_exponent(sweep.L, graph);
    result.prediction = limit_branch_integral(surface, branch_restriction(c, gp),
                                              [&](Complex w) { return chi(0.0, w); }, quad);
    return result;
}

std::pair<Complex, double> half_dumbbell_retraction(Complex w, double v, double epsilon) {
    if (!(epsilon > 0.0)) throw InvalidInput("half-dumbbell epsilon must be positive");
    const double x = std::abs(w);
    const double y = v / epsilon;
    if (x > 1.0 + 1e-12 || y < 0.0 || y >= 1.0) throw InvalidInput("point outside disk x [0, eps)");
    if (x >= y) {
        if (x == 0.0) return {Complex(0.0, 0.0), 0.0};
        return {w / x * ((x - y) / (1.0 - y)), 0.0};
    }
    return {Complex(0.0, 0.0), epsilon * (y - x) / (1.0 - x)};
}

double HalfDumbbellFunction::retracted(Complex w, double v) const {
    const auto [w2, v2] = half_dumbbell_retraction(w, v, epsilon);
    return v2 > 0.0 ? on_edge(v2) : on_curve(w2);
}

CCIntersectionResult cc_intersection_limit(const SyntheticSurface& surface, std::size_t chart,
                                           const HalfDumbbellFunction& f, double edge_density,
                                           const SweepSchedule& sweep, const QuadratureSpec& quad) {
    const auto& c = nodal_chart(surface, chart);
    sweep.validate();
    if (!f.on_curve || !f.on_edge) throw InvalidInput("half-dumbbell function is incomplete");
    if (!(f.epsilon > 0.0) || f.epsilon > c.edge_length() / 2.0 + 1e-12)
        throw InvalidInput("epsilon must lie in (0, 1/(2ab)]");
    CCIntersectionResult result;
    std::vector<double> L, values;
    for (double l : sweep.L) {
        const Complex t{std::exp(-l), 0.0};
        const auto inv = invert_gram(gram_matrix(surface, t, quad));
        const double s_low = std::max(-c.a * f.epsilon * l, std::log(std::abs(t)) / (2.0 * c.b));
        const auto m = nodal_side_moments(
            c, t, ChartSide::w, quad,
            [&](const ChartPoint& p) { return f.retracted(p.w, std::min(p.u, std::nextafter(f.epsilon, 0.0))); },
            s_low, false);
        const double v = contract(inv.entries(), m.value);
        result.points.push_back({l, v});
        L.push_back(l);
        values.push_back(v);
    }
    result.limit = fit_decay(L, values).limit;
    const EdgeFunction edge(f.on_edge, 0.0, f.epsilon);
    result.prediction = edge_density * edge.integrate(0.0, f.epsilon) +
                        limit_branch_integral(surface, branch_restriction(c, ChartSide::w, surface.graph_genus),
                                              f.on_curve, quad);
    return result;
}

}  // namespace bz::degen
