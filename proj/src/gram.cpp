#include "bz/degeneration/gram.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bz::degen {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct PreparedSide {
    std::vector<std::vector<RestrictedForm::Term>> forms;
    int max_root = 0;
    int max_coord = 0;
};

PreparedSide prepare(const std::vector<RestrictedForm>& restricted) {
    PreparedSide p;
    for (const auto& r : restricted) {
        p.forms.push_back(r.terms());
        for (const auto& term : r.terms()) {
            p.max_root = std::max(p.max_root, term.root_power);
            p.max_coord = std::max(p.max_coord, term.coord_power);
        }
    }
    return p;
}

void powers(Complex x, int max_power, std::vector<Complex>& out) {
    out.resize(static_cast<std::size_t>(max_power) + 1);
    out[0] = 1.0;
    for (int i = 1; i <= max_power; ++i) out[i] = out[i - 1] * x;
}

void accumulate(std::vector<Complex>& acc, const std::vector<Complex>& g, double weight) {
    const std::size_t n = g.size();
    for (std::size_t j = 0; j < n; ++j) {
        const Complex gj = weight * g[j];
        for (std::size_t k = 0; k < n; ++k) acc[j * n + k] += gj * std::conj(g[k]);
    }
}

Eigen::MatrixXcd to_matrix(const std::vector<Complex>& acc, std::size_t n, double scale) {
    Eigen::MatrixXcd m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) m(j, k) = acc[j * n + k] * scale;
    return m;
}

// Midpoint rule over s in [s_low, 0], phi in [0, 2 pi) with the given grid; the
// integrand is x h_j * conj(x h_k), i.e. the area element in log coordinates.
Eigen::MatrixXcd nodal_side_grid(const NodalChart& chart, Complex t, ChartSide side, double s_low, int ns, int nphi,
                                 const PointWeight& weight) {
    std::vector<RestrictedForm> restricted;
    for (std::size_t j = 0; j < chart.forms.size(); ++j) restricted.push_back(restrict_to_fiber(chart, j, t, side));
    const std::size_t n = restricted.size();
    const auto prep = prepare(restricted);
    const int sheets = side == ChartSide::w ? chart.a : chart.b;
    const int cm = side == ChartSide::w ? chart.b : chart.a;
    const Complex log_t = std::log(t);
    const double L = -std::log(std::abs(t));
    const double ds = -s_low / ns;
    const double dphi = kTwoPi / nphi;

    std::vector<Complex> acc(n * n, Complex(0.0, 0.0));
    std::vector<Complex> row(n * n);
    std::vector<Complex> rp, xp, g(n);
    for (int i = 0; i < ns; ++i) {
        const double s = s_low + (i + 0.5) * ds;
        std::fill(row.begin(), row.end(), Complex(0.0, 0.0));
        for (int q = 0; q < nphi; ++q) {
            const double phi = (q + 0.5) * dphi;
            const Complex log_x{s, phi};
            const Complex x = std::exp(log_x);
            powers(x, prep.max_coord, xp);
            for (int sheet = 0; sheet < sheets; ++sheet) {
                const Complex log_root = (log_t - static_cast<double>(cm) * log_x) / static_cast<double>(sheets) +
                                         Complex(0.0, kTwoPi * sheet / sheets);
                const Complex root = std::exp(log_root);
                powers(root, prep.max_root, rp);
                for (std::size_t j = 0; j < n; ++j) {
                    Complex v{0.0, 0.0};
                    for (const auto& term : prep.forms[j]) v += term.coeff * rp[term.root_power] * xp[term.coord_power];
                    g[j] = v;
                }
                double wgt = 1.0;
                if (weight) {
                    ChartPoint p;
                    p.u = -s / (sheets * L);
                    if (side == ChartSide::w) {
                        p.w = x;
                        p.z = root;
                    } else {
                        p.z = x;
                        p.w = root;
                    }
                    wgt = weight(p);
                }
                if (wgt != 0.0) accumulate(row, g, wgt);
            }
        }
        for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += row[m];
    }
    return to_matrix(acc, n, ds * dphi);
}

Eigen::MatrixXcd smooth_grid(const SmoothChart& chart, Complex t, int nr, int nphi, const PointWeight& weight) {
    const std::size_t n = chart.forms.size();
    const int a = chart.a;
    int max_alpha = 0, max_beta = 0;
    for (const auto& form : chart.forms)
        for (const auto& m : form.terms) {
            max_alpha = std::max(max_alpha, m.alpha - a + 1);
            max_beta = std::max(max_beta, m.beta);
        }
    const Complex root = std::exp(std::log(t) / static_cast<double>(a));
    const double dr = 1.0 / nr;
    const double dphi = kTwoPi / nphi;
    std::vector<Complex> acc(n * n, Complex(0.0, 0.0));
    std::vector<Complex> row(n * n);
    std::vector<Complex> zp, wp, g(n);
    for (int i = 0; i < nr; ++i) {
        const double r = (i + 0.5) * dr;
        std::fill(row.begin(), row.end(), Complex(0.0, 0.0));
        for (int q = 0; q < nphi; ++q) {
            const double phi = (q + 0.5) * dphi;
            const Complex w = std::polar(r, phi);
            powers(w, max_beta, wp);
            for (int sheet = 0; sheet < a; ++sheet) {
                const Complex z = root * std::polar(1.0, kTwoPi * sheet / a);
                powers(z, max_alpha, zp);
                for (std::size_t j = 0; j < n; ++j) {
                    Complex v{0.0, 0.0};
                    for (const auto& m : chart.forms[j].terms)
                        v += m.coeff / static_cast<double>(a) * zp[m.alpha - a + 1] * wp[m.beta];
                    g[j] = v;
                }
                const double wgt = weight ? weight(ChartPoint{z, w, 0.0}) : 1.0;
                if (wgt != 0.0) accumulate(row, g, wgt * r);
            }
        }
        for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += row[m];
    }
    return to_matrix(acc, n, dr * dphi);
}

Moments converged(const Eigen::MatrixXcd& coarse, const Eigen::MatrixXcd& fine, const QuadratureSpec& quad,
                  const std::string& what) {
    Moments m;
    m.value = fine;
    m.error = fine.size() == 0 ? 0.0 : (fine - coarse).cwiseAbs().maxCoeff();
    const double scale = fine.size() == 0 ? 0.0 : fine.cwiseAbs().maxCoeff();
    if (!(m.error <= quad.abs_tol + quad.rel_tol * scale)) {
        std::ostringstream msg;
        msg << "quadrature did not converge on " << what << ": estimate " << m.error << " exceeds tolerance "
            << quad.abs_tol + quad.rel_tol * scale << " (grid " << quad.radial << "x" << quad.angular
            << ", max entry " << scale << ")";
        throw NumericalError(msg.str());
    }
    return m;
}

std::string describe(Complex t) {
    std::ostringstream out;
    out << "L = " << -std::log(std::abs(t));
    return out.str();
}

}  // namespace

void SyntheticSurface::validate() const {
    if (graph_genus > genus) throw InvalidInput("graph genus exceeds genus");
    auto check_count = [&](std::size_t count, const std::string& kind) {
        if (count != genus) throw InvalidInput(kind + " chart must carry " + std::to_string(genus) + " forms");
    };
    for (const auto& c : nodal_charts) {
        c.validate();
        check_count(c.forms.size(), "nodal");
        for (std::size_t j = graph_genus; j < genus; ++j) {
            if (c.residue(j) != Complex(0.0, 0.0))
                throw InvalidInput("holomorphic form " + std::to_string(j) + " has a residue at a node");
            for (const auto& m : c.forms[j].terms) {
                if (m.coeff == Complex(0.0, 0.0)) continue;
                if ((c.a > 1 && m.alpha == c.a - 1) || (c.b > 1 && m.beta == c.b - 1))
                    throw InvalidInput("holomorphic form " + std::to_string(j) +
                                       " is nonzero on a branch of multiplicity > 1");
            }
        }
    }
    for (const auto& c : smooth_charts) {
        c.validate();
        check_count(c.forms.size(), "smooth");
        if (c.a > 1)
            for (std::size_t j = graph_genus; j < genus; ++j)
                for (const auto& m : c.forms[j].terms)
                    if (m.alpha == c.a - 1 && m.coeff != Complex(0.0, 0.0))
                        throw InvalidInput("holomorphic form " + std::to_string(j) +
                                           " is nonzero on a component of multiplicity > 1");
    }
    if (remainder.size() != 0) {
        if (remainder.rows() != static_cast<Eigen::Index>(genus) || remainder.cols() != static_cast<Eigen::Index>(genus))
            throw InvalidInput("remainder must be a genus x genus matrix");
        if ((remainder - remainder.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
            throw InvalidInput("remainder must be Hermitian");
    }
}

Eigen::MatrixXcd SyntheticSurface::remainder_or_zero() const {
    if (remainder.size() != 0) return remainder;
    return Eigen::MatrixXcd::Zero(genus, genus);
}

SyntheticSurface single_chart_surface(const NodalChart& chart) {
    SyntheticSurface s;
    s.genus = s.graph_genus = chart.forms.size();
    s.nodal_charts.push_back(chart);
    s.validate();
    return s;
}

SyntheticSurface surface_from_model(const NCModel& model, const std::vector<OneForm>& graph_forms) {
    if (model.length_function() != LengthFunction::product || model.scale() != 1)
        throw InvalidInput("surface_from_model needs product lengths 1/(ab) and scale 1");
    const auto& g = model.graph();
    const std::size_t gp = graph_forms.size();
    const std::size_t total = gp + static_cast<std::size_t>(g.total_vertex_genus());
    SyntheticSurface s;
    s.genus = total;
    s.graph_genus = gp;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto [a, b] = model.node_multiplicities(e);
        NodalChart c{a, b, std::vector<TruncatedForm>(total)};
        for (std::size_t j = 0; j < gp; ++j) {
            if (static_cast<std::size_t>(graph_forms[j].size()) != g.num_edges())
                throw InvalidInput("one-form size does not match the model graph");
            c.forms[j].terms.push_back({a - 1, b - 1, graph_forms[j](e)});
        }
        s.nodal_charts.push_back(std::move(c));
    }
    std::size_t next = gp;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        const int genus = g.vertex(v).genus;
        if (genus == 0) continue;
        SmoothChart c{model.multiplicity(v), std::vector<TruncatedForm>(total)};
        for (int k = 0; k < genus; ++k, ++next)
            c.forms[next].terms.push_back({c.a - 1, k, Complex(std::sqrt((k + 1) / std::numbers::pi), 0.0)});
        s.smooth_charts.push_back(std::move(c));
    }
    s.validate();
    return s;
}

Moments nodal_side_moments(const NodalChart& chart, Complex t, ChartSide side, const QuadratureSpec& quad,
                           const PointWeight& weight, double s_low, bool use_inner) {
    chart.validate();
    require_parameter(t);
    const int cm = side == ChartSide::w ? chart.b : chart.a;
    const double inner = std::log(std::abs(t)) / (2.0 * cm);
    if (use_inner) s_low = inner;
    if (!(s_low >= inner - 1e-12) || !(s_low < 0.0)) throw InvalidInput("integration range outside the half annulus");
    const auto fine_spec = quad.doubled();
    const auto coarse = nodal_side_grid(chart, t, side, s_low, quad.radial, quad.angular, weight);
    const auto fine = nodal_side_grid(chart, t, side, s_low, fine_spec.radial, fine_spec.angular, weight);
    return converged(coarse, fine, quad,
                     std::string(side == ChartSide::w ? "w" : "z") + "-side half annulus at " + describe(t));
}

Moments smooth_chart_moments(const SmoothChart& chart, Complex t, const QuadratureSpec& quad,
                             const PointWeight& weight) {
    chart.validate();
    require_parameter(t);
    const auto fine_spec = quad.doubled();
    const auto coarse = smooth_grid(chart, t, quad.radial, quad.angular, weight);
    const auto fine = smooth_grid(chart, t, fine_spec.radial, fine_spec.angular, weight);
    return converged(coarse, fine, quad, "smooth chart disk at " + describe(t));
}

Complex half_annulus_pairing(const NodalChart& chart, std::size_t j, std::size_t k, Complex t,
                             const QuadratureSpec& quad) {
    if (j >= chart.forms.size() || k >= chart.forms.size()) throw InvalidInput("form index out of range");
    return nodal_side_moments(chart, t, ChartSide::w, quad).value(j, k);
}

GramMatrix gram_matrix(const SyntheticSurface& surface, Complex t, const QuadratureSpec& quad) {
    surface.validate();
    require_parameter(t);
    Eigen::MatrixXcd a = surface.remainder_or_zero();
    double error = 0.0;
    for (const auto& c : surface.nodal_charts)
        for (auto side : {ChartSide::w, ChartSide::z}) {
            const auto m = nodal_side_moments(c, t, side, quad);
            a += m.value;
            error += m.error;
        }
    for (const auto& c : surface.smooth_charts) {
        const auto m = smooth_chart_moments(c, t, quad);
        a += m.value;
        error += m.error;
    }
    return GramMatrix(std::move(a), surface.graph_genus, error);
}

GramInverse invert_gram(const GramMatrix& a) {
    const auto n = a.entries().rows();
    if (n == 0) return GramInverse(Eigen::MatrixXcd(0, 0), 0);
    // Solve against the Hermitian part; A is Hermitian up to rounding.
    const Eigen::MatrixXcd h = 0.5 * (a.entries() + a.entries().adjoint());
    Eigen::LLT<Eigen::MatrixXcd> llt(h);
    if (llt.info() != Eigen::Success) throw NumericalError("Gram matrix is not positive definite");
    Eigen::MatrixXcd inv = llt.solve(Eigen::MatrixXcd::Identity(n, n));
    inv = 0.5 * (inv + inv.adjoint());
    return GramInverse(std::move(inv), a.graph_genus());
}

double contract(const Eigen::MatrixXcd& inverse, const Eigen::MatrixXcd& moments) {
    if (inverse.rows() != moments.rows() || inverse.cols() != moments.cols())
        throw InvalidInput("contract: size mismatch");
    return (inverse.conjugate().array() * moments.array()).sum().real();
}

BranchRestriction branch_restriction(const NodalChart& chart, ChartSide side, std::size_t graph_genus) {
    BranchRestriction br;
    br.sheets = side == ChartSide::w ? chart.a : chart.b;
    br.forms.resize(chart.forms.size());
    for (std::size_t j = graph_genus; j < chart.forms.size(); ++j)
        for (const auto& m : chart.forms[j].terms) {
            if (side == ChartSide::w && m.alpha == chart.a - 1 && m.beta >= chart.b)
                br.forms[j].push_back({m.coeff / static_cast<double>(chart.a), m.beta - chart.b});
            if (side == ChartSide::z && m.beta == chart.b - 1 && m.alpha >= chart.a)
                br.forms[j].push_back({-m.coeff / static_cast<double>(chart.b), m.alpha - chart.a});
        }
    return br;
}

BranchRestriction branch_restriction(const SmoothChart& chart, std::size_t graph_genus) {
    BranchRestriction br;
    br.sheets = chart.a;
    br.forms.resize(chart.forms.size());
    for (std::size_t j = graph_genus; j < chart.forms.size(); ++j)
        for (const auto& m : chart.forms[j].terms)
            if (m.alpha == chart.a - 1) br.forms[j].push_back({m.coeff / static_cast<double>(chart.a), m.beta});
    return br;
}

Eigen::MatrixXcd branch_moments(const BranchRestriction& branch, const QuadratureSpec& quad,
                                const std::function<double(Complex)>& weight) {
    const std::size_t n = branch.forms.size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    if (!weight) {
        // int_disk x^p conj(x)^q dA = pi / (p + 1) if p = q, else 0
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (const auto& x : branch.forms[j])
                    for (const auto& y : branch.forms[k])
                        if (x.power == y.power)
                            m(j, k) += x.coeff * std::conj(y.coeff) * (std::numbers::pi / (x.power + 1));
        return m * static_cast<double>(branch.sheets);
    }
    const double dr = 1.0 / quad.radial;
    const double dphi = kTwoPi / quad.angular;
    std::vector<Complex> acc(n * n, Complex(0.0, 0.0)), g(n);
    for (int i = 0; i < quad.radial; ++i) {
        const double r = (i + 0.5) * dr;
        for (int q = 0; q < quad.angular; ++q) {
            const Complex x = std::polar(r, (q + 0.5) * dphi);
            for (std::size_t j = 0; j < n; ++j) {
                Complex v{0.0, 0.0};
                for (const auto& term : branch.forms[j]) v += term.coeff * std::pow(x, term.power);
                g[j] = v;
            }
            const double wgt = weight(x);
            if (wgt != 0.0) accumulate(acc, g, wgt * r);
        }
    }
    return to_matrix(acc, n, dr * dphi * branch.sheets);
}

Eigen::MatrixXcd limiting_holomorphic_block(const SyntheticSurface& surface, const QuadratureSpec& quad) {
    surface.validate();
    Eigen::MatrixXcd total = surface.remainder_or_zero();
    for (const auto& c : surface.nodal_charts)
        for (auto side : {ChartSide::w, ChartSide::z})
            total += branch_moments(branch_restriction(c, side, surface.graph_genus), quad);
    for (const auto& c : surface.smooth_charts)
        total += branch_moments(branch_restriction(c, surface.graph_genus), quad);
    const std::size_t h = surface.genus - surface.graph_genus;
    return total.bottomRightCorner(h, h);
}

}  // namespace bz::degen
