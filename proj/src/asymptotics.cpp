#include "bz/degeneration/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bz::degen {

namespace {

constexpr double kSlopeTolerance = 0.01;
constexpr double kBoundedRatio = 1.5;

double residue_scale(const SyntheticSurface& s, std::size_t j) {
    double d = 0.0;
    for (const auto& c : s.nodal_charts) d += std::norm(c.residue(j)) * c.edge_length();
    return d;
}

}  // namespace

Complex expected_slope(const SyntheticSurface& surface, std::size_t j, std::size_t k) {
    Complex sum{0.0, 0.0};
    for (const auto& c : surface.nodal_charts) sum += c.residue(j) * std::conj(c.residue(k)) * c.edge_length();
    return 2.0 * std::numbers::pi * sum;
}

AsymptoticsReport verify_gram_asymptotics(const SyntheticSurface& surface, const SweepSchedule& sweep,
                                          const QuadratureSpec& quad) {
    surface.validate();
    sweep.validate();
    AsymptoticsReport report;
    report.L = sweep.L;
    std::vector<Eigen::MatrixXcd> gram;
    for (double L : sweep.L) {
        const auto a = gram_matrix(surface, Complex(std::exp(-L), 0.0), quad);
        report.hermitian_defect = std::max(report.hermitian_defect, a.hermitian_defect());
        report.hermitian_tolerance = std::max(report.hermitian_tolerance, a.quadrature_error + quad.abs_tol);
        gram.push_back(a.entries());
    }
    bool pass = report.hermitian_defect <= report.hermitian_tolerance;
    const std::size_t g = surface.genus;
    double scale = 0.0;
    for (const auto& a : gram) scale = std::max(scale, a.cwiseAbs().maxCoeff());
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t k = j; k < g; ++k) {
            EntryCheck e;
            e.j = j;
            e.k = k;
            std::vector<double> re, im;
            for (const auto& a : gram) {
                e.values.push_back(a(j, k));
                re.push_back(a(j, k).real());
                im.push_back(a(j, k).imag());
            }
            e.fit_re = fit_line(sweep.L, re);
            e.fit_im = fit_line(sweep.L, im);
            e.expected = expected_slope(surface, j, k);
            const double djj = residue_scale(surface, j);
            const double dkk = residue_scale(surface, k);
            if (djj > 0.0 && dkk > 0.0) {
                e.kind = EntryCheck::Kind::slope;
                e.tolerance = kSlopeTolerance *
                              std::max(std::abs(e.expected), 2.0 * std::numbers::pi * std::sqrt(djj * dkk));
                e.pass = std::abs(e.fitted_slope() - e.expected) <= e.tolerance;
            } else {
                e.kind = EntryCheck::Kind::bounded;
                e.tolerance = kBoundedRatio;
                double lo = INFINITY, hi = 0.0;
                for (const auto& v : e.values) {
                    lo = std::min(lo, std::abs(v));
                    hi = std::max(hi, std::abs(v));
                }
                // Entries at rounding level carry no information.
                const double zero = std::max(1e-9 * scale, quad.abs_tol);
                e.ratio = hi <= zero ? 1.0 : (lo > 0.0 ? hi / lo : INFINITY);
                e.pass = e.ratio < kBoundedRatio;
            }
            pass = pass && e.pass;
            report.entries.push_back(std::move(e));
        }
    report.pass = pass;
    return report;
}

}  // namespace bz::degen
