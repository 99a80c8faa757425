#include "bz/degeneration/tate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bz::degen {

TateFiber::TateFiber(Complex q) : q(q) { require_parameter(q); }

double TateFiber::norm_squared() const { return 2.0 * std::numbers::pi * -std::log(std::abs(q)); }

std::vector<double> uniform_bins(std::size_t n) {
    if (n == 0) throw InvalidInput("need at least one bin");
    std::vector<double> edges(n + 1);
    for (std::size_t i = 0; i <= n; ++i) edges[i] = static_cast<double>(i) / static_cast<double>(n);
    edges.back() = 1.0;
    return edges;
}

namespace {

// (i/2) int dz/z ^ conj(dz/z) over log|z| in [s0, s1], midpoint rule.
double annulus_mass(double s0, double s1, int ns, int nphi) {
    const double ds = (s1 - s0) / ns;
    const double dphi = 2.0 * std::numbers::pi / nphi;
    double sum = 0.0;
    for (int i = 0; i < ns; ++i) {
        const double s = s0 + (i + 0.5) * ds;
        double row = 0.0;
        for (int k = 0; k < nphi; ++k) {
            const Complex z = std::exp(Complex(s, (k + 0.5) * dphi));
            row += std::norm(z * (1.0 / z));  // |z h(z)|^2 with h = 1/z
        }
        sum += row;
    }
    return sum * ds * dphi;
}

}  // namespace

TateHistogram tate_pushforward(Complex q, const std::vector<double>& edges, const QuadratureSpec& quad) {
    const TateFiber fiber(q);
    if (edges.size() < 2 || edges.front() != 0.0 || edges.back() != 1.0)
        throw InvalidInput("bins must partition [0, 1]");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1])) throw InvalidInput("bin edges must increase");
    const double log_q = std::log(std::abs(q));
    const double norm = fiber.norm_squared();
    const auto fine_spec = quad.doubled();
    TateHistogram h;
    h.edges = edges;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        // u in [lo, hi) <=> log|z| in (hi log|q|, lo log|q|]
        const double s0 = edges[i + 1] * log_q;
        const double s1 = edges[i] * log_q;
        const double coarse = annulus_mass(s0, s1, quad.radial, quad.angular) / norm;
        const double fine = annulus_mass(s0, s1, fine_spec.radial, fine_spec.angular) / norm;
        if (!(std::abs(fine - coarse) <= quad.abs_tol + quad.rel_tol * std::abs(fine))) {
            std::ostringstream msg;
            msg << "tate_pushforward: quadrature did not converge on bin " << i << " (estimate "
                << std::abs(fine - coarse) << ")";
            throw NumericalError(msg.str());
        }
        h.masses.push_back(fine);
        h.total += fine;
    }
    return h;
}

}  // namespace bz::degen
