#pragma once

#include "bz/degeneration/gram.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace bz::degen {

using ChartFunction = std::function<double(Complex z, Complex w)>;

// Smooth radial bump in the chart: 1 within plateau * radius of the center,
// 0 beyond radius, C-infinity in between. Or a constant.
class Cutoff {
public:
    static Cutoff constant(double value);
    static Cutoff bump(Complex center_z, Complex center_w, double radius, double plateau = 0.5);

    double operator()(Complex z, Complex w) const;
    /// 1 - chi
    ChartFunction complement() const;

private:
    bool constant_ = true;
    double value_ = 1.0;
    Complex cz_{}, cw_{};
    double radius_ = 1.0;
    double plateau_ = 0.5;
};

/// chi_i / sum_j chi_j. Evaluation throws NumericalError where every chi_j is 0.
std::vector<ChartFunction> partition_of_unity(const std::vector<ChartFunction>& bumps);

// Continuous function on an edge interval [lo, hi].
class EdgeFunction {
public:
    EdgeFunction(std::function<double(double)> fn, double lo, double hi);
    static EdgeFunction constant(double value, double length);
    /// Piecewise linear interpolation of values at equally spaced nodes of [0, length].
    static EdgeFunction table(std::vector<double> values, double length);

    double operator()(double u) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    /// Throws InvalidInput unless [0, length] is inside the domain.
    void require_domain(double length) const;
    /// Integral over [a, b] by composite Simpson with n panels.
    double integrate(double a, double b, int n = 2000) const;

private:
    std::function<double(double)> fn_;
    double lo_, hi_;
};

/// int over one side of nodal chart `chart` of chi * (f o u) mu_t, u measured
/// from the vertex of that side's branch; mu_t uses the inverse Gram matrix of
/// the whole surface at t.
Complex weighted_integral(const SyntheticSurface& surface, std::size_t chart, ChartSide side, const ChartFunction& chi,
                          const EdgeFunction& f, Complex t,
                          const QuadratureSpec& quad = QuadratureSpec::from_environment());

/// Sum_j |C_j|^2 over the graph forms of a chart: 1/(l+r) for orthonormal residues.
double residue_density(const SyntheticSurface& surface, std::size_t chart);

/// int over the branch disk of weight * mu~_0, mu~_0 built from the holomorphic
/// restrictions and the limiting holomorphic block.
double limit_branch_integral(const SyntheticSurface& surface, const BranchRestriction& branch,
                             const std::function<double(Complex)>& weight, const QuadratureSpec& quad);

/// chi(P) * density * int_0^{1/(2ab)} f + f(0) * int chi(0, w) mu~_0 (w side; symmetric for z).
double weighted_integral_limit(const SyntheticSurface& surface, std::size_t chart, ChartSide side,
                               const ChartFunction& chi, const EdgeFunction& f, double edge_density,
                               const QuadratureSpec& quad = QuadratureSpec::from_environment());

struct VertexMassPoint {
    double L = 0;
    double total = 0;
    double graph_part = 0;        // terms with j or k a graph form
    double holomorphic_part = 0;  // j, k both holomorphic
};

struct VertexMassResult {
    std::vector<VertexMassPoint> points;
    double limit = 0;            // extrapolated from total = limit + c/L
    double prediction = 0;       // int chi mu~_0 (0 unless a = 1)
    double graph_exponent = 0;   // fitted exponent of graph_part in L
};

VertexMassResult vertex_mass_limit(const SyntheticSurface& surface, std::size_t smooth_chart, const ChartFunction& chi,
                                   const SweepSchedule& sweep = {},
                                   const QuadratureSpec& quad = QuadratureSpec::from_environment());

// Function on the half-dumbbell D = unit disk (w) joined at 0 to [0, eps] (v).
struct HalfDumbbellFunction {
    std::function<double(Complex)> on_curve;  // f(w, 0)
    std::function<double(double)> on_edge;    // f(0, v)
    double epsilon = 0.5;

    /// f o r for the radial retraction r of disk x [0, eps) onto D.
    double retracted(Complex w, double v) const;
};

/// Retraction of disk x [0, eps) onto D: compare x = |w| with y = v / eps.
/// Returns (w', v') with exactly one of them nonzero unless both are 0.
std::pair<Complex, double> half_dumbbell_retraction(Complex w, double v, double epsilon);

struct SweepValue {
    double L = 0;
    double value = 0;
};

struct CCIntersectionResult {
    std::vector<SweepValue> points;
    double limit = 0;
    double prediction = 0;
};

/// int over {log|w| / (a log|t|) < eps} on the w side of chart of (f o r) mu_t.
/// Needs 0 < eps <= 1/(2ab).
CCIntersectionResult cc_intersection_limit(const SyntheticSurface& surface, std::size_t chart,
                                           const HalfDumbbellFunction& f, double edge_density,
                                           const SweepSchedule& sweep = {},
                                           const QuadratureSpec& quad = QuadratureSpec::from_environment());

}  // namespace bz::degen
