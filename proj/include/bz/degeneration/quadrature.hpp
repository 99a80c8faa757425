#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bz::degen {

// Tensor-product midpoint rule in (log r, angle). The result is computed on
// the base grid and on the doubled grid; the difference is the error
// estimate and must stay below abs_tol + rel_tol * |value|.
struct QuadratureSpec {
    int radial = 512;
    int angular = 256;
    double abs_tol = 1e-3;
    double rel_tol = 1e-6;

    /// Default grid, overridden by BZ_QUAD_GRID="<radial>x<angular>".
    static QuadratureSpec from_environment();
    /// Parse "<radial>x<angular>"; throws InvalidInput.
    static QuadratureSpec parse_grid(const std::string& text);

    QuadratureSpec doubled() const;
    bool operator==(const QuadratureSpec&) const = default;
};

inline constexpr const char* kGridEnvVar = "BZ_QUAD_GRID";

// |t| = exp(-L) sweep.
struct SweepSchedule {
    std::vector<double> L{5.0, 10.0, 20.0, 40.0};

    /// Geometric schedule of `count` values ending at L = 40.
    static SweepSchedule geometric(double first, std::size_t count);
    /// Comma separated list of L values; throws InvalidInput.
    static SweepSchedule parse(const std::string& text);
    void validate() const;
};

inline constexpr double kMaxSweepL = 40.0;

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // root mean square
};

/// Least-squares line through (x_i, y_i); needs two distinct x.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Fit y = limit + c * L^p with p = -1 by least squares in 1/L and return
/// the fitted exponent of |y - limit| separately via a log-log fit.
struct DecayFit {
    double limit = 0.0;
    double coefficient = 0.0;
    double exponent = 0.0;  // slope of log|y - limit| against log L
};
DecayFit fit_decay(const std::vector<double>& L, const std::vector<double>& y);

/// Slope of log|y| against log L.
double fit_exponent(const std::vector<double>& L, const std::vector<double>& y);

}  // namespace bz::degen
