#pragma once

#include "bz/degeneration/charts.hpp"
#include "bz/degeneration/quadrature.hpp"

#include <vector>

namespace bz::degen {

// Fiber C* / q^Z with fundamental annulus |q| < |z| <= 1 and the single
// form dz/z.
struct TateFiber {
    Complex q;

    explicit TateFiber(Complex q);
    /// (i/2) int dz/z ^ conj(dz/z) = 2 pi log|q|^-1
    double norm_squared() const;
};

struct TateHistogram {
    std::vector<double> edges;   // bin boundaries in [0, 1]
    std::vector<double> masses;  // Bergman mass per bin
    double total = 0;
};

/// Uniform partition of [0, 1] into n bins.
std::vector<double> uniform_bins(std::size_t n);

/// Push the Bergman measure forward under u = log|z| / log|q|, by
/// quadrature. Bin edges must increase from 0 to 1.
TateHistogram tate_pushforward(Complex q, const std::vector<double>& edges,
                               const QuadratureSpec& quad = QuadratureSpec::from_environment());

}  // namespace bz::degen
