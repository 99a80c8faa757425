#pragma once

#include "bz/degeneration/gram.hpp"

#include <vector>

namespace bz::degen {

/// 2 pi sum over nodal charts of C_j conj(C_k) / (ab).
Complex expected_slope(const SyntheticSurface& surface, std::size_t j, std::size_t k);

struct EntryCheck {
    enum class Kind { slope, bounded };

    std::size_t j = 0, k = 0;
    std::vector<Complex> values;  // A(t)_jk along the sweep
    LinearFit fit_re, fit_im;     // against L
    Complex expected{};
    Kind kind = Kind::slope;
    double tolerance = 0;  // slope: allowed |fit - expected|; bounded: ratio bound
    double ratio = 1;      // bounded: max|A| / min|A|
    bool pass = false;

    Complex fitted_slope() const { return {fit_re.slope, fit_im.slope}; }
    double residual() const { return std::hypot(fit_re.residual, fit_im.residual); }
};

struct AsymptoticsReport {
    std::vector<double> L;
    std::vector<EntryCheck> entries;  // upper triangle j <= k
    double hermitian_defect = 0;
    double hermitian_tolerance = 0;
    bool pass = false;
};

/// Sweep A(t) over |t| = e^-L. Entries whose residue scales
/// D_jj = sum |C_j|^2 / (ab) are both nonzero must fit the expected slope
/// within 1% of max(|expected|, 2 pi sqrt(D_jj D_kk)); the others must be
/// bounded (max/min ratio < 1.5, or numerically zero).
AsymptoticsReport verify_gram_asymptotics(const SyntheticSurface& surface, const SweepSchedule& sweep = {},
                                          const QuadratureSpec& quad = QuadratureSpec::from_environment());

}  // namespace bz::degen
