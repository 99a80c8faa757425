#pragma once

#include "bz/error.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace bz::degen {

using Complex = std::complex<double>;

// One coefficient c * z^alpha * w^beta of a two-form written as
// sum c_{alpha,beta} z^alpha w^beta dw ^ dz.
struct Monomial {
    int alpha = 0;
    int beta = 0;
    Complex coeff{0.0, 0.0};
};

struct TruncatedForm {
    std::vector<Monomial> terms;

    /// Sum of the coefficients of z^alpha w^beta (0 if absent).
    Complex coefficient(int alpha, int beta) const;
};

enum class ChartSide {
    w,  // coordinate w on the branch E1 = {z = 0} (multiplicity a)
    z,  // coordinate z on the branch E2 = {w = 0} (multiplicity b)
};

// Chart adapted to a node: t = z^a w^b. Every form must vanish to order a-1
// along z = 0 and to order b-1 along w = 0.
struct NodalChart {
    int a = 1;
    int b = 1;
    std::vector<TruncatedForm> forms;

    void validate() const;
    /// C = c_{a-1, b-1}: residue on the E1 branch.
    Complex residue(std::size_t j) const { return forms.at(j).coefficient(a - 1, b - 1); }
    double edge_length() const { return 1.0 / (static_cast<double>(a) * b); }
};

// Chart adapted to a component of multiplicity a: t = z^a, fiber coordinate
// w on the unit disk. Coefficients need alpha >= a-1, beta >= 0.
struct SmoothChart {
    int a = 1;
    std::vector<TruncatedForm> forms;

    void validate() const;
};

// theta_{j,t} restricted to one side of a nodal chart, written as
// h(x) dx in the side coordinate x (w or z). Stored as x * h(x), a finite
// sum of terms coeff * R^n * x^m where R = (t / x^cm)^(1/rd) is chosen on
// one of rd sheets. On the w side rd = a, cm = b; on the z side rd = b,
// cm = a.
class RestrictedForm {
public:
    struct Term {
        Complex coeff;
        int root_power = 0;   // n
        int coord_power = 0;  // m
    };

    RestrictedForm(ChartSide side, int root_degree, int coord_mult, Complex t, std::vector<Term> terms);

    ChartSide side() const { return side_; }
    int sheets() const { return root_degree_; }
    int coord_multiplicity() const { return coord_mult_; }
    Complex t() const { return t_; }
    const std::vector<Term>& terms() const { return terms_; }

    /// Inner radius |t|^(1/(2 cm)) of the half annulus.
    double inner_radius() const;
    /// log of the inner radius.
    double inner_log_radius() const;

    /// x * h(x) at x = exp(s + i phi) on the given sheet.
    Complex weighted_value(double s, double phi, int sheet) const;
    /// h(x).
    Complex value(Complex x, int sheet) const;
    /// The other chart coordinate at x on the given sheet.
    Complex partner(double s, double phi, int sheet) const;

    /// Coefficient of dx/x, i.e. C/a on the w side and -C/b on the z side.
    Complex leading_coefficient() const;

private:
    ChartSide side_;
    int root_degree_;
    int coord_mult_;
    Complex t_;
    Complex log_t_;
    std::vector<Term> terms_;
};

/// Restriction of form j to the fiber X_t on one side of the chart.
/// Throws InvalidInput for t = 0 or |t| >= 1.
RestrictedForm restrict_to_fiber(const NodalChart& chart, std::size_t j, Complex t, ChartSide side);

/// log|z| / (b log|t|) in [0, 1/(ab)]; 0 at the E2 vertex, 1/(ab) at E1.
/// Throws InvalidInput when (z, w) is not on the fiber inside the chart.
double log_map(const NodalChart& chart, Complex z, Complex w, Complex t);

void require_parameter(Complex t);

}  // namespace bz::degen
