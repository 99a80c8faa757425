#include "bz/degeneration/charts.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bz::degen {

Complex TruncatedForm::coefficient(int alpha, int beta) const {
    Complex sum{0.0, 0.0};
    for (const auto& m : terms)
        if (m.alpha == alpha && m.beta == beta) sum += m.coeff;
    return sum;
}

void NodalChart::validate() const {
    if (a < 1 || b < 1) throw InvalidInput("nodal chart multiplicities must be positive");
    for (std::size_t j = 0; j < forms.size(); ++j)
        for (const auto& m : forms[j].terms)
            if (m.alpha < a - 1 || m.beta < b - 1)
                throw InvalidInput("form " + std::to_string(j) + ": coefficient (" + std::to_string(m.alpha) + "," +
                                   std::to_string(m.beta) + ") violates the vanishing orders (" +
                                   std::to_string(a - 1) + "," + std::to_string(b - 1) + ")");
}

void SmoothChart::validate() const {
    if (a < 1) throw InvalidInput("smooth chart multiplicity must be positive");
    for (std::size_t j = 0; j < forms.size(); ++j)
        for (const auto& m : forms[j].terms)
            if (m.alpha < a - 1 || m.beta < 0)
                throw InvalidInput("form " + std::to_string(j) + ": coefficient violates the vanishing order a-1");
}

void require_parameter(Complex t) {
    if (t == Complex(0.0, 0.0)) throw InvalidInput("fiber parameter t must be nonzero");
    if (!(std::abs(t) < 1.0)) throw InvalidInput("fiber parameter t must satisfy |t| < 1");
}

RestrictedForm::RestrictedForm(ChartSide side, int root_degree, int coord_mult, Complex t, std::vector<Term> terms)
    : side_(side), root_degree_(root_degree), coord_mult_(coord_mult), t_(t), log_t_(std::log(t)),
      terms_(std::move(terms)) {}

double RestrictedForm::inner_log_radius() const { return std::log(std::abs(t_)) / (2.0 * coord_mult_); }
double RestrictedForm::inner_radius() const { return std::exp(inner_log_radius()); }

Complex RestrictedForm::weighted_value(double s, double phi, int sheet) const {
    const Complex log_x{s, phi};
    // log R on this sheet.
    const Complex log_root = (log_t_ - static_cast<double>(coord_mult_) * log_x) / static_cast<double>(root_degree_) +
                             Complex(0.0, 2.0 * std::numbers::pi * sheet / root_degree_);
    Complex sum{0.0, 0.0};
    for (const auto& term : terms_)
        sum += term.coeff * std::exp(static_cast<double>(term.root_power) * log_root +
                                     static_cast<double>(term.coord_power) * log_x);
    return sum;
}

Complex RestrictedForm::value(Complex x, int sheet) const {
    const Complex log_x = std::log(x);
    return weighted_value(log_x.real(), log_x.imag(), sheet) / x;
}

Complex RestrictedForm::partner(double s, double phi, int sheet) const {
    const Complex log_x{s, phi};
    const Complex log_root = (log_t_ - static_cast<double>(coord_mult_) * log_x) / static_cast<double>(root_degree_) +
                             Complex(0.0, 2.0 * std::numbers::pi * sheet / root_degree_);
    return std::exp(log_root);
}

Complex RestrictedForm::leading_coefficient() const {
    Complex sum{0.0, 0.0};
    for (const auto& term : terms_)
        if (term.root_power == 0 && term.coord_power == 0) sum += term.coeff;
    return sum;
}

RestrictedForm restrict_to_fiber(const NodalChart& chart, std::size_t j, Complex t, ChartSide side) {
    chart.validate();
    require_parameter(t);
    const auto& form = chart.forms.at(j);
    std::vector<RestrictedForm::Term> terms;
    const int a = chart.a;
    const int b = chart.b;
    for (const auto& m : form.terms) {
        if (side == ChartSide::w) {
            // theta_t = (c/a) z^(alpha-a+1) w^(beta-b) dw with z = (t/w^b)^(1/a)
            terms.push_back({m.coeff / static_cast<double>(a), m.alpha - a + 1, m.beta - b + 1});
        } else {
            // theta_t = -(c/b) w^(beta-b+1) z^(alpha-a) dz with w = (t/z^a)^(1/b)
            terms.push_back({-m.coeff / static_cast<double>(b), m.beta - b + 1, m.alpha - a + 1});
        }
    }
    return side == ChartSide::w ? RestrictedForm(side, a, b, t, std::move(terms))
                                : RestrictedForm(side, b, a, t, std::move(terms));
}

double log_map(const NodalChart& chart, Complex z, Complex w, Complex t) {
    require_parameter(t);
    if (!(std::abs(z) <= 1.0) || !(std::abs(w) <= 1.0)) throw InvalidInput("log_map: point outside the chart");
    const Complex image = std::pow(z, chart.a) * std::pow(w, chart.b);
    if (std::abs(image - t) > 1e-9 * std::abs(t)) throw InvalidInput("log_map: point is not on the fiber X_t");
    const double u = std::log(std::abs(z)) / (chart.b * std::log(std::abs(t)));
    return std::clamp(u, 0.0, chart.edge_length());
}

}  // namespace bz::degen
